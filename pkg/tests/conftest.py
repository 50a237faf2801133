import pytest

from paprlab.harness import run_papr_samples


@pytest.fixture(scope="session")
def papr_samples():
    """Memoized per-frame PAPR runs, shared across the whole session.

    The acceptance criteria reuse the same preset configurations several
    times; configs are frozen/hashable, so cache on them directly.
    """
    cache = {}

    def get(config):
        if config not in cache:
            cache[config] = run_papr_samples(config)
        return cache[config]

    return get
