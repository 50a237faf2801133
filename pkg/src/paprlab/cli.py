"""Command-line front end.

Subcommands: ``run`` (one scheme, configured by flags or a key=value config
file), ``fig5`` / ``fig6`` / ``fig7`` (preset experiment bundles), and
``selftest`` (smoke run of the library invariants). Curves are written as
CSV (one threshold column plus one CCDF column per scheme) and run
metadata as JSON.

Exit codes: 0 success, 1 runtime failure, 2 invalid arguments or
unwritable output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__, schemes, signal_core
from .harness import (
    CcdfCurve,
    SimConfig,
    default_threshold_grid,
    preset_fig5,
    preset_fig6,
    preset_fig7,
    run_experiment,
    run_papr_samples,
)

_PRESETS = {"fig5": preset_fig5, "fig6": preset_fig6, "fig7": preset_fig7}

# run-subcommand knobs: flag name -> (config field, parser, default)
_RUN_KEYS = {
    "scheme": ("scheme", str, "baseline"),
    "n": ("n_subcarriers", int, 8),
    "oversample": ("oversample", int, 2),
    "frames": ("n_frames", int, 512),
    "seed": ("seed", int, 42),
    "slm-u": ("slm_u", int, 2),
    "isis-k": ("isis_k", int, 1000),
    "grid-min": (None, float, 0.0),
    "grid-max": (None, float, 12.0),
    "grid-step": (None, float, 0.1),
}


@dataclass
class OutputBundle:
    curves: list[CcdfCurve]
    metadata: dict


def build_output_bundle(curves: list[CcdfCurve], wall_time_s: float) -> OutputBundle:
    meta = {
        "tool": "paprlab",
        "version": __version__,
        "wall_time_s": wall_time_s,
        "curves": [
            {
                "label": c.label,
                "scheme": c.config.scheme if c.config else None,
                "n_frames": c.n_frames,
                "side_info_bits": c.config.side_info_bits() if c.config else None,
                "config": c.config.to_dict() if c.config else None,
            }
            for c in curves
        ],
    }
    return OutputBundle(curves=curves, metadata=meta)


def write_curves_csv(curves: list[CcdfCurve], stream) -> None:
    """One threshold column plus one ``ccdf_<label>`` column per curve."""
    grid = curves[0].thresholds_db
    for c in curves[1:]:
        if not np.array_equal(c.thresholds_db, grid):
            raise ValueError("curves in one CSV must share a threshold grid")
    stream.write(",".join(["threshold_db"] + [f"ccdf_{c.label}" for c in curves]) + "\n")
    for i, t in enumerate(grid):
        row = [f"{t:.9g}"] + [f"{c.prob[i]:.9g}" for c in curves]
        stream.write(",".join(row) + "\n")


def _write_outputs(bundle: OutputBundle, out: str | None, meta_out: str | None) -> None:
    if out is None:
        write_curves_csv(bundle.curves, sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            write_curves_csv(bundle.curves, fh)
    if meta_out is not None:
        with open(meta_out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(bundle.metadata, fh, indent=2)
            fh.write("\n")


def read_config_file(path: str) -> dict[str, str]:
    """Flat key=value file mirroring the run flags; '#' starts a comment."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _RUN_KEYS and key not in ("out", "meta-out"):
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


def _build_run_config(args) -> tuple[SimConfig, str | None, str | None]:
    settings = {key: default for key, (_, _, default) in _RUN_KEYS.items()}
    out = args.out
    meta_out = args.meta_out
    if args.config is not None:
        for key, raw in read_config_file(args.config).items():
            if key == "out":
                out = raw if out is None else out
            elif key == "meta-out":
                meta_out = raw if meta_out is None else meta_out
            else:
                _, parse, _ = _RUN_KEYS[key]
                try:
                    settings[key] = parse(raw)
                except ValueError:
                    raise ValueError(f"config key {key!r}: cannot parse {raw!r}") from None
    for key in _RUN_KEYS:
        flag_value = getattr(args, key.replace("-", "_"))
        if flag_value is not None:
            settings[key] = flag_value
    grid = default_threshold_grid(settings["grid-min"], settings["grid-max"], settings["grid-step"])
    fields = {
        field: settings[key]
        for key, (field, _, _) in _RUN_KEYS.items()
        if field is not None
    }
    return SimConfig(threshold_grid=grid, **fields), out, meta_out


def _run_and_write(configs, out: str | None, meta_out: str | None) -> int:
    started = time.perf_counter()
    try:
        curves = run_experiment(configs)
    except Exception as exc:  # noqa: BLE001 - surface any runtime failure as exit 1
        print(f"paprlab: error: {exc}", file=sys.stderr)
        return 1
    bundle = build_output_bundle(curves, wall_time_s=time.perf_counter() - started)
    try:
        _write_outputs(bundle, out, meta_out)
    except OSError as exc:
        print(f"paprlab: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_run(args) -> int:
    try:
        config, out, meta_out = _build_run_config(args)
    except (ValueError, OSError) as exc:
        print(f"paprlab: invalid configuration: {exc}", file=sys.stderr)
        return 2
    return _run_and_write(config, out, meta_out)


def _cmd_preset(name: str, args) -> int:
    if args.seed < 0:
        print("paprlab: invalid configuration: seed must be non-negative", file=sys.stderr)
        return 2
    return _run_and_write(_PRESETS[name](seed=args.seed), args.out, args.meta_out)


# ---------------------------------------------------------------------------
# selftest: quick invariant smoke run, independent of pytest


def _check_qpsk_unit_modulus():
    rng = np.random.default_rng(7)
    frame = signal_core.map_qpsk(rng.integers(0, 2, 64))
    assert np.allclose(np.abs(frame), 1.0, atol=1e-12)


def _check_synthesis_direct_sum():
    rng = np.random.default_rng(11)
    frame = signal_core.map_qpsk(rng.integers(0, 2, 16))
    n, oversample = frame.size, 2
    m = n * oversample
    direct = np.array(
        [sum(frame[k] * np.exp(2j * np.pi * k * t / m) for k in range(n)) for t in range(m)]
    ) / np.sqrt(n)
    assert np.abs(signal_core.synthesize(frame, oversample) - direct).max() < 1e-10


def _check_parseval():
    rng = np.random.default_rng(13)
    for oversample in (1, 2, 4):
        frame = signal_core.map_qpsk(rng.integers(0, 2, 16))
        x = signal_core.synthesize(frame, oversample)
        lhs = signal_core.sample_power(x).sum()
        rhs = oversample * signal_core.sample_power(frame).sum()
        assert abs(lhs - rhs) <= 1e-9 * rhs


def _check_perm_bijection():
    n = 5
    seen = set()
    for rank in range(math.factorial(n)):
        p = schemes.perm_unrank(rank, n)
        assert schemes.perm_rank(p) == rank
        seen.add(tuple(p.tolist()))
    assert len(seen) == math.factorial(n)


def _check_walsh_orthogonal():
    h = schemes.hadamard_matrix(16)
    assert np.array_equal(h @ h.T, 16 * np.eye(16, dtype=np.int64))


def _check_golay_complementary():
    for n in (2, 4, 8, 16):
        a, b = schemes.golay_pair(n)
        for shift in range(1, n):
            ca = int(np.dot(a[:-shift], a[shift:]))
            cb = int(np.dot(b[:-shift], b[shift:]))
            assert ca + cb == 0
        assert int(np.dot(a, a) + np.dot(b, b)) == 2 * n


def _check_slm_roundtrip():
    rng = np.random.default_rng(17)
    frame = signal_core.map_qpsk(rng.integers(0, 2, 16))
    bank = schemes.gen_walsh_hadamard(4, 8)
    result = schemes.slm_select(frame, bank)
    back = schemes.slm_recover(result.chosen, result.side_info, bank)
    assert np.abs(back - frame).max() < 1e-12


def _check_isis_roundtrip():
    rng = np.random.default_rng(19)
    frame = signal_core.map_qpsk(rng.integers(0, 2, 12))
    result = schemes.isis_select_exhaustive(frame)
    assert np.array_equal(schemes.isis_recover_direct(result.chosen, result.side_info), frame)


def _check_selection_dominance():
    base = SimConfig(n_subcarriers=4, n_frames=32, seed=3)
    baseline = run_papr_samples(base)
    sampled = run_papr_samples(
        SimConfig(scheme="isis-sampled", n_subcarriers=4, isis_k=5, n_frames=32, seed=3)
    )
    exhaustive = run_papr_samples(
        SimConfig(scheme="isis-exhaustive", n_subcarriers=4, n_frames=32, seed=3)
    )
    assert (exhaustive <= sampled).all() and (sampled <= baseline).all()


def _check_ccdf_monotone():
    curves = run_experiment(SimConfig(n_subcarriers=4, n_frames=64, seed=5))
    prob = curves[0].prob
    assert (np.diff(prob) <= 0).all() and (prob >= 0).all() and (prob <= 1).all()


_SELFTEST_CHECKS = [
    ("qpsk symbols have unit modulus", _check_qpsk_unit_modulus),
    ("synthesis matches the direct sum", _check_synthesis_direct_sum),
    ("synthesis conserves energy", _check_parseval),
    ("permutation rank/unrank is a bijection (n=5)", _check_perm_bijection),
    ("walsh rows are orthogonal", _check_walsh_orthogonal),
    ("golay pair autocorrelations cancel", _check_golay_complementary),
    ("slm recovery restores the frame", _check_slm_roundtrip),
    ("permutation recovery restores the frame", _check_isis_roundtrip),
    ("selection never beats a larger candidate set", _check_selection_dominance),
    ("ccdf is monotone and within [0, 1]", _check_ccdf_monotone),
]


def _cmd_selftest() -> int:
    failures = 0
    for name, check in _SELFTEST_CHECKS:
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}")
    if failures:
        print(f"{failures} of {len(_SELFTEST_CHECKS)} checks failed")
        return 1
    print(f"all {len(_SELFTEST_CHECKS)} checks passed")
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paprlab",
        description="Monte-Carlo CCDF experiments for PAPR-reduction schemes.",
    )
    parser.add_argument("--version", action="version", version=f"paprlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scheme with custom parameters")
    run_p.add_argument("--scheme", choices=("baseline", "slm-walsh", "slm-golay", "isis-exhaustive", "isis-sampled"))
    run_p.add_argument("--n", type=int, help="number of subcarriers")
    run_p.add_argument("--oversample", type=int, help="synthesis grid density multiplier")
    run_p.add_argument("--frames", type=int, help="number of Monte-Carlo frames")
    run_p.add_argument("--seed", type=int, help="master seed")
    run_p.add_argument("--slm-u", type=int, help="SLM bank size")
    run_p.add_argument("--isis-k", type=int, help="sampled-search candidate count")
    run_p.add_argument("--grid-min", type=float, help="lowest CCDF threshold in dB")
    run_p.add_argument("--grid-max", type=float, help="highest CCDF threshold in dB")
    run_p.add_argument("--grid-step", type=float, help="CCDF threshold step in dB")
    run_p.add_argument("--config", help="key=value config file; flags override it")
    run_p.add_argument("--out", help="CSV output path (default: stdout)")
    run_p.add_argument("--meta-out", help="JSON metadata output path")

    for name, preset in _PRESETS.items():
        p = sub.add_parser(name, help=preset.__doc__.splitlines()[0].lower())
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--meta-out", help="JSON metadata output path")

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "selftest":
        return _cmd_selftest()
    return _cmd_preset(args.command, args)


if __name__ == "__main__":
    raise SystemExit(main())
