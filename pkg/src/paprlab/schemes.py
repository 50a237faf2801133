"""PAPR-reduction schemes and their receiver-side inverses.

Two families:

* Selected mapping (SLM): multiply the frame by each unit-modulus phase
  vector in a bank, transmit the rotation with the lowest PAPR, signal the
  bank index.
* Permutation search (ISIS): reorder the frame symbols, transmit the
  ordering with the lowest PAPR, signal the lexicographic rank of the
  permutation. Needs no multiplications at the transmitter and draws its
  candidates from a space of size N!.

Permutations are identified by their lexicographic rank via the factorial
number system, so the side information is a single integer in [0, N!).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .signal_core import Papr, papr, papr_linear_rows, synthesize, synthesize_many

# Exhaustive search is refused above this frame length unless the caller
# raises the budget explicitly (10! = 3.6M candidates is the practical limit).
DEFAULT_EXHAUSTIVE_BUDGET = 10

# Candidate blocks are evaluated in slices of this many permutations to
# bound peak memory when streaming large factorials.
_CHUNK = 40320

# Fully materialized permutation tables are cached up to this n (8! rows).
_PERM_CACHE_MAX = 8
_PERM_CACHE: dict[int, np.ndarray] = {}


@dataclass(frozen=True, eq=False)
class SelectionResult:
    """Outcome of one candidate search.

    ``side_info`` is the phase-vector index (SLM) or the permutation rank
    (ISIS); ``side_info_bits`` is the exact number of bits a receiver needs
    to identify it, ceil(log2(candidate space size)).
    """

    chosen: np.ndarray
    side_info: int
    papr: Papr
    candidates_evaluated: int
    side_info_bits: int


def bits_for_count(count: int) -> int:
    """ceil(log2(count)) for a positive candidate-space size."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    return (count - 1).bit_length()


def _is_pow2(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


# ---------------------------------------------------------------------------
# Phase-vector banks for SLM


def hadamard_matrix(n: int) -> np.ndarray:
    """Order-n Sylvester-Hadamard matrix with integer +-1 entries."""
    if not _is_pow2(n):
        raise ValueError(f"Hadamard order must be a power of two, got {n}")
    h = np.array([[1]], dtype=np.int64)
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return h


def gen_walsh_hadamard(num_vectors: int, n: int) -> np.ndarray:
    """Bank of the first ``num_vectors`` Walsh-Hadamard rows of order n.

    Row 0 is all-ones, so the unrotated frame is always a candidate. Rows
    are pairwise orthogonal +-1 sequences.
    """
    if not _is_pow2(num_vectors) or not _is_pow2(n):
        raise ValueError(
            f"bank size and length must be powers of two, got U={num_vectors}, n={n}"
        )
    if num_vectors > n:
        raise ValueError(f"bank size {num_vectors} exceeds vector length {n}")
    return hadamard_matrix(n)[:num_vectors].astype(np.complex128)


def golay_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Complementary +-1 pair of length n from the doubling construction.

    Starting from a = b = [1], each step maps (a, b) to (a||b, a||-b).
    The aperiodic autocorrelations of the two members cancel at every
    nonzero shift and sum to 2n at shift zero.
    """
    if not _is_pow2(n):
        raise ValueError(f"pair length must be a power of two, got {n}")
    a = np.array([1], dtype=np.int64)
    b = np.array([1], dtype=np.int64)
    while a.size < n:
        a, b = np.concatenate([a, b]), np.concatenate([a, -b])
    return a, b


def gen_golay(n: int) -> np.ndarray:
    """Two-vector bank: the identity rotation plus one Golay sequence."""
    a, _ = golay_pair(n)
    return np.stack([np.ones(n), a.astype(np.float64)]).astype(np.complex128)


def _validate_bank(bank, n: int) -> np.ndarray:
    v = np.asarray(bank, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] < 1:
        raise ValueError(f"bank must be a (U, n) array, got shape {v.shape}")
    if v.shape[1] != n:
        raise ValueError(f"bank vector length {v.shape[1]} does not match frame length {n}")
    if not np.allclose(np.abs(v), 1.0, rtol=0.0, atol=1e-12):
        raise ValueError("bank entries must have unit modulus")
    if not np.array_equal(v[0], np.ones(n, dtype=np.complex128)):
        raise ValueError("bank row 0 must be the identity (all-ones) rotation")
    return v


# ---------------------------------------------------------------------------
# Selected mapping


def slm_select(frame, bank, oversample: int = 2) -> SelectionResult:
    """Pick the phase rotation with the lowest PAPR.

    Evaluates the element-wise product of the frame with every bank vector
    and returns the winner; ties go to the lowest bank index.
    """
    f = np.asarray(frame, dtype=np.complex128)
    v = _validate_bank(bank, f.size)
    candidates = f[np.newaxis, :] * v
    linear = papr_linear_rows(synthesize_many(candidates, oversample))
    best = int(np.argmin(linear))
    chosen = candidates[best]
    return SelectionResult(
        chosen=chosen,
        side_info=best,
        papr=papr(synthesize(chosen, oversample)),
        candidates_evaluated=v.shape[0],
        side_info_bits=bits_for_count(v.shape[0]),
    )


def slm_recover(received, side_info: int, bank) -> np.ndarray:
    """Undo a phase rotation by applying its complex conjugate."""
    r = np.asarray(received, dtype=np.complex128)
    v = _validate_bank(bank, r.size)
    if not 0 <= side_info < v.shape[0]:
        raise ValueError(f"side information {side_info} out of range for bank of {v.shape[0]}")
    return r * np.conj(v[side_info])


# ---------------------------------------------------------------------------
# Permutation rank / unrank (factorial number system, lexicographic order)


def perm_unrank(rank: int, n: int) -> np.ndarray:
    """The lexicographically ``rank``-th permutation of {0 .. n-1}."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"permutation length must be a positive integer, got {n!r}")
    rank = int(rank)
    total = math.factorial(n)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, {n}!)")
    pool = list(range(n))
    out = np.empty(n, dtype=np.intp)
    radix = total
    for i in range(n):
        radix //= n - i
        digit, rank = divmod(rank, radix)
        out[i] = pool.pop(digit)
    return out


def perm_rank(perm) -> int:
    """Lexicographic rank of a permutation of {0 .. n-1}."""
    p = np.asarray(perm)
    n = p.size
    if n < 1 or sorted(p.tolist()) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{max(n - 1, 0)}: {perm!r}")
    pool = list(range(n))
    rank = 0
    radix = math.factorial(n)
    for i in range(n):
        radix //= n - i
        digit = pool.index(int(p[i]))
        rank += digit * radix
        pool.pop(digit)
    return rank


def invert_permutation(perm: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size, dtype=perm.dtype)
    return inv


def _all_perms(n: int) -> np.ndarray:
    """Materialized lexicographic permutation table for small n (cached)."""
    table = _PERM_CACHE.get(n)
    if table is None:
        table = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
        _PERM_CACHE[n] = table
    return table


def _iter_perm_blocks(n: int):
    """Yield (start_rank, block) slices of the lexicographic table."""
    if n <= _PERM_CACHE_MAX:
        yield 0, _all_perms(n)
        return
    it = itertools.permutations(range(n))
    start = 0
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        yield start, np.array(block, dtype=np.intp)
        start += len(block)


# ---------------------------------------------------------------------------
# Permutation-search selection (ISIS)


def _isis_result(frame: np.ndarray, rank: int, n_candidates: int, oversample: int) -> SelectionResult:
    n = frame.size
    chosen = frame[perm_unrank(rank, n)]
    return SelectionResult(
        chosen=chosen,
        side_info=rank,
        papr=papr(synthesize(chosen, oversample)),
        candidates_evaluated=n_candidates,
        side_info_bits=bits_for_count(math.factorial(n)),
    )


def isis_select_exhaustive(
    frame, oversample: int = 2, max_n: int = DEFAULT_EXHAUSTIVE_BUDGET
) -> SelectionResult:
    """Search all n! symbol orderings for the lowest PAPR.

    Candidates are evaluated in lexicographic rank order and ties go to
    the lowest rank, so the result is fully deterministic.
    """
    f = np.asarray(frame, dtype=np.complex128)
    n = f.size
    if n > max_n:
        raise ValueError(
            f"exhaustive search over {n}! permutations exceeds the budget "
            f"(max_n={max_n}); use isis_select_sampled instead"
        )
    best_rank = -1
    best_val = np.inf
    for start, block in _iter_perm_blocks(n):
        linear = papr_linear_rows(synthesize_many(f[block], oversample))
        i = int(np.argmin(linear))
        if linear[i] < best_val:
            best_val = linear[i]
            best_rank = start + i
    return _isis_result(f, best_rank, math.factorial(n), oversample)


def sample_permutation_ranks(n: int, count: int, seed: int) -> list[int]:
    """Rank 0 plus ``count - 1`` distinct random ranks from [0, n!).

    Rejection sampling from a seeded generator, so for a fixed seed the
    result for a smaller ``count`` is a prefix of the result for a larger
    one (this is what makes PAPR monotone in the candidate budget). Ranks
    are Python integers, so n! beyond 2**63 is fine. Saturates at n!
    candidates total.
    """
    if count < 1:
        raise ValueError(f"candidate count must be positive, got {count}")
    total = math.factorial(n)
    target = min(int(count), total)
    rng = random.Random(seed)
    ranks = [0]
    seen = {0}
    while len(ranks) < target:
        r = rng.randrange(total)
        if r not in seen:
            seen.add(r)
            ranks.append(r)
    return ranks


def isis_select_sampled(frame, num_candidates: int, seed: int, oversample: int = 2) -> SelectionResult:
    """Search a seeded random subset of symbol orderings.

    The identity ordering is always included, so the result never exceeds
    the baseline PAPR. Ties go to the lowest rank in the candidate set.
    """
    f = np.asarray(frame, dtype=np.complex128)
    n = f.size
    ranks = sorted(sample_permutation_ranks(n, num_candidates, seed))
    perms = np.array([perm_unrank(r, n) for r in ranks], dtype=np.intp)
    linear = papr_linear_rows(synthesize_many(f[perms], oversample))
    best = int(np.argmin(linear))
    return _isis_result(f, ranks[best], len(ranks), oversample)


# ---------------------------------------------------------------------------
# Receiver-side recovery of the original symbol order


def isis_recover_direct(received, side_info: int) -> np.ndarray:
    """Undo a permutation by rank: closed-form inverse, the production path."""
    r = np.asarray(received)
    p = perm_unrank(side_info, r.size)
    out = np.empty_like(r)
    out[p] = r
    return out


def isis_recover_paper(received, side_info: int, max_n: int = 6) -> np.ndarray:
    """Table-search recovery: try every candidate original ordering.

    For each permutation X of the received frame (in rank order), checks
    whether entry ``side_info`` of X's own permutation table reproduces the
    received frame; the first such X is returned. Exists as a fidelity
    oracle for :func:`isis_recover_direct`; cost grows like (n!)^2, hence
    the small-n guard. With repeated symbols several candidates can match
    and the first one in enumeration order wins.
    """
    r = np.asarray(received)
    n = r.size
    if n > max_n:
        raise ValueError(f"table-search recovery is limited to n <= {max_n}, got {n}")
    total = math.factorial(n)
    if not 0 <= side_info < total:
        raise ValueError(f"side information {side_info} outside [0, {n}!)")
    sigma = perm_unrank(side_info, n)
    for cand_rank in range(total):
        x = r[perm_unrank(cand_rank, n)]
        if np.array_equal(x[sigma], r):
            return x
    raise RuntimeError("no candidate ordering reproduces the received frame")
