"""Complex-baseband primitives.

QPSK bit mapping, discrete multicarrier synthesis on an oversampled grid,
and the peak-to-average power ratio metric. Everything here is a pure
function of its inputs; frames are 1-D complex128 arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Frames whose mean power falls below this are rejected instead of
# producing infinities in the dB conversion.
MIN_MEAN_POWER = 1e-300

# Gray-coded QPSK, indexed by (2*b0 + b1) for the bit pair (b0, b1):
# 00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 10 -> (+1-j)/sqrt2, 11 -> (-1-j)/sqrt2
_QPSK_LUT = np.array([1 + 1j, -1 + 1j, 1 - 1j, -1 - 1j]) / math.sqrt(2.0)


@dataclass(frozen=True)
class Papr:
    """Peak-to-average power ratio, kept in both linear and dB form."""

    linear: float
    db: float

    @classmethod
    def from_linear(cls, linear: float) -> "Papr":
        return cls(float(linear), float(10.0 * math.log10(linear)))


def map_qpsk(bits) -> np.ndarray:
    """Map a flat bit sequence to Gray-coded unit-energy QPSK symbols.

    Parameters
    ----------
    bits:
        Array-like of 0/1 values, consumed two at a time. Length must be
        even and non-zero.

    Returns
    -------
    np.ndarray
        Complex128 frame of ``len(bits) // 2`` unit-modulus symbols.
    """
    b = np.asarray(bits)
    if b.ndim != 1 or b.size == 0 or b.size % 2 != 0:
        raise ValueError(f"need a non-empty, even-length bit sequence, got shape {b.shape}")
    b = b.astype(np.int64, copy=False)
    if not np.isin(b, (0, 1)).all():
        raise ValueError("bits must be 0 or 1")
    idx = 2 * b[0::2] + b[1::2]
    return _QPSK_LUT[idx]


def _validate_frame(frame) -> np.ndarray:
    f = np.asarray(frame, dtype=np.complex128)
    if f.ndim != 1 or f.size == 0:
        raise ValueError(f"frame must be a non-empty 1-D array, got shape {f.shape}")
    if not np.isfinite(f).all():
        raise ValueError("frame contains NaN or Inf")
    return f


def _validate_oversample(oversample) -> int:
    if not isinstance(oversample, (int, np.integer)) or oversample < 1:
        raise ValueError(f"oversample factor must be a positive integer, got {oversample!r}")
    return int(oversample)


def synthesize(frame, oversample: int = 2) -> np.ndarray:
    """Synthesize the time-domain signal of one multicarrier frame.

    Evaluates samples[k] = (1/sqrt(N)) * sum_n X_n exp(j 2 pi n k / (N*L))
    for k = 0 .. N*L-1, i.e. an inverse DFT of the frame zero-padded to
    N*L points (no spectral centering), scaled so that per-carrier energy
    is preserved.
    """
    f = _validate_frame(frame)
    oversample = _validate_oversample(oversample)
    return synthesize_many(f[np.newaxis, :], oversample)[0]


def synthesize_many(frames: np.ndarray, oversample: int = 2) -> np.ndarray:
    """Row-wise :func:`synthesize` for a 2-D block of frames.

    Numerically identical per row to the single-frame path; exists so that
    candidate searches can amortize the FFT over thousands of frames.
    """
    frames = np.asarray(frames, dtype=np.complex128)
    if frames.ndim != 2 or frames.shape[1] == 0:
        raise ValueError(f"expected a (m, n) block of frames, got shape {frames.shape}")
    oversample = _validate_oversample(oversample)
    m, n = frames.shape
    padded = np.zeros((m, n * oversample), dtype=np.complex128)
    padded[:, :n] = frames
    # ifft applies 1/(N*L); rescale to the 1/sqrt(N) convention.
    return np.fft.ifft(padded, axis=1) * (oversample * math.sqrt(n))


def sample_power(samples: np.ndarray) -> np.ndarray:
    """Instantaneous power |x|^2, computed as re^2 + im^2.

    All PAPR computations go through this helper so that batched and
    scalar paths share the exact same arithmetic.
    """
    return samples.real**2 + samples.imag**2


def papr(samples) -> Papr:
    """Peak-to-average power ratio of a time-domain sample vector."""
    x = np.asarray(samples, dtype=np.complex128)
    if x.ndim != 1 or x.size == 0:
        raise ValueError(f"samples must be a non-empty 1-D array, got shape {x.shape}")
    p = sample_power(x)
    mean = p.mean()
    if not mean >= MIN_MEAN_POWER:
        raise ValueError("mean power is (near) zero; PAPR is undefined")
    return Papr.from_linear(p.max() / mean)


def papr_linear_rows(samples: np.ndarray) -> np.ndarray:
    """Linear PAPR of each row of a 2-D sample block."""
    p = sample_power(samples)
    mean = p.mean(axis=1)
    if not (mean >= MIN_MEAN_POWER).all():
        raise ValueError("a candidate row has (near) zero mean power")
    return p.max(axis=1) / mean
