"""Floating-point checks: root-N sup norms, the parallelogram identity, periodograms.

Sup-norm grid gap
-----------------
``f(t) = sum_{n<N} e_n exp(2 pi i n t)`` is a trigonometric polynomial of degree
``N - 1``, so Bernstein's inequality gives ``|f'| <= 2 pi (N - 1) sup|f|``.
On a grid of spacing ``h = 1/(oversample * N)`` every ``t`` is within ``h/2``
of a grid point, hence

    grid_max <= sup|f| <= grid_max / (1 - pi (N - 1) / (oversample * N)),

valid once ``oversample > pi``.  For ``oversample = 8`` the factor is below 1.65.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from difflab.rudin import SignSequence, poly_pair

DEFAULT_MAX_FFT = 1 << 26


class FFTBudgetExceeded(ValueError):
    pass


def max_fft_size() -> int:
    return int(os.environ.get("DIFFLAB_MAX_FFT", DEFAULT_MAX_FFT))


def _check_budget(size: int) -> None:
    limit = max_fft_size()
    if size > limit:
        raise FFTBudgetExceeded(f"FFT of size {size} exceeds DIFFLAB_MAX_FFT={limit}")


def as_binary(seq) -> np.ndarray:
    arr = np.asarray(seq, dtype=np.float64)
    if arr.ndim != 1 or not np.all(np.abs(arr) == 1):
        raise ValueError("expected a 1-d sequence of +1/-1")
    return arr


def exponential_sum(seq, theta: float) -> float:
    """``|sum_n e_n exp(2 pi i n theta)|`` with exactly rounded partial sums."""
    eps = as_binary(seq)
    n = np.arange(len(eps), dtype=np.float64)
    # reduce the phase mod 1 before scaling by 2 pi
    phase = 2 * np.pi * np.mod(n * theta, 1.0)
    re = math.fsum(eps * np.cos(phase))
    im = math.fsum(eps * np.sin(phase))
    return math.hypot(re, im)


def _grid_magnitudes(eps: np.ndarray, size: int) -> np.ndarray:
    """``|f(j/size)|`` for ``j = 0..size-1`` with the ``exp(+2 pi i n t)`` convention."""
    _check_budget(size)
    return np.abs(np.fft.ifft(eps, n=size)) * size


@dataclass(frozen=True)
class SupNormResult:
    N: int
    sup_estimate: float
    ratio: float
    oversample: int
    upper_bound: float
    argmax_theta: float


def sup_norm_estimate(seq, oversample: int = 8) -> SupNormResult:
    eps = as_binary(seq)
    if oversample < 4:
        raise ValueError("oversample must be at least 4")
    N = len(eps)
    size = oversample * N
    mags = _grid_magnitudes(eps, size)
    j = int(np.argmax(mags))
    sup = float(mags[j])
    factor = 1.0 - math.pi * (N - 1) / size
    return SupNormResult(N, sup, sup / math.sqrt(N), oversample, sup / factor, j / size)


def sup_scan(seq, oversample: int = 8) -> tuple[np.ndarray, np.ndarray]:
    eps = as_binary(seq)
    size = oversample * len(eps)
    return np.arange(size) / size, _grid_magnitudes(eps, size)


def parallelogram_check(signs: SignSequence, k: int, samples: int = 256) -> float:
    """Max relative deviation of ``|P_k|^2 + |Q_k|^2`` from ``2^(k+1)`` on the unit circle."""
    if k > 20:
        raise ValueError("level above 20 not supported")
    pair = poly_pair(signs, k)
    N = len(pair.p_coeffs)
    size = samples * -(-N // samples)
    stride = size // samples
    p = _grid_magnitudes(pair.p_coeffs.astype(np.float64), size)[::stride]
    q = _grid_magnitudes(pair.q_coeffs.astype(np.float64), size)[::stride]
    target = 2.0 ** (k + 1)
    return float(np.max(np.abs(p ** 2 + q ** 2 - target)) / target)


def periodogram(seq) -> np.ndarray:
    """``|DFT|^2 / N``; its mean over frequencies is 1 for any +-1 input."""
    eps = as_binary(seq)
    _check_budget(len(eps))
    return np.abs(np.fft.fft(eps)) ** 2 / len(eps)


def binned_means(intensity: np.ndarray, bins: int = 64) -> np.ndarray:
    if len(intensity) % bins:
        raise ValueError(f"{len(intensity)} frequencies do not split into {bins} equal bins")
    return intensity.reshape(bins, -1).mean(axis=1)


def empirical_autocorrelation(seq, k: int) -> float:
    eps = as_binary(seq)
    n = len(eps)
    if k >= n:
        raise ValueError("distance must be shorter than the sequence")
    return float(np.dot(eps[: n - k], eps[k:]) / (n - k))


def write_csv(path_or_file, header: tuple[str, str], first, second) -> None:
    """Two-column CSV, LF line endings, 17 significant digits for floats."""
    lines = [",".join(header)]
    for a, b in zip(first, second):
        lines.append(f"{format_number(a)},{format_number(b)}")
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w", newline="\n") as fh:
            fh.write(text)


def format_number(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")
