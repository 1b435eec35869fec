import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from difflab import correlation as corr
from difflab import fourier
from difflab.rudin import STANDARD_WEIGHTS, SignSequence, coefficients, sequence_prefix

RS_8 = [1, 1, 1, -1, 1, 1, -1, 1]
pm_arrays = st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=300)


def direct_sum(seq, theta):
    n = np.arange(len(seq))
    return abs(np.sum(np.asarray(seq) * np.exp(2j * np.pi * n * theta)))


def test_exponential_sum_small_cases():
    assert fourier.exponential_sum([1, 1, 1, 1], 0.0) == 4
    assert fourier.exponential_sum([1, 1, 1, 1], 0.5) == pytest.approx(0, abs=1e-12)
    assert fourier.exponential_sum(RS_8, 0.0) == 4


def test_exponential_sum_rejects_non_binary():
    with pytest.raises(ValueError):
        fourier.exponential_sum([1, 0, 1], 0.1)


@settings(max_examples=50)
@given(pm_arrays, st.floats(0, 1, exclude_max=True))
def test_exponential_sum_matches_numpy(seq, theta):
    assert fourier.exponential_sum(seq, theta) == pytest.approx(direct_sum(seq, theta), rel=1e-9, abs=1e-9)


def test_grid_matches_direct_sum():
    seq = coefficients(SignSequence.parse("+-"), 6)
    theta, mags = fourier.sup_scan(seq, 4)
    for j in (0, 1, 17, 100, 255):
        assert mags[j] == pytest.approx(direct_sum(seq, theta[j]), rel=1e-10)


@pytest.mark.parametrize("signs", ["+", "+-"])
def test_root_n_at_dyadic_lengths(signs):
    s = SignSequence.parse(signs)
    for k in range(4, 15):
        res = fourier.sup_norm_estimate(coefficients(s, k), 8)
        assert res.N == 2 ** k
        assert 0 < res.ratio <= math.sqrt(2) + 0.01
        assert res.sup_estimate <= res.upper_bound


def test_all_ones_fails_root_n():
    res = fourier.sup_norm_estimate(np.ones(1024), 8)
    assert res.sup_estimate == pytest.approx(1024)
    assert res.ratio == pytest.approx(32)
    assert res.argmax_theta == 0


def test_oversample_lower_limit():
    with pytest.raises(ValueError):
        fourier.sup_norm_estimate([1, -1], 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=200))
def test_sup_monotone_in_nested_oversampling(seq):
    # the grid for 2m contains the grid for m, so the maximum cannot drop
    a = fourier.sup_norm_estimate(seq, 4).sup_estimate
    b = fourier.sup_norm_estimate(seq, 8).sup_estimate
    c = fourier.sup_norm_estimate(seq, 16).sup_estimate
    assert a <= b * (1 + 1e-12) and b <= c * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([-1, 1]), min_size=2, max_size=200))
def test_true_sup_within_grid_gap(seq):
    res = fourier.sup_norm_estimate(seq, 8)
    fine = fourier.sup_norm_estimate(seq, 256).sup_estimate
    assert res.sup_estimate <= fine * (1 + 1e-12)
    assert fine <= res.upper_bound * (1 + 1e-12)


def test_parallelogram_base_and_signs():
    assert fourier.parallelogram_check(SignSequence.parse("+"), 0) == pytest.approx(0, abs=1e-15)
    assert fourier.parallelogram_check(SignSequence.parse("+-"), 10, 256) <= 1e-9
    assert fourier.parallelogram_check(SignSequence.parse("+--"), 9, 256) <= 1e-9
    with pytest.raises(ValueError):
        fourier.parallelogram_check(SignSequence.parse("+"), 21)


def test_parallelogram_against_direct_polynomials():
    from difflab.rudin import poly_pair
    pair = poly_pair(SignSequence.parse("-+"), 5)
    for theta in np.linspace(0, 1, 13, endpoint=False):
        total = direct_sum(pair.p_coeffs, theta) ** 2 + direct_sum(pair.q_coeffs, theta) ** 2
        assert total == pytest.approx(64)


@settings(max_examples=50)
@given(pm_arrays)
def test_parseval(seq):
    assert fourier.periodogram(seq).mean() == pytest.approx(1, abs=1e-9)


def test_periodogram_matches_direct_dft():
    seq = np.array(RS_8)
    I = fourier.periodogram(seq)
    for j in range(8):
        assert I[j] == pytest.approx(direct_sum(seq, -j / 8) ** 2 / 8)


def test_binned_flatness_new_sequence():
    seq = sequence_prefix(SignSequence.parse("+-"), 4 ** 8)
    b = fourier.binned_means(fourier.periodogram(seq), 64)
    assert b.min() >= 0.9 and b.max() <= 1.1


def test_all_ones_bragg_peak():
    I = fourier.periodogram(np.ones(1024))
    assert I[0] == pytest.approx(1024)
    assert np.abs(I[1:]).max() < 1e-9
    b = fourier.binned_means(I, 64)
    assert b[0] == pytest.approx(64) and np.abs(b[1:]).max() < 1e-9


def test_binned_means_requires_divisible_length():
    with pytest.raises(ValueError):
        fourier.binned_means(np.ones(10), 3)


def test_empirical_autocorrelation_matches_exact(sigma):
    seq = sequence_prefix(SignSequence.parse("+-"), 4 ** 9)
    for k in range(17):
        exact = float(corr.autocorrelation(sigma, STANDARD_WEIGHTS, k))
        assert abs(fourier.empirical_autocorrelation(seq, k) - exact) <= 1e-3


def test_fft_budget(monkeypatch):
    monkeypatch.setenv("DIFFLAB_MAX_FFT", "1000")
    with pytest.raises(fourier.FFTBudgetExceeded):
        fourier.sup_norm_estimate(np.ones(256), 8)
    with pytest.raises(fourier.FFTBudgetExceeded):
        fourier.periodogram(np.ones(1024))
    assert fourier.periodogram(np.ones(512)).shape == (512,)


def test_csv_format(tmp_path):
    buf = io.StringIO()
    fourier.write_csv(buf, ("theta", "magnitude"), [0, 0.5], [1 / 3, 2.0])
    assert buf.getvalue() == "theta,magnitude\n0,0.33333333333333331\n0.5,2\n"
    path = tmp_path / "x.csv"
    fourier.write_csv(path, ("freq_index", "intensity"), range(2), [0.1, 1.0])
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.startswith(b"freq_index,intensity\n")
    assert float(raw.split(b"\n")[1].split(b",")[1]) == 0.1
