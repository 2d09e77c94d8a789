import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bpxor.codec import embed
from bpxor.errors import DimensionMismatch, EmptyImage
from bpxor.metrics import (
    FIELDS,
    MetricsReport,
    histogram256,
    mse_channel,
    psnr_channel,
    psnr_rgb,
    relative_entropy,
)

from . import oracles

pairs = st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(
    lambda s: st.tuples(arrays(np.uint8, s), arrays(np.uint8, s))
)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ([[5, 6]], [[5, 6]], 0.0),
        ([[0]], [[10]], 100.0),
        ([[0, 0]], [[3, 4]], 12.5),
    ],
)
def test_mse_examples(a, b, expected):
    assert mse_channel(np.array(a, np.uint8), np.array(b, np.uint8)) == expected


def test_mse_mismatch():
    with pytest.raises(DimensionMismatch):
        mse_channel(np.zeros((2, 2), np.uint8), np.zeros((2, 3), np.uint8))


@pytest.mark.parametrize("mse, expected", [(650.25, 20.0), (65025.0, 0.0)])
def test_psnr_examples(mse, expected):
    assert psnr_channel(mse) == pytest.approx(expected, abs=1e-12)


def test_psnr_zero_mse_is_inf():
    assert psnr_channel(0) == math.inf


def test_psnr_rgb_identical():
    x = np.random.default_rng(3).integers(0, 256, (9, 9, 3), dtype=np.uint8)
    rep = psnr_rgb(x, x)
    assert (rep.mse_r, rep.mse_g, rep.mse_b) == (0, 0, 0)
    assert rep.psnr_avg == math.inf
    assert (rep.kl_r, rep.kl_g, rep.kl_b) == (0, 0, 0)


def test_psnr_rgb_frozen_channel_values():
    # 10 pixels per channel: squared-error sums 65, 65, 26 -> MSE 6.5, 6.5, 2.6
    cover = np.zeros((1, 10, 3), np.uint8)
    stego = cover.copy()
    stego[0, :, 0] = [8, 1, 0, 0, 0, 0, 0, 0, 0, 0]
    stego[0, :, 1] = [7, 4, 0, 0, 0, 0, 0, 0, 0, 0]
    stego[0, :, 2] = [5, 1, 0, 0, 0, 0, 0, 0, 0, 0]
    rep = psnr_rgb(cover, stego)
    assert (rep.mse_r, rep.mse_g, rep.mse_b) == (6.5, 6.5, 2.6)
    assert rep.psnr_r == pytest.approx(40.00167004225055, rel=1e-12)
    assert rep.psnr_b == pytest.approx(43.98107012897093, rel=1e-12)
    assert rep.psnr_avg == pytest.approx(41.32813673782401, rel=1e-12)


def test_psnr_rgb_window():
    cover = np.zeros((4, 4, 3), np.uint8)
    stego = cover.copy()
    stego[3, 3] = 50
    rep = psnr_rgb(cover, stego, window=(slice(0, 2), slice(0, 2)))
    assert rep.psnr_avg == math.inf


def test_kl_hand_example():
    cover = np.array([[0, 1]], np.uint8)
    stego = np.array([[0, 0]], np.uint8)
    expected = oracles.kl([0, 1], [0, 0])
    assert expected == pytest.approx(2 / 258 * math.log(4 / 3), rel=1e-12)
    assert relative_entropy(cover, stego) == pytest.approx(0.002230093584897526, rel=1e-12)


def test_kl_base_two():
    cover = np.array([[0, 1]], np.uint8)
    stego = np.array([[0, 0]], np.uint8)
    assert relative_entropy(cover, stego, base=2) == pytest.approx(
        relative_entropy(cover, stego) / math.log(2), rel=1e-12
    )


def test_kl_without_smoothing_can_be_infinite():
    assert relative_entropy(np.array([[1]], np.uint8), np.array([[0]], np.uint8), smoothing=0) == math.inf


def test_kl_empty():
    with pytest.raises(EmptyImage):
        relative_entropy(np.zeros((0, 3), np.uint8), np.zeros((1, 3), np.uint8))


def test_histogram_total():
    x = np.random.default_rng(1).integers(0, 256, (7, 9), dtype=np.uint8)
    h = histogram256(x)
    assert h.shape == (256,) and h.sum() == 63


@given(pairs)
def test_metric_properties(pair):
    a, b = pair
    m = mse_channel(a, b)
    assert m == mse_channel(b, a) >= 0
    assert m == pytest.approx(oracles.mse(a.tolist(), b.tolist()), rel=1e-12)
    assert relative_entropy(a, a) == 0
    d = relative_entropy(a, b)
    assert d >= 0
    assert d == pytest.approx(oracles.kl(a.ravel(), b.ravel()), rel=1e-9, abs=1e-15)


@given(st.floats(0.001, 65025), st.floats(0.001, 65025))
def test_psnr_decreasing(x, y):
    if x < y:
        assert psnr_channel(x) > psnr_channel(y)


def test_expected_mse_of_random_low_bits():
    # replacing k uniform low bits: E[MSE] = (4**k - 1) / 6
    rng = np.random.default_rng(7)
    errs = np.zeros(3)
    trials = 8
    for _ in range(trials):
        cover = rng.integers(0, 256, (256, 256, 3), dtype=np.uint8)
        payload = rng.integers(0, 256, (256, 256), dtype=np.uint8)
        rep = psnr_rgb(cover, embed(cover, payload))
        errs += [rep.mse_r, rep.mse_g, rep.mse_b]
    errs /= trials
    for got, k in zip(errs, (3, 3, 2)):
        assert got == pytest.approx((4**k - 1) / 6, rel=0.05)


def test_report_serialisation():
    rep = MetricsReport(1.0, 2.0, 0.0, 48.13, 45.12, math.inf, math.inf, 0.1, 0.2, 0.0)
    text = rep.to_text()
    assert [line.split("=")[0] for line in text.splitlines()] == list(FIELDS)
    assert "psnr_b=inf" in text
    doc = json.loads(rep.to_json())
    assert list(doc) == list(FIELDS) and doc["psnr_b"] is None
    assert MetricsReport.from_dict(doc) == rep
