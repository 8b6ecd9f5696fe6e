import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varjump.errors import DomainError
from varjump.kernels import (KernelSpec, ScaleSet, decay_constant, frequency_sweep,
                             hypothesis_constant, kernel_fourier, kernel_integral, kernel_value,
                             lacunary_scales, make_kernel)

ALL_SPECS = [make_kernel(f, n) for f in ("gaussian", "bump", "dog1") for n in (1, 2)]


def origin(spec):
    return 0.0 if spec.dimension == 1 else np.zeros(2)


class TestValues:
    def test_gaussian_at_origin(self):
        assert kernel_value(make_kernel("gaussian"), 1, 0.0) == 1.0

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.family}-{s.dimension}d")
    def test_dilation_normalization(self, spec):
        x0 = origin(spec)
        expected = 2.0 ** -spec.dimension * kernel_value(spec, 1, x0)
        assert kernel_value(spec, 2, x0) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("t", [0.0, -1.0, float("nan")])
    def test_bad_scale(self, t):
        with pytest.raises(DomainError):
            kernel_value(make_kernel("gaussian"), t, 0.0)
        with pytest.raises(DomainError):
            kernel_fourier(make_kernel("gaussian"), t, 0.0)

    def test_bump_has_compact_support(self):
        spec = make_kernel("bump", radius=0.5)
        assert kernel_value(spec, 2, np.array([1.0, 1.01, 5.0])).tolist() == [0.0, 0.0, 0.0]
        assert kernel_value(spec, 2, 0.99) > 0

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.family}-{s.dimension}d")
    def test_unit_integral(self, spec):
        # the bump is smooth and compactly supported, so a tight box converges fast
        half = 1.5 if spec.family == "bump" else 12.0
        pts = 4096 if spec.dimension == 1 else 512
        assert kernel_integral(spec, 1.0, half, pts) == pytest.approx(1.0, abs=1e-10)

    def test_decay_constants_finite(self):
        for spec in ALL_SPECS:
            c = decay_constant(spec)
            assert math.isfinite(c) and c > 0

    def test_two_d_points_need_pairs(self):
        with pytest.raises(DomainError):
            kernel_value(make_kernel("gaussian", 2), 1, np.zeros(3))


class TestFourier:
    @pytest.mark.parametrize("t", [0.1, 1.0, 7.0])
    def test_gaussian_at_zero(self, t):
        assert kernel_fourier(make_kernel("gaussian"), t, 0.0) == 1.0
        assert kernel_fourier(make_kernel("gaussian", 2), t, np.zeros(2)) == 1.0

    def test_gaussian_at_one(self):
        assert kernel_fourier(make_kernel("gaussian"), 1, 1.0) == pytest.approx(0.0432139, abs=5e-8)
        assert kernel_fourier(make_kernel("gaussian"), 1, 1.0) == pytest.approx(math.exp(-math.pi))

    @settings(max_examples=60, deadline=None)
    @given(st.floats(-5, 5), st.sampled_from(ALL_SPECS))
    def test_dilation_rule(self, xi, spec):
        point = xi if spec.dimension == 1 else np.array([xi, 0.3 * xi])
        assert kernel_fourier(spec, 2, point) == pytest.approx(
            kernel_fourier(spec, 1, 2 * np.asarray(point)), rel=1e-13, abs=1e-15)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.family}-{s.dimension}d")
    def test_unit_mass_at_zero(self, spec):
        assert kernel_fourier(spec, 1, origin(spec)) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2])
    def test_bump_transform_matches_direct_quadrature(self, n):
        spec = make_kernel("bump", n)
        h = 1.0 / 1024
        ax = -1 + h * (np.arange(2048) + 0.5)
        for xi in (0.37, 1.9, 4.25):
            if n == 1:
                direct = np.sum(kernel_value(spec, 1, ax) * np.cos(2 * np.pi * xi * ax)) * h
                table = kernel_fourier(spec, 1, xi)
            else:
                sub = ax[::4]
                hh = 4 * h
                mesh = np.stack(np.meshgrid(sub, sub, indexing="ij"), axis=-1)
                direct = np.sum(kernel_value(spec, 1, mesh) * np.cos(2 * np.pi * xi * mesh[..., 0])) * hh * hh
                table = kernel_fourier(spec, 1, np.array([xi, 0.0]))
            assert table == pytest.approx(direct, abs=2e-6)


class TestScales:
    def test_lacunary_examples(self):
        assert tuple(lacunary_scales(2, 1, 3)) == (1.0, 2.0, 4.0)
        assert tuple(lacunary_scales(2, 0.25, 5)) == (0.25, 0.5, 1.0, 2.0, 4.0)

    @pytest.mark.parametrize("args", [(1, 1, 3), (0.5, 1, 3), (2, 0, 3), (2, 1, 1), (2, 1, 65)])
    def test_lacunary_guards(self, args):
        with pytest.raises(DomainError):
            lacunary_scales(*args)

    @pytest.mark.parametrize("scales", [(), (1.0, 1.0), (2.0, 1.0), (-1.0, 1.0), tuple(range(1, 66))])
    def test_scale_set_invariants(self, scales):
        with pytest.raises(DomainError):
            ScaleSet(scales)

    def test_union(self):
        assert tuple(ScaleSet((1.0, 4.0)).union([2.0, 4.0])) == (1.0, 2.0, 4.0)


class TestHypothesisConstant:
    def test_gaussian_three_scales(self):
        c1, arg = hypothesis_constant(make_kernel("gaussian"), ScaleSet((1, 2, 4)),
                                      frequency_sweep(8.0))
        assert c1 == 3.0 and arg == 0.0

    def test_single_scale(self):
        c1, _ = hypothesis_constant(make_kernel("gaussian"), ScaleSet((1.0,)), np.linspace(-3, 3, 7))
        assert c1 == 1.0

    def test_empty_grid(self):
        with pytest.raises(DomainError):
            hypothesis_constant(make_kernel("gaussian"), ScaleSet((1.0,)), np.array([]))

    @pytest.mark.parametrize("family", ["gaussian", "bump"])
    @pytest.mark.parametrize("n", [1, 2])
    def test_peak_at_zero_gives_scale_count(self, family, n):
        scales = lacunary_scales(2, 1 / 256, 10)
        c1, arg = hypothesis_constant(make_kernel(family, n), scales, frequency_sweep(32.0, n))
        assert c1 == pytest.approx(10.0, abs=1e-8)
        assert np.linalg.norm(np.atleast_1d(arg)) == 0.0

    def test_off_origin_peak_exceeds_count(self):
        # a difference of gaussians has its transform peak away from zero
        c1, arg = hypothesis_constant(make_kernel("dog1"), ScaleSet((1, 2, 4)), frequency_sweep(8.0))
        assert c1 > 3.0 and arg > 0.0

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(0.01, 10), min_size=1, max_size=6, unique=True))
    def test_bounded_by_count_for_gaussian(self, ts):
        scales = ScaleSet(tuple(sorted(ts)))
        c1, _ = hypothesis_constant(make_kernel("gaussian"), scales, frequency_sweep(4.0, density=256))
        assert c1 == pytest.approx(len(scales), rel=1e-15)


class TestSpec:
    def test_defaults_merged(self):
        assert make_kernel("bump").param("radius") == 1.0
        assert make_kernel("dog1", ratio=3).describe() == {
            "family": "dog1", "dimension": 1, "ratio": 3.0, "weight": 1.0}

    @pytest.mark.parametrize("kwargs", [
        {"name": "cauchy"}, {"name": "gaussian", "dimension": 3},
        {"name": "bump", "radius": -1.0}, {"name": "gaussian", "radius": 1.0},
        {"name": "dog1", "ratio": 1.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            make_kernel(**kwargs)

    def test_equal_specs_hash_alike(self):
        assert KernelSpec("bump", 1, (("radius", 1),)) == make_kernel("bump")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_SPECS), st.floats(0.05, 8), st.floats(-3, 3))
def test_value_dilation_identity(spec, t, x):
    point = x if spec.dimension == 1 else np.array([x, -0.7 * x])
    scaled = kernel_value(spec, 1, np.asarray(point) / t) / t ** spec.dimension
    assert kernel_value(spec, t, point) == pytest.approx(scaled, rel=1e-13, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["gaussian", "bump", "dog1"]),
       st.lists(st.floats(0.01, 4), min_size=1, max_size=5, unique=True), st.floats(0.01, 4))
def test_adding_a_scale_never_decreases_c1(family, ts, extra):
    spec = make_kernel(family)
    base = ScaleSet(tuple(sorted(ts)))
    sweep = frequency_sweep(16.0, density=2048)
    before, _ = hypothesis_constant(spec, base, sweep)
    after, _ = hypothesis_constant(spec, base.union([extra]), sweep)
    assert after >= before


def test_gaussian_transform_semigroup():
    spec = make_kernel("gaussian")
    xi = np.linspace(-3, 3, 61)
    for s, t in ((0.3, 0.4), (1.0, 2.0)):
        prod = kernel_fourier(spec, s, xi) * kernel_fourier(spec, t, xi)
        assert np.allclose(prod, kernel_fourier(spec, math.hypot(s, t), xi), rtol=1e-13, atol=0)
