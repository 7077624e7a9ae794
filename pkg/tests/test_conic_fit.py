import numpy as np
import pytest

from model.conic_fit import conic_residuals, verify_conics
from model.criterion_base import EllipseSpec
from model.curve import CurveSample


def _on_ellipse(spec, count):
    p, X, C = spec.as_floats()
    t = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    return p + np.sqrt(C + X * X) * np.cos(t) + 1j * np.sqrt(C) * np.sin(t)


def test_residuals_vanish_on_the_ellipse():
    spec = EllipseSpec(0.5, 1.2, 0.8)
    assert np.max(conic_residuals(spec, _on_ellipse(spec, 50))) < 1e-12
    assert conic_residuals(spec, np.array([0.5 + 0j]))[0] == pytest.approx(1.0)


def test_segment_distance():
    segment = EllipseSpec(0, 2, 0)
    res = conic_residuals(segment, np.array([1.0 + 0j, -2.0 + 0j, 3.0 + 0j, 0.5j]))
    np.testing.assert_allclose(res, [0.0, 0.0, 1.0, 0.5])


def test_verify_conics_bookkeeping():
    spec = EllipseSpec(0, 1, 1, label="E1")
    samples = [CurveSample(0.0, 1, z.real, z.imag) for z in _on_ellipse(spec, 10)]
    samples.append(CurveSample(0.0, 2, 0.0, 0.0))
    samples.append(CurveSample(0.0, 3, 5.0, 5.0))
    samples.append(CurveSample(0.0, 4, 7.0, 0.0, reliable=False))
    result = verify_conics(samples, [spec])
    assert result.fits[0].count == 10
    assert result.fits[0].max_residual < 1e-12
    assert result.origin_hits == 1
    assert result.leftover == [11]
    assert result.unreliable == 1
    assert not result.origin_only


def test_closest_conic_wins():
    inner = EllipseSpec(0, 1, 0.5, label="inner")
    outer = EllipseSpec(0, 1, 2.0, label="outer")
    samples = [CurveSample(0.0, 1, z.real, z.imag) for z in _on_ellipse(outer, 8)]
    result = verify_conics(samples, [inner, outer])
    assert [f.count for f in result.fits] == [0, 8]
    assert result.max_residual < 1e-12


def test_no_specs():
    samples = [CurveSample(0.0, 1, 1.0, 0.0), CurveSample(0.0, 2, 0.0, 0.0)]
    result = verify_conics(samples, [])
    assert result.fits == []
    assert result.leftover == [0]
    assert result.origin_hits == 1


def test_coverage_counts_both_sides():
    spec = EllipseSpec(0, 1, 1, label="E1")
    grid = 16
    full = [CurveSample(0.0, 1, z.real, z.imag) for z in _on_ellipse(spec, 2 * grid)]
    assert verify_conics(full, [spec]).covered(grid)
    assert not verify_conics(full[:grid], [spec]).covered(grid)


def test_degenerate_segments_do_not_need_coverage():
    segment = EllipseSpec(0, 1, 0, label="S")
    samples = [CurveSample(0.0, 1, 0.5, 0.0)]
    assert verify_conics(samples, [segment]).covered(64)


def test_separation_of_leftovers():
    spec = EllipseSpec(0, 1, 1, label="E1")
    samples = [CurveSample(0.0, 1, z.real, z.imag) for z in _on_ellipse(spec, 8)]
    assert verify_conics(samples, [spec]).separation == np.inf
    # just outside the major vertex at sqrt(2)
    samples.append(CurveSample(0.0, 2, np.sqrt(2.0) + 1e-3, 0.0))
    result = verify_conics(samples, [spec])
    assert result.leftover == [8]
    assert 1e-4 < result.separation < 1e-2
