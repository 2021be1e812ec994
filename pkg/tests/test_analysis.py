import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

import polyspec as ps
from polyspec import PolyhedronKind
from polyspec.analysis import COUNTING_CONSTANT, WEYL_SLOPE

from conftest import KINDS

SQRT3 = math.sqrt(3.0)
ND = 4 * math.pi ** 2 / 3


@pytest.fixture(scope="module")
def tetra_series():
    return ps.make_counting_series(
        PolyhedronKind.TETRAHEDRON, ps.exact_tetra_eigenvalues(220))


def test_normalize_examples():
    assert ps.normalize(0.0, PolyhedronKind.OCTAHEDRON) == 0
    assert ps.normalize(ND * 7, PolyhedronKind.TETRAHEDRON) == pytest.approx(7, rel=1e-15)
    assert ps.normalize(math.pi ** 2 * 2, PolyhedronKind.CUBE) == pytest.approx(2, rel=1e-15)
    with pytest.raises(ValueError):
        ps.normalize(-1.0, PolyhedronKind.CUBE)


def test_weyl_slopes_are_area_over_4pi():
    areas = {PolyhedronKind.TETRAHEDRON: SQRT3,
             PolyhedronKind.OCTAHEDRON: 2 * SQRT3,
             PolyhedronKind.ICOSAHEDRON: 5 * SQRT3,
             PolyhedronKind.CUBE: 6.0}
    for kind in KINDS:
        assert abs(WEYL_SLOPE[kind] - areas[kind] / (4 * math.pi)) < 1e-15
        assert abs(WEYL_SLOPE[kind] * 4 * math.pi
                   - ps.build_net(kind).area) < 1e-12


def test_counting_constants():
    from fractions import Fraction
    assert COUNTING_CONSTANT[PolyhedronKind.TETRAHEDRON] == Fraction(1, 2)
    assert COUNTING_CONSTANT[PolyhedronKind.OCTAHEDRON] == Fraction(5, 12)
    assert COUNTING_CONSTANT[PolyhedronKind.ICOSAHEDRON] == Fraction(11, 30)
    assert COUNTING_CONSTANT[PolyhedronKind.CUBE] == Fraction(7, 18)


def test_aitken_examples():
    assert ps.aitken_extrapolate(2.0, 2.0, 2.0) == 2.0
    assert ps.aitken_extrapolate(1.4, 1.2, 1.1) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(-10, 10), st.floats(0.05, 5),
       st.floats(min_value=0.05, max_value=0.8))
@settings(max_examples=60, deadline=None)
def test_aitken_recovers_geometric_limits(limit, amp, theta):
    seq = [limit + amp * theta ** k for k in range(3)]
    got = ps.aitken_extrapolate(*seq)
    assert got == pytest.approx(limit, abs=1e-8 * max(1, abs(limit), amp))


def test_counting_function(tetra_series):
    s = tetra_series
    assert ps.counting(s, 0.5 * ND) == 1     # below the first nonzero value
    assert ps.counting(s, ND * (1 + 1e-12)) == 4
    rng = np.random.default_rng(0)
    for t in rng.uniform(0, ND * 200, 300):
        assert ps.counting(s, t) == ps.tetra_count_exact(t)


def test_counting_series_validation():
    with pytest.raises(ValueError):
        ps.CountingSeries(np.array([1.0, 0.5]), 1.0, 0.5)
    with pytest.raises(ValueError):
        ps.CountingSeries(np.array([5.0, 6.0]), 1.0, 0.5)  # missing zero mode


def test_remainder_at_zero(tetra_series):
    table = ps.remainder_series(tetra_series, ND, 3)
    assert table.d[0] == pytest.approx(0.5, abs=1e-12)
    assert table.a[0] == pytest.approx(0.5, abs=1e-12)


def test_averaged_remainder_matches_quadrature(tetra_series):
    s = tetra_series
    ts = [ND * 0.7, ND * 3.3, ND * 11.7]
    for t in ts:
        exact = float(ps.averaged_remainder(s, np.array([t]))[0])
        # adaptive quadrature of D between consecutive eigenvalues
        knots = [0.0] + [x for x in s.eigenvalues if 0 < x < t] + [t]
        total = 0.0
        for a, b in zip(knots[:-1], knots[1:]):
            if b - a < 1e-15:
                continue
            val, _ = quad(lambda x: float(ps.remainder(s, np.array([x]))[0]),
                          a, b, epsabs=1e-12, limit=200)
            total += val
        assert abs(exact - total / t) < 1e-9


def test_remainder_structure(tetra_series):
    s = tetra_series
    # between eigenvalues D decreases linearly with slope -weyl_slope
    t0, t1 = ND * 1.2, ND * 2.8   # open interval between values 1 and 3
    d0 = float(ps.remainder(s, np.array([t0]))[0])
    d1 = float(ps.remainder(s, np.array([t1]))[0])
    assert d1 - d0 == pytest.approx(-s.weyl_slope * (t1 - t0), abs=1e-12)
    # unit jump of size multiplicity at an eigenvalue
    lam = ND * 3
    before = ps.counting(s, lam * (1 - 1e-9))
    after = ps.counting(s, lam * (1 + 1e-9))
    assert after - before == ps.hexagonal_multiplicity(3)


def test_counting_slope_least_squares():
    ev = ps.exact_tetra_eigenvalues(2000)
    s = ps.make_counting_series(PolyhedronKind.TETRAHEDRON, ev)
    ts = np.linspace(100 * ND, 2000 * ND, 400)
    ns = np.array([ps.counting(s, t) for t in ts], dtype=float)
    slope = np.polyfit(ts, ns, 1)[0]
    assert abs(slope - SQRT3 / (4 * math.pi)) <= 0.02 * SQRT3 / (4 * math.pi)


def test_remainder_series_coverage(tetra_series):
    s = tetra_series
    with pytest.raises(ps.InsufficientSpectrumError):
        ps.remainder_series(s, s.coverage * 2, 10)
    table = ps.remainder_series(s, ND * 210, 64)
    tg = math.sqrt(s.coverage)
    assert np.all(np.isnan(table.g[table.t > tg + 1e-9]))
    assert not np.any(np.isnan(table.g[table.t <= tg]))


def test_g_equals_sqrt_t_times_a_of_t_squared(tetra_series):
    s = tetra_series
    t = 12.3
    g = math.sqrt(t) * float(ps.averaged_remainder(s, np.array([t * t]))[0])
    table = ps.remainder_series(s, t, 2)
    assert table.g[-1] == pytest.approx(g, rel=1e-12)


def test_classify_examples():
    c = ps.classify(8.06, PolyhedronKind.CUBE, 0.02)
    assert c.label == "singular"
    c = ps.classify(8.004, PolyhedronKind.CUBE, 0.02)
    assert (c.label, int(c.value), c.witness) == ("nonsingular", 8, (2, 2))
    c = ps.classify(1.3334, PolyhedronKind.OCTAHEDRON, 0.02)
    assert (c.label, str(c.value), c.tag) == ("nonsingular", "4/3", "third")
    c = ps.classify(9.33771, PolyhedronKind.OCTAHEDRON, 0.02)
    assert (c.label, str(c.value)) == ("nonsingular", "28/3")
    assert ps.classify(9.18907, PolyhedronKind.OCTAHEDRON, 0.02).label == \
        "singular"


def test_classify_is_tolerance_monotone():
    vals = [0.42105, 1.9, 4.003, 8.06, 9.33]
    for v in vals:
        for kind in (PolyhedronKind.CUBE, PolyhedronKind.OCTAHEDRON):
            small = ps.classify(v, kind, 0.01)
            for tol in (0.02, 0.05, 0.2):
                big = ps.classify(v, kind, tol)
                if small.label == "nonsingular":
                    assert big.label == "nonsingular"


def test_group_clusters():
    vals = [0.0, 1.0001, 1.0002, 1.0, 3.0, 3.0004, 9.5]
    groups = ps.group_clusters(vals, rel_tol=0.005)
    assert [m for _, m in groups] == [1, 3, 2, 1]
