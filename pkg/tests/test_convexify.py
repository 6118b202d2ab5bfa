import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

from gme import closed_forms as cf
from gme import convexify as cv
from gme import mixed_bipartite as mb
from gme.errors import DegenerateGrid, DomainError, OutOfDomain, TooFewPoints, TooManyComponents


def test_curve_validation():
    with pytest.raises(TooFewPoints):
        cv.Curve([0.0], [1.0])
    with pytest.raises(ValueError):
        cv.Curve([0.0, 0.0, 1.0], [1, 2, 3])


def test_envelope_1d_examples():
    x = np.linspace(-1, 1, 201)
    convex = cv.Curve(x, x**2)
    assert np.max(np.abs(cv.lower_envelope_1d(convex).ys - x**2)) < 1e-12
    tent = cv.Curve(x, 1 - np.abs(x))
    assert np.max(np.abs(cv.lower_envelope_1d(tent).ys)) < 1e-12


@given(hs.lists(hs.floats(-10, 10), min_size=2, max_size=60))
def test_envelope_1d_properties(ys):
    c = cv.Curve(np.arange(len(ys), dtype=float), ys)
    e = cv.lower_envelope_1d(c)
    assert np.all(e.ys <= c.ys + 1e-12)
    assert cv.convexity_violation_1d(e) < 1e-9
    again = cv.lower_envelope_1d(e)
    assert np.max(np.abs(again.ys - e.ys)) < 1e-12


def test_envelope_1d_touches_at_hull_points():
    x = np.linspace(0, 1, 101)
    c = cv.Curve(x, np.sin(8 * x))
    e = cv.lower_envelope_1d(c)
    h = cv._lower_hull_indices(c.xs, c.ys)
    assert np.array_equal(e.ys[h], c.ys[h])


def test_envelope_2d_examples():
    s = cv.simplex_surface(41, lambda x, y: 0.3 * x - 0.7 * y + 0.2)
    assert np.nanmax(np.abs(cv.lower_envelope_2d(s).values - s.values)) < 1e-12
    v = cv.simplex_surface(41, lambda x, y: (x - 0.3) ** 2 + (y - 0.3) ** 2).values.copy()
    v[12, 12] += 1.0
    spike = cv.Surface(cv.Domain.SIMPLEX, np.linspace(0, 1, 41), np.linspace(0, 1, 41), v)
    env = cv.lower_envelope_2d(spike)
    nb = [v[11, 12], v[13, 12], v[12, 11], v[12, 13]]
    assert env.values[12, 12] <= np.mean(nb) + 1e-12
    assert abs(env.values[12, 12] - ((0.3 - 0.3) ** 2 * 2)) < 2e-3


def test_envelope_2d_properties(rng):
    s = cv.simplex_surface(61, lambda x, y: np.sin(6 * x) * np.cos(5 * y) + 0.3 * x * y)
    e = cv.lower_envelope_2d(s)
    assert np.nanmax(e.values - s.values) <= 1e-12
    assert cv.chord_violation_2d(e, 20000, seed=1) < 1e-9
    again = cv.lower_envelope_2d(e)
    assert np.nanmax(np.abs(again.values - e.values)) < 1e-12


def test_envelope_2d_errors():
    with pytest.raises(DomainError):
        cv.lower_envelope_2d(cv.Surface(cv.Domain.RECT, [0, 1], [0, 1], np.zeros((2, 2))))
    with pytest.raises(DegenerateGrid):
        cv.lower_envelope_2d(cv.Surface(cv.Domain.SIMPLEX, [0, 0.5, 1], [0], np.zeros((3, 1))))
    tri = cv.Surface(cv.Domain.SIMPLEX, [0, 1], [0, 1], np.array([[0.0, 1.0], [2.0, np.nan]]))
    assert np.array_equal(cv.lower_envelope_2d(tri).values, tri.values, equal_nan=True)


def test_1d_equals_2d_section():
    # product-structured surface: f(x) + g(y); along y = 0 the 2-D hull is co f + min g
    f = lambda x: np.cos(7 * x)
    g = lambda y: y**2
    s = cv.simplex_surface(81, lambda x, y: f(x) + g(y))
    e2 = cv.lower_envelope_2d(s)
    e1 = cv.lower_envelope_1d(cv.Curve(s.grid_x, f(s.grid_x)))
    assert np.max(np.abs(e2.values[:, 0] - e1.ys)) < 1e-9


def test_surface_interpolation_and_csv():
    s = cv.simplex_surface(101, lambda x, y: x + 2 * y)
    assert abs(s(0.333, 0.2) - (0.333 + 0.4)) < 1e-12
    assert abs(s(0.5, 0.5) - 1.5) < 1e-12
    with pytest.raises(OutOfDomain):
        s(0.7, 0.7)
    text = cv.simplex_surface(3, lambda x, y: x + y).to_csv()
    lines = text.splitlines()
    assert lines[0] == "x,y,value"
    assert lines[1:] == ["0,0,0", "0,0.5,0.5", "0,1,1", "0.5,0,0.5", "0.5,0.5,1", "1,0,1"]


def test_vw_driver_fixed_points():
    f = np.linspace(-1, 1, 2001)
    eps = cv.Curve(f, [mb.e_werner(v) for v in f])
    assert np.max(np.abs(cv.vw_mixture_entanglement(eps).ys - eps.ys)) < 1e-12
    F = np.linspace(0.5, 1, 2001)
    r = cv.Curve(F, [mb.r_function(2, v) for v in F])
    assert np.max(np.abs(cv.vw_mixture_entanglement(r).ys - r.ys)) < 1e-12
    s = np.linspace(0, 1, 2001)
    ww = cv.Curve(s, [1 - cf.ww_lambda(v)[1] ** 2 for v in s])
    assert np.max(np.abs(cv.vw_mixture_entanglement(ww).ys - ww.ys)) < 1e-12
    with pytest.raises(DomainError):
        cv.vw_mixture_entanglement(cv.Surface(cv.Domain.RECT, [0, 1], [0, 1], np.zeros((2, 2))))


def test_symmetric_mixture_entanglement():
    assert abs(cv.symmetric_mixture_entanglement(3, [0, 0.7, 0.3, 0]) - (1 - cf.ww_lambda(0.3)[1] ** 2)) < 1e-9
    assert abs(cv.symmetric_mixture_entanglement(5, [0, 0, 1, 0, 0, 0]) - (1 - cf.lambda_symmetric(5, 2) ** 2)) < 1e-14
    with pytest.raises(TooManyComponents):
        cv.symmetric_mixture_entanglement(4, [0.2] * 5)


def test_ss725_flat_chord():
    pure, mixed = cv.symmetric_mixture_curve(7, 2, 5, 2001)
    gap = pure.ys - mixed.ys
    assert gap.max() > 1e-3  # the mixture is strictly below in the middle
    mid = np.flatnonzero(gap > 1e-12)
    xs = pure.xs[mid]
    # one flat chord, symmetric about r = 1/2, equal to the pure curve near the edges
    assert abs(xs.min() + xs.max() - 1) < 2e-3
    assert np.ptp(mixed.ys[mid]) < 1e-12
    assert gap[0] == 0 and gap[-1] == 0
    value = cv.symmetric_mixture_entanglement(7, [0, 0, 0.5, 0, 0, 0.5, 0, 0])
    assert abs(value - mixed.ys[mid].mean()) < 1e-12


def test_three_component_mixture_matches_pure_where_convex():
    # a pure endpoint of a 3-component mixture is untouched by convexification
    p = [0, 1.0, 0, 0]
    assert abs(cv.symmetric_mixture_entanglement(3, p) - 5 / 9) < 1e-12
    e = cv.symmetric_mixture_entanglement(4, [0.2, 0.3, 0.5, 0, 0], grid=101)
    pure = cv.symmetric_pure_entanglement(4, (0, 1, 2), [[0.2, 0.3, 0.5]])[0]
    assert -1e-12 <= pure - e
