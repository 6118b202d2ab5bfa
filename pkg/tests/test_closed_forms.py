import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

from gme import closed_forms as cf
from gme import hartree as h
from gme import states as st
from gme.errors import BadIndices, CountMismatch, OutOfRange, ParamOutOfRange

FAST = h.SolverOptions(restarts=6, tol=1e-13)


def _grid_lambda_symmetric(n, k, m=200001):
    # oracle: direct grid maximization of the symmetric-ansatz overlap
    th = np.linspace(0, math.pi / 2, m)
    return float(np.max(math.sqrt(math.comb(n, k)) * np.cos(th) ** k * np.sin(th) ** (n - k)))


def test_lambda_symmetric_examples():
    assert abs(cf.lambda_symmetric(3, 2) - 2 / 3) < 1e-15
    assert abs(cf.lambda_symmetric(4, 2) - math.sqrt(3 / 8)) < 1e-15
    for n in (1, 5, 30):
        assert cf.lambda_symmetric(n, 0) == 1.0 and cf.lambda_symmetric(n, n) == 1.0
    assert abs(cf.lambda_symmetric(7, 2) - _grid_lambda_symmetric(7, 2)) < 1e-9
    assert abs(cf.lambda_symmetric(7, 2) - 0.5645748) < 1e-7
    with pytest.raises(OutOfRange):
        cf.lambda_symmetric(3, 5)


@given(hs.integers(1, 40), hs.data())
def test_lambda_symmetric_relabeling(n, data):
    k = data.draw(hs.integers(0, n))
    assert abs(cf.lambda_symmetric(n, k) - cf.lambda_symmetric(n, n - k)) < 1e-12


@pytest.mark.parametrize("n", range(2, 12))
def test_lambda_symmetric_minimum_at_half(n):
    vals = [cf.lambda_symmetric(n, k) for k in range(n + 1)]
    best = set(np.flatnonzero(np.isclose(vals, min(vals), atol=1e-14)))
    assert best == ({n // 2} if n % 2 == 0 else {(n - 1) // 2, (n + 1) // 2})


def test_lambda_symmetric_qudit():
    assert abs(cf.lambda_symmetric_qudit(3, (2, 1)) - 2 / 3) < 1e-15
    assert abs(cf.lambda_symmetric_qudit(3, (1, 1, 1)) - math.sqrt(6 / 27)) < 1e-15
    assert cf.lambda_symmetric_qudit(4, (4,)) == 1.0
    # oracle: grid over real non-negative 3-level factors
    a = np.linspace(0, math.pi / 2, 801)
    A, B = np.meshgrid(a, a, indexing="ij")
    c = np.stack([np.cos(A), np.sin(A) * np.cos(B), np.sin(A) * np.sin(B)])
    ov = math.sqrt(6) * c[0] * c[1] * c[2]
    assert abs(ov.max() - cf.lambda_symmetric_qudit(3, (1, 1, 1))) < 1e-5
    with pytest.raises(CountMismatch):
        cf.lambda_symmetric_qudit(3, (1, 1))


def test_determinant_formulas():
    assert cf.det_lambda_squared(3) == pytest.approx(1 / 6, abs=1e-16)
    assert cf.det_lambda_squared_generalized(2, 1) == pytest.approx(0.5)
    assert abs(cf.det_lambda_squared(2) - h.schmidt_lambda(st.determinant_state(2)) ** 2) < 1e-15
    lam = h.entanglement_eigenvalue(st.generalized_determinant(2, 2), FAST).lambda_max
    assert abs(lam**2 - cf.det_lambda_squared_generalized(2, 2)) < 1e-8


def test_ww_lambda_examples():
    sol, lam = cf.ww_lambda(1.0)
    assert abs(lam - 2 / 3) < 1e-14 and abs(sol.chosen_t - 1 / math.sqrt(2)) < 1e-12
    sol, lam = cf.ww_lambda(0.5)
    assert abs(sol.chosen_t - 1) < 1e-12
    assert abs(lam - math.sqrt(3) / 2) < 1e-14 and abs(1 - lam**2 - 0.25) < 1e-14
    assert abs(cf.ww_lambda(0.0)[1] - 2 / 3) < 1e-14
    with pytest.raises(ParamOutOfRange):
        cf.ww_lambda(1.5)


def test_ww_half_matches_solver():
    psi = st.superpose([1, 1], [st.w_state(), st.w_tilde()])
    assert abs(h.entanglement_eigenvalue(psi, FAST).e_sin2 - 0.25) < 1e-8


def test_ww_root_range_and_residual():
    for s in np.linspace(0, 1, 1001):
        sol, _ = cf.ww_lambda(s)
        if 0 < s < 1:
            assert math.sqrt(0.5) - 1e-12 <= sol.chosen_t <= math.sqrt(2) + 1e-12
        c = sol.coefficients
        for t in sol.real_roots:
            assert abs(np.polyval(c, t)) < 1e-10


def test_ss_lambda():
    for s in (0.0, 0.25, 0.5, 1.0):
        assert abs(cf.ss_lambda(3, 2, 1, s) - cf.ww_lambda(s)[1]) < 1e-10
    assert abs(cf.ss_lambda(7, 2, 5, 1.0) - cf.lambda_symmetric(7, 2)) < 1e-12
    psi = st.superpose([1, 1], [st.symmetric_state(7, 2), st.symmetric_state(7, 5)])
    assert abs(cf.ss_lambda(7, 2, 5, 0.5) - h.entanglement_eigenvalue(psi, FAST).lambda_max) < 1e-7
    with pytest.raises(BadIndices):
        cf.ss_lambda(7, 2, 2, 0.5)


def test_gw_examples():
    for phi in (0.0, 1.0, math.pi):
        assert abs(cf.gw_entanglement(1.0, phi) - 0.5) < 1e-10
        assert abs(cf.gw_entanglement(0.0, phi) - 5 / 9) < 1e-10
    e0, epi = cf.gw_entanglement(0.5, 0.0), cf.gw_entanglement(0.5, math.pi)
    assert epi > e0
    for phi, e in ((0.0, e0), (math.pi, epi)):
        psi = st.superpose([math.sqrt(0.5), math.sqrt(0.5) * np.exp(1j * phi)], [st.ghz(3), st.w_state()])
        assert abs(h.entanglement_eigenvalue(psi, FAST).e_sin2 - e) < 1e-7


def test_ghzw_pure_examples():
    sol, lam = cf.ghzw_pure_lambda(1.0, 0.0)
    assert np.allclose(sorted(sol.real_roots), [0.0, 1.0], atol=1e-12)
    assert abs(lam - 1 / math.sqrt(2)) < 1e-14 and sol.chosen_t == 0.0
    assert abs(cf.ghzw_pure_lambda(0.0, 1.0)[1] - 2 / 3) < 1e-14
    assert abs(cf.ghzw_pure_lambda(0.25, 0.375)[1] - 1) < 1e-12
    with pytest.raises(ParamOutOfRange):
        cf.ghzw_pure_lambda(0.8, 0.3)


def test_ghzw_batch_matches_scalar(rng):
    x = rng.random(200)
    y = (1 - x) * rng.random(200)
    batch = cf.ghzw_lambda_batch(x, y)
    scalar = np.array([cf.ghzw_pure_lambda(a, b)[1] for a, b in zip(x, y)])
    assert np.max(np.abs(batch - scalar)) < 1e-12


def test_ghzw_matches_solver_on_grid():
    pts = [(x, (1 - x) * r) for x in np.linspace(0, 1, 6) for r in np.linspace(0, 1, 5)]
    for x, y in pts:
        z = max(0.0, 1 - x - y)
        psi = st.superpose([math.sqrt(x), math.sqrt(y), math.sqrt(z)], [st.ghz(3), st.w_state(), st.w_tilde()])
        assert abs(h.entanglement_eigenvalue(psi, FAST).lambda_max - cf.ghzw_pure_lambda(x, y)[1]) < 1e-7


def test_symmetric_superposition_lambda():
    s = np.linspace(0, 1, 7)
    lam = cf.symmetric_superposition_lambda(3, (2, 1), np.sqrt(np.column_stack([s, 1 - s])))
    assert np.max(np.abs(lam - [cf.ww_lambda(v)[1] for v in s])) < 1e-10


def test_companion_roots():
    r = cf.companion_roots([1, -6, 11, -6])
    assert np.allclose(sorted(r), [1, 2, 3])
    assert np.allclose(sorted(cf.companion_roots([0, 1, -3, 2])), [1, 2])
