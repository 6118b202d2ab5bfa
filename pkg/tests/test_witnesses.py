import numpy as np
import pytest

from gme import hartree as h
from gme import states as st
from gme import witnesses as wt
from gme.errors import DimensionMismatch, InvalidWitness, NotEntangled


def test_validity_ranges():
    lo, hi = wt.witness_validity_range(st.ghz(3))
    assert abs(lo - 0.5) < 1e-9 and hi == 1.0
    lo, _ = wt.witness_validity_range(st.w_state())
    assert abs(lo - 4 / 9) < 1e-9
    with pytest.raises(NotEntangled):
        wt.witness_validity_range(st.basis_state((2, 2, 2), (0, 1, 1)))


def test_optimal_witness_values():
    assert abs(wt.optimal_witness(st.symmetric_state(4, 2)).lambda_sq - 3 / 8) < 1e-9
    assert abs(wt.optimal_witness(st.ghz(3)).lambda_sq - 0.5) < 1e-9
    assert abs(wt.optimal_witness(st.w_tilde()).lambda_sq - 4 / 9) < 1e-9


def test_detector_examples():
    g = wt.optimal_witness(st.ghz(3))
    assert abs(wt.detector(g, st.density(st.ghz(3))) + 0.5) < 1e-9
    s = wt.optimal_witness(st.symmetric_state(4, 2))
    assert abs(wt.detector(s, st.density(st.symmetric_state(4, 2))) + 5 / 8) < 1e-9
    for psi in (st.ghz(3), st.w_state(), st.symmetric_state(4, 2)):
        w = wt.optimal_witness(psi)
        n = psi.num_parties
        assert abs(wt.detector(w, wt.maximally_mixed((2,) * n)) - (w.lambda_sq - 1 / 2**n)) < 1e-14
    with pytest.raises(DimensionMismatch):
        wt.detector(g, st.density(st.ghz(4)))


def test_dense_matches_detector(rng):
    w = wt.optimal_witness(st.w_state())
    rho = st.mix([(p, st.random_pure((2, 2, 2), rng)) for p in (0.2, 0.8)])
    assert abs(np.trace(w.dense() @ rho.matrix).real - wt.detector(w, rho)) < 1e-14


def test_positive_on_products(rng):
    states = [st.ghz(3), st.w_state(), st.w_tilde(), st.symmetric_state(4, 2), st.random_pure((2, 2, 2), rng)]
    for psi in states:
        w = wt.optimal_witness(psi)
        vals = [wt.detector(w, st.random_product(psi.dims, rng)) for _ in range(300)]
        assert min(vals) >= -1e-9


def test_below_range_has_violating_product():
    psi = st.w_state()
    res = h.entanglement_eigenvalue(psi)
    w = wt.WitnessOperator(res.lambda_max**2 - 1e-6, psi)
    assert wt.detector(w, res.maximizer) < 0
    with pytest.raises(InvalidWitness):
        wt.make_witness(psi, res.lambda_max**2 - 1e-6, lambda_max=res.lambda_max)
    with pytest.raises(InvalidWitness):
        wt.WitnessOperator(1.0, psi)
