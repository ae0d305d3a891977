import math

import numpy as np
import pytest

import qil


def qubits(*labels):
    return qil.SystemRegistry([qil.SystemEntry.physical(l, 2) for l in labels])


def bell(x, y):
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / math.sqrt(2)
    return qil.DensityMatrix.from_pure(qil.PureState(qubits(x, y), v))


def test_entropies_and_partial_trace():
    rho = bell("X", "Y")
    assert qil.von_neumann(rho) == pytest.approx(0.0, abs=1e-12)
    red = qil.partial_trace(rho, ["X"])
    assert qil.von_neumann(red) == pytest.approx(1.0, abs=1e-12)
    assert qil.directed_entanglement(rho, ["X"], ["Y"]) == pytest.approx(1.0, abs=1e-12)


def test_shannon_frozen_value():
    assert qil.shannon(np.array([0.9, 0.1])) == pytest.approx(0.4689955935892812, abs=1e-12)


def test_channel_and_holevo():
    ch = qil.preset_channel("depolarizing", 1.0)
    out = ch.apply(np.eye(2, dtype=complex) / 2)
    assert np.allclose(out, np.eye(2) / 2, atol=1e-12)

    e0 = np.array([1, 0], dtype=complex)
    e1 = np.array([0, 1], dtype=complex)
    ens = qil.Ensemble(2, [(0.5, e0), (0.5, e1)])
    assert qil.holevo_chi(ens, qil.preset_channel("identity", 0.0)) == pytest.approx(1.0)


def test_measurement_protocol():
    psi = qil.PureState(qubits("Q"), np.array([math.sqrt(0.3), math.sqrt(0.7)], dtype=complex))
    state = qil.simulate_measurement(psi, qil.MeasurementSpec(target="Q"))
    p = qil.diagonal_distribution(qil.partial_trace(state, ["B"]), "B")
    assert p[0] == pytest.approx(0.3, abs=1e-12)
    assert p[1] == pytest.approx(0.7, abs=1e-12)


def test_classical_communication_report():
    e0 = np.array([1, 0], dtype=complex)
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    rep = qil.simulate_classical_communication(
        qil.Ensemble(2, [(0.5, e0), (0.5, plus)]),
        qil.preset_channel("identity", 0.0),
        qil.MeasurementSpec(target="Q"),
    )
    assert rep["chi"] == pytest.approx(0.6008760366928562, abs=1e-12)
    assert rep["I_AB"] == pytest.approx(0.31127812445913294, abs=1e-12)
    assert rep["pass"]


def test_cascade_and_suite():
    rep = qil.simulate_cascade([2, 4], sweeps=1, seed=5)
    assert len(rep["trajectory"]) == 2
    assert rep["pass"]
    assert rep["trajectory_csv"].startswith("step,coupling_pair,S_T")

    suite = qil.run_default_suite(seed=11, trials=3)
    assert suite["pass"]
    assert len(suite["results"]) == 16
