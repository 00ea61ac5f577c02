"""Tests for spin-bath models and thermal states."""
import math

import numpy as np
import pytest
from scipy.special import comb

from corrperf.errors import DimensionError, ModelError
from corrperf.models import (
    BathSpec,
    NoiseModel,
    Topology,
    bath_basis_weights,
    build_model,
    catalog,
    coupling_scale,
    dense_hamiltonian,
    hamiltonian_diagonal,
    thermal_state,
)
from corrperf.pauli import CodeParams, PauliString, dense_matrix
from corrperf.util import popcount


def _model(n, topology, N, beta_omega=0.5, g_prime=0.0, omega=1.0, t=0):
    bath = BathSpec(topology=topology, N=N, omega=omega, beta=beta_omega / omega if omega else 0.0)
    return NoiseModel(code=CodeParams.synthetic_code(n, t), bath=bath, g_prime=g_prime)


def test_infinite_temperature_weights():
    """beta = 0 gives binomial sector weights C(N,k) / 2^N."""
    state = thermal_state(BathSpec.from_beta_omega(Topology.SHARED_NONLOCAL, 6, 0.0))
    assert np.allclose(state.weights, comb(6, np.arange(7)) / 2 ** 6, atol=1e-15)
    assert abs(state.log_partition - 6 * math.log(2)) < 1e-12


def test_empty_bath():
    state = thermal_state(BathSpec.from_beta_omega(Topology.SHARED_NONLOCAL, 0, 0.3))
    assert state.weights.tolist() == [1.0]
    assert state.magnetizations.tolist() == [0.0]


def test_zero_temperature_all_down():
    """beta -> infinity puts all weight on k = N (energy Omega (N - 2k) is lowest there)."""
    state = thermal_state(BathSpec(topology=Topology.SHARED_NONLOCAL, N=4, beta=math.inf))
    assert state.weights.tolist() == [0.0, 0.0, 0.0, 0.0, 1.0]


def test_partition_function_and_normalization():
    """Z = (2 cosh(beta Omega))^N and the weights sum to one."""
    state = thermal_state(BathSpec.from_beta_omega(Topology.SHARED_NONLOCAL, 196, 0.01))
    assert abs(state.log_partition - 196 * math.log(2 * math.cosh(0.01))) < 1e-10
    assert abs(math.fsum(state.weights) - 1) < 1e-12
    # negative magnetization is favoured
    assert state.weights @ state.magnetizations < 0


def test_basis_weights_depend_on_sector_only():
    """Relabeling bath spins does not change their thermal weight."""
    model = _model(1, Topology.SHARED_NONLOCAL, 3)
    weights = bath_basis_weights(model)
    assert abs(weights.sum() - 1) < 1e-14
    for k in range(4):
        sector = weights[popcount(np.arange(8)) == k]
        assert np.allclose(sector, sector[0], rtol=0, atol=1e-16)


def test_single_pair_hamiltonian():
    """g sigma_z Z has eigenvalues {+g, -g, -g, +g} in the product basis."""
    model = _model(1, Topology.SHARED_NONLOCAL, 1, beta_omega=0.0, omega=0.0)
    assert hamiltonian_diagonal(model).tolist() == [1.0, -1.0, -1.0, 1.0]


def test_hamiltonian_is_diagonal():
    H = dense_hamiltonian(_model(2, Topology.SHARED_NONLOCAL, 3, g_prime=0.1))
    assert np.count_nonzero(H - np.diag(np.diag(H))) == 0
    assert np.allclose(H, H.conj().T)


def test_three_body_term_expansion():
    """g' sum_{j<k} s_j s_k B against dense Pauli products (n = 3, N = 2)."""
    base = _model(3, Topology.SHARED_NONLOCAL, 2)
    three = _model(3, Topology.SHARED_NONLOCAL, 2, g_prime=0.1)
    pairs = sum(dense_matrix(PauliString.from_label(label)) for label in ("ZZI", "ZIZ", "IZZ"))
    bath = dense_matrix(PauliString.from_label("ZI")) + dense_matrix(PauliString.from_label("IZ"))
    expected = 0.1 * np.diag(np.kron(pairs, bath)).real
    assert np.allclose(hamiltonian_diagonal(three) - hamiltonian_diagonal(base), expected, atol=1e-14)


def test_local_split_is_direct_sum():
    """Local-split with N = 4 on two qubits: spectrum of two independent 2-spin star models."""
    split = _model(2, Topology.LOCAL_SPLIT, 4)
    star = hamiltonian_diagonal(_model(1, Topology.SHARED_NONLOCAL, 2))
    expected = sorted(a + b for a in star for b in star)
    assert np.allclose(sorted(hamiltonian_diagonal(split)), expected)
    per_qubit = _model(2, Topology.PER_QUBIT_LOCAL, 2)
    assert np.array_equal(hamiltonian_diagonal(split), hamiltonian_diagonal(per_qubit))


def test_dense_cap():
    with pytest.raises(DimensionError):
        hamiltonian_diagonal(_model(3, Topology.PER_QUBIT_LOCAL, 4))


def test_build_model_defaults_and_errors():
    """Config dictionaries resolve to models; inconsistent ones raise ModelError."""
    model = build_model(
        {"code": {"n": 7, "k": 1, "d": 3}, "topology": "shared-nonlocal", "N": 7, "beta_omega": 0.01}
    )
    assert model.is_symmetric and model.g_prime == 0
    assert model.tag == "[7,1,3] shared-nonlocal N=7 bO=0.01"

    three = build_model(
        {"code": {"n": 7, "t": 1}, "topology": "per-qubit-local", "N": 7, "beta_omega": 0.01, "gprime_ratio": 0.1}
    )
    assert three.code.synthetic and abs(three.g_prime - 0.1) < 1e-15
    assert three.total_bath_spins == 49

    base = {"code": {"n": 7, "k": 1, "d": 3}, "N": 7, "beta_omega": 0.01}
    with pytest.raises(ModelError, match="unknown model keys"):
        build_model({**base, "topology": "shared-nonlocal", "colour": "red"})
    with pytest.raises(ModelError):
        build_model({**base, "topology": "ring"})
    with pytest.raises(ModelError, match="not divisible"):
        build_model({**base, "topology": "local-split", "N": 8})
    with pytest.raises(ModelError):
        build_model({**base, "topology": "shared-nonlocal", "N": -1})
    with pytest.raises(ModelError):
        build_model({**base, "topology": "shared-nonlocal", "beta_omega": -0.5})


def test_coupling_table_shape_and_symmetry():
    code = CodeParams.synthetic_code(2, 1)
    bath = BathSpec(topology=Topology.SHARED_NONLOCAL, N=3, beta=0.1, couplings=((1.0, 0.5, 0.2), (0.3, 0.9, 0.7)))
    model = NoiseModel(code=code, bath=bath)
    assert not model.is_symmetric
    assert model.coupling_matrix().shape == (2, 3)
    with pytest.raises(ModelError, match="coupling table"):
        NoiseModel(code=code, bath=bath.model_copy(update={"couplings": ((1.0, 1.0),)}))


def test_coupling_table_sets_scale():
    """g follows the table: its common value, or max |g_im| when asymmetric."""
    assert coupling_scale(((2.0, 2.0), (2.0, 2.0))) == 2.0
    assert coupling_scale(((1.0, -3.0), (0.5, 0.5))) == 3.0

    bath = BathSpec(topology=Topology.SHARED_NONLOCAL, N=2, beta=0.1, couplings=((2.0, 2.0), (2.0, 2.0)))
    assert bath.g == 2.0
    with pytest.raises(ModelError, match="reference scale"):
        BathSpec(topology=Topology.SHARED_NONLOCAL, N=2, beta=0.1, g=1.0, couplings=((2.0, 2.0), (2.0, 2.0)))

    base = {"code": {"n": 2, "t": 1}, "topology": "shared-nonlocal", "N": 2, "beta_omega": 0.1}
    model = build_model({**base, "couplings": [[2, 2], [2, 2]], "gprime_ratio": 0.1})
    assert model.bath.g == 2.0
    assert abs(model.g_prime - 0.2) < 1e-15
    with pytest.raises(ModelError, match="reference scale"):
        build_model({**base, "g": 1.0, "couplings": [[2, 2], [2, 2]]})


def test_family_consistency():
    code = CodeParams.synthetic_code(2, 1)
    bath = BathSpec.from_beta_omega(Topology.SHARED_NONLOCAL, 2, 0.1)
    assert NoiseModel(code=code, bath=bath, g_prime=0.1).family.value == "dephasing-3body"
    with pytest.raises(ModelError):
        NoiseModel(code=code, bath=bath, g_prime=0.1, family="dephasing-2body")


def test_catalog_skips_indivisible_split():
    code = CodeParams(n=7, k=1, d=3)
    assert len(catalog(code, 7, 0.01, (0.0, 0.1))) == 6
    assert len(catalog(code, 8, 0.01)) == 2
