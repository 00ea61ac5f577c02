"""Tests for Pauli strings and correctable index sets."""
import numpy as np
import pytest

from corrperf.errors import DimensionError, ModelError
from corrperf.pauli import (
    CodeParams,
    CorrectionMode,
    PauliString,
    dense_matrix,
    enumerate_correctable,
    multiply,
    weight,
    z_signs,
)
from corrperf.util import popcount

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)
SINGLE = {"I": I2, "X": X, "Y": Y, "Z": Z}


def _kron(label):
    out = np.eye(1, dtype=complex)
    for char in label:
        out = np.kron(out, SINGLE[char])
    return out


def test_label_masks():
    """Labels map to bit masks with qubit j on bit j."""
    p = PauliString.from_label("IZXYI")
    assert p.n == 5
    assert p.x_mask == 0b01100
    assert p.z_mask == 0b01010
    assert p.label == "IZXYI"
    assert weight(p) == 3
    assert p.x_weight == 2 and p.z_weight == 2
    assert not p.is_diagonal
    assert PauliString.from_key(5, p.key) == p


def test_identity_and_invalid_masks():
    """Identity has weight 0; masks wider than n are rejected."""
    assert weight(PauliString.identity(4)) == 0
    assert PauliString.identity(4).label == "IIII"
    with pytest.raises(ValueError):
        PauliString(n=2, x_mask=4)
    with pytest.raises(ValueError, match="unknown Pauli factor"):
        PauliString.from_label("XQ")


@pytest.mark.parametrize("label", ["X", "Y", "Z", "XZ", "YI", "ZYX", "IYY"])
def test_dense_matrix_matches_kronecker(label):
    """Qubit 0 is the first Kronecker factor."""
    assert np.allclose(dense_matrix(PauliString.from_label(label)), _kron(label))


def test_multiply_phases():
    """X Y = iZ and Y X = -iZ."""
    x, y = PauliString.from_label("X"), PauliString.from_label("Y")
    product, phase = multiply(x, y)
    assert product.label == "Z" and phase == 1j
    product, phase = multiply(y, x)
    assert product.label == "Z" and phase == -1j


def test_multiply_agrees_with_dense_products():
    """Symbolic products reproduce matrix products on two qubits."""
    labels = ["IX", "YZ", "XY", "ZZ", "YY", "XI"]
    for a in labels:
        for b in labels:
            p, q = PauliString.from_label(a), PauliString.from_label(b)
            r, phase = multiply(p, q)
            assert np.allclose(dense_matrix(p) @ dense_matrix(q), phase * dense_matrix(r))


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionError):
        multiply(PauliString.identity(2), PauliString.identity(3))


def test_z_signs_is_diagonal():
    p = PauliString.from_label("ZIZ")
    assert np.array_equal(z_signs(3, p.z_mask), np.diag(dense_matrix(p)).real)


def test_code_params_derive_t():
    """t = floor((d-1)/2) and [n,k,d] consistency."""
    assert CodeParams(n=7, k=1, d=3).t == 1
    assert CodeParams(n=5, k=1, d=3).tag == "[5,1,3]"
    with pytest.raises(ModelError):
        CodeParams(n=3, k=3, d=1)
    with pytest.raises(ModelError):
        CodeParams(n=3, k=1, d=5)
    synthetic = CodeParams.synthetic_code(2, 1)
    assert synthetic.t == 1 and synthetic.synthetic


def test_enumerate_correctable_steane():
    """[7,1,3]: identity plus 21 weight-one strings in total-weight mode, 8 x 8 in css-split."""
    code = CodeParams(n=7, k=1, d=3)
    total = enumerate_correctable(code, CorrectionMode.TOTAL_WEIGHT)
    assert len(total) == 22
    assert total[0] == PauliString.identity(7)
    assert [p.key for p in total] == sorted(p.key for p in total)
    assert all(weight(p) <= 1 for p in total)

    split = enumerate_correctable(code, CorrectionMode.CSS_SPLIT)
    assert len(split) == 64
    assert all(p.x_weight <= 1 and p.z_weight <= 1 for p in split)
    assert {p.key for p in total} <= {p.key for p in split}


def test_enumerate_correctable_t_zero():
    """t = 0 keeps only the identity."""
    strings = enumerate_correctable(CodeParams.synthetic_code(3, 0))
    assert strings == [PauliString.identity(3)]


def test_x_times_z():
    """X Z = -i Y."""
    product, phase = multiply(PauliString.from_label("X"), PauliString.from_label("Z"))
    assert product.label == "Y" and phase == -1j


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dense_strings_orthogonal(n):
    """Tr(S_p S_q) = 2^n [p = q] over every pair of n-qubit strings."""
    mats = np.stack([dense_matrix(PauliString.from_key(n, key)) for key in range(4 ** n)])
    gram = np.einsum("pij,qji->pq", mats, mats)
    assert np.allclose(gram, 2 ** n * np.eye(4 ** n), atol=1e-12)


def test_dense_strings_orthogonal_six_qubits():
    rng = np.random.default_rng(11)
    keys = [int(k) for k in rng.choice(4 ** 6, size=24, replace=False)]
    mats = [dense_matrix(PauliString.from_key(6, key)) for key in keys]
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            assert abs(np.trace(a @ b) - (64 if i == j else 0)) < 1e-9


def _check_product(p, q):
    r, phase = multiply(p, q)
    assert np.allclose(dense_matrix(p) @ dense_matrix(q), phase * dense_matrix(r), atol=1e-12)
    assert weight(r) <= weight(p) + weight(q)


@pytest.mark.parametrize("n", [1, 2])
def test_multiply_all_pairs(n):
    """Every product of n-qubit strings matches the matrix product and obeys the weight bound."""
    strings = [PauliString.from_key(n, key) for key in range(4 ** n)]
    for p in strings:
        for q in strings:
            _check_product(p, q)


def test_multiply_random_pairs_four_qubits():
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, 4 ** 4, size=(200, 2)):
        _check_product(PauliString.from_key(4, int(a)), PauliString.from_key(4, int(b)))


def test_popcount_scalars_and_arrays():
    values = np.arange(64)
    counts = popcount(values)
    assert counts.tolist() == [bin(v).count("1") for v in range(64)]
    assert popcount(0b1011) == 3 and isinstance(popcount(7), int)
    # int64 result keeps sign arithmetic exact
    assert (1 - 2 * (counts & 1)).min() == -1
