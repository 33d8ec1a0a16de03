"""Tests for the fermion-qubit mapping: parity strings and the CAR algebra."""

import numpy as np
import pytest

from hubbard_ladder import (
    DomainError,
    FermionOp,
    PauliString,
    build_annihilation,
    build_creation,
    check_algebra,
    hopping_operator,
    number_operator,
    realize,
)
from hubbard_ladder.jordan_wigner import annihilation_string, hopping_string, parity_strings

SZ = np.array([[-1, 0], [0, 1]], dtype=complex)
SP = np.array([[0, 0], [1, 0]], dtype=complex)
SM = np.array([[0, 1], [0, 0]], dtype=complex)
ID = np.eye(2, dtype=complex)


def kron_chain(*mats):
    """Dense operator with the first argument on qubit 1 (least significant)."""
    out = np.array([[1.0]], dtype=complex)
    for m in mats:
        out = np.kron(m, out)
    return out


def anticommutator(a, b):
    return a @ b + b @ a


class TestBuildOperators:
    def test_first_mode_has_no_string(self):
        op = build_annihilation(1, 1)
        assert op.string.factors == {1: "-"}
        assert op.string.coefficient == 1.0
        np.testing.assert_allclose(op.realized.to_dense(), kron_chain(SM, ID))

    def test_second_mode_string(self):
        # c_2 = (-sigma^z_1) sigma^-_2 on the 2-qubit register.
        op = build_annihilation(2, 1)
        expected = -kron_chain(SZ, SM)
        np.testing.assert_allclose(op.realized.to_dense(), expected, atol=1e-14)
        anti = anticommutator(op.realized.to_dense(),
                              op.realized.to_dense().conj().T)
        np.testing.assert_allclose(anti, np.eye(4), atol=1e-12)

    def test_third_mode_anticommutes_with_first(self):
        c3 = build_annihilation(3, 2).realized.to_dense()
        c1 = build_annihilation(1, 2).realized.to_dense()
        assert np.max(np.abs(anticommutator(c3, c1))) <= 1e-12
        # the parity string covers qubits 1 and 2
        string = annihilation_string(3, 4)
        assert string.factors == {1: "Z", 2: "Z", 3: "-"}

    def test_creation_is_adjoint(self):
        c = build_annihilation(2, 2).realized
        cdag = build_creation(2, 2).realized
        assert (cdag - c.dag()).norm_max() <= 1e-14

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            build_annihilation(5, 2)


class TestAlgebraCheck:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_clean_algebra(self, n):
        report = check_algebra(n)
        assert report.max_deviation <= 1e-12
        assert report.passed

    def test_corrupted_string_detected(self):
        # Strip the parity string from mode 2: the state-dependent sign is
        # lost and cross anticommutators become ~2 instead of 0.
        n = 2
        ops = [build_annihilation(j, n) for j in range(1, 2 * n + 1)]
        bare = PauliString(1.0, {2: "-"})
        ops[1] = FermionOp(mode=2, dagger=False, string=bare,
                           realized=realize(bare, 2 * n))
        report = check_algebra(n, operators=ops)
        assert report.max_deviation == pytest.approx(2.0, abs=1e-12)
        assert not report.passed

    def test_size_cap(self):
        with pytest.raises(DomainError):
            check_algebra(7)


class TestHopping:
    def test_adjacent_is_bare_flip_flop(self):
        lhs = hopping_operator(2, 3, 2)
        rhs = realize(PauliString(1.0, {2: "+", 3: "-"}), 4)
        assert (lhs - rhs).norm_max() <= 1e-14

    def test_long_range_matches_composition(self):
        # c^dag_1 c_3 must equal the product of the separately built
        # operators, string factors included.
        lhs = hopping_operator(1, 3, 2)
        rhs = build_creation(1, 2).realized @ build_annihilation(3, 2).realized
        assert (lhs - rhs).norm_max() <= 1e-12
        assert hopping_string(1, 3, 4).factors[2] == "Z"

    def test_mutual_adjoints(self):
        a = hopping_operator(1, 4, 2)
        b = hopping_operator(4, 1, 2)
        assert (a.dag() - b).norm_max() <= 1e-12

    def test_equal_modes_rejected(self):
        with pytest.raises(DomainError):
            hopping_operator(2, 2, 2)

    def test_string_locality_nearest_neighbor(self):
        for j in (1, 2, 3):
            factors = hopping_string(j, j + 1, 4).factors
            assert set(factors) == {j, j + 1}


class TestNumberOperator:
    @pytest.mark.parametrize("j", [1, 2])
    def test_projector(self, j):
        n_op = number_operator(j, 1)
        assert ((n_op @ n_op) - n_op).norm_max() <= 1e-12
        assert n_op.trace() == pytest.approx(2.0)

    def test_matches_composition(self):
        for j in (1, 2, 3, 4):
            direct = number_operator(j, 2)
            composed = build_creation(j, 2).realized @ build_annihilation(j, 2).realized
            assert (direct - composed).norm_max() <= 1e-12

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            number_operator(0, 2)


class TestAlgebraProperties:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_full_car_algebra(self, n):
        """{c^dag_j, c_j'} = delta I and {c_j, c_j'} = 0 for every pair."""
        ops = [build_annihilation(j, n).realized for j in range(1, 2 * n + 1)]
        identity = np.eye(ops[0].dimension)
        worst = 0.0
        for i, a in enumerate(ops):
            for j, b in enumerate(ops):
                anti = a.dag().anticommutator_with(b).to_dense()
                if i == j:
                    anti = anti - identity
                worst = max(worst, np.max(np.abs(anti)))
                worst = max(worst, a.anticommutator_with(b).norm_max())
        assert worst <= 1e-12

    @pytest.mark.parametrize("n", [2, 3])
    def test_parity_commutes_with_bilinears(self, n):
        parity = realize(parity_strings(2 * n), 2 * n)
        rng = np.random.default_rng(7)
        for _ in range(6):
            j, jp = rng.choice(2 * n, size=2, replace=False) + 1
            bilinear = hopping_operator(int(j), int(jp), n)
            assert parity.commutator_with(bilinear).norm_max() <= 1e-12
