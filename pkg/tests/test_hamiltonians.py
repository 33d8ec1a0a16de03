"""Tests for the two Hamiltonians and the parameter map.

The equivalence of the ladder and Hubbard spectra is checked against dense
diagonalization; closed-form oracles (occupation enumeration, decoupled
qubits, free fermions) are evaluated inline.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hubbard_ladder import (
    DomainError,
    HubbardParams,
    LadderParams,
    build_hfh,
    build_hqs,
    build_hqs_xx,
    chain_number_operator,
    dense_spectrum,
    inverse_map_params,
    map_params,
    prepare_product_state,
    sector_basis,
    sector_projector,
    spectral_offset,
)
from hubbard_ladder.protocols import ExcitationPattern

finite_floats = st.floats(min_value=-3.0, max_value=3.0,
                          allow_nan=False, allow_infinity=False)


def spectrum(op):
    return dense_spectrum(op, compute_vectors=False).eigenvalues


class TestBuildHqs:
    def test_single_rung_spectrum(self):
        p = LadderParams(n=1, epsilon=1.0, gz=0.25)
        np.testing.assert_allclose(
            spectrum(build_hqs(p)), [-0.75, -0.25, -0.25, 1.25], atol=1e-12
        )

    def test_decoupled_qubits(self):
        eps = 0.8
        p = LadderParams(n=2, epsilon=eps, gx=0.0, gz=0.0)
        expected = sorted(
            sum(s * eps / 2 for s in signs)
            for signs in itertools.product([-1, 1], repeat=4)
        )
        np.testing.assert_allclose(spectrum(build_hqs(p)), expected, atol=1e-12)

    def test_two_decoupled_flip_flop_chains(self):
        p = LadderParams(n=2, epsilon=0.0, gx=1.0, gz=0.0)
        # Independent oracle: one 2-site flip-flop chain on 2 qubits ...
        sp = np.array([[0, 0], [1, 0]], dtype=complex)
        chain = np.kron(sp.conj().T, sp) + np.kron(sp, sp.conj().T)
        # ... and the ladder is two of them.
        full = np.kron(chain, np.eye(4)) + np.kron(np.eye(4), chain)
        np.testing.assert_allclose(
            spectrum(build_hqs(p)), np.sort(np.linalg.eigvalsh(full)), atol=1e-12
        )
        single = sector_basis(2, 0, 1)
        np.testing.assert_allclose(
            spectrum(build_hqs(p, single)), [-1.0, 1.0], atol=1e-12
        )

    def test_malformed_lists(self):
        with pytest.raises(DomainError):
            LadderParams(n=2, epsilon=[1.0, 2.0, 3.0], gx=0.0, gz=0.0)
        with pytest.raises(DomainError):
            LadderParams(n=3, epsilon=1.0, gx=[0.1], gz=0.0)
        with pytest.raises(DomainError):
            LadderParams(n=2, epsilon=1.0, gx=0.0, gz=[0.1, np.inf])


class TestBuildHfh:
    def test_single_site_occupation_enumeration(self):
        mu, u = 0.5, 1.0
        p = HubbardParams(n=1, mu=mu, u=u, t=0.3)
        expected = sorted(
            -mu * (n1 + n2) + u * n1 * n2
            for n1, n2 in itertools.product([0, 1], repeat=2)
        )
        np.testing.assert_allclose(spectrum(build_hfh(p)), expected, atol=1e-12)

    def test_free_fermion_fillings(self):
        t = 0.7
        p = HubbardParams(n=2, mu=0.0, u=0.0, t=t)
        # Single-particle energies are -t, +t per chain; the many-body
        # spectrum is every filling of the four modes.
        modes = [-t, t, -t, t]
        expected = sorted(
            sum(e for e, occupied in zip(modes, occ) if occupied)
            for occ in itertools.product([0, 1], repeat=4)
        )
        np.testing.assert_allclose(spectrum(build_hfh(p)), expected, atol=1e-12)

    def test_vacuum_annihilated(self):
        rng = np.random.default_rng(2)
        for _ in range(3):
            mu, u, t = rng.uniform(-2, 2, 3)
            h = build_hfh(HubbardParams(n=3, mu=mu, u=u, t=t))
            vac = prepare_product_state(ExcitationPattern.from_sites(), 3)
            np.testing.assert_allclose(h.apply(vac.amplitudes), 0.0, atol=1e-14)


class TestParameterMap:
    def test_forward_example(self):
        h = map_params(LadderParams(n=2, epsilon=1.0, gz=0.25, gx=-0.5))
        assert (h.mu, h.u, h.t) == pytest.approx((-0.5, 1.0, 0.5))

    def test_zero_maps_to_zero(self):
        h = map_params(LadderParams(n=2, epsilon=0.0, gz=0.0, gx=0.0))
        assert (h.mu, h.u, h.t) == (0.0, 0.0, 0.0)

    @given(finite_floats, finite_floats, finite_floats)
    def test_round_trip(self, eps, gx, gz):
        p = LadderParams(n=3, epsilon=eps, gx=gx, gz=gz)
        back = inverse_map_params(map_params(p))
        assert back.epsilon == pytest.approx(eps, abs=1e-15)
        assert back.gx == pytest.approx(gx, abs=1e-15)
        assert back.gz == pytest.approx(gz, abs=1e-15)

    def test_disorder_lists_rejected(self):
        p = LadderParams(n=2, epsilon=[1.0, 1.1, 0.9, 1.0], gx=0.1, gz=0.1)
        with pytest.raises(DomainError):
            map_params(p)
        with pytest.raises(DomainError):
            spectral_offset(p)


class TestSpectralOffset:
    def test_single_rung_matches_shifted_spectrum(self):
        p = LadderParams(n=1, epsilon=1.0, gz=0.25)
        offset = spectral_offset(p)
        assert offset == pytest.approx(-0.75)
        qs = spectrum(build_hqs(p))
        fh = spectrum(build_hfh(map_params(p)))
        np.testing.assert_allclose(qs, np.sort(fh + offset), atol=1e-12)

    def test_vanishes_when_gz_equals_epsilon(self):
        assert spectral_offset(LadderParams(n=4, epsilon=0.3, gz=0.3)) == 0.0

    def test_three_site_random_parameters(self):
        rng = np.random.default_rng(11)
        for _ in range(4):
            eps, gx, gz = rng.uniform(-1.5, 1.5, 3)
            p = LadderParams(n=3, epsilon=eps, gx=gx, gz=gz)
            qs = spectrum(build_hqs(p))
            fh = spectrum(build_hfh(map_params(p)))
            np.testing.assert_allclose(
                qs, np.sort(fh + spectral_offset(p)), atol=1e-10
            )


class TestEquivalenceTheorem:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_sorted_spectra_agree(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(3):
            eps, gx, gz = rng.uniform(-2, 2, 3)
            p = LadderParams(n=n, epsilon=eps, gx=gx, gz=gz)
            qs = spectrum(build_hqs(p))
            fh = spectrum(build_hfh(map_params(p)))
            assert np.max(np.abs(qs - np.sort(fh + spectral_offset(p)))) <= 1e-10


class TestStructuralInvariants:
    @pytest.mark.parametrize("disordered", [False, True])
    def test_chain_populations_commute(self, disordered):
        if disordered:
            rng = np.random.default_rng(4)
            p = LadderParams(n=3, epsilon=rng.uniform(0.8, 1.2, 6),
                             gx=rng.uniform(0.2, 0.4, 4),
                             gz=rng.uniform(0.05, 0.15, 3))
        else:
            p = LadderParams(n=3, epsilon=1.0, gx=0.3, gz=0.1)
        h = build_hqs(p)
        for up in (True, False):
            number = chain_number_operator(3, chain_up=up)
            assert h.commutator_with(number).norm_max() <= 1e-12

    def test_chain_exchange_symmetry(self):
        p = LadderParams(n=3, epsilon=1.3, gx=-0.4, gz=0.2)
        h = build_hqs(p).to_dense()
        dim = 1 << 6
        perm = np.empty(dim, dtype=int)
        for i in range(dim):
            down, up = i & 0b111, i >> 3
            perm[i] = (down << 3) | up
        np.testing.assert_allclose(h[np.ix_(perm, perm)], h, atol=0.0)

    def test_no_matrix_elements_between_sectors(self):
        p = HubbardParams(n=2, mu=0.4, u=1.2, t=0.6)
        h = build_hfh(p)
        sectors = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]
        for a in sectors:
            for b in sectors:
                if a == b:
                    continue
                pa = sector_projector(sector_basis(2, *a))
                pb = sector_projector(sector_basis(2, *b))
                assert (pa @ h @ pb).norm_max() == 0.0


class TestRotatingWaveVariant:
    def test_no_coupling_identical(self):
        p = LadderParams(n=3, epsilon=1.0, gx=0.0, gz=0.2)
        assert (build_hqs(p) - build_hqs_xx(p)).norm_max() == 0.0

    def test_single_site_identical(self):
        p = LadderParams(n=1, epsilon=1.0, gx=0.0, gz=0.3)
        assert (build_hqs(p) - build_hqs_xx(p)).norm_max() == 0.0

    def test_discrepancy_is_second_order(self):
        # eps=1, gx=0.01: the low-lying spectra differ at O(gx^2/eps) ~ 1e-4,
        # two orders below gx itself.
        p = LadderParams(n=2, epsilon=1.0, gx=0.01, gz=0.0)
        a = spectrum(build_hqs(p))[:6]
        b = spectrum(build_hqs_xx(p))[:6]
        dev = np.max(np.abs(a - b))
        assert 1e-5 < dev < 1e-3

    def test_log_log_slope_is_two(self):
        eps = 1.0
        ratios = np.array([1e-1, 1e-2, 1e-3])
        devs = []
        for r in ratios:
            p = LadderParams(n=2, epsilon=eps, gx=r * eps, gz=0.0)
            a = spectrum(build_hqs(p))[:6]
            b = spectrum(build_hqs_xx(p))[:6]
            devs.append(np.max(np.abs(a - b)))
        slope = np.polyfit(np.log(ratios), np.log(devs), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.1)


class TestPerElementParameters:
    def test_gx_single_list_applies_to_both_chains(self):
        shared = LadderParams(n=3, epsilon=1.0, gx=[0.1, 0.2], gz=0.0)
        explicit = LadderParams(n=3, epsilon=1.0,
                                gx=[0.1, 0.2, 0.1, 0.2], gz=0.0)
        assert (build_hqs(shared) - build_hqs(explicit)).norm_max() == 0.0

    def test_per_qubit_epsilon_on_diagonal(self):
        eps = [0.5, 1.0, 1.5, 2.0]
        p = LadderParams(n=2, epsilon=eps, gx=0.0, gz=0.0)
        h = build_hqs(p).to_dense()
        # all-excited state sits at +sum(eps)/2, vacuum at -sum(eps)/2
        assert h[-1, -1].real == pytest.approx(sum(eps) / 2)
        assert h[0, 0].real == pytest.approx(-sum(eps) / 2)

    def test_sector_restricted_build_matches_projection(self):
        from hubbard_ladder import project_operator
        p = LadderParams(n=3, epsilon=1.1, gx=0.4, gz=0.2)
        sector = sector_basis(3, 1, 1)
        direct = build_hqs(p, sector)
        projected = project_operator(build_hqs(p), sector)
        assert (direct - projected).norm_max() <= 1e-13
