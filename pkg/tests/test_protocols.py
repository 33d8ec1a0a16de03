"""Tests for the initialization and quality-control protocols."""

import warnings

import numpy as np
import pytest

from hubbard_ladder import (
    Chain,
    DisorderSpec,
    DomainError,
    ExcitationPattern,
    LadderIndex,
    LadderParams,
    adiabatic_prepare,
    build_hfh,
    build_hqs,
    check_symmetries,
    dense_spectrum,
    disorder_sweep,
    map_params,
    open_chain_energies,
    partition_experiment,
    prepare_product_state,
    project_state,
    restrict_params,
    sector_basis,
    spectral_offset,
    tight_binding_experiment,
)
from hubbard_ladder.protocols import draw_disordered


class TestPrepareProductState:
    def test_empty_pattern_is_hubbard_vacuum(self):
        psi = prepare_product_state(ExcitationPattern.from_sites(), 3)
        assert psi.norm() == 1.0
        assert psi.sector_tag == (0, 0)
        h = build_hfh(map_params(LadderParams(n=3, epsilon=0.7, gx=0.3, gz=0.1)))
        assert abs(h.expectation(psi.amplitudes)) <= 1e-14

    def test_single_up_excitation_sector(self):
        psi = prepare_product_state(
            ExcitationPattern.from_sites(up=[1]), 2
        )
        assert psi.sector_tag == (1, 0)
        # (1, up) is linear qubit 3 on n=2, i.e. basis index 4.
        assert psi.amplitudes[4] == 1.0

    def test_exact_unit_norm(self):
        psi = prepare_product_state(
            ExcitationPattern.from_sites(down=[1, 3], up=[2]), 3
        )
        assert psi.norm() == 1.0

    def test_invalid_site_rejected(self):
        with pytest.raises(DomainError):
            prepare_product_state(ExcitationPattern.from_sites(down=[4]), 3)


@pytest.fixture(scope="module")
def adiabatic_grid():
    """Overlaps over a geometric duration grid, computed once."""
    params = LadderParams(n=3, epsilon=1.0, gx=0.2, gz=0.1)
    pattern = ExcitationPattern.from_sites(down=[1])
    overlaps = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for duration in (160.0, 320.0):
            result = adiabatic_prepare(params, pattern, duration=duration,
                                       detuning=-6.0,
                                       substeps=int(2 * duration))
            overlaps[duration] = result.overlap
    return overlaps


class TestAdiabaticPrepare:
    def test_zero_detuning_reduces_to_static_overlap(self):
        params = LadderParams(n=3, epsilon=1.0, gx=0.2, gz=0.1)
        pattern = ExcitationPattern.from_sites(down=[1])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            result = adiabatic_prepare(params, pattern, duration=5.0,
                                       detuning=0.0, substeps=40)
        sector = sector_basis(3, 0, 1)
        spectrum = dense_spectrum(build_hqs(params, sector), sector=sector)
        psi = project_state(prepare_product_state(pattern, 3), sector)
        static = abs(np.vdot(spectrum.eigenvectors[:, 0], psi.amplitudes))
        assert result.overlap == pytest.approx(static, abs=1e-6)

    def test_slow_ramp_reaches_sector_ground(self, adiabatic_grid):
        assert adiabatic_grid[320.0] >= 0.99

    def test_doubling_duration_never_hurts(self, adiabatic_grid):
        assert adiabatic_grid[320.0] >= adiabatic_grid[160.0] - 1e-3

    def test_fast_ramp_warns(self):
        params = LadderParams(n=3, epsilon=1.0, gx=0.2, gz=0.1)
        pattern = ExcitationPattern.from_sites(down=[1])
        with pytest.warns(UserWarning, match="too fast"):
            result = adiabatic_prepare(params, pattern, duration=2.0,
                                       detuning=-6.0, substeps=30)
        assert result.ramp_too_fast

    def test_nonuniform_epsilon_rejected(self):
        params = LadderParams(n=2, epsilon=[1.0, 1.1, 1.0, 1.0], gx=0.2, gz=0.0)
        with pytest.raises(DomainError):
            adiabatic_prepare(params, ExcitationPattern.from_sites(down=[1]),
                              duration=1.0, detuning=-1.0)


class TestCheckSymmetries:
    def test_uniform_parameters(self):
        report = check_symmetries(LadderParams(n=4, epsilon=1.0, gx=0.3, gz=0.1))
        assert report.nup_commutator <= 1e-12
        assert report.ndown_commutator <= 1e-12
        assert report.swap_violation <= 1e-12
        assert report.conserved
        assert report.translation_spread is not None  # reported, not asserted

    def test_disordered_epsilon_breaks_swap_only(self):
        rng = np.random.default_rng(8)
        eps = 1.0 + 0.1 * rng.standard_normal(8)
        report = check_symmetries(LadderParams(n=4, epsilon=eps, gx=0.3, gz=0.1))
        assert report.nup_commutator <= 1e-12
        assert report.ndown_commutator <= 1e-12
        assert report.swap_violation > 1e-3

    def test_fully_decoupled_commutes(self):
        report = check_symmetries(LadderParams(n=3, epsilon=1.0, gx=0.0, gz=0.0))
        assert report.nup_commutator == 0.0
        assert report.ndown_commutator == 0.0
        assert report.swap_violation == 0.0


class TestTightBindingExperiment:
    def test_two_site_band(self):
        report = tight_binding_experiment(
            LadderParams(n=2, epsilon=1.0, gx=1.0, gz=0.2)
        )
        np.testing.assert_allclose(
            report.energies - report.offset, [-1.0, 1.0], atol=1e-12
        )

    @pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
    def test_band_matches_closed_form(self, n):
        params = LadderParams(n=n, epsilon=0.9, gx=0.37, gz=0.12)
        report = tight_binding_experiment(params)
        assert report.spectrum_deviation <= 1e-10

    def test_vacuum_energy_is_reference(self):
        params = LadderParams(n=3, epsilon=0.8, gx=0.4, gz=0.15)
        report = tight_binding_experiment(params)
        e_vac = spectral_offset(params)  # vacuum eigenvalue of the ladder
        assert report.offset == pytest.approx(e_vac + 0.8 - 2 * 0.15, abs=1e-12)

    def test_dynamics_match_mode_sum(self):
        params = LadderParams(n=5, epsilon=1.0, gx=0.5, gz=0.1)
        times = np.linspace(0.0, 12.0, 25)
        report = tight_binding_experiment(params, times=times, source_site=2)
        assert report.dynamics_deviation <= 1e-7

    def test_analytic_energies_exposed(self):
        params = LadderParams(n=4, epsilon=1.0, gx=0.3, gz=0.0)
        report = tight_binding_experiment(params)
        expected = open_chain_energies(4, -0.3)
        np.testing.assert_allclose(
            np.sort(report.analytic_energies - report.offset), expected,
            atol=1e-12,
        )

    def test_disordered_parameters_rejected(self):
        params = LadderParams(n=3, epsilon=[1.0] * 6, gx=0.3, gz=0.1)
        with pytest.raises(DomainError):
            tight_binding_experiment(params)


class TestPartitionExperiment:
    def test_leakage_and_block_match(self):
        params = LadderParams(n=4, epsilon=1.0, gx=0.5, gz=0.2)
        psi0 = prepare_product_state(
            ExcitationPattern.from_sites(down=[1], up=[2]), 4
        )
        times = np.linspace(0.0, 10.0, 11)
        report = partition_experiment(params, 2, psi0, times)
        assert report.support_side == "left"
        assert report.max_leakage <= 1e-9
        assert report.block_deviation <= 1e-9

    def test_last_bond_cut_confines_edge_site(self):
        params = LadderParams(n=3, epsilon=1.0, gx=0.5, gz=0.1)
        psi0 = prepare_product_state(ExcitationPattern.from_sites(down=[3]), 3)
        times = np.linspace(0.0, 8.0, 9)
        report = partition_experiment(params, 2, psi0, times)
        assert report.support_side == "right"
        assert report.max_leakage <= 1e-9
        assert report.block_deviation <= 1e-9

    def test_straddling_state_rejected(self):
        params = LadderParams(n=4, epsilon=1.0, gx=0.5, gz=0.2)
        psi0 = prepare_product_state(
            ExcitationPattern.from_sites(down=[1, 4]), 4
        )
        with pytest.raises(DomainError, match="one side"):
            partition_experiment(params, 2, psi0, [0.0, 1.0])

    def test_invalid_cut_rejected(self):
        params = LadderParams(n=3, epsilon=1.0, gx=0.5, gz=0.2)
        psi0 = prepare_product_state(ExcitationPattern.from_sites(down=[1]), 3)
        with pytest.raises(DomainError):
            partition_experiment(params, 3, psi0, [0.0])


class TestRestrictParams:
    def test_window_slices_per_element_values(self):
        params = LadderParams(
            n=4,
            epsilon=[1, 2, 3, 4, 5, 6, 7, 8],
            gx=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6],
            gz=[10, 20, 30, 40],
        )
        window = restrict_params(params, 2, 3)
        np.testing.assert_array_equal(window.epsilon_values(), [2, 3, 6, 7])
        np.testing.assert_array_equal(window.gx_values(), [0.2, 0.5])
        np.testing.assert_array_equal(window.gz_values(), [20, 30])

    def test_single_site_window(self):
        params = LadderParams(n=3, epsilon=1.0, gx=0.3, gz=0.2)
        window = restrict_params(params, 2, 2)
        assert window.n == 1
        np.testing.assert_array_equal(window.gz_values(), [0.2])


class TestDisorderSweep:
    BASE = LadderParams(n=3, epsilon=1.0, gx=0.3, gz=0.1)

    def test_zero_spread_gives_zero_deviation(self):
        spec = DisorderSpec(seed=5)
        stats = disorder_sweep(self.BASE, spec, samples=3)
        np.testing.assert_array_equal(stats.deviations, 0.0)

    def test_conservation_structural_under_disorder(self):
        spec = DisorderSpec(epsilon_spread=0.2, gx_spread=0.1, gz_spread=0.1,
                            seed=9, distribution="gaussian")
        stats = disorder_sweep(self.BASE, spec, samples=5)
        assert np.max(stats.conservation) <= 1e-12

    def test_seeded_runs_bit_identical(self):
        spec = DisorderSpec(epsilon_spread=0.05, seed=42)
        a = disorder_sweep(self.BASE, spec, samples=4)
        b = disorder_sweep(self.BASE, spec, samples=4)
        np.testing.assert_array_equal(a.deviations, b.deviations)
        np.testing.assert_array_equal(a.conservation, b.conservation)

    def test_dynamics_experiment(self):
        spec = DisorderSpec(epsilon_spread=0.02, seed=3)
        stats = disorder_sweep(
            self.BASE, spec, experiment="dynamics", samples=2,
            pattern=ExcitationPattern.from_sites(down=[1]),
            times=np.linspace(0.0, 5.0, 6),
        )
        assert stats.samples == 2
        assert np.all(stats.deviations > 0)

    def test_uniform_draw_matches_requested_std(self):
        base = LadderParams(n=4, epsilon=1.0, gx=0.3, gz=0.1)
        spec = DisorderSpec(epsilon_spread=0.1, seed=0)
        rng = np.random.default_rng(0)
        draws = np.concatenate([
            draw_disordered(base, spec, rng).epsilon_values() - 1.0
            for _ in range(4000)
        ])
        assert np.std(draws) == pytest.approx(0.1, rel=0.05)
        assert np.max(np.abs(draws)) <= np.sqrt(3) * 0.1 + 1e-12

    def test_validation(self):
        with pytest.raises(DomainError):
            DisorderSpec(epsilon_spread=-0.1)
        with pytest.raises(DomainError):
            DisorderSpec(distribution="lognormal")
        with pytest.raises(DomainError):
            disorder_sweep(self.BASE, DisorderSpec(), experiment="nonsense")
        with pytest.raises(DomainError):
            disorder_sweep(self.BASE, DisorderSpec(), experiment="dynamics",
                           samples=2)


class TestConservationDuringProtocols:
    def test_population_drift_stays_tiny(self):
        # The longest-running protocol path: evolve a superposition inside a
        # sector on the full register and watch the chain populations.
        from hubbard_ladder import (
            StateVector, chain_number_operator, krylov_evolve,
            observable_series,
        )
        n = 4
        params = LadderParams(n=n, epsilon=1.0, gx=0.4, gz=0.15)
        a = prepare_product_state(ExcitationPattern.from_sites(down=[1], up=[2]), n)
        b = prepare_product_state(ExcitationPattern.from_sites(down=[3], up=[4]), n)
        psi0 = StateVector((a.amplitudes + b.amplitudes) / np.sqrt(2), a.sector)
        times = np.linspace(0.0, 50.0 / 0.4, 21)
        result = krylov_evolve(build_hqs(params), psi0, times)
        for up in (True, False):
            series = observable_series(result, chain_number_operator(n, up))
            assert np.max(np.abs(series - series[0])) <= 1e-8
