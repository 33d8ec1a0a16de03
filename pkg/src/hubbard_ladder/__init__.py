"""Qubit-ladder emulator of the spin-full 1D Fermi-Hubbard model.

Two chains of qubits with flip-flop couplings along the chains and ZZ
couplings across the rungs reproduce, mode for mode, the spectrum of the
one-dimensional Fermi-Hubbard model.  This package builds both Hamiltonians
on the same register, checks their equivalence, simulates spectra and
dynamics, translates transmon-circuit parameters into model couplings, and
runs the quality-check protocols a hardware realization would use.
"""

__version__ = "0.1.0"

from .circuit import (
    CircuitReport,
    CouplerSpec,
    DeviceChain,
    EffectiveGzResult,
    TransmonSpec,
    capacitance_matrix_check,
    capacitance_scaling_exponent,
    circuit_to_hubbard,
    duffing_levels,
    effective_gz_numeric,
    gamma_factor,
    gx_from_circuit,
    gx_per_bond,
    gz_from_circuit,
    transmon_splitting,
    universal_ut,
    ut_curve,
)
from .errors import (
    AccuracyError,
    CapacityError,
    ConvergenceError,
    DiagnosticError,
    DomainError,
    LadderError,
    PropagationError,
)
from .hamiltonians import (
    HubbardParams,
    LadderParams,
    build_hfh,
    build_hqs,
    build_hqs_xx,
    chain_number_operator,
    hfh_terms,
    hqs_terms,
    hqs_xx_terms,
    inverse_map_params,
    map_params,
    spectral_offset,
)
from .jordan_wigner import (
    AlgebraReport,
    FermionOp,
    build_annihilation,
    build_creation,
    check_algebra,
    hopping_operator,
    number_operator,
)
from .operators import (
    Chain,
    LadderIndex,
    PauliString,
    SectorBasis,
    SparseOperator,
    StateVector,
    delinearize,
    embed_state,
    linearize,
    matvec,
    multiply_strings,
    project_operator,
    project_state,
    realize,
    realize_in_sector,
    realize_sum,
    realize_sum_in_sector,
    sector_basis,
    sector_projector,
)
from .protocols import (
    AdiabaticResult,
    DisorderSpec,
    DisorderStats,
    ExcitationPattern,
    PartitionReport,
    SymmetryReport,
    TightBindingReport,
    adiabatic_prepare,
    check_symmetries,
    disorder_sweep,
    mode_sum_propagator,
    open_chain_energies,
    partition_experiment,
    prepare_product_state,
    restrict_params,
    tight_binding_experiment,
)
from .solver import (
    EvolutionResult,
    SpectrumResult,
    correlation,
    dense_spectrum,
    krylov_evolve,
    lanczos_extremal,
    observable_series,
)
