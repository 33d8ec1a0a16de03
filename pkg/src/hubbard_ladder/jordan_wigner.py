"""Fermionic operators on the qubit register via the Jordan-Wigner mapping.

An annihilation operator on mode j carries a parity string over all modes
below it: c_j = (prod_{k<j} -sigma^z_k) sigma^-_j.  Under the sign
convention of :mod:`hubbard_ladder.operators` the phase exp(i pi n_k)
equals 1 - 2 n_k = -sigma^z_k, which fixes every sign below once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .operators import PauliString, SparseOperator, realize

CAR_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FermionOp:
    """One fermionic mode operator with its qubit-register realization."""

    mode: int
    dagger: bool
    string: PauliString
    realized: SparseOperator


def annihilation_string(j: int, num_modes: int) -> PauliString:
    """PauliString for c_j: (-1)^(j-1) Z_1 ... Z_{j-1} sigma^-_j."""
    if not 1 <= j <= num_modes:
        raise DomainError(f"mode {j} out of range for {num_modes} modes")
    factors = {k: "Z" for k in range(1, j)}
    factors[j] = "-"
    return PauliString((-1.0) ** (j - 1), factors)


def creation_string(j: int, num_modes: int) -> PauliString:
    return annihilation_string(j, num_modes).dagger()


def build_annihilation(j: int, n: int) -> FermionOp:
    """c_j realized on the 2n-qubit ladder register."""
    string = annihilation_string(j, 2 * n)
    return FermionOp(mode=j, dagger=False, string=string,
                     realized=realize(string, 2 * n))


def build_creation(j: int, n: int) -> FermionOp:
    string = creation_string(j, 2 * n)
    return FermionOp(mode=j, dagger=True, string=string,
                     realized=realize(string, 2 * n))


@dataclass(frozen=True)
class AlgebraReport:
    """Outcome of the exhaustive anticommutator sweep."""

    n: int
    max_deviation: float
    worst_pair: tuple[str, int, int]
    pairs_checked: int

    @property
    def passed(self) -> bool:
        return self.max_deviation <= CAR_TOLERANCE


def check_algebra(n: int, operators: list[FermionOp] | None = None) -> AlgebraReport:
    """Verify {c_j^dag, c_j'} = delta I and {c_j, c_j'} = 0 for all pairs.

    ``operators`` overrides the internally built annihilation set; tests use
    this to confirm that a corrupted parity string is detected.
    """
    if 2 * n > 12:
        raise DomainError("algebra sweep is capped at 2n <= 12 qubits")
    if operators is None:
        operators = [build_annihilation(j, n) for j in range(1, 2 * n + 1)]
    dim = operators[0].realized.dimension
    identity = SparseOperator.identity(dim)
    worst = 0.0
    worst_pair = ("", 0, 0)
    pairs = 0
    for a in operators:
        for b in operators:
            pairs += 2
            anti = a.realized.dag().anticommutator_with(b.realized)
            expected = identity if a.mode == b.mode else SparseOperator.zero(dim)
            dev = (anti - expected).norm_max()
            if dev > worst:
                worst, worst_pair = dev, ("dag", a.mode, b.mode)
            dev = a.realized.anticommutator_with(b.realized).norm_max()
            if dev > worst:
                worst, worst_pair = dev, ("plain", a.mode, b.mode)
    return AlgebraReport(n=n, max_deviation=worst, worst_pair=worst_pair,
                         pairs_checked=pairs)


def hopping_string(j: int, jp: int, num_modes: int) -> PauliString:
    """PauliString for c_j^dag c_j', including the intervening parity string.

    The lower mode's own parity factor collapses against its sigma^+/-,
    leaving (-1)^(|j-j'|-1) sigma^+_j Z ... Z sigma^-_j' over the strictly
    intermediate qubits; nearest neighbors reduce to a bare flip-flop.
    """
    if j == jp:
        raise DomainError("equal modes: use number_string for c^dag_j c_j")
    for m in (j, jp):
        if not 1 <= m <= num_modes:
            raise DomainError(f"mode {m} out of range for {num_modes} modes")
    lo, hi = min(j, jp), max(j, jp)
    factors = {k: "Z" for k in range(lo + 1, hi)}
    factors[j] = "+"
    factors[jp] = "-"
    return PauliString((-1.0) ** (hi - lo - 1), factors)


def hopping_operator(j: int, jp: int, n: int) -> SparseOperator:
    """c_j^dag c_j' on the 2n-qubit register."""
    return realize(hopping_string(j, jp, 2 * n), 2 * n)


def number_strings(j: int, num_modes: int) -> list[PauliString]:
    """c_j^dag c_j = (sigma^z_j + 1)/2 as two PauliStrings."""
    if not 1 <= j <= num_modes:
        raise DomainError(f"mode {j} out of range for {num_modes} modes")
    return [PauliString(0.5, {j: "Z"}), PauliString(0.5, {})]


def number_operator(j: int, n: int) -> SparseOperator:
    """Occupation of mode j; a projector with spectrum {0, 1}."""
    strings = number_strings(j, 2 * n)
    total = realize(strings[0], 2 * n) + realize(strings[1], 2 * n)
    return total


def parity_strings(num_modes: int) -> PauliString:
    """Global fermion parity prod_k (-sigma^z_k)."""
    return PauliString((-1.0) ** num_modes,
                       {k: "Z" for k in range(1, num_modes + 1)})
