"""The ladder Hamiltonian, the Fermi-Hubbard Hamiltonian, and the map between
their parameters.

Both Hamiltonians act on the same 2n-qubit register.  The ladder model
carries level splittings eps, flip-flop couplings gx along each chain, and
ZZ couplings gz on each rung; the Hubbard model carries chemical potential
mu, on-site energy u and transfer energy t.  For uniform parameters the two
spectra coincide up to the additive constant n (gz - eps): the ladder keeps
the constant that normal ordering removes from the fermionic form.

All energies are dimensionless multiples of one unit chosen by the caller
(the CLI layer interprets them as frequencies, E/h).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import jordan_wigner as jw
from .errors import DomainError
from .operators import (
    PauliString,
    SectorBasis,
    SparseOperator,
    multiply_strings,
    realize_sum,
    realize_sum_in_sector,
)

Scalar = Union[int, float]
PerElement = Union[Scalar, Sequence[Scalar]]


def _as_list(value: PerElement, length: int, name: str,
              alt_length: int | None = None) -> np.ndarray:
    """Resolve a scalar-or-list parameter to a float array of ``length``.

    ``alt_length`` admits a shorter form that is tiled once (used for gx,
    where one bond list may apply to both chains).
    """
    if np.isscalar(value):
        arr = np.full(length, float(value))
    else:
        arr = np.asarray(value, dtype=float)
        if alt_length is not None and len(arr) == alt_length:
            arr = np.tile(arr, length // alt_length)
        if len(arr) != length:
            raise DomainError(
                f"{name} list has length {len(arr)}, expected {length}"
                + (f" or {alt_length}" if alt_length else "")
            )
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class LadderParams:
    """Parameters of the qubit-ladder Hamiltonian.

    epsilon: level splitting; scalar or per-qubit list of length 2n in
        linear order (down chain 1..n, then up chain).
    gx: flip-flop strength; scalar, per-bond list of length n-1 (same for
        both chains), or length 2(n-1) (down bonds, then up bonds).
    gz: rung ZZ strength; scalar or per-rung list of length n.
    """

    n: int
    epsilon: PerElement = 0.0
    gx: PerElement = 0.0
    gz: PerElement = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"chain length must be >= 1, got {self.n}")
        # Validate lengths/finiteness eagerly.
        self.epsilon_values()
        self.gx_values()
        self.gz_values()

    def epsilon_values(self) -> np.ndarray:
        return _as_list(self.epsilon, 2 * self.n, "epsilon")

    def gx_values(self) -> np.ndarray:
        """Bond couplings, length 2(n-1): down bonds then up bonds."""
        if self.n == 1:
            if not np.isscalar(self.gx) and len(np.asarray(self.gx)) != 0:
                raise DomainError("gx list must be empty for n=1")
            return np.zeros(0)
        return _as_list(self.gx, 2 * (self.n - 1), "gx",
                        alt_length=self.n - 1)

    def gz_values(self) -> np.ndarray:
        return _as_list(self.gz, self.n, "gz")

    @property
    def is_uniform(self) -> bool:
        return (np.isscalar(self.epsilon) and np.isscalar(self.gx)
                and np.isscalar(self.gz))


@dataclass(frozen=True)
class HubbardParams:
    """Fermi-Hubbard parameters: chemical potential, on-site energy, hopping."""

    n: int
    mu: float
    u: float
    t: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"site count must be >= 1, got {self.n}")
        for name in ("mu", "u", "t"):
            if not np.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")


def hqs_terms(p: LadderParams) -> list[PauliString]:
    """Ladder Hamiltonian as a list of PauliStrings."""
    n = p.n
    eps = p.epsilon_values()
    gx = p.gx_values()
    gz = p.gz_values()
    terms = []
    for q in range(1, 2 * n + 1):
        terms.append(PauliString(0.5 * eps[q - 1], {q: "Z"}))
    for j in range(1, n + 1):
        terms.append(PauliString(gz[j - 1], {j: "Z", j + n: "Z"}))
    for chain_offset, bond_offset in ((0, 0), (n, n - 1)):
        for j in range(1, n):
            g = gx[bond_offset + j - 1]
            q1, q2 = chain_offset + j, chain_offset + j + 1
            terms.append(PauliString(g, {q1: "+", q2: "-"}))
            terms.append(PauliString(g, {q1: "-", q2: "+"}))
    return terms


def hqs_xx_terms(p: LadderParams) -> list[PauliString]:
    """Ladder Hamiltonian with the physical XX coupling in place of the
    rotating-wave flip-flop term."""
    n = p.n
    eps = p.epsilon_values()
    gx = p.gx_values()
    gz = p.gz_values()
    terms = []
    for q in range(1, 2 * n + 1):
        terms.append(PauliString(0.5 * eps[q - 1], {q: "Z"}))
    for j in range(1, n + 1):
        terms.append(PauliString(gz[j - 1], {j: "Z", j + n: "Z"}))
    for chain_offset, bond_offset in ((0, 0), (n, n - 1)):
        for j in range(1, n):
            g = gx[bond_offset + j - 1]
            q1, q2 = chain_offset + j, chain_offset + j + 1
            terms.append(PauliString(g, {q1: "X", q2: "X"}))
    return terms


def hfh_terms(p: HubbardParams) -> list[PauliString]:
    """Hubbard Hamiltonian as PauliStrings, assembled from the fermionic
    building blocks (number and hopping operators of the mapped modes)."""
    n = p.n
    num_modes = 2 * n
    terms: list[PauliString] = []
    for j in range(1, num_modes + 1):
        terms.extend(s.scaled(-p.mu) for s in jw.number_strings(j, num_modes))
    for j in range(1, n + 1):
        down = jw.number_strings(j, num_modes)
        up = jw.number_strings(j + n, num_modes)
        for a in up:
            for b in down:
                terms.extend(s.scaled(p.u) for s in multiply_strings(a, b))
    for offset in (0, n):
        for j in range(1, n):
            lo, hi = offset + j, offset + j + 1
            terms.append(jw.hopping_string(lo, hi, num_modes).scaled(-p.t))
            terms.append(jw.hopping_string(hi, lo, num_modes).scaled(-p.t))
    return terms


def build_hqs(p: LadderParams, sector: SectorBasis | None = None) -> SparseOperator:
    """Realize the ladder Hamiltonian (optionally inside one symmetry sector)."""
    if sector is None:
        return realize_sum(hqs_terms(p), 2 * p.n)
    return realize_sum_in_sector(hqs_terms(p), sector)


def build_hqs_xx(p: LadderParams, sector: SectorBasis | None = None) -> SparseOperator:
    if sector is None:
        return realize_sum(hqs_xx_terms(p), 2 * p.n)
    return realize_sum_in_sector(hqs_xx_terms(p), sector)


def build_hfh(p: HubbardParams, sector: SectorBasis | None = None) -> SparseOperator:
    """Realize the Hubbard Hamiltonian on the qubit register."""
    if sector is None:
        return realize_sum(hfh_terms(p), 2 * p.n)
    return realize_sum_in_sector(hfh_terms(p), sector)


def _require_uniform(p: LadderParams, what: str):
    if not p.is_uniform:
        raise DomainError(
            f"{what} is defined for uniform parameters only; "
            "per-element lists are present"
        )


def map_params(p: LadderParams) -> HubbardParams:
    """Ladder -> Hubbard parameter map: mu = -eps + 2 gz, u = 4 gz, t = -gx."""
    _require_uniform(p, "the parameter map")
    eps, gx, gz = float(p.epsilon), float(p.gx), float(p.gz)
    return HubbardParams(n=p.n, mu=-eps + 2.0 * gz, u=4.0 * gz, t=-gx)


def inverse_map_params(h: HubbardParams) -> LadderParams:
    """Unique inverse of :func:`map_params`."""
    gz = h.u / 4.0
    return LadderParams(n=h.n, epsilon=2.0 * gz - h.mu, gx=-h.t, gz=gz)


def spectral_offset(p: LadderParams) -> float:
    """Additive constant E0 = n (gz - eps) with
    spec(H_QS) = spec(H_FH) + E0 elementwise after sorting.

    Not a quantity from the mapping itself but the constant it discards;
    re-derived here and pinned by brute-force oracles in the test suite.
    """
    _require_uniform(p, "the spectral offset")
    return p.n * (float(p.gz) - float(p.epsilon))


def number_terms(n: int, chain_up: bool) -> list[PauliString]:
    """Total excitation number of one chain, N_s = sum_j (sigma^z + 1)/2."""
    offset = n if chain_up else 0
    terms = []
    for j in range(1, n + 1):
        terms.append(PauliString(0.5, {offset + j: "Z"}))
        terms.append(PauliString(0.5, {}))
    return terms


def chain_number_operator(n: int, chain_up: bool,
                          sector: SectorBasis | None = None) -> SparseOperator:
    if sector is None:
        return realize_sum(number_terms(n, chain_up), 2 * n)
    return realize_sum_in_sector(number_terms(n, chain_up), sector)
