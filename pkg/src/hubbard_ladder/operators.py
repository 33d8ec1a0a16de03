"""Sparse operator algebra on a register of qubits arranged as a two-chain ladder.

Conventions (fixed once, inherited by every other module):

* Qubits are numbered 1..2n.  The ladder site (j, down) maps to linear index
  j and (j, up) to j + n, for j = 1..n.
* Qubit q occupies bit (q - 1) of the computational basis index, i.e. qubit 1
  is the least significant bit.  An operator on qubits 1..m is therefore the
  Kronecker product M_m (x) ... (x) M_1.
* sigma^z is diagonal with sigma^z|excited> = +|excited> and
  sigma^z|ground> = -|ground>, so the number operator is (sigma^z + 1)/2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import CapacityError, DomainError

DROP_TOLERANCE = 1e-14
HERMITIAN_TOLERANCE = 1e-12

#: Hard caps on register size (memory budget for a desk-scale machine).
MAX_QUBITS_DENSE = 24
MAX_QUBITS_SECTOR = 28


class Chain(Enum):
    """Which of the two ladder chains a site belongs to."""

    DOWN = "down"
    UP = "up"


@dataclass(frozen=True)
class LadderIndex:
    """Position of one qubit on the ladder: site in 1..n plus a chain label."""

    site: int
    chain: Chain

    def __post_init__(self):
        if self.site < 1:
            raise DomainError(f"site must be >= 1, got {self.site}")


def linearize(idx: LadderIndex, n: int) -> int:
    """Map a ladder index to the linear qubit index in 1..2n.

    (j, down) -> j and (j, up) -> j + n; this is the consecutive 1D ordering
    used for the fermionic mapping.
    """
    if not 1 <= idx.site <= n:
        raise DomainError(f"site {idx.site} out of range for chain length {n}")
    return idx.site if idx.chain is Chain.DOWN else idx.site + n


def delinearize(q: int, n: int) -> LadderIndex:
    """Inverse of :func:`linearize`."""
    if not 1 <= q <= 2 * n:
        raise DomainError(f"linear index {q} out of range for chain length {n}")
    if q <= n:
        return LadderIndex(q, Chain.DOWN)
    return LadderIndex(q - n, Chain.UP)


# Single-qubit factor matrices under the sign convention above; basis order
# is (ground, excited).
_SYMBOLS = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, 1j], [-1j, 0]], dtype=complex),
    "Z": np.array([[-1, 0], [0, 1]], dtype=complex),
    "+": np.array([[0, 0], [1, 0]], dtype=complex),
    "-": np.array([[0, 1], [0, 0]], dtype=complex),
}

_ADJOINT_SYMBOL = {"X": "X", "Y": "Y", "Z": "Z", "+": "-", "-": "+"}


@dataclass(frozen=True)
class PauliString:
    """A scalar times a product of single-qubit factors from {X, Y, Z, +, -}.

    ``factors`` maps 1-based qubit indices to symbols; unlisted qubits carry
    the identity.  An empty factor map is a scaled identity.
    """

    coefficient: complex
    factors: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        for q, sym in self.factors.items():
            if q < 1:
                raise DomainError(f"qubit index {q} must be >= 1")
            if sym not in _SYMBOLS:
                raise DomainError(f"unknown factor {sym!r} on qubit {q}")
        object.__setattr__(self, "factors", dict(self.factors))

    def dagger(self) -> "PauliString":
        """Hermitian adjoint (conjugate coefficient, swap raising/lowering)."""
        return PauliString(
            np.conj(self.coefficient),
            {q: _ADJOINT_SYMBOL[sym] for q, sym in self.factors.items()},
        )

    def scaled(self, factor: complex) -> "PauliString":
        return PauliString(self.coefficient * factor, self.factors)

    def max_qubit(self) -> int:
        return max(self.factors, default=0)


def multiply_strings(a: PauliString, b: PauliString) -> list[PauliString]:
    """Product a*b expanded as a sum of PauliStrings.

    Products involving sigma^+/sigma^- generate projectors, so the result is
    a list: each shared qubit's 2x2 product is decomposed over {I, X, Y, Z}
    and the decompositions are expanded multiplicatively.
    """
    coeff = a.coefficient * b.coefficient
    plain: dict[int, str] = {}
    # qubit -> list of (weight, symbol-or-None) alternatives
    branching: list[tuple[int, list[tuple[complex, str | None]]]] = []
    for q in sorted(set(a.factors) | set(b.factors)):
        sa, sb = a.factors.get(q), b.factors.get(q)
        if sb is None:
            plain[q] = sa
            continue
        if sa is None:
            plain[q] = sb
            continue
        m = _SYMBOLS[sa] @ _SYMBOLS[sb]
        options: list[tuple[complex, str | None]] = []
        ident = complex(np.trace(m)) / 2.0
        if abs(ident) > DROP_TOLERANCE:
            options.append((ident, None))
        for sym in ("X", "Y", "Z"):
            w = complex(np.trace(_SYMBOLS[sym].conj().T @ m)) / 2.0
            if abs(w) > DROP_TOLERANCE:
                options.append((w, sym))
        if not options:
            return []  # annihilated, e.g. sigma^+ sigma^+
        branching.append((q, options))

    results = []
    for combo in itertools.product(*(opts for _, opts in branching)):
        c = coeff
        factors = dict(plain)
        for (q, _), (w, sym) in zip(branching, combo):
            c *= w
            if sym is not None:
                factors[q] = sym
        if abs(c) > DROP_TOLERANCE:
            results.append(PauliString(c, factors))
    return results


class SparseOperator:
    """Immutable sparse matrix with pruning and a verified hermitian flag."""

    def __init__(self, matrix, *, drop_tol: float = DROP_TOLERANCE,
                 assume_hermitian: bool | None = None):
        m = sp.csr_matrix(matrix, dtype=complex)
        if m.shape[0] != m.shape[1]:
            raise DomainError(f"operator must be square, got shape {m.shape}")
        m.sum_duplicates()
        if m.nnz:
            keep = np.abs(m.data) > drop_tol
            if not keep.all():
                m.data[~keep] = 0.0
                m.eliminate_zeros()
        self._matrix = m
        self.drop_tol = drop_tol
        self._hermitian: bool | None = None
        if assume_hermitian is not None:
            if assume_hermitian and not self.is_hermitian:
                raise DomainError(
                    "operator declared hermitian but ||A - A^dag||_max exceeds "
                    f"{HERMITIAN_TOLERANCE}"
                )
            self._hermitian = assume_hermitian and self.is_hermitian

    @property
    def matrix(self) -> sp.csr_matrix:
        return self._matrix

    @property
    def dimension(self) -> int:
        return self._matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self._matrix.nnz

    @property
    def is_hermitian(self) -> bool:
        if self._hermitian is None:
            delta = (self._matrix - self._matrix.conj().T).tocoo()
            dev = np.abs(delta.data).max() if delta.nnz else 0.0
            self._hermitian = bool(dev <= HERMITIAN_TOLERANCE)
        return self._hermitian

    @classmethod
    def identity(cls, dimension: int) -> "SparseOperator":
        return cls(sp.identity(dimension, dtype=complex, format="csr"))

    @classmethod
    def zero(cls, dimension: int) -> "SparseOperator":
        return cls(sp.csr_matrix((dimension, dimension), dtype=complex))

    def _check_dim(self, other: "SparseOperator"):
        if self.dimension != other.dimension:
            raise DomainError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dim(other)
        return SparseOperator(self._matrix + other._matrix, drop_tol=self.drop_tol)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dim(other)
        return SparseOperator(self._matrix - other._matrix, drop_tol=self.drop_tol)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(-self._matrix, drop_tol=self.drop_tol)

    def __mul__(self, scalar: complex) -> "SparseOperator":
        if isinstance(scalar, SparseOperator):
            raise TypeError("use @ for operator-operator products")
        return SparseOperator(self._matrix * scalar, drop_tol=self.drop_tol)

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dim(other)
        return SparseOperator(self._matrix @ other._matrix, drop_tol=self.drop_tol)

    def dag(self) -> "SparseOperator":
        return SparseOperator(self._matrix.conj().T, drop_tol=self.drop_tol)

    def commutator_with(self, other: "SparseOperator") -> "SparseOperator":
        return self @ other - other @ self

    def anticommutator_with(self, other: "SparseOperator") -> "SparseOperator":
        return self @ other + other @ self

    def norm_max(self) -> float:
        """Largest entry magnitude (0 for the empty operator)."""
        return float(np.abs(self._matrix.data).max()) if self._matrix.nnz else 0.0

    def trace(self) -> complex:
        return complex(self._matrix.diagonal().sum())

    def to_dense(self) -> np.ndarray:
        return self._matrix.toarray()

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        if amplitudes.shape[0] != self.dimension:
            raise DomainError(
                f"vector length {amplitudes.shape[0]} does not match operator "
                f"dimension {self.dimension}"
            )
        return self._matrix @ amplitudes

    def expectation(self, amplitudes: np.ndarray) -> complex:
        return complex(np.vdot(amplitudes, self.apply(amplitudes)))

    def __repr__(self):
        return (f"SparseOperator(dim={self.dimension}, nnz={self.nnz}, "
                f"hermitian={self.is_hermitian})")


def realize(p: PauliString, num_qubits: int, *,
            drop_tol: float = DROP_TOLERANCE) -> SparseOperator:
    """Realize a PauliString as a sparse matrix on ``num_qubits`` qubits.

    Each factor has at most one nonzero per column, so the full matrix is
    built directly: column b maps to a single row with the accumulated
    amplitude (possibly zero for raising/lowering factors).
    """
    if p.max_qubit() > num_qubits:
        raise DomainError(
            f"factor on qubit {p.max_qubit()} exceeds register of {num_qubits}"
        )
    if num_qubits > MAX_QUBITS_DENSE:
        raise CapacityError(
            f"{num_qubits} qubits exceeds the full-register cap of "
            f"{MAX_QUBITS_DENSE}"
        )
    dim = 1 << num_qubits
    cols = np.arange(dim, dtype=np.int64)
    rows, amps = _apply_factors(p, cols)
    keep = np.abs(amps) > drop_tol
    mat = sp.coo_matrix(
        (amps[keep], (rows[keep], cols[keep])), shape=(dim, dim)
    ).tocsr()
    return SparseOperator(mat, drop_tol=drop_tol)


def _apply_factors(p: PauliString, cols: np.ndarray):
    """Rows and amplitudes of a PauliString acting on the given basis columns."""
    rows = cols.copy()
    amps = np.full(cols.shape, complex(p.coefficient))
    for q, sym in p.factors.items():
        mask = np.int64(1) << (q - 1)
        bit = (rows & mask) != 0
        if sym == "X":
            rows = rows ^ mask
        elif sym == "Y":
            amps *= np.where(bit, 1j, -1j)
            rows = rows ^ mask
        elif sym == "Z":
            amps *= np.where(bit, 1.0, -1.0)
        elif sym == "+":
            amps *= np.where(bit, 0.0, 1.0)
            rows = rows | mask
        elif sym == "-":
            amps *= np.where(bit, 1.0, 0.0)
            rows = rows & ~mask
    return rows, amps


def realize_sum(strings: Iterable[PauliString], num_qubits: int, *,
                drop_tol: float = DROP_TOLERANCE) -> SparseOperator:
    """Realize a sum of PauliStrings in one pass."""
    dim = 1 << num_qubits
    total = sp.csr_matrix((dim, dim), dtype=complex)
    for p in strings:
        total = total + realize(p, num_qubits, drop_tol=drop_tol).matrix
    return SparseOperator(total, drop_tol=drop_tol)


@dataclass(frozen=True)
class SectorBasis:
    """Computational basis states with fixed excitation counts per chain.

    ``states`` lists full-register basis indices, strictly increasing: each
    has exactly ``n_down`` set bits among qubits 1..n and ``n_up`` among
    qubits n+1..2n.
    """

    n: int
    n_up: int
    n_down: int
    states: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.states)

    @property
    def tag(self) -> tuple[int, int]:
        return (self.n_up, self.n_down)

    def position_of(self, state: int) -> int:
        """Index of a full-register basis state inside the sector list."""
        pos = int(np.searchsorted(self.states, state))
        if pos >= len(self.states) or self.states[pos] != state:
            raise DomainError(f"basis state {state} is not in sector {self.tag}")
        return pos


def sector_basis(n: int, n_up: int, n_down: int) -> SectorBasis:
    """Enumerate the (n_up, n_down) symmetry sector of the 2n-qubit ladder."""
    if not (0 <= n_up <= n and 0 <= n_down <= n):
        raise DomainError(
            f"excitation counts ({n_up}, {n_down}) out of range for n={n}"
        )
    if 2 * n > MAX_QUBITS_SECTOR:
        raise CapacityError(
            f"register of {2 * n} qubits exceeds the sector cap of "
            f"{MAX_QUBITS_SECTOR}"
        )
    down_patterns = [
        sum(1 << b for b in bits)
        for bits in itertools.combinations(range(n), n_down)
    ]
    up_patterns = [
        sum(1 << (b + n) for b in bits)
        for bits in itertools.combinations(range(n), n_up)
    ]
    states = np.sort(np.array(
        [d | u for d in down_patterns for u in up_patterns], dtype=np.int64
    ))
    assert len(states) == comb(n, n_up) * comb(n, n_down)
    return SectorBasis(n=n, n_up=n_up, n_down=n_down, states=states)


def sector_projector(sector: SectorBasis) -> SparseOperator:
    """Orthogonal projector onto the sector, as a full-register operator."""
    dim = 1 << (2 * sector.n)
    ones = np.ones(sector.dimension)
    mat = sp.coo_matrix((ones, (sector.states, sector.states)), shape=(dim, dim))
    return SparseOperator(mat.tocsr())


def project_operator(a: SparseOperator, sector: SectorBasis) -> SparseOperator:
    """Restrict a full-register operator to the sector block."""
    if a.dimension != 1 << (2 * sector.n):
        raise DomainError(
            f"operator dimension {a.dimension} does not match register of "
            f"{2 * sector.n} qubits"
        )
    idx = sector.states
    block = a.matrix[idx][:, idx]
    return SparseOperator(block, drop_tol=a.drop_tol)


def realize_in_sector(p: PauliString, sector: SectorBasis, *,
                      drop_tol: float = DROP_TOLERANCE) -> SparseOperator:
    """Realize P * string * P directly in the sector basis.

    Avoids the full-register matrix entirely, which is what keeps registers
    up to 2n = 28 reachable on the sector-restricted path.
    """
    if p.max_qubit() > 2 * sector.n:
        raise DomainError(
            f"factor on qubit {p.max_qubit()} exceeds register of {2 * sector.n}"
        )
    cols_full = sector.states
    rows_full, amps = _apply_factors(p, cols_full)
    pos = np.searchsorted(sector.states, rows_full)
    pos = np.clip(pos, 0, sector.dimension - 1)
    inside = sector.states[pos] == rows_full
    keep = inside & (np.abs(amps) > drop_tol)
    cols = np.arange(sector.dimension, dtype=np.int64)[keep]
    mat = sp.coo_matrix(
        (amps[keep], (pos[keep], cols)),
        shape=(sector.dimension, sector.dimension),
    ).tocsr()
    return SparseOperator(mat, drop_tol=drop_tol)


def realize_sum_in_sector(strings: Iterable[PauliString], sector: SectorBasis, *,
                          drop_tol: float = DROP_TOLERANCE) -> SparseOperator:
    total = sp.csr_matrix((sector.dimension, sector.dimension), dtype=complex)
    for p in strings:
        total = total + realize_in_sector(p, sector, drop_tol=drop_tol).matrix
    return SparseOperator(total, drop_tol=drop_tol)


class StateVector:
    """Complex amplitude vector, either full-register or sector-restricted.

    When ``sector`` is given and the length equals the sector dimension, the
    amplitudes refer to the sector's own basis ordering; a full-length vector
    with a sector attached is simply known to be supported there.
    """

    def __init__(self, amplitudes: np.ndarray | Sequence[complex],
                 sector: SectorBasis | None = None):
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        if self.amplitudes.ndim != 1:
            raise DomainError("state amplitudes must be a 1D vector")
        self.sector = sector

    @property
    def dimension(self) -> int:
        return len(self.amplitudes)

    @property
    def sector_tag(self) -> tuple[int, int] | None:
        return self.sector.tag if self.sector is not None else None

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / nrm, self.sector)

    def overlap(self, other: "StateVector") -> complex:
        if self.dimension != other.dimension:
            raise DomainError("overlap requires equal dimensions")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.sector)

    @classmethod
    def basis_state(cls, dimension: int, index: int,
                    sector: SectorBasis | None = None) -> "StateVector":
        if not 0 <= index < dimension:
            raise DomainError(f"basis index {index} out of range for {dimension}")
        amps = np.zeros(dimension, dtype=complex)
        amps[index] = 1.0
        return cls(amps, sector)

    def __repr__(self):
        tag = f", sector={self.sector_tag}" if self.sector else ""
        return f"StateVector(dim={self.dimension}{tag})"


def matvec(a: SparseOperator, psi: StateVector) -> StateVector:
    """y = A psi; the result is returned unnormalized."""
    return StateVector(a.apply(psi.amplitudes), psi.sector)


def project_state(psi: StateVector, sector: SectorBasis) -> StateVector:
    """Restrict a full-register state to the sector's own basis ordering."""
    if psi.dimension != 1 << (2 * sector.n):
        raise DomainError("state is not a full-register vector for this sector")
    return StateVector(psi.amplitudes[sector.states], sector)


def embed_state(psi: StateVector, sector: SectorBasis) -> StateVector:
    """Embed a sector-restricted state back into the full register."""
    if psi.dimension != sector.dimension:
        raise DomainError("state length does not match the sector dimension")
    full = np.zeros(1 << (2 * sector.n), dtype=complex)
    full[sector.states] = psi.amplitudes
    return StateVector(full, sector)
