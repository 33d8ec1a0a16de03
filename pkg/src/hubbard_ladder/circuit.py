"""Translation of superconducting-circuit parameters into ladder couplings.

A tunable transmon is characterized by (E_C, E_J, E_L, phi_e); its level
splitting is eps = sqrt(8 E_C E_J cos(phi_e/2)).  A mutual inductance
between two transmon loops produces the rung ZZ coupling, a capacitance
between neighbors the intra-chain XX coupling.  All energies are accepted
in any one consistent unit (the CLI reads them as frequencies, E/h).

Besides the closed forms this module carries two numerical cross-checks:
the qubit-plus-oscillator model behind the ZZ coupling is diagonalized
directly and compared against the analytic result, and the approximate
inverse of the chain capacitance matrix is checked for its quadratic error
scaling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import AccuracyError, DiagnosticError, DomainError
from .hamiltonians import HubbardParams, LadderParams, map_params

TRANSMON_RATIO_WARN = 20.0    # E_J/E_C below this leaves the transmon limit
INDUCTIVE_RATIO_WARN = 10.0   # E_L/E_J below this invalidates freezing phi_-
CX_RATIO_WARN = 0.1           # C^x/C above this strains the weak-coupling limit
OSC_FREQ_MARGIN = 5.0         # require hbar omega_+- >= margin * eps


@dataclass(frozen=True)
class TransmonSpec:
    """Circuit energies of one tunable transmon.

    e_c: charging energy e^2/2C; e_j: Josephson energy per junction;
    e_l: inductive energy of the loop; phi_e: external phase in radians.
    """

    e_c: float
    e_j: float
    e_l: float
    phi_e: float = 0.0

    def __post_init__(self):
        for name in ("e_c", "e_j", "e_l"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")
        if np.cos(self.phi_e / 2.0) <= 0.0:
            raise DomainError(
                f"cos(phi_e/2) must be positive, got phi_e={self.phi_e}"
            )
        if self.e_j / self.e_c < TRANSMON_RATIO_WARN:
            warnings.warn(
                f"E_J/E_C = {self.e_j / self.e_c:.1f} is below the transmon "
                f"regime threshold {TRANSMON_RATIO_WARN}", stacklevel=2,
            )
        if self.e_l / self.e_j < INDUCTIVE_RATIO_WARN:
            warnings.warn(
                f"E_L/E_J = {self.e_l / self.e_j:.1f} is below the stiff-loop "
                f"threshold {INDUCTIVE_RATIO_WARN}", stacklevel=2,
            )


@dataclass(frozen=True)
class CouplerSpec:
    """Coupling elements: mutual-inductance ratio and coupling capacitance."""

    k_m: float
    cx_ratio: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.k_m < 1.0:
            raise DomainError(f"k_m must lie in (0, 1), got {self.k_m}")
        if self.cx_ratio < 0.0:
            raise DomainError(f"cx_ratio must be >= 0, got {self.cx_ratio}")
        if self.cx_ratio > CX_RATIO_WARN:
            warnings.warn(
                f"C^x/C = {self.cx_ratio} is large; the weak-coupling "
                "expansion assumes C^x << C", stacklevel=2,
            )


@dataclass(frozen=True)
class DeviceChain:
    """Full device: 2n transmons in linear order (down chain 1..n, then up),
    one rung coupler per site, one chain capacitance ratio per bond (shared
    by both chains)."""

    n: int
    transmons: Sequence[TransmonSpec]
    rung_couplers: Sequence[CouplerSpec]
    chain_couplers: Sequence[float]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("device needs at least one site per chain")
        if len(self.transmons) != 2 * self.n:
            raise DomainError(
                f"expected {2 * self.n} transmons, got {len(self.transmons)}"
            )
        if len(self.rung_couplers) != self.n:
            raise DomainError(
                f"expected {self.n} rung couplers, got {len(self.rung_couplers)}"
            )
        if len(self.chain_couplers) != self.n - 1:
            raise DomainError(
                f"expected {self.n - 1} chain couplers, got "
                f"{len(self.chain_couplers)}"
            )


def transmon_splitting(t: TransmonSpec) -> float:
    """Level splitting eps = sqrt(8 E_C E_J cos(phi_e/2))."""
    return float(np.sqrt(8.0 * t.e_c * t.e_j * np.cos(t.phi_e / 2.0)))


def gz_from_circuit(t1: TransmonSpec, t2: TransmonSpec, c: CouplerSpec) -> float:
    """Rung coupling g^z = -(k_M/16) tan(phi1/2) tan(phi2/2) eps1 eps2 / E_L.

    Both transmons must share the same inductive energy; the derivation
    assumes identical loops.
    """
    if not np.isclose(t1.e_l, t2.e_l, rtol=1e-12, atol=0.0):
        raise DomainError(
            f"inductive energies differ ({t1.e_l} vs {t2.e_l}); the ZZ "
            "formula assumes equal E_L"
        )
    eps1, eps2 = transmon_splitting(t1), transmon_splitting(t2)
    return float(
        -(c.k_m / 16.0)
        * np.tan(t1.phi_e / 2.0) * np.tan(t2.phi_e / 2.0)
        * eps1 * eps2 / t1.e_l
    )


def gx_from_circuit(epsilon: float, c: CouplerSpec) -> float:
    """Chain coupling g^x = (1/4) (C^x/C) eps for degenerate qubits."""
    return 0.25 * c.cx_ratio * epsilon


def gx_per_bond(eps_a: float, eps_b: float, cx_ratio: float) -> float:
    """Per-bond form g^x_j = (1/2) lam sqrt(eps_j eps_j+1), lam = C^x/2C.

    Second-order terms in C^x/C are dropped, so for equal splittings this
    reduces exactly to :func:`gx_from_circuit`.  The chain's boundary
    capacitance term (half a C^x on the two edge sites) is dropped with
    them, which distorts the edge couplings at O(lambda).
    """
    if eps_a < 0 or eps_b < 0:
        raise DomainError("splittings must be nonnegative")
    lam = cx_ratio / 2.0
    return 0.5 * lam * float(np.sqrt(eps_a * eps_b))


def universal_ut(phi_e: np.ndarray | float) -> np.ndarray | float:
    """Shape of |U/t| over external phase: tan^2(phi/2) sqrt(cos(phi/2))."""
    phi = np.asarray(phi_e, dtype=float)
    if np.any(phi <= 0.0) or np.any(phi >= np.pi):
        raise DomainError("phi_e must lie strictly inside (0, pi)")
    value = np.tan(phi / 2.0) ** 2 * np.sqrt(np.cos(phi / 2.0))
    return value if value.ndim else float(value)


def gamma_factor(t: TransmonSpec, c: CouplerSpec) -> float:
    """Scale gamma = (C/C^x)(M/L) sqrt(8 E_C E_J)/E_L absorbing the circuit
    constants of the universal |U/t| curve."""
    if c.cx_ratio <= 0.0:
        raise DomainError("gamma is undefined for cx_ratio = 0")
    return float(
        (1.0 / c.cx_ratio) * c.k_m * np.sqrt(8.0 * t.e_c * t.e_j) / t.e_l
    )


@dataclass(frozen=True)
class UtCurve:
    """Tabulated |U/t| over external phase."""

    phi_e: np.ndarray
    u_over_t: np.ndarray
    gamma: float

    def turnover_phase(self) -> float:
        """Phase of the sampled maximum (the grid end when monotone)."""
        return float(self.phi_e[int(np.argmax(self.u_over_t))])


def ut_curve(gamma: float, phi_grid: Sequence[float] | np.ndarray) -> UtCurve:
    """|U/t| = gamma * tan^2(phi/2) sqrt(cos(phi/2)) on the given grid."""
    phi = np.asarray(phi_grid, dtype=float)
    return UtCurve(phi_e=phi, u_over_t=gamma * universal_ut(phi), gamma=gamma)


def duffing_levels(t: TransmonSpec, n_max: int = 40, *,
                   population_tol: float = 1e-8) -> np.ndarray:
    """Lowest three transmon levels of eps (a^dag a + 1/2) - (E_C/24)(a^dag - a)^4.

    Diagonalized in a truncated oscillator basis of n_max levels.  The
    quartic term is unbounded below, so a large basis also contains
    unphysical states living at the truncation edge; the physical levels
    are identified as the eigenvectors dominated by oscillator states 0, 1
    and 2.  Raises AccuracyError when those eigenvectors populate the top of
    the basis beyond ``population_tol`` (truncation too small) or cannot be
    told apart.
    """
    if n_max < 10:
        raise DomainError(f"n_max must be >= 10, got {n_max}")
    eps = transmon_splitting(t)
    lower = np.diag(np.sqrt(np.arange(1, n_max)), 1)  # annihilation operator
    ladder = lower.T - lower                          # a^dag - a
    number = np.diag(np.arange(n_max, dtype=float))
    h = eps * (number + 0.5 * np.eye(n_max)) - (t.e_c / 24.0) * np.linalg.matrix_power(ladder, 4)
    vals, vecs = scipy.linalg.eigh(h)
    selected = [int(np.argmax(np.abs(vecs[k, :]))) for k in range(3)]
    if len(set(selected)) < 3:
        raise AccuracyError(
            f"cannot identify three distinct transmon levels at n_max={n_max}; "
            "the truncated basis is unsuitable for these energies"
        )
    top_population = float(np.max(np.abs(vecs[-2:, selected]) ** 2))
    if top_population > population_tol:
        raise AccuracyError(
            f"oscillator truncation n_max={n_max} too small: top-level "
            f"population {top_population:.2e} exceeds {population_tol:.0e}"
        )
    return np.sort(vals[selected])


def _alpha_z(t: TransmonSpec) -> float:
    """sigma^z coefficient of cos(phi) in the qubit basis:
    -1/4 sqrt(2 E_C / (E_J cos(phi_e/2)))."""
    return float(-0.25 * np.sqrt(2.0 * t.e_c / (t.e_j * np.cos(t.phi_e / 2.0))))


@dataclass(frozen=True)
class EffectiveGzResult:
    """Numeric vs analytic rung coupling from the two-qubit/two-oscillator
    model."""

    gz_numeric: float
    gz_analytic: float
    gz_closed_form: float
    hbar_omega_plus: float
    hbar_omega_minus: float
    couplings: tuple[float, float, float, float]  # g1+, g2+, g1-, g2-
    osc_truncation: int

    @property
    def relative_error(self) -> float:
        ref = max(abs(self.gz_analytic), 1e-300)
        return abs(self.gz_numeric - self.gz_analytic) / ref


def effective_gz_numeric(t1: TransmonSpec, t2: TransmonSpec, c: CouplerSpec,
                         osc_truncation: int = 8, *,
                         check_convergence: bool = True) -> EffectiveGzResult:
    """Extract g^z from the dressed levels of the coupled-oscillator model.

    Builds H = sum_i eps_i/2 sigma^z_i + sum_pm [hbar w_pm n_pm +
    (g_1pm sigma^z_1 -+- g_2pm sigma^z_2)(a_pm^dag + a_pm)] with the mode
    stiffnesses xi_+ = 2/(1+k_M) and xi_- = 4/(1-k_M^2) - 2/(1+k_M).  The
    qubit operators all commute with H, so the model splits into four
    oscillator blocks labeled by (s1, s2); the numeric g^z is the symmetric
    level combination (E++ + E-- - E+- - E-+)/4 of the block ground levels,
    which must also be the four lowest dressed levels overall.
    """
    if osc_truncation < 2:
        raise DomainError("oscillator truncation must be >= 2")
    if not np.isclose(t1.e_l, t2.e_l, rtol=1e-12, atol=0.0):
        raise DomainError("the coupled-transmon model assumes equal E_L")
    e_c, e_l = t1.e_c, t1.e_l
    if not np.isclose(t2.e_c, e_c, rtol=1e-12, atol=0.0):
        raise DomainError("the coupled-transmon model assumes equal E_C")
    k = c.k_m
    xi_plus = 2.0 / (1.0 + k)
    xi_minus = 4.0 / (1.0 - k ** 2) - 2.0 / (1.0 + k)
    w_plus = float(np.sqrt(2.0 * xi_plus * e_c * e_l))
    w_minus = float(np.sqrt(2.0 * xi_minus * e_c * e_l))
    eps = (transmon_splitting(t1), transmon_splitting(t2))
    if min(w_plus, w_minus) < OSC_FREQ_MARGIN * max(eps):
        raise DomainError(
            f"oscillator energies ({w_plus:.3g}, {w_minus:.3g}) are not large "
            f"against the splittings {eps}; the dispersive elimination needs "
            f"hbar omega >= {OSC_FREQ_MARGIN} eps"
        )

    def coupling(t: TransmonSpec, xi: float) -> float:
        return float(
            2.0 * t.e_j * _alpha_z(t) * np.sin(t.phi_e / 2.0)
            * (1.0 / np.sqrt(2.0)) * (2.0 * e_c / (xi * e_l)) ** 0.25
        )

    g1p, g2p = coupling(t1, xi_plus), coupling(t2, xi_plus)
    g1m, g2m = coupling(t1, xi_minus), coupling(t2, xi_minus)

    def block_levels(trunc: int) -> dict[tuple[int, int], np.ndarray]:
        lower = np.diag(np.sqrt(np.arange(1, trunc)), 1)
        x_op = lower.T + lower                     # a^dag + a
        number = np.diag(np.arange(trunc, dtype=float))
        eye = np.eye(trunc)
        levels = {}
        for s1 in (+1, -1):
            for s2 in (+1, -1):
                cp = g1p * s1 + g2p * s2
                cm = g1m * s1 - g2m * s2
                h = (np.kron(w_plus * number + cp * x_op, eye)
                     + np.kron(eye, w_minus * number + cm * x_op))
                vals = scipy.linalg.eigvalsh(h)
                levels[(s1, s2)] = vals + 0.5 * (eps[0] * s1 + eps[1] * s2)
        return levels

    def extract(levels) -> float:
        grounds = {key: vals[0] for key, vals in levels.items()}
        # The four block ground levels must be the overall four lowest.
        all_levels = np.sort(np.concatenate(list(levels.values())))
        if max(grounds.values()) > all_levels[3] + 1e-9 * max(w_plus, w_minus):
            raise DiagnosticError(
                "cannot identify the dressed qubit levels: an oscillator "
                "excitation falls below a qubit configuration"
            )
        return 0.25 * (grounds[(1, 1)] + grounds[(-1, -1)]
                       - grounds[(1, -1)] - grounds[(-1, 1)])

    gz_numeric = extract(block_levels(osc_truncation))
    gz_analytic = -2.0 * (g1p * g2p / w_plus - g1m * g2m / w_minus)
    if check_convergence:
        refined = extract(block_levels(2 * osc_truncation))
        scale = max(abs(refined), 1e-12 * max(eps))
        if abs(refined - gz_numeric) > 1e-6 * scale + 1e-14 * max(eps):
            raise AccuracyError(
                f"oscillator truncation {osc_truncation} not converged: "
                f"g^z changed by {abs(refined - gz_numeric):.3e} on doubling"
            )
    return EffectiveGzResult(
        gz_numeric=gz_numeric,
        gz_analytic=gz_analytic,
        gz_closed_form=gz_from_circuit(t1, t2, c),
        hbar_omega_plus=w_plus,
        hbar_omega_minus=w_minus,
        couplings=(g1p, g2p, g1m, g2m),
        osc_truncation=osc_truncation,
    )


def capacitance_matrix(n: int, lam: float) -> np.ndarray:
    """Tridiagonal A_lam with unit diagonal and lam off-diagonals."""
    if abs(lam) >= 0.5:
        raise DomainError(f"|lambda| must be < 1/2, got {lam}")
    return np.eye(n) + lam * (np.eye(n, k=1) + np.eye(n, k=-1))


def capacitance_matrix_check(n: int, lam: float) -> float:
    """Max-entry error of the approximation A_lam^{-1} ~= A_{-lam}."""
    a = capacitance_matrix(n, lam)
    exact_inverse = np.linalg.inv(a)
    return float(np.max(np.abs(exact_inverse - capacitance_matrix(n, -lam))))


def capacitance_scaling_exponent(n: int, lam_small: float = 1e-3,
                                 lam_large: float = 1e-2) -> float:
    """Two-point log-log slope of the inverse-approximation error; the
    neglected terms are O(lambda^2), so the slope should be 2."""
    e_small = capacitance_matrix_check(n, lam_small)
    e_large = capacitance_matrix_check(n, lam_large)
    return float(np.log(e_large / e_small) / np.log(lam_large / lam_small))


@dataclass(frozen=True)
class CircuitReport:
    """Derived model parameters plus the coherence feasibility summary."""

    ladder: LadderParams
    hubbard: HubbardParams
    epsilon: float
    gx: float | None
    gz: float
    decoherence_rate: float
    gz_ratio: float
    gx_ratio: float | None

    @property
    def gz_feasible(self) -> bool:
        return self.gz_ratio >= 1.0

    @property
    def gx_feasible(self) -> bool | None:
        if self.gx_ratio is None:
            return None
        return self.gx_ratio >= 1.0

    @property
    def feasible(self) -> bool:
        ok = self.gz_feasible
        if self.gx_feasible is not None:
            ok = ok and self.gx_feasible
        return ok


def circuit_to_hubbard(device: DeviceChain,
                       decoherence_rate: float) -> CircuitReport:
    """Translate a device into uniform ladder and Hubbard parameters.

    Every derived splitting and coupling must come out uniform (the device
    is supposed to be tuned); couplings are then compared against the
    supplied decoherence rate, in the same unit, and flagged infeasible
    when they fall below it.
    """
    if decoherence_rate <= 0.0:
        raise DomainError("decoherence rate must be positive")
    n = device.n
    eps = np.array([transmon_splitting(t) for t in device.transmons])
    gz = np.array([
        gz_from_circuit(device.transmons[j], device.transmons[n + j],
                        device.rung_couplers[j])
        for j in range(n)
    ])
    gx_list = []
    for j in range(n - 1):
        cx = device.chain_couplers[j]
        gx_list.append(gx_per_bond(eps[j], eps[j + 1], cx))
        gx_list.append(gx_per_bond(eps[n + j], eps[n + j + 1], cx))
    gx = np.array(gx_list)

    def uniform(values: np.ndarray, name: str) -> float:
        if len(values) == 0:
            raise DomainError(f"no {name} values derived")
        spread = np.max(np.abs(values - values[0]))
        if spread > 1e-9 * max(1.0, abs(values[0])):
            raise DomainError(
                f"derived {name} values are not uniform (spread {spread:.3e}); "
                "tune the device before mapping"
            )
        return float(values[0])

    eps_u = uniform(eps, "epsilon")
    gz_u = uniform(gz, "gz")
    gx_u = uniform(gx, "gx") if n > 1 else None
    ladder = LadderParams(n=n, epsilon=eps_u, gx=gx_u or 0.0, gz=gz_u)
    return CircuitReport(
        ladder=ladder,
        hubbard=map_params(ladder),
        epsilon=eps_u,
        gx=gx_u,
        gz=gz_u,
        decoherence_rate=decoherence_rate,
        gz_ratio=abs(gz_u) / decoherence_rate,
        gx_ratio=(abs(gx_u) / decoherence_rate) if gx_u is not None else None,
    )
