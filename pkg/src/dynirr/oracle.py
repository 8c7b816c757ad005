"""
Numeric dynamics oracle.

Approximates every complex root of a generated univariate polynomial with
simultaneous Aberth-Ehrlich iteration in double precision, polishes each root
against the exact integer polynomial with mpmath Newton steps, then replays the
first orbit steps of the matching dynamical system at that working precision
and reports the observed preperiod and period. This is an independent
confirmation, not a proof.
"""

import cmath
import math
from contextlib import nullcontext
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from mpmath import mp, mpc, mpf

from .config import DEFAULT_CONFIG, Family, OracleConfig, Verdict
from .errors import BudgetExceededError, ConstantPolynomialError, SpecError
from .logger import get_logger
from .reports import jsonable
from .zpoly import IntPoly1


@dataclass
class RootSet:
    """Roots of one polynomial together with per-root diagnostics."""
    roots: np.ndarray
    backward_errors: np.ndarray
    converged: np.ndarray
    iterations: int
    coefficients: np.ndarray  # monic, highest degree first
    anomalies: List[str] = field(default_factory=list)

    def __len__(self):
        return len(self.roots)

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))

    def vieta_residual(self) -> float:
        """Relative gap between the root sum and minus the subleading coefficient."""
        expected = -self.coefficients[1] if len(self.coefficients) > 1 else 0.0
        total = np.sum(self.roots)
        scale = max(1.0, abs(expected), float(np.sum(np.abs(self.roots))))
        return float(abs(total - expected) / scale)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": len(self.roots),
            "iterations": self.iterations,
            "converged": int(np.count_nonzero(self.converged)),
            "max_backward_error": float(np.max(self.backward_errors)) if len(self.roots) else 0.0,
            "vieta_residual": self.vieta_residual(),
            "anomalies": list(self.anomalies),
        }


def _monic_coefficients(f: IntPoly1) -> np.ndarray:
    lc = f.leading_coefficient
    try:
        values = [c / lc for c in reversed(f.coeffs)]
    except OverflowError:
        raise SpecError(f"coefficients of a degree-{f.degree} polynomial exceed double range") from None
    return np.array(values, dtype=np.complex128)


def _backward_errors(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    absz = np.abs(z)
    scale = np.polyval(np.abs(c), absz)
    return np.abs(np.polyval(c, z)) / np.maximum(scale, np.finfo(float).tiny)


def _initial_guesses(c: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = len(c) - 1
    # Cauchy bound, pulled in towards the geometric mean modulus
    bound = 1.0 + float(np.max(np.abs(c[1:])))
    mean = abs(c[-1]) ** (1.0 / n) if c[-1] != 0 else 1.0
    radius = min(bound, max(mean, 0.5))
    angles = 2 * math.pi * (np.arange(n) + 0.25) / n + rng.uniform(0.0, 0.5 / n, n)
    return radius * np.exp(1j * angles)


def all_roots(f: IntPoly1, config: Optional[OracleConfig] = None) -> RootSet:
    """All deg f complex roots by Aberth-Ehrlich, then a few Newton polishing steps."""
    cfg = config or DEFAULT_CONFIG.oracle
    n = f.degree
    if f.is_zero() or n < 1:
        raise ConstantPolynomialError("all_roots needs a polynomial of degree >= 1")
    if n > cfg.max_degree:
        raise BudgetExceededError("oracle root finding", n, cfg.max_degree)

    logger = get_logger()
    c = _monic_coefficients(f)
    d = c[:-1] * np.arange(n, 0, -1)
    z = _initial_guesses(c, np.random.default_rng(cfg.seed))

    iterations = 0
    if n == 1:
        z = np.array([-c[1]])
    else:
        for iterations in range(1, cfg.max_iterations + 1):
            p = np.polyval(c, z)
            dp = np.polyval(d, z)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(dp != 0, p / dp, p)
                step = ratio / (1.0 - ratio * inv.sum(axis=1))
            step = np.where(np.isfinite(step), step, 0.0)
            z = z - step
            if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(z))):
                break

    for _ in range(cfg.newton_polish_steps):
        p = np.polyval(c, z)
        dp = np.polyval(d, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            candidate = np.where(dp != 0, z - p / dp, z)
        better = _backward_errors(c, candidate) < _backward_errors(c, z)
        z = np.where(better, candidate, z)

    errors = _backward_errors(c, z)
    converged = errors < cfg.root_tolerance
    result = RootSet(z, errors, converged, iterations, c)

    if n > 1:
        gaps = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(gaps, np.inf)
        limit = cfg.double_root_ratio * np.maximum(1.0, np.abs(z))
        for i, j in zip(*np.nonzero(gaps < limit[:, None])):
            if i < j:
                result.anomalies.append(f"near_double_root({i},{j})")
    for i in np.nonzero(~converged)[0]:
        result.anomalies.append(f"unconverged_root({i}): backward error {errors[i]:.3e}")

    logger.metric("oracle_iterations", iterations)
    if result.anomalies:
        logger.warning(
            f"root finder anomalies for degree {n}", extra={"anomalies": result.anomalies[:5]}
        )
    return result


def working_digits(f: IntPoly1, config: Optional[OracleConfig] = None) -> int:
    """Decimal digits for polishing: the configured floor, raised for wide coefficients."""
    cfg = config or DEFAULT_CONFIG.oracle
    widest = max(abs(c) for c in f.coeffs).bit_length()
    return max(cfg.polish_dps, int(widest * math.log10(2)) + 30)


def polish_roots(
    f: IntPoly1, roots: Sequence[complex], config: Optional[OracleConfig] = None,
) -> List[mpc]:
    """
    Newton steps on the exact integer polynomial at working_digits(f).

    A step is kept only while it lowers |f|. The returned mpc values carry the
    full working precision and should be used inside mp.workdps at that setting.
    """
    cfg = config or DEFAULT_CONFIG.oracle
    polished = []
    with mp.workdps(working_digits(f, cfg)):
        coeffs = [mpf(c) for c in reversed(f.coeffs)]
        for root in roots:
            z = mpc(complex(root))
            value, slope = mp.polyval(coeffs, z, derivative=True)
            for _ in range(cfg.polish_steps):
                if slope == 0:
                    break
                candidate = z - value / slope
                cvalue, cslope = mp.polyval(coeffs, candidate, derivative=True)
                if abs(cvalue) >= abs(value):
                    break
                z, value, slope = candidate, cvalue, cslope
            polished.append(z)
    return polished


def refine_root_set(
    f: IntPoly1, found: RootSet, config: Optional[OracleConfig] = None,
) -> List[mpc]:
    """
    Polish found in place: roots, backward errors, convergence flags and
    unconverged_root anomalies are recomputed at working precision.
    """
    cfg = config or DEFAULT_CONFIG.oracle
    polished = polish_roots(f, found.roots, cfg)
    errors = []
    with mp.workdps(working_digits(f, cfg)):
        coeffs = [mpf(c) for c in reversed(f.coeffs)]
        magnitudes = [abs(c) for c in coeffs]
        for z in polished:
            scale = mp.polyval(magnitudes, abs(z))
            errors.append(float(abs(mp.polyval(coeffs, z)) / scale) if scale else 0.0)
    found.roots = np.array([complex(z) for z in polished], dtype=np.complex128)
    found.backward_errors = np.array(errors)
    found.converged = found.backward_errors < cfg.root_tolerance
    found.anomalies = [a for a in found.anomalies if not a.startswith("unconverged_root")]
    for i in np.nonzero(~found.converged)[0]:
        found.anomalies.append(f"unconverged_root({i}): backward error {errors[i]:.3e}")
    return polished


@dataclass(frozen=True)
class OrbitMap:
    """
    One member of a family, iterated from its critical point.

    cubic:   z -> z^3 + b       (a = 0 slice), critical point 0
    quadrat: G_{a,b}             critical point 1, b = 2 on the slice
    uni:     z -> a z^D + 1      critical point 0
    """
    family: Family
    parameter: complex  # or an mpmath mpc during extended-precision replay
    D: int = 3
    b: complex = 2

    @property
    def tag(self) -> str:
        return {
            Family.CUBIC: "cubic-slice",
            Family.QUADRAT: "quadratic-rational-slice" if self.b == 2 else "quadratic-rational",
            Family.UNI: "unicritical",
        }[self.family]

    @property
    def critical_point(self) -> complex:
        return 1.0 + 0j if self.family == Family.QUADRAT else 0j

    def step(self, z: complex) -> Optional[complex]:
        """Image of z, or None at a pole."""
        if self.family == Family.CUBIC:
            return z ** 3 + self.parameter
        if self.family == Family.UNI:
            return self.parameter * z ** self.D + 1
        den = 1 + (self.b - 2) * z
        if abs(den) <= 1e-14 * max(1.0, abs(z)):
            return None
        return self.parameter * z * (self.b - z) / den

    def orbit(self, steps: int, escape_radius: float) -> Tuple[List[complex], Optional[Verdict]]:
        z = self.critical_point
        points = [z]
        for _ in range(steps):
            z = self.step(z)
            if z is None:
                return points, Verdict.POLE
            if not abs(z) <= escape_radius:
                return points, Verdict.ESCAPED
            points.append(z)
        return points, None


@dataclass
class DynamicsReport:
    """Observed critical-orbit type at one numeric parameter."""
    family: str
    root: complex
    preperiod: Optional[int]
    period: Optional[int]
    residual: Optional[float]
    margin: Optional[float]
    verdict: Verdict
    claimed: Optional[Tuple[int, int]] = None
    orbit_length: int = 0

    def __bool__(self):
        return self.verdict == Verdict.CONFIRMED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "root": [self.root.real, self.root.imag],
            "preperiod": self.preperiod,
            "period": self.period,
            "residual": self.residual,
            "margin": self.margin,
            "claimed": list(self.claimed) if self.claimed else None,
            "verdict": self.verdict.value,
        }


def _relative_gap(z: complex, w: complex) -> float:
    return abs(z - w) / max(1.0, abs(z), abs(w))


def _first_coincidence(points: List[complex], tolerance: float) -> Optional[Tuple[int, int]]:
    for j in range(1, len(points)):
        for i in range(j):
            if _relative_gap(points[j], points[i]) <= tolerance:
                return i, j - i
    return None


def classify_orbit(
    orbit_map: OrbitMap,
    tolerance: Optional[float] = None,
    max_steps: Optional[int] = None,
    claimed: Optional[Tuple[int, int]] = None,
    digits: Optional[int] = None,
) -> DynamicsReport:
    """
    Iterate the critical point and report the first near-coincidence
    z_j ~ z_i (i < j) as preperiod i and period j - i.

    Confirmation needs the residual below tolerance and, for i >= 1, the pair
    shifted one step earlier to miss by at least ten times the tolerance. An
    orbit whose first coincidence only shows up at near_miss_tolerance is
    reported as NEAR_MISS, separately from an escape. With digits set the
    orbit is replayed under mp.workdps(digits); pass an mpc parameter to keep
    its extra precision.
    """
    cfg = DEFAULT_CONFIG.oracle
    tol = cfg.tolerance if tolerance is None else tolerance
    steps = cfg.max_steps if max_steps is None else max_steps
    if claimed is not None:
        steps = max(steps, claimed[0] + claimed[1] + 1)
    if not 1e-12 <= tol <= 1e-6:
        raise SpecError(f"tolerance {tol} outside [1e-12, 1e-6]")

    with mp.workdps(digits) if digits else nullcontext():
        points, stop = orbit_map.orbit(steps, cfg.escape_radius)
        found = _first_coincidence(points, tol)
        if found is None:
            near = _first_coincidence(points, cfg.near_miss_tolerance)
            if near is not None and (claimed is None or tuple(claimed) == near):
                preperiod, period = near
                residual = _relative_gap(points[preperiod + period], points[preperiod])
                return DynamicsReport(
                    orbit_map.tag, complex(orbit_map.parameter), preperiod, period,
                    float(residual), None, Verdict.NEAR_MISS, claimed, len(points),
                )
            return DynamicsReport(
                orbit_map.tag, complex(orbit_map.parameter), None, None, None, None,
                stop or Verdict.UNCONFIRMED, claimed, len(points),
            )

        preperiod, period = found
        residual = float(_relative_gap(points[preperiod + period], points[preperiod]))
        margin = None
        exact = True
        if preperiod >= 1:
            margin = float(_relative_gap(points[preperiod - 1 + period], points[preperiod - 1]))
            exact = margin >= 10 * tol
    matches = claimed is None or tuple(claimed) == (preperiod, period)
    ok = residual < tol and exact and matches
    return DynamicsReport(
        orbit_map.tag, complex(orbit_map.parameter), preperiod, period, residual, margin,
        Verdict.CONFIRMED if ok else Verdict.UNCONFIRMED, claimed, len(points),
    )


def omega_check(
    orbit_map: OrbitMap, k: int, n: int, d: int, tolerance: float, digits: Optional[int] = None,
) -> bool:
    """z_{k+n-1} = w z_{k-1} for a primitive d-th root of unity w (unicritical maps)."""
    with mp.workdps(digits) if digits else nullcontext():
        points, _ = orbit_map.orbit(k + n - 1, DEFAULT_CONFIG.oracle.escape_radius)
        points = [complex(z) for z in points]
    if len(points) < k + n:
        return False
    base, image = points[k - 1], points[k + n - 1]
    if abs(base) <= tolerance:
        return False
    turns = cmath.phase(image / base) * d / (2 * math.pi)
    m = int(round(turns)) % d
    if math.gcd(m, d) != 1:
        return False
    omega = cmath.exp(2j * math.pi * m / d)
    return _relative_gap(image, omega * base) <= tolerance


@dataclass
class FamilyValidation:
    """Aggregate oracle result for one designated polynomial."""
    family: Family
    params: Dict[str, Any]
    degree: int
    roots: RootSet
    reports: List[DynamicsReport]
    omega: List[bool] = field(default_factory=list)
    vieta_ok: bool = True

    @property
    def confirmed(self) -> int:
        return sum(1 for r in self.reports if r)

    @property
    def near_misses(self) -> int:
        return sum(1 for r in self.reports if r.verdict == Verdict.NEAR_MISS)

    @property
    def passed(self) -> bool:
        return (
            len(self.roots) == self.degree
            and self.confirmed == self.degree
            and all(self.omega)
            and self.vieta_ok
            and self.roots.all_converged
        )

    def __bool__(self):
        return self.passed

    def failures(self) -> List[DynamicsReport]:
        return [r for r in self.reports if not r]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "params": jsonable(self.params),
            "degree": self.degree,
            "confirmed": self.confirmed,
            "near_misses": self.near_misses,
            "omega_ok": all(self.omega),
            "vieta_ok": self.vieta_ok,
            "roots": self.roots.to_dict(),
            "verdict": (Verdict.PASS if self.passed else Verdict.FAIL).value,
            "failures": [r.to_dict() for r in self.failures()],
        }


def designated_polynomial(
    family: Family, k: int, n: int = 1, d: Optional[int] = None, D: int = 2,
    max_degree: Optional[int] = None,
) -> IntPoly1:
    """s_k (cubic), r_k (quadrat) or R_{k,n,d} (uni)."""
    if family == Family.CUBIC:
        from .cubicfam import build as build_cubic
        return build_cubic(k, max_degree).s
    if family == Family.QUADRAT:
        from .quadfam import build as build_quad
        return build_quad(k, max_degree).r
    from .unifam import UnicriticalContext
    if d is None:
        raise SpecError("the unicritical family needs d")
    return UnicriticalContext(D, max_degree).preperiodic_factor(k, n, d).poly


def validate_family(
    family: Family,
    k: int,
    n: int = 1,
    d: Optional[int] = None,
    D: int = 2,
    poly: Optional[IntPoly1] = None,
    config: Optional[OracleConfig] = None,
) -> FamilyValidation:
    """Root-find the designated polynomial and classify the orbit at every root."""
    cfg = config or DEFAULT_CONFIG.oracle
    logger = get_logger()
    f = poly if poly is not None else designated_polynomial(family, k, n, d, D)
    params: Dict[str, Any] = {"k": k}
    if family == Family.UNI:
        params.update({"D": D, "n": n, "d": d})
        claimed = (k, n)
    else:
        claimed = (k, 1)

    logger.log_operation_start("oracle.validate_family", {"family": family.value, **params})
    found = all_roots(f, cfg)
    digits = working_digits(f, cfg)
    steps = claimed[0] + claimed[1] + 1
    reports = []
    omega = []
    for root in refine_root_set(f, found, cfg):
        orbit_map = OrbitMap(family, root, D=D)
        reports.append(classify_orbit(orbit_map, cfg.tolerance, steps, claimed, digits))
        if family == Family.UNI and d is not None:
            omega.append(omega_check(orbit_map, k, n, d, cfg.tolerance, digits))
    result = FamilyValidation(
        family, params, f.degree, found, reports, omega, found.vieta_residual() < 1e-8,
    )
    if result.near_misses:
        logger.warning(
            f"{result.near_misses} critical orbits landed above tolerance",
            extra={"family": family.value, **params, "near_misses": result.near_misses},
        )
    logger.log_check_result(
        f"oracle.{family.value}",
        "pass" if result.passed else "fail",
        {**params, "confirmed": result.confirmed, "degree": result.degree},
    )
    logger.log_operation_end("oracle.validate_family", success=result.passed)
    return result
