"""
Cubic family F_{a,b}(z) = z^3 - 3a^2 z + 2a^3 + b with critical points +-a.

P_0 = a, P_1 = b, P_{j+1} = P_j^3 - 3a^2 P_j + 2a^3 + b is the orbit of the
critical point a. Q_k = H(P_{k-1}, P_k) with H(z, w) = z^2 + zw + w^2 - 3a^2
vanishes where a is preperiodic to a fixed point after exactly k steps (or
earlier), and R_k = Q_k / (b - a) removes the spurious component b = a.
"""

from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Tuple

from .certify import EisensteinCertificate, eisenstein_classic
from .config import DEFAULT_CONFIG
from .errors import BudgetExceededError, HypothesisFailure, InexactDivisionError, SpecError
from .fppoly import ModPoly
from .logger import get_logger
from .reports import StructureReport
from .zpoly import (
    IntPoly1, IntPoly2, dense_exact_div, dense_mul, exact_div, homog_part, reduce_mod, substitute,
)

EISENSTEIN_PRIME = 3


@dataclass(frozen=True)
class CubicFamilyInstance:
    """P_0..P_k, Q_k, R_k and the restrictions r_k = R_k(0, b), s_k = r_k / b."""
    k: int
    P_seq: Tuple[IntPoly2, ...]
    Q: IntPoly2
    R: IntPoly2
    r: IntPoly1
    s: IntPoly1


def _gens() -> Tuple[IntPoly2, IntPoly2]:
    return IntPoly2.gen("a"), IntPoly2.gen("b")


def build(k: int, max_degree: Optional[int] = None) -> CubicFamilyInstance:
    """Construct the curve polynomials for preperiod k >= 2."""
    if k < 2:
        raise SpecError(f"cubic family needs k >= 2, got {k}")
    cap = max_degree if max_degree is not None else DEFAULT_CONFIG.budget.max_degree
    degree = 2 * 3 ** (k - 1)
    logger = get_logger()
    if degree > cap:
        logger.log_budget_refusal(f"cubic Q_{k}", degree, cap)
        raise BudgetExceededError(f"cubic Q_{k}", degree, cap)

    a, b = _gens()
    shift = a ** 2 * 3
    offset = a ** 3 * 2 + b
    P = [a, b]
    for _ in range(1, k):
        Pj = P[-1]
        P.append(Pj ** 3 - shift * Pj + offset)
    Q = P[k - 1] ** 2 + P[k - 1] * P[k] + P[k] ** 2 - shift
    R = exact_div(Q, b - a)
    r = substitute(R, "a", 0)
    s = exact_div(r, IntPoly1.gen("b"))
    logger.debug(f"built cubic family k={k}", extra={"deg_R": R.total_degree, "terms": len(R.terms)})
    return CubicFamilyInstance(k, tuple(P), Q, R, r, s)


def _binomial_form(alpha: int, beta: int) -> IntPoly2:
    """(b - a)^alpha * (2a + b)^beta, expanded by binomial coefficients in a/b."""
    left = [comb(alpha, i) * (-1) ** i for i in range(alpha + 1)]
    right = [comb(beta, i) << i for i in range(beta + 1)]
    top = alpha + beta
    return IntPoly2(tuple(((i, top - i), c) for i, c in enumerate(dense_mul(left, right)) if c))


def predicted_top_part(k: int) -> IntPoly2:
    """(b - a)^(4*3^(k-2) - 1) * (2a + b)^(2*3^(k-2))."""
    m = 3 ** (k - 2)
    return _binomial_form(4 * m - 1, 2 * m)


def univariate_orbit(k: int) -> Tuple[IntPoly1, ...]:
    """p_j(b) = P_j(0, b): p_0 = 0, p_1 = b, p_{j+1} = p_j^3 + b."""
    b = IntPoly1.gen("b")
    p = [IntPoly1((), "b"), b]
    for _ in range(1, k):
        p.append(p[-1] ** 3 + b)
    return tuple(p)


def verify_structure(inst: CubicFamilyInstance) -> StructureReport:
    """Exact structural checks of R_k near the origin, at infinity and along b = a."""
    k = inst.k
    report = StructureReport("cubic.structure", {"k": k})
    a, b = _gens()
    a1 = IntPoly1.gen("a")

    report.add("Q=(b-a)R", (b - a) * inst.R == inst.Q)
    report.add("lowest_part.R", homog_part(inst.R, "lowest") == a * 3 + b * 3)
    report.add("highest_part.R", homog_part(inst.R, "highest") == predicted_top_part(k))
    report.add("R(a,a)=6a", substitute(inst.R, "b", a1) == a1 * 6)

    for j in range(1, k + 1):
        report.add(f"lowest_part.P_{j}", homog_part(inst.P_seq[j], "lowest") == b)

    degrees_ok = (
        all(inst.P_seq[j].total_degree == 3 ** (j - 1) for j in range(1, k + 1))
        and inst.Q.total_degree == 2 * 3 ** (k - 1)
        and inst.R.total_degree == 2 * 3 ** (k - 1) - 1
    )
    report.add("degrees", degrees_ok, deg_R=inst.R.total_degree, deg_Q=inst.Q.total_degree)

    for j in range(2, k + 1):
        e = 3 ** (j - 2)
        report.add(f"top_part.P_{j}", homog_part(inst.P_seq[j], "highest") == _binomial_form(2 * e, e))
    for j in range(1, k + 1):
        dPdb = substitute(inst.P_seq[j].derivative("b"), "b", a1)
        report.add(f"dP_{j}/db(a,a)=1", dPdb == IntPoly1.constant(1))
    diff = substitute(inst.P_seq[k] - inst.P_seq[k - 1], "b", a1)
    report.add("P_k(a,a)=P_(k-1)(a,a)", diff.is_zero())

    # restriction to a = 0
    p = univariate_orbit(k)
    q = p[k - 1] ** 2 + p[k - 1] * p[k] + p[k] ** 2
    bb = IntPoly1.gen("b")
    report.add("q_k=p_(k-1)^2+p_(k-1)p_k+p_k^2", substitute(inst.Q, "a", 0) == q)
    report.add("q_k=b*r_k=b^2*s_k", q == bb * inst.r and inst.r == bb * inst.s)
    for j in range(1, k + 1):
        expected = [0] * (3 ** (j - 1) + 1)
        for i in range(j):
            expected[3 ** i] = 1
        report.add(
            f"p_{j}_mod3",
            reduce_mod(p[j], EISENSTEIN_PRIME) == ModPoly(EISENSTEIN_PRIME, expected, "b"),
        )
    s = inst.s
    report.add(
        "s.shape",
        s.is_monic() and s.degree == 2 * 3 ** (k - 1) - 2 and s.constant_term == 3,
        degree=s.degree, constant=s.constant_term,
    )
    get_logger().log_check_result("cubic.structure", "pass" if report.passed else "fail", {"k": k})
    return report


def s_hypotheses(s: IntPoly1) -> Dict[str, bool]:
    """Properties of s_k that the Eisenstein argument at 3 rests on."""
    return {
        "s_monic": s.is_monic(),
        "s_mod3_pure_power": reduce_mod(s, EISENSTEIN_PRIME).is_monomial_power(),
        "constant_3_mod_9": s.constant_term % 9 == 3,
    }


def certify_s(inst: CubicFamilyInstance, strict: bool = True) -> EisensteinCertificate:
    """Eisenstein at 3 for s_k; with strict, any failing hypothesis raises HypothesisFailure."""
    cert = eisenstein_classic(inst.s, EISENSTEIN_PRIME)
    extra = s_hypotheses(inst.s)
    failing = [name for name, ok in {**cert.hypotheses, **extra}.items() if not ok]
    if strict and failing:
        raise HypothesisFailure(f"s_{inst.k}: hypotheses failed: {', '.join(failing)}")
    return cert


def degenerate_curves() -> StructureReport:
    """F(a) - a = b - a (k = 0) and F(b) - b = (b - a)^2 (2a + b) (k = 1)."""
    a, b = _gens()
    report = StructureReport("cubic.degenerate")
    F_of_a = a ** 3 - a ** 2 * 3 * a + a ** 3 * 2 + b
    report.add("F(a)-a", F_of_a - a == b - a)
    F_of_b = b ** 3 - a ** 2 * 3 * b + a ** 3 * 2 + b
    report.add("F(b)-b", F_of_b - b == (b - a) ** 2 * (a * 2 + b))
    return report


def points_at_infinity(inst: CubicFamilyInstance) -> Dict[str, int]:
    """Multiplicities of [1:1:0] and [1:-2:0] on the closure of R_k = 0."""
    top = homog_part(inst.R, "highest")
    degree = int(top.total_degree)
    # dehomogenized at b = 1, so b - a and 2a + b become 1 - a and 1 + 2a
    rest = [0] * (degree + 1)
    for (i, _), c in top.terms:
        rest[i] = c
    counts = {}
    for name, line in (("[1:1:0]", [1, -1]), ("[1:-2:0]", [1, 2])):
        m = 0
        while len(rest) > 1:
            try:
                rest = dense_exact_div(rest, line)
            except InexactDivisionError:
                break
            m += 1
        counts[name] = m
    if rest != [1] or sum(counts.values()) != degree:
        raise HypothesisFailure(f"top part of R_{inst.k} has a factor besides b-a and 2a+b")
    return counts
