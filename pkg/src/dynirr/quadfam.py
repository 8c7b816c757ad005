"""
Quadratic rational family G_{a,b}(z) = a z (b - z) / (1 + (b - 2) z).

The critical point 1 maps to a, and G^(j-2)(a) = P_j / Q_j with
P_2 = a, Q_2 = 1,
P_{j+1} = a P_j (b Q_j - P_j),  Q_{j+1} = Q_j^2 + (b - 2) P_j Q_j.
R_k = P_k - b Q_k vanishes where G^(k-1)(1) = P_k / Q_k equals b. G maps b to
the fixed point 0, so there the critical point lands on 0 after k steps.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .certify import EisensteinCertificate, eisenstein_classic
from .config import DEFAULT_CONFIG
from .errors import BudgetExceededError, HypothesisFailure, PoleError, SpecError
from .fppoly import ModPoly
from .logger import get_logger
from .reports import StructureReport
from .zpoly import IntPoly1, IntPoly2, homog_part, reduce_mod, substitute

EISENSTEIN_PRIME = 2
SLICE_B = 2

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class QuadFamilyInstance:
    """P_2..P_k, Q_2..Q_k (index j stored at j - 2), R_k and r_k = R_k(a, 2)."""
    k: int
    P_seq: Tuple[IntPoly2, ...]
    Q_seq: Tuple[IntPoly2, ...]
    R: IntPoly2
    r: IntPoly1

    def P(self, j: int) -> IntPoly2:
        return self.P_seq[j - 2]

    def Q(self, j: int) -> IntPoly2:
        return self.Q_seq[j - 2]


def build(k: int, max_degree: Optional[int] = None) -> QuadFamilyInstance:
    """Construct P_j, Q_j for 2 <= j <= k, R_k and r_k."""
    if k < 2:
        raise SpecError(f"quadratic-rational family needs k >= 2, got {k}")
    cap = max_degree if max_degree is not None else DEFAULT_CONFIG.budget.max_degree
    degree = 2 ** (k - 1) - 1
    logger = get_logger()
    if degree > cap:
        logger.log_budget_refusal(f"quadratic-rational R_{k}", degree, cap)
        raise BudgetExceededError(f"quadratic-rational R_{k}", degree, cap)

    a, b = IntPoly2.gen("a"), IntPoly2.gen("b")
    P = [a]
    Q = [IntPoly2.constant(1)]
    for _ in range(2, k):
        Pj, Qj = P[-1], Q[-1]
        P.append(a * Pj * (b * Qj - Pj))
        Q.append(Qj ** 2 + (b - 2) * Pj * Qj)
    R = P[-1] - b * Q[-1]
    r = substitute(R, "b", SLICE_B)
    logger.debug(f"built quadratic-rational family k={k}", extra={"deg_R": R.total_degree})
    return QuadFamilyInstance(k, tuple(P), tuple(Q), R, r)


def slice_orbit(k: int) -> List[IntPoly1]:
    """p_j(a) along b = 2: p_2 = a, p_{j+1} = -a p_j^2 + 2a p_j."""
    a = IntPoly1.gen("a")
    p = [a]
    for _ in range(2, k):
        p.append(-a * p[-1] ** 2 + a * p[-1] * 2)
    return p


def lowest_part_P(j: int) -> IntPoly2:
    """a for j = 2, a^(j-1) b^(j-3) (b - a) for j >= 3."""
    a, b = IntPoly2.gen("a"), IntPoly2.gen("b")
    if j == 2:
        return a
    return a ** (j - 1) * b ** (j - 3) * (b - a)


def mod2_exponent(k: int) -> int:
    """Exponent m with r_k = a^m mod 2, from p_{j+1} = a p_j^2 mod 2 and p_2 = a."""
    return 2 ** (k - 1) - 1


def verify_structure(inst: QuadFamilyInstance) -> StructureReport:
    """Lowest parts, degrees and the b = 2 slice."""
    k = inst.k
    report = StructureReport("quadrat.structure", {"k": k})
    a, b = IntPoly2.gen("a"), IntPoly2.gen("b")
    if k == 2:
        report.add("R_2=a-b", inst.R == a - b)
        return report

    report.add("lowest_part.R", homog_part(inst.R, "lowest") == -b)
    for j in range(2, k + 1):
        report.add(f"lowest_part.P_{j}", homog_part(inst.P(j), "lowest") == lowest_part_P(j))
        report.add(f"lowest_part.Q_{j}", homog_part(inst.Q(j), "lowest") == IntPoly2.constant(1))
    report.notes.append(
        "lowest part of P_j is a^(j-1) b^(j-3) (b - a) for j >= 3; "
        "the monomial a^(j-1) b^(j-2) alone misses the a^j b^(j-3) term of the same degree"
    )
    report.add("deg_R", inst.R.total_degree == 2 ** (k - 1) - 1, degree=inst.R.total_degree)
    report.add(
        "degree_bounds",
        inst.P(k).total_degree <= 2 ** (k - 1) - 1 and inst.Q(k).total_degree <= 2 ** (k - 1) - 2,
    )

    one = IntPoly1.constant(1)
    p = slice_orbit(k)
    for j in range(3, k + 1):
        q_j = substitute(inst.Q(j), "b", SLICE_B)
        p_j = substitute(inst.P(j), "b", SLICE_B)
        report.add(f"q_{j}=1", q_j == one)
        neg = -p_j
        report.add(
            f"p_{j}.shape",
            neg.is_monic() and neg.degree == 2 ** (j - 1) - 1 and neg.constant_term == 0,
        )
        report.add(f"p_{j}.recursion", p_j == p[j - 2])

    r = inst.r
    report.add("r.constant=-2", r.constant_term == -2)
    report.add("r.degree", r.degree == 2 ** (k - 1) - 1)
    m = mod2_exponent(k)
    report.add("r_mod2", reduce_mod(r, EISENSTEIN_PRIME) == ModPoly(EISENSTEIN_PRIME, (0,) * m + (1,)), exponent=m)
    report.notes.append(
        f"printed_exponent_discrepancy: r_k = a^{m} mod 2 is asserted; "
        f"the exponent 2^(k-1) = {2 ** (k - 1)} exceeds deg r_k"
    )
    get_logger().log_check_result("quadrat.structure", "pass" if report.passed else "fail", {"k": k})
    return report


def r_hypotheses(inst: QuadFamilyInstance) -> Dict[str, bool]:
    """Properties of r_k that the Eisenstein argument at 2 rests on."""
    r = inst.r
    m = mod2_exponent(inst.k)
    return {
        "r_mod2_pure_power": reduce_mod(r, EISENSTEIN_PRIME) == ModPoly(EISENSTEIN_PRIME, (0,) * m + (1,)),
        "constant_is_-2": r.constant_term == -2,
        "leading_odd": r.leading_coefficient % 2 == 1,
    }


def certify_r(inst: QuadFamilyInstance, strict: bool = True) -> EisensteinCertificate:
    """Eisenstein at 2 for the monic normalization of r_k."""
    r = inst.r
    f = r if r.leading_coefficient > 0 else -r
    cert = eisenstein_classic(f, EISENSTEIN_PRIME)
    extra = r_hypotheses(inst)
    failing = [name for name, ok in {**cert.hypotheses, **extra}.items() if not ok]
    if strict and failing:
        raise HypothesisFailure(f"r_{inst.k}: hypotheses failed: {', '.join(failing)}")
    return cert


def G(a: Rational, b: Rational, z: Rational) -> Fraction:
    """One exact step of G_{a,b}; raises PoleError where 1 + (b - 2) z = 0."""
    den = 1 + (b - 2) * z
    if den == 0:
        raise PoleError(f"pole of G at z={z}")
    return Fraction(a * z * (b - z)) / den


def iterate_exact(a: Rational, b: Rational, steps: int) -> List[Fraction]:
    """[a, G(a), ..., G^steps(a)] in exact rational arithmetic."""
    z = Fraction(a)
    orbit = [z]
    for _ in range(steps):
        z = G(a, b, z)
        orbit.append(z)
    return orbit


def check_rational_evaluation(inst: QuadFamilyInstance, a: Rational, b: Rational) -> Optional[bool]:
    """
    G^(k-2)(a) against P_k(a,b) / Q_k(a,b) at a rational point; None when the
    orbit meets a pole or Q_k vanishes there.
    """
    try:
        value = iterate_exact(a, b, inst.k - 2)[-1]
    except PoleError:
        return None
    a, b = Fraction(a), Fraction(b)
    den = inst.Q(inst.k).evaluate(a, b)
    if den == 0:
        return None
    return value == Fraction(inst.P(inst.k).evaluate(a, b)) / den
