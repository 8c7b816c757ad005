"""
Unicritical family f_a(z) = a z^D + 1.

Builds the critical-orbit polynomials P_n, the Gleason factors R_n, the
homogenized cyclotomics Phi_d and the preperiodic factors P_{k,n,d}, R_{k,n,d},
P_{k,n}, R_{k,n}, and checks the exact identities and congruences they satisfy.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd as igcd
from typing import Dict, List, Optional, Tuple

from .config import DEFAULT_CONFIG, IRREDUCIBLE_R3_DEGREES, Verdict
from .errors import (
    BudgetExceededError,
    HypothesisFailure,
    InexactDivisionError,
    SpecError,
)
from .fppoly import ModPoly, as_power_of, frobenius_period_check, is_irreducible
from .logger import get_logger
from .numtheory import divisors, mobius, orbit_degree, prime_divisors, prime_power, totient
from .reports import CheckResult, StructureReport
from .zpoly import (
    IntPoly1,
    IntPoly2,
    discriminant,
    exact_div,
    poly_gcd,
    reduce_mod,
    resultant,
)


# ---------------------------------------------------------------------------
# cyclotomics
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_univariate(d: int, var: str = "a") -> IntPoly1:
    """Phi_d(x) from x^d - 1 divided by Phi_e for the proper divisors e of d."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {d}")
    num = IntPoly1.monomial(1, d, var) - 1
    den = IntPoly1.constant(1, var)
    for e in divisors(d):
        if e < d:
            den = den * cyclotomic_univariate(e, var)
    return exact_div(num, den)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly2:
    """Homogenized Phi_d(X, Y) = Y^phi(d) Phi_d(X / Y)."""
    phi = cyclotomic_univariate(d, "X")
    m = len(phi.coeffs) - 1
    return IntPoly2(tuple(((i, m - i), c) for i, c in enumerate(phi.coeffs)), ("X", "Y"))


def eval_homogeneous(F: IntPoly2, U: IntPoly1, V: IntPoly1) -> IntPoly1:
    """F(U, V) for homogeneous F, by Horner in U with powers of V."""
    m = int(F.total_degree)
    coeff = {i: c for (i, _), c in F.terms}
    vpow = [IntPoly1.constant(1, U.var)]
    for _ in range(m):
        vpow.append(vpow[-1] * V)
    acc = IntPoly1.constant(coeff.get(m, 0), U.var)
    for i in range(m - 1, -1, -1):
        acc = acc * U
        c = coeff.get(i, 0)
        if c:
            acc = acc + vpow[m - i] * c
    return acc


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PreperiodicFactor:
    """R_{k,n,d} (or the aggregate R_{k,n} when d is None) with its full P."""
    k: int
    n: int
    d: Optional[int]
    poly: IntPoly1
    full: IntPoly1

    @property
    def label(self) -> str:
        return f"R_{{{self.k},{self.n},{'all' if self.d is None else self.d}}}"


@dataclass
class ResultantWitness:
    """resultant(R_{k,m,d}, R_n) with the predicted absolute value."""
    D: int
    k: int
    m: int
    d: int
    n: int
    value: int
    expected_abs: int
    shape: str
    verdict: Verdict

    @property
    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def to_dict(self) -> Dict:
        return {
            "D": self.D, "k": self.k, "m": self.m, "d": self.d, "n": self.n,
            "resultant": str(self.value), "expected_abs": str(self.expected_abs),
            "shape": self.shape, "sign": self.sign, "verdict": self.verdict.value,
        }


@dataclass
class SurveyRow:
    """One (D, n) line of the F_p irreducibility survey."""
    D: int
    p: int
    e: int
    n: int
    degree: int
    irreducible: bool
    expected_irreducible: bool
    frobenius_period: bool
    degree_screen: bool
    degree_lower_bound: int
    verdict: Verdict

    def to_dict(self) -> Dict:
        return {
            "D": self.D, "p": self.p, "e": self.e, "n": self.n, "degree": self.degree,
            "irreducible": self.irreducible, "expected_irreducible": self.expected_irreducible,
            "frobenius_period": self.frobenius_period, "degree_screen": self.degree_screen,
            "degree_lower_bound": self.degree_lower_bound, "verdict": self.verdict.value,
        }


@dataclass
class SurveyTable:
    rows: List[SurveyRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.verdict == Verdict.PASS for r in self.rows)

    @property
    def screen_eliminations(self) -> int:
        """Rows whose degree alone rules out irreducibility."""
        return sum(1 for r in self.rows if not r.degree_screen)

    def row(self, D: int, n: int) -> SurveyRow:
        for r in self.rows:
            if r.D == D and r.n == n:
                return r
        raise KeyError((D, n))

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "screen_eliminations": self.screen_eliminations,
            "rows": [r.to_dict() for r in self.rows],
        }


# ---------------------------------------------------------------------------
# context
# ---------------------------------------------------------------------------

class UnicriticalContext:
    """
    Exact data for one degree D. P_n, R_n, P_{k,n,d} and the factors are
    memoized; a context is filled by one thread and read-only afterwards.
    """

    def __init__(self, D: int, max_degree: Optional[int] = None):
        if not isinstance(D, int) or D < 2:
            raise SpecError(f"degree D must be an integer >= 2, got {D!r}")
        self.D = D
        pp = prime_power(D)
        self.p: Optional[int] = pp[0] if pp else None
        self.e: Optional[int] = pp[1] if pp else None
        self.max_degree = max_degree if max_degree is not None else DEFAULT_CONFIG.budget.max_degree
        self.logger = get_logger()
        self._P: Dict[int, IntPoly1] = {1: IntPoly1.constant(1)}
        self._R: Dict[int, IntPoly1] = {}
        self._Pkd: Dict[Tuple[int, int, int], IntPoly1] = {}
        self._Rkd: Dict[Tuple[int, int, int], PreperiodicFactor] = {}
        self._agg: Dict[Tuple[int, int], PreperiodicFactor] = {}

    def __repr__(self):
        return f"UnicriticalContext(D={self.D})"

    @property
    def is_prime_power(self) -> bool:
        return self.p is not None

    def N(self, k: int) -> int:
        return orbit_degree(self.D, k)

    def _require_budget(self, what: str, degree: int):
        if degree > self.max_degree:
            self.logger.log_budget_refusal(what, degree, self.max_degree)
            raise BudgetExceededError(what, degree, self.max_degree)

    def _require_prime_power(self, what: str):
        if not self.is_prime_power:
            raise SpecError(f"{what} needs D to be a prime power, got D={self.D}")

    def _check_params(self, k: int, n: int, d: Optional[int] = None):
        if k < 2:
            raise SpecError(f"preperiod k must be >= 2, got {k}")
        if n < 1:
            raise SpecError(f"period n must be >= 1, got {n}")
        if d is not None and (d < 2 or self.D % d):
            raise SpecError(f"d must divide D={self.D} and be >= 2, got {d}")
        self._require_budget(f"P_{k + n - 1} for D={self.D}", self.N(k + n - 2))

    # -- P_n and R_n --------------------------------------------------------

    def critical_orbit(self, n: int) -> IntPoly1:
        """P_n = f_a^n(0): P_1 = 1, P_{n+1} = a P_n^D + 1."""
        if n < 1:
            raise SpecError(f"n must be >= 1, got {n}")
        if n in self._P:
            return self._P[n]
        self._require_budget(f"P_{n} for D={self.D}", self.N(n - 1))
        a = IntPoly1.gen()
        j = max(self._P)
        P = self._P[j]
        while j < n:
            P = a * P ** self.D + 1
            j += 1
            self._P[j] = P
            self.logger.debug(f"built P_{j}", extra={"D": self.D, "degree": P.degree})
        return P

    def gleason_factor(self, n: int) -> IntPoly1:
        """R_n = prod over m | n of P_m^mu(n/m), by exact division."""
        if n in self._R:
            return self._R[n]
        num = IntPoly1.constant(1)
        den = IntPoly1.constant(1)
        for m in divisors(n):
            mu = mobius(n // m)
            if mu == 1:
                num = num * self.critical_orbit(m)
            elif mu == -1:
                den = den * self.critical_orbit(m)
        R = exact_div(num, den)
        self._R[n] = R
        check = IntPoly1.constant(1)
        for m in divisors(n):
            check = check * self.gleason_factor(m)
        if check != self.critical_orbit(n):
            raise HypothesisFailure(f"product of R_m over m | {n} differs from P_{n}")
        return R

    # -- preperiodic factors ------------------------------------------------

    def full_factor(self, k: int, n: int, d: int) -> IntPoly1:
        """P_{k,n,d} = Phi_d(P_{k+n-1}, P_{k-1})."""
        key = (k, n, d)
        if key not in self._Pkd:
            self._check_params(k, n, d)
            self._Pkd[key] = eval_homogeneous(
                cyclotomic(d), self.critical_orbit(k + n - 1), self.critical_orbit(k - 1)
            )
        return self._Pkd[key]

    def preperiodic_factor(self, k: int, n: int, d: int) -> PreperiodicFactor:
        """R_{k,n,d} by Moebius inversion of P_{k,m,d} / P_{gcd(m,k-1)}^phi(d)."""
        key = (k, n, d)
        if key in self._Rkd:
            return self._Rkd[key]
        self._check_params(k, n, d)
        phi = totient(d)
        num = IntPoly1.constant(1)
        den = IntPoly1.constant(1)
        for m in divisors(n):
            mu = mobius(n // m)
            if not mu:
                continue
            ratio = exact_div(
                self.full_factor(k, m, d),
                self.critical_orbit(igcd(m, k - 1)) ** phi,
            )
            if mu == 1:
                num = num * ratio
            else:
                den = den * ratio
        R = exact_div(num, den)
        full = self.full_factor(k, n, d)
        factor = PreperiodicFactor(k, n, d, R, full)
        self._Rkd[key] = factor

        # P_{k,n,d} = P_{gcd(n,k-1)}^phi(d) * prod over m | n of R_{k,m,d}
        check = self.critical_orbit(igcd(n, k - 1)) ** phi
        for m in divisors(n):
            check = check * self.preperiodic_factor(k, m, d).poly
        if check != full:
            raise HypothesisFailure(f"factorization of P_{{{k},{n},{d}}} does not re-multiply")
        return factor

    def aggregate_factor(self, k: int, n: int) -> PreperiodicFactor:
        """P_{k,n} by the summation formula and R_{k,n} as the product over d | D."""
        key = (k, n)
        if key in self._agg:
            return self._agg[key]
        self._check_params(k, n)
        U = self.critical_orbit(k + n - 1)
        V = self.critical_orbit(k - 1)
        upow = [IntPoly1.constant(1)]
        vpow = [IntPoly1.constant(1)]
        for _ in range(self.D - 1):
            upow.append(upow[-1] * U)
            vpow.append(vpow[-1] * V)
        P = IntPoly1()
        for i in range(self.D):
            P = P + upow[i] * vpow[self.D - 1 - i]
        R = IntPoly1.constant(1)
        for d in divisors(self.D):
            if d > 1:
                R = R * self.preperiodic_factor(k, n, d).poly
        factor = PreperiodicFactor(k, n, None, R, P)
        self._agg[key] = factor

        # P_{k,n} = P_{gcd(n,k-1)}^(D-1) * prod over m | n of R_{k,m}
        check = self.critical_orbit(igcd(n, k - 1)) ** (self.D - 1)
        for m in divisors(n):
            check = check * self.aggregate_factor(k, m).poly
        if check != P:
            raise HypothesisFailure(f"factorization of P_{{{k},{n}}} does not re-multiply")
        return factor

    def M_exponent(self, k: int, n: int) -> int:
        """Exponent M_{k,n} with R_{k,1} = a^M and R_{k,n} = R_n^M mod p."""
        D = self.D
        if n == 1:
            return (D - 1) * self.N(k - 1)
        if (k - 1) % n == 0:
            return (D - 1) * (D ** (k - 1) - 1)
        return (D - 1) * D ** (k - 1)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def critical_orbit(ctx: UnicriticalContext, n: int) -> IntPoly1:
    return ctx.critical_orbit(n)


def gleason_factor(ctx: UnicriticalContext, n: int) -> IntPoly1:
    return ctx.gleason_factor(n)


def preperiodic_factor(ctx: UnicriticalContext, k: int, n: int, d: int) -> PreperiodicFactor:
    return ctx.preperiodic_factor(k, n, d)


def aggregate_factor(ctx: UnicriticalContext, k: int, n: int) -> PreperiodicFactor:
    return ctx.aggregate_factor(k, n)


def _guard(report: StructureReport, name: str, fn, **details) -> Optional[object]:
    """Run fn; a HypothesisFailure or inexact division becomes a failed check."""
    try:
        return fn()
    except (HypothesisFailure, InexactDivisionError) as exc:
        report.add(name, False, error=str(exc), **details)
        return None


def check_identities(ctx: UnicriticalContext, k: int, n: int) -> StructureReport:
    """Factorization identities, closed forms of P_{k,n} and the orbit-polynomial shape."""
    report = StructureReport("uni.identity", {"D": ctx.D, "k": k, "n": n})
    D = ctx.D
    for j in (k - 1, k + n - 1):
        P = ctx.critical_orbit(j)
        report.add(
            f"P_{j}.shape", P.is_monic() and P.constant_term == 1 and P.degree == ctx.N(j - 1),
            degree=P.degree,
        )
    report.add("N.recurrence", 1 + D * ctx.N(k) == ctx.N(k + 1), N_k=ctx.N(k))

    for d in divisors(D):
        if d < 2:
            continue
        factor = _guard(report, f"fkpd.d={d}", lambda: ctx.preperiodic_factor(k, n, d), d=d)
        if factor is not None:
            report.add(f"fkpd.d={d}", True, degree=factor.poly.degree)
            report.add(f"R.monic.d={d}", factor.poly.is_monic())

    agg = _guard(report, "buff", lambda: ctx.aggregate_factor(k, n))
    if agg is None:
        return report
    report.add("buff", True, degree=agg.poly.degree)
    P = agg.full
    U = ctx.critical_orbit(k + n - 1)
    V = ctx.critical_orbit(k - 1)
    try:
        quotient = exact_div(U ** D - V ** D, U - V)
        report.add("P_kn.quotient_form", quotient == P)
    except InexactDivisionError as exc:
        report.add("P_kn.quotient_form", False, error=str(exc))
    report.add(
        "P_kn.shape",
        P.is_monic() and P.constant_term == D and P.degree == (D - 1) * ctx.N(k + n - 2),
        constant=P.constant_term, degree=P.degree,
    )
    if ctx.is_prime_power:
        for j in range(1, k + n - 1):
            report.add(f"orbit_difference.k={j}", check_orbit_difference(ctx, j))
    return report


def check_orbit_difference(ctx: UnicriticalContext, k: int) -> bool:
    """P_{k+1} - P_k = a^{N_k} mod p."""
    ctx._require_prime_power("orbit-difference congruence")
    diff = reduce_mod(ctx.critical_orbit(k + 1) - ctx.critical_orbit(k), ctx.p)
    return diff == ModPoly(ctx.p, (0,) * ctx.N(k) + (1,))


def check_resultant_lemma(ctx: UnicriticalContext, k: int, m: int, d: int, n: int) -> ResultantWitness:
    """
    |resultant(R_{k,m,d}, R_n)| is q^deg(R_n) when n = m and d is a power of
    the prime q, and 1 otherwise.
    """
    A = ctx.preperiodic_factor(k, m, d).poly
    B = ctx.gleason_factor(n)
    value = resultant(A, B)
    pp = prime_power(d)
    if n == m and pp is not None:
        expected, shape = pp[0] ** int(max(B.degree, 0)), "p^deg(R_n)"
    else:
        expected, shape = 1, "1"
    verdict = Verdict.PASS if abs(value) == expected else Verdict.FAIL
    witness = ResultantWitness(ctx.D, k, m, d, n, value, expected, shape, verdict)
    ctx.logger.log_check_result("resultant", verdict.value, {"D": ctx.D, "k": k, "m": m, "d": d, "n": n})
    return witness


def check_poonen(ctx: UnicriticalContext, m: int, n: int) -> CheckResult:
    """|resultant(R_m, R_n)| = 1 for m != n."""
    value = resultant(ctx.gleason_factor(m), ctx.gleason_factor(n))
    return CheckResult(
        f"poonen.m={m}.n={n}", Verdict.PASS if abs(value) == 1 else Verdict.FAIL,
        {"resultant": str(value)},
    )


def check_poonen_congruence(ctx: UnicriticalContext, m: int, k: int) -> bool:
    """P_{m+k} = P_k modulo P_m^D, as exact divisibility over Z."""
    diff = ctx.critical_orbit(m + k) - ctx.critical_orbit(k)
    try:
        exact_div(diff, ctx.critical_orbit(m) ** ctx.D)
    except InexactDivisionError:
        return False
    return True


def check_modp_power(ctx: UnicriticalContext, k: int, n: int, d: int) -> StructureReport:
    """
    R_{k,n,d} mod p as a power of a (n = 1) or of R_n mod p, and the aggregate
    exponent against M_{k,n}. For composite D the reductions are reported only.
    """
    report = StructureReport("uni.modp", {"D": ctx.D, "k": k, "n": n, "d": d})
    if not ctx.is_prime_power:
        for q in prime_divisors(ctx.D):
            A = reduce_mod(ctx.preperiodic_factor(k, n, d).poly, q)
            base = ModPoly.gen(q) if n == 1 else reduce_mod(ctx.gleason_factor(n), q)
            match = as_power_of(A, base)
            report.add_info(
                f"composite.p={q}", degree=A.degree,
                power_of_base=None if match is None else match.exponent,
            )
        report.notes.append(f"D={ctx.D} is not a prime power; nothing asserted")
        return report

    p = ctx.p
    base = ModPoly.gen(p) if n == 1 else reduce_mod(ctx.gleason_factor(n), p)
    A = reduce_mod(ctx.preperiodic_factor(k, n, d).poly, p)
    match = as_power_of(A, base)
    report.add(
        f"power.d={d}", match is not None and match.scalar == 1,
        exponent=None if match is None else match.exponent,
    )
    agg = reduce_mod(ctx.aggregate_factor(k, n).poly, p)
    match = as_power_of(agg, base)
    expected = ctx.M_exponent(k, n)
    report.add(
        "aggregate.exponent",
        match is not None and match.exponent == expected and match.scalar == 1,
        exponent=None if match is None else match.exponent, expected=expected,
    )
    return report


def check_modp_closed_form(ctx: UnicriticalContext, n: int) -> bool:
    """P_n = sum over j < n of a^{N_j} mod p."""
    ctx._require_prime_power("closed form of P_n mod p")
    coeffs = [0] * (ctx.N(n - 1) + 1)
    for j in range(n):
        coeffs[ctx.N(j)] += 1
    return reduce_mod(ctx.critical_orbit(n), ctx.p) == ModPoly(ctx.p, coeffs)


def check_aggregate_modp(ctx: UnicriticalContext, k: int, n: int) -> bool:
    """P_{k,n} = a^{M_{k,1}} P_n^{(D-1) D^{k-1}} mod p."""
    ctx._require_prime_power("aggregate congruence")
    p, D = ctx.p, ctx.D
    lhs = reduce_mod(ctx.aggregate_factor(k, n).full, p)
    a_part = ModPoly(p, (0,) * ctx.M_exponent(k, 1) + (1,))
    rhs = a_part * reduce_mod(ctx.critical_orbit(n), p) ** ((D - 1) * D ** (k - 1))
    return lhs == rhs


def check_multiplicity(ctx: UnicriticalContext, k: int, n: int, d: int) -> bool:
    """gcd(P_{k,n,d}, P_{k,n,d}') = P_{gcd(n,k-1)}^(phi(d)-1) up to units."""
    full = ctx.full_factor(k, n, d)
    g = poly_gcd(full, full.derivative())
    expected = ctx.critical_orbit(igcd(n, k - 1)) ** (totient(d) - 1)
    return g.primitive_part() == expected.primitive_part()


def check_gleason(ctx: UnicriticalContext, n: int) -> StructureReport:
    """disc(P_n) = 1 mod D, so P_n has simple roots."""
    report = StructureReport("uni.gleason", {"D": ctx.D, "n": n})
    P = ctx.critical_orbit(n)
    if P.degree < 1:
        report.add_info("discriminant", note="P_1 is constant")
        return report
    disc = discriminant(P)
    report.add("discriminant", disc % ctx.D == 1, value=str(disc), residue=disc % ctx.D)
    return report


def check_r3_cyclotomic_factor(D: int) -> CheckResult:
    """a^2 + a + 1 divides R_3 exactly iff D = 1 mod 6 (checked per instance)."""
    ctx = UnicriticalContext(D)
    try:
        exact_div(ctx.gleason_factor(3), IntPoly1((1, 1, 1)))
        divides = True
    except InexactDivisionError:
        divides = False
    expected = D % 6 == 1
    return CheckResult(
        f"r3_cyclotomic.D={D}", Verdict.PASS if divides == expected else Verdict.FAIL,
        {"divides": divides, "expected": expected},
    )


def special_closed_forms(D: int) -> Dict[str, IntPoly1]:
    """The closed forms in b = a + 1 of R_{3,1,2} and R_{2,2,2} for even D, in a."""
    if D % 2:
        raise SpecError(f"closed forms need even D, got {D}")
    b = IntPoly1((1, 1))
    r312 = b ** (D + 1) - b ** D + b + 1
    coeffs = [0] * (D + 1)
    coeffs[D] = 1
    for j in range(D):
        coeffs[j] = 2 * (-1) ** (D - j)
    r222 = IntPoly1(coeffs).compose(b)
    return {"R_3_1_2": r312, "R_2_2_2": r222}


def special_cases_check(ctx: UnicriticalContext) -> StructureReport:
    """R_{2,1,d} = Phi_d(a+1, 1), and the closed forms of R_{3,1,2}, R_{2,2,2} for even D."""
    report = StructureReport("uni.special", {"D": ctx.D})
    b = IntPoly1((1, 1))
    one = IntPoly1.constant(1)
    for d in divisors(ctx.D):
        if d < 2:
            continue
        expected = eval_homogeneous(cyclotomic(d), b, one)
        report.add(f"R_2_1_{d}", ctx.preperiodic_factor(2, 1, d).poly == expected)
    if ctx.D % 2 == 0:
        forms = special_closed_forms(ctx.D)
        report.add("R_3_1_2", ctx.preperiodic_factor(3, 1, 2).poly == forms["R_3_1_2"])
        report.add("R_2_2_2", ctx.preperiodic_factor(2, 2, 2).poly == forms["R_2_2_2"])
    return report


# ---------------------------------------------------------------------------
# F_p survey
# ---------------------------------------------------------------------------

def _gleason_mod_p(D: int, p: int, n: int) -> ModPoly:
    """R_n mod p computed in F_p, using P^D = P(a^D) for D a power of p."""
    P: Dict[int, ModPoly] = {1: ModPoly(p, (1,))}
    for j in range(1, n):
        spread = [0] * (len(P[j].coeffs) - 1) * D + [0]
        for i, c in enumerate(P[j].coeffs):
            spread[i * D] = c
        P[j + 1] = ModPoly(p, [0] + spread) + 1
    num = ModPoly(p, (1,))
    den = ModPoly(p, (1,))
    for m in divisors(n):
        mu = mobius(n // m)
        if mu == 1:
            num = num * P[m]
        elif mu == -1:
            den = den * P[m]
    q, r = divmod(num, den)
    if not r.is_zero():
        raise InexactDivisionError(f"Moebius quotient for R_{n} mod {p} is not exact")
    return q


def fp_survey(D_list: List[int], n_max: int, n_min: int = 2) -> SurveyTable:
    """
    Irreducibility of R_n mod p for each prime-power D and n_min <= n <= n_max,
    with the Frobenius-period and degree-divisibility screens.
    """
    logger = get_logger()
    table = SurveyTable()
    for D in D_list:
        pp = prime_power(D)
        if pp is None:
            raise SpecError(f"survey needs prime-power degrees, got {D}")
        p, e = pp
        for n in range(n_min, n_max + 1):
            R = _gleason_mod_p(D, p, n)
            deg = int(R.degree)
            irreducible = is_irreducible(R)
            expected = n == 2 or (n == 3 and D in IRREDUCIBLE_R3_DEGREES)
            frob = frobenius_period_check(R, D, n)
            screen = (n * e) % deg == 0
            bound = D ** (n - 2)
            ok = (
                irreducible == expected
                and frob
                and (screen or not irreducible)
                and deg >= bound
            )
            row = SurveyRow(
                D, p, e, n, deg, irreducible, expected, frob, screen, bound,
                Verdict.PASS if ok else Verdict.FAIL,
            )
            logger.log_check_result("survey", row.verdict.value, {"D": D, "n": n, "degree": deg})
            table.rows.append(row)
    return table
