"""
Polynomial arithmetic over the prime field F_p.

Coefficients are stored as canonical residues 0..p-1, lowest degree first.
Products and long division of anything beyond a few terms run on FLINT's
nmod_poly for word-sized moduli; larger moduli fall back to plain Python
integers.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence, Tuple

from flint import nmod_poly

from .errors import (
    ConstantPolynomialError,
    ModulusMismatchError,
    ZeroPolynomialError,
)
from .numtheory import prime_divisors, require_prime

WORD_MODULUS_LIMIT = 1 << 63
SCHOOLBOOK_LIMIT = 64  # len(f) * len(g) at or below which products stay in Python
BRUTE_FORCE_LIMIT = 1 << 16


@lru_cache(maxsize=None)
def _checked_prime(p: int) -> int:
    return require_prime(p)


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(int(c) for c in coeffs[:end])


def _to_nmod(f: Sequence[int], p: int) -> nmod_poly:
    return nmod_poly(list(f), p)


def _from_nmod(f: nmod_poly) -> Tuple[int, ...]:
    return _trim([int(c) for c in f.coeffs()])


def _mul(f: Sequence[int], g: Sequence[int], p: int) -> Tuple[int, ...]:
    if not f or not g:
        return ()
    if len(f) * len(g) > SCHOOLBOOK_LIMIT and p < WORD_MODULUS_LIMIT:
        return _from_nmod(_to_nmod(f, p) * _to_nmod(g, p))
    out = [0] * (len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c:
            for j, d in enumerate(g):
                out[i + j] += c * d
    return _trim([c % p for c in out])


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), _trim(a)
    if p < WORD_MODULUS_LIMIT:
        q, r = divmod(_to_nmod(a, p), _to_nmod(b, p))
        return _from_nmod(q), _from_nmod(r)
    inv = pow(b[-1], -1, p)
    r_list = [c % p for c in a]
    q_list = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r_list[i] * inv % p
        if c:
            q_list[i - db] = c
            for j, bc in enumerate(b):
                r_list[i - db + j] = (r_list[i - db + j] - c * bc) % p
    return _trim(q_list), _trim(r_list[:db])


@dataclass(frozen=True)
class ModPoly:
    """Univariate polynomial over F_p."""

    p: int
    coeffs: Tuple[int, ...] = ()
    var: str = "a"

    def __post_init__(self):
        _checked_prime(self.p)
        object.__setattr__(self, "coeffs", _trim([int(c) % self.p for c in self.coeffs]))

    @classmethod
    def gen(cls, p: int, var: str = "a") -> "ModPoly":
        return cls(p, (0, 1), var)

    @classmethod
    def constant(cls, p: int, c: int, var: str = "a") -> "ModPoly":
        return cls(p, (c,), var)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def monic(self) -> "ModPoly":
        if self.is_zero() or self.is_monic():
            return self
        inv = pow(self.leading_coefficient, -1, self.p)
        return ModPoly(self.p, tuple(c * inv for c in self.coeffs), self.var)

    def is_monomial_power(self) -> bool:
        """True when the polynomial is c * x^m for some m >= 0."""
        return bool(self.coeffs) and not any(self.coeffs[:-1])

    def _check(self, other: "ModPoly") -> "ModPoly":
        if not isinstance(other, ModPoly):
            raise TypeError(f"expected ModPoly, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatchError(f"moduli {self.p} and {other.p} differ")
        return other

    def _lift(self, other) -> Optional["ModPoly"]:
        if isinstance(other, int):
            return ModPoly(self.p, (other,), self.var)
        if isinstance(other, ModPoly):
            return self._check(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(o.coeffs):
            a[i] += c
        return ModPoly(self.p, a, self.var)

    __radd__ = __add__

    def __neg__(self):
        return ModPoly(self.p, tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return ModPoly(self.p, tuple(c * other for c in self.coeffs), self.var)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModPoly(self.p, _mul(self.coeffs, o.coeffs, self.p), self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ModPoly":
        if e < 0:
            raise ValueError("exponent must be non-negative")
        result = ModPoly(self.p, (1,), self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "ModPoly") -> Tuple["ModPoly", "ModPoly"]:
        o = self._check(other)
        if o.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial over F_p")
        q, r = _divmod(self.coeffs, o.coeffs, self.p)
        return ModPoly(self.p, q, self.var), ModPoly(self.p, r, self.var)

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.var)

    def __repr__(self):
        if not self.coeffs:
            return f"ModPoly(0 mod {self.p})"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            terms.append(mono if mono and c == 1 else (f"{c}*{mono}" if mono else str(c)))
        return f"ModPoly({' + '.join(terms)} mod {self.p})"


@dataclass(frozen=True)
class ModPoly2:
    """Sparse bivariate polynomial over F_p, the reduction target of IntPoly2."""

    p: int
    terms: Tuple[Tuple[Tuple[int, int], int], ...] = ()
    vars: Tuple[str, str] = ("a", "b")

    def __post_init__(self):
        _checked_prime(self.p)
        acc = {}
        for (i, j), c in self.terms:
            acc[(i, j)] = (acc.get((i, j), 0) + c) % self.p
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))
        object.__setattr__(self, "vars", tuple(self.vars))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self):
        return max((i + j for (i, j), _ in self.terms), default=float("-inf"))

    def coefficient(self, i: int, j: int) -> int:
        return dict(self.terms).get((i, j), 0)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def gcd(f: ModPoly, g: ModPoly) -> ModPoly:
    """Monic gcd by the Euclidean algorithm; gcd(f, 0) = monic(f)."""
    f._check(g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def modexp(base: ModPoly, e: int, modulus: ModPoly) -> ModPoly:
    """base^e mod modulus by square-and-multiply."""
    base._check(modulus)
    if modulus.is_constant():
        raise ConstantPolynomialError("modexp needs a nonconstant modulus")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = ModPoly(base.p, (1,), base.var) % modulus
    b = base % modulus
    while e:
        if e & 1:
            result = (result * b) % modulus
        e >>= 1
        if e:
            b = (b * b) % modulus
    return result


def is_irreducible(f: ModPoly) -> bool:
    """
    Rabin's test: f of degree n is irreducible iff x^(p^n) = x mod f and
    gcd(x^(p^(n/t)) - x, f) = 1 for each prime t dividing n.

    A short distinct-degree screen (j = 1..8) runs first and stops at the
    first small-degree factor; x^(p^j) = x for some j < n also means every
    factor has degree dividing j.
    """
    if f.is_zero() or f.is_constant():
        raise ConstantPolynomialError("irreducibility needs degree >= 1")
    f = f.monic()
    n = int(f.degree)
    if n == 1:
        return True
    x = ModPoly.gen(f.p, f.var) % f
    h = x
    powers = {}
    for j in range(1, n + 1):
        h = modexp(h, f.p, f)
        powers[j] = h
        if j < n and h == x:
            return False
        if j <= min(8, n // 2) and not gcd(h - x, f).is_constant():
            return False
    if powers[n] != x:
        return False
    for t in prime_divisors(n):
        if not gcd(powers[n // t] - x, f).is_constant():
            return False
    return True


def is_irreducible_bruteforce(f: ModPoly) -> bool:
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    if f.is_zero() or f.is_constant():
        raise ConstantPolynomialError("irreducibility needs degree >= 1")
    n = int(f.degree)
    if f.p ** n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to p^deg <= {BRUTE_FORCE_LIMIT}")
    for deg in range(1, n // 2 + 1):
        for tail in product(range(f.p), repeat=deg):
            cand = ModPoly(f.p, tail + (1,), f.var)
            if (f % cand).is_zero():
                return False
    return True


def _degree(f) -> int:
    """Degree of a ModPoly or nmod_poly, -1 for zero."""
    if isinstance(f, nmod_poly):
        return f.degree()
    return len(f.coeffs) - 1


def _coefficients(f) -> Tuple[int, ...]:
    if isinstance(f, nmod_poly):
        return _from_nmod(f)
    return f.coeffs


@dataclass(frozen=True)
class PowerMatch:
    """A = scalar * B^exponent over F_p."""
    exponent: int
    scalar: int


def as_power_of(A: ModPoly, B: ModPoly) -> Optional[PowerMatch]:
    """
    Detect A = c * B^N by repeated exact division: divide by B while the
    remainder vanishes, then require a nonzero constant cofactor c.
    """
    A._check(B)
    if A.is_zero():
        raise ZeroPolynomialError("as_power_of of the zero polynomial")
    if B.is_constant():
        raise ConstantPolynomialError("as_power_of needs a nonconstant base")
    if int(A.degree) % int(B.degree):
        return None
    # word-sized moduli stay in nmod_poly for the whole loop
    if A.p < WORD_MODULUS_LIMIT:
        rest, base = _to_nmod(A.coeffs, A.p), _to_nmod(B.coeffs, A.p)
    else:
        rest, base = A, B
    N = 0
    while _degree(rest) >= _degree(base):
        q, r = divmod(rest, base)
        if _degree(r) >= 0:
            return None
        rest, N = q, N + 1
    if _degree(rest) != 0:
        return None
    return PowerMatch(N, _coefficients(rest)[0])


def frobenius_period_check(Rn_mod_p: ModPoly, D: int, n: int) -> bool:
    """True iff x^(D^n) = x modulo Rn_mod_p."""
    if Rn_mod_p.is_constant():
        raise ConstantPolynomialError("frobenius_period_check needs a nonconstant polynomial")
    x = ModPoly.gen(Rn_mod_p.p, Rn_mod_p.var)
    return modexp(x, D ** n, Rn_mod_p) == x % Rn_mod_p
