"""
Exact polynomial arithmetic over the integers.

IntPoly1 is a dense univariate polynomial (coefficients lowest degree first),
IntPoly2 a sparse bivariate polynomial keyed by exponent pairs (i, j) for
x^i y^j. Both are immutable and canonical: no stored zero coefficient, and the
zero polynomial has degree ZERO_DEGREE (negative infinity).

Large univariate products, powers, compositions and divisions run on FLINT's
fmpz_poly. Bivariate products and divisions go through Kronecker substitution
y -> x^stride onto the same univariate kernels.
"""

import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from flint import fmpz_mat, fmpz_poly

from .config import DEFAULT_CONFIG
from .errors import (
    DynirrError,
    InexactDivisionError,
    PolynomialParseError,
    VariableMismatchError,
    ZeroPolynomialError,
)
from .fppoly import ModPoly, ModPoly2
from .numtheory import require_prime

# coefficients of the larger family members run to tens of thousands of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

ZERO_DEGREE = float("-inf")

Degree = Union[int, float]
Scalar = Union[int, Fraction, complex, float]

FLINT_THRESHOLD = DEFAULT_CONFIG.budget.flint_threshold
SYLVESTER_MAX_DEGREE = DEFAULT_CONFIG.budget.sylvester_max_degree


# ---------------------------------------------------------------------------
# dense kernels on coefficient lists (lowest degree first)
# ---------------------------------------------------------------------------

def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def to_flint(coeffs: Sequence[int]) -> fmpz_poly:
    return fmpz_poly(list(coeffs))


def from_flint(f: fmpz_poly) -> List[int]:
    return [int(c) for c in f.coeffs()]


def _schoolbook(f: Sequence[int], g: Sequence[int]) -> List[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c:
            for j, d in enumerate(g):
                if d:
                    out[i + j] += c * d
    return out


def dense_mul(f: Sequence[int], g: Sequence[int]) -> List[int]:
    """Product of two dense integer coefficient lists."""
    if not f or not g:
        return []
    if len(f) * len(g) <= FLINT_THRESHOLD:
        return _schoolbook(f, g)
    if f is g:
        return from_flint(to_flint(f) ** 2)
    return from_flint(to_flint(f) * to_flint(g))


def dense_exact_div(num: Sequence[int], den: Sequence[int]) -> List[int]:
    """Quotient of num by den over Z[x]; InexactDivisionError unless den divides num."""
    fn, fd = to_flint(num), to_flint(den)
    q, r = divmod(fn, fd)
    if r.degree() >= 0:
        raise InexactDivisionError("nonzero remainder")
    if q * fd != fn:
        raise InexactDivisionError("re-multiplication check failed")
    return from_flint(q)


def _dense_add(f: Sequence[int], g: Sequence[int], sign: int = 1) -> List[int]:
    n = max(len(f), len(g))
    out = list(f) + [0] * (n - len(f))
    for i, c in enumerate(g):
        out[i] += sign * c
    return out


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPoly1:
    """Univariate polynomial with arbitrary-precision integer coefficients."""

    coeffs: Tuple[int, ...] = ()
    var: str = "a"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(int(c) for c in self.coeffs)))

    # -- constructors -------------------------------------------------------

    @classmethod
    def gen(cls, var: str = "a") -> "IntPoly1":
        return cls((0, 1), var)

    @classmethod
    def constant(cls, c: int, var: str = "a") -> "IntPoly1":
        return cls((c,), var)

    @classmethod
    def monomial(cls, c: int, e: int, var: str = "a") -> "IntPoly1":
        return cls((0,) * e + (c,), var)

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _gcd(g, c)
        return g

    def primitive_part(self) -> "IntPoly1":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading_coefficient < 0:
            g = -g
        return IntPoly1(tuple(c // g for c in self.coeffs), self.var)

    def max_norm(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Optional["IntPoly1"]:
        if isinstance(other, IntPoly1):
            if other.var != self.var and not (other.is_constant() or self.is_constant()):
                raise VariableMismatchError(f"variables {self.var!r} and {other.var!r} differ")
            return other
        if isinstance(other, int):
            return IntPoly1((other,), self.var)
        return None

    def _result_var(self, other: "IntPoly1") -> str:
        return other.var if self.is_constant() and not other.is_constant() else self.var

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntPoly1(_dense_add(self.coeffs, o.coeffs), self._result_var(o))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly1(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntPoly1(_dense_add(self.coeffs, o.coeffs, -1), self._result_var(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly1(tuple(c * other for c in self.coeffs), self.var)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntPoly1(dense_mul(self.coeffs, o.coeffs), self._result_var(o))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly1":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        if e == 0:
            return IntPoly1((1,), self.var)
        if self.is_constant():
            return IntPoly1((self.constant_term ** e,), self.var)
        if e == 1:
            return self
        return IntPoly1(from_flint(to_flint(self.coeffs) ** e), self.var)

    def __call__(self, value: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "IntPoly1") -> "IntPoly1":
        """self(inner(x)), in the variable of inner."""
        if self.is_constant():
            return IntPoly1(self.coeffs, inner.var)
        return IntPoly1(from_flint(to_flint(self.coeffs)(to_flint(inner.coeffs))), inner.var)

    def derivative(self) -> "IntPoly1":
        return IntPoly1(tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.var)

    def exact_div(self, den: "IntPoly1") -> "IntPoly1":
        return exact_div(self, den)

    def __repr__(self):
        return f"IntPoly1({format_poly1(self)})"


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def format_poly1(f: IntPoly1) -> str:
    """Human-readable form, highest degree first."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (f.var if i == 1 else f"{f.var}^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------

Exponent = Tuple[int, int]


def _canonical_terms(terms) -> Tuple[Tuple[Exponent, int], ...]:
    items = terms.items() if isinstance(terms, Mapping) else terms
    acc: Dict[Exponent, int] = {}
    for (i, j), c in items:
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent {(i, j)}")
        key = (int(i), int(j))
        acc[key] = acc.get(key, 0) + int(c)
    return tuple(sorted((k, c) for k, c in acc.items() if c))


@dataclass(frozen=True)
class IntPoly2:
    """Sparse bivariate polynomial; exponent (i, j) stands for vars[0]^i * vars[1]^j."""

    terms: Tuple[Tuple[Exponent, int], ...] = ()
    vars: Tuple[str, str] = ("a", "b")

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical_terms(self.terms))
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(self.vars) != 2 or self.vars[0] == self.vars[1]:
            raise VariableMismatchError(f"need two distinct variables, got {self.vars!r}")

    @cached_property
    def term_map(self) -> Dict[Exponent, int]:
        return dict(self.terms)

    # -- constructors -------------------------------------------------------

    @classmethod
    def gen(cls, var: str, vars: Tuple[str, str] = ("a", "b")) -> "IntPoly2":
        if var == vars[0]:
            return cls((((1, 0), 1),), vars)
        if var == vars[1]:
            return cls((((0, 1), 1),), vars)
        raise VariableMismatchError(f"unknown variable {var!r}")

    @classmethod
    def constant(cls, c: int, vars: Tuple[str, str] = ("a", "b")) -> "IntPoly2":
        return cls((((0, 0), c),), vars)

    @classmethod
    def from_univariate(cls, f: IntPoly1, vars: Tuple[str, str] = ("a", "b")) -> "IntPoly2":
        if f.var == vars[0]:
            return cls(tuple(((i, 0), c) for i, c in enumerate(f.coeffs)), vars)
        if f.var == vars[1]:
            return cls(tuple(((0, i), c) for i, c in enumerate(f.coeffs)), vars)
        raise VariableMismatchError(f"variable {f.var!r} not in {vars!r}")

    # -- properties ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> Degree:
        if not self.terms:
            return ZERO_DEGREE
        return max(i + j for (i, j), _ in self.terms)

    @property
    def degree(self) -> Degree:
        return self.total_degree

    def degree_in(self, var: str) -> Degree:
        idx = self._index(var)
        if not self.terms:
            return ZERO_DEGREE
        return max(e[idx] for e, _ in self.terms)

    def coefficient(self, i: int, j: int) -> int:
        return self.term_map.get((i, j), 0)

    def is_homogeneous(self) -> bool:
        return len({i + j for (i, j), _ in self.terms}) <= 1

    def _index(self, var: str) -> int:
        if var == self.vars[0]:
            return 0
        if var == self.vars[1]:
            return 1
        raise VariableMismatchError(f"unknown variable {var!r} for {self.vars!r}")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Optional["IntPoly2"]:
        if isinstance(other, IntPoly2):
            if other.vars != self.vars:
                raise VariableMismatchError(f"variables {self.vars!r} and {other.vars!r} differ")
            return other
        if isinstance(other, int):
            return IntPoly2.constant(other, self.vars)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.term_map)
        for e, c in o.terms:
            acc[e] = acc.get(e, 0) + c
        return IntPoly2(acc, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly2(tuple((e, -c) for e, c in self.terms), self.vars)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly2(tuple((e, c * other) for e, c in self.terms), self.vars)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return IntPoly2(_bivariate_mul(self, o), self.vars)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly2":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = IntPoly2.constant(1, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def evaluate(self, x: Scalar, y: Scalar) -> Scalar:
        """Exact (for int/Fraction) evaluation at vars[0] = x, vars[1] = y."""
        acc: Scalar = 0
        # Horner in the second variable over rows in the first
        rows = self.rows(1)
        top = max(rows) if rows else 0
        for j in range(top, -1, -1):
            acc = acc * y + (rows[j](x) if j in rows else 0)
        return acc

    def rows(self, var_index: int) -> Dict[int, IntPoly1]:
        """Split as sum_e C_e * v^e where v = vars[var_index]; C_e is univariate in the other variable."""
        other = self.vars[1 - var_index]
        buckets: Dict[int, Dict[int, int]] = {}
        for (i, j), c in self.terms:
            e, o = (i, j) if var_index == 0 else (j, i)
            buckets.setdefault(e, {})[o] = c
        out = {}
        for e, cmap in buckets.items():
            dense = [0] * (max(cmap) + 1)
            for o, c in cmap.items():
                dense[o] = c
            out[e] = IntPoly1(dense, other)
        return out

    @classmethod
    def from_rows(cls, rows: Mapping[int, IntPoly1], var_index: int, vars: Tuple[str, str]) -> "IntPoly2":
        terms = []
        for e, poly in rows.items():
            for o, c in enumerate(poly.coeffs):
                if c:
                    terms.append((((e, o) if var_index == 0 else (o, e)), c))
        return cls(tuple(terms), vars)

    def derivative(self, var: str) -> "IntPoly2":
        idx = self._index(var)
        out = []
        for (i, j), c in self.terms:
            e = (i, j)[idx]
            if e:
                key = (i - 1, j) if idx == 0 else (i, j - 1)
                out.append((key, c * e))
        return IntPoly2(tuple(out), self.vars)

    def exact_div(self, den: "IntPoly2") -> "IntPoly2":
        return exact_div(self, den)

    def __repr__(self):
        return f"IntPoly2({format_poly2(self)})"


def format_poly2(f: IntPoly2) -> str:
    if f.is_zero():
        return "0"
    x, y = f.vars
    parts = []
    for (i, j), c in sorted(f.terms, key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
        mono = "*".join(
            m for m in (
                "" if i == 0 else (x if i == 1 else f"{x}^{i}"),
                "" if j == 0 else (y if j == 1 else f"{y}^{j}"),
            ) if m
        )
        body = mono if mono and abs(c) == 1 else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _flatten(h: IntPoly2, stride: int) -> List[int]:
    """Kronecker substitution x^i y^j -> t^(i + stride*j)."""
    top = max(i + stride * j for (i, j), _ in h.terms)
    dense = [0] * (top + 1)
    for (i, j), c in h.terms:
        dense[i + stride * j] = c
    return dense


def _unflatten(coeffs: Sequence[int], stride: int) -> Dict[Exponent, int]:
    return {(k % stride, k // stride): c for k, c in enumerate(coeffs) if c}


def _bivariate_mul(f: IntPoly2, g: IntPoly2) -> Dict[Exponent, int]:
    if f.is_zero() or g.is_zero():
        return {}
    if len(f.terms) * len(g.terms) <= FLINT_THRESHOLD:
        acc: Dict[Exponent, int] = {}
        for (i1, j1), c1 in f.terms:
            for (i2, j2), c2 in g.terms:
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return acc
    stride = int(f.degree_in(f.vars[0]) + g.degree_in(g.vars[0])) + 1
    fd = _flatten(f, stride)
    prod = dense_mul(fd, fd) if f is g else dense_mul(fd, _flatten(g, stride))
    return _unflatten(prod, stride)


# ---------------------------------------------------------------------------
# operations shared by both kinds
# ---------------------------------------------------------------------------

PolyZ = Union[IntPoly1, IntPoly2]


def ring_op(op: str, x: PolyZ, y: Union[PolyZ, int, None] = None) -> PolyZ:
    """Named entry point for add / sub / mul / neg / pow."""
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "pow":
        if not isinstance(y, int):
            raise ValueError("power exponent must be an integer")
        return x ** y
    if isinstance(y, (IntPoly1, IntPoly2)) and type(x) is not type(y):
        raise VariableMismatchError("cannot combine univariate and bivariate operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown ring operation {op!r}")


def _exact_div1(num: IntPoly1, den: IntPoly1) -> IntPoly1:
    if den.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    if den.var != num.var and not (den.is_constant() or num.is_constant()):
        raise VariableMismatchError(f"variables {num.var!r} and {den.var!r} differ")
    if num.is_zero():
        return IntPoly1((), num.var)
    if num.degree < den.degree:
        raise InexactDivisionError(f"deg {num.degree} < deg {den.degree}")
    return IntPoly1(dense_exact_div(num.coeffs, den.coeffs), num.var)


def _exact_div2(num: IntPoly2, den: IntPoly2) -> IntPoly2:
    if den.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    if den.vars != num.vars:
        raise VariableMismatchError(f"variables {num.vars!r} and {den.vars!r} differ")
    if num.is_zero():
        return IntPoly2((), num.vars)
    x = num.vars[0]
    if den.degree_in(x) > num.degree_in(x):
        raise InexactDivisionError(f"deg_{x} of the divisor exceeds that of the dividend")
    # any exact quotient has deg_x below the stride, so unflattening is faithful
    stride = int(num.degree_in(x)) + 1
    flat = dense_exact_div(_flatten(num, stride), _flatten(den, stride))
    quotient = IntPoly2(_unflatten(flat, stride), num.vars)
    if quotient * den != num:
        raise InexactDivisionError("re-multiplication check failed")
    return quotient


def exact_div(num: PolyZ, den: PolyZ) -> PolyZ:
    """
    Exact quotient over the integers; raises InexactDivisionError on a remainder.

    The product den * quotient is compared with num before returning.
    """
    if isinstance(num, IntPoly1) and isinstance(den, IntPoly1):
        return _exact_div1(num, den)
    if isinstance(num, IntPoly2) and isinstance(den, IntPoly2):
        return _exact_div2(num, den)
    raise VariableMismatchError("exact_div operands must be of the same kind")


def homog_part(f: IntPoly2, which: str = "lowest") -> IntPoly2:
    """Sum of the terms of f of least (or greatest) total degree."""
    if f.is_zero():
        raise ZeroPolynomialError("homogeneous part of the zero polynomial")
    degrees = [i + j for (i, j), _ in f.terms]
    if which == "lowest":
        target = min(degrees)
    elif which == "highest":
        target = max(degrees)
    else:
        raise ValueError(f"which must be 'lowest' or 'highest', got {which!r}")
    return IntPoly2(tuple((e, c) for e, c in f.terms if e[0] + e[1] == target), f.vars)


def substitute(f: IntPoly2, var: str, value: Union[IntPoly1, int]) -> IntPoly1:
    """Specialize one variable of f to an integer or to a polynomial in the other variable."""
    idx = f._index(var)
    other = f.vars[1 - idx]
    if isinstance(value, IntPoly1):
        if value.var != other and not value.is_constant():
            raise VariableMismatchError(
                f"substituted value must be a polynomial in {other!r}, got {value.var!r}"
            )
        value = IntPoly1(value.coeffs, other)
    elif not isinstance(value, int):
        raise TypeError(f"cannot substitute {type(value).__name__}")
    rows = f.rows(idx)
    if not rows:
        return IntPoly1((), other)
    acc = IntPoly1((), other)
    for e in range(max(rows), -1, -1):
        acc = acc * value
        if e in rows:
            acc = acc + rows[e]
    return acc


def reduce_mod(f: PolyZ, p: int) -> Union[ModPoly, ModPoly2]:
    """Coefficientwise reduction into 0..p-1."""
    require_prime(p)
    if isinstance(f, IntPoly1):
        return ModPoly(p, tuple(c % p for c in f.coeffs), f.var)
    if isinstance(f, IntPoly2):
        return ModPoly2(p, tuple((e, c % p) for e, c in f.terms), f.vars)
    raise TypeError(f"cannot reduce {type(f).__name__}")


def lift(f: ModPoly) -> IntPoly1:
    """Canonical representatives 0..p-1 of a ModPoly as an integer polynomial."""
    return IntPoly1(f.coeffs, f.var)


# ---------------------------------------------------------------------------
# resultants and gcd
# ---------------------------------------------------------------------------

def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    db = len(b) - 1
    lc = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    support = [(j, c) for j, c in enumerate(b[:-1]) if c]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        if lc != 1:
            r = [lc * x for x in r]
        r[-1] = 0
        for j, bc in support:
            r[shift + j] -= c * bc
        r = list(_trim(r))
        e -= 1
    if e > 0 and lc != 1:
        factor = lc ** e
        r = [factor * x for x in r]
    return r


def _divide_all(coeffs: Sequence[int], d: int) -> List[int]:
    out = []
    for c in coeffs:
        q, rem = divmod(c, d)
        if rem:
            raise InexactDivisionError(f"subresultant coefficient {c} not divisible by {d}")
        out.append(q)
    return out


def _content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = _gcd(g, c)
    return g


def subresultant_resultant(f: IntPoly1, g: IntPoly1) -> int:
    """Resultant by the subresultant polynomial remainder sequence over Z."""
    A, B = list(f.coeffs), list(g.coeffs)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -1
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    ca, cb = _content(A), _content(B)
    A, B = _divide_all(A, ca), _divide_all(B, cb)
    t = ca ** (len(B) - 1) * cb ** (len(A) - 1)
    gg, h = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        B = _divide_all(R, gg * h ** delta)
        gg = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            num = gg ** delta
            den = h ** (delta - 1)
            h, rem = divmod(num, den)
            if rem:
                raise InexactDivisionError("subresultant scale not exact")
        if len(B) == 1:
            da = len(A) - 1
            num = B[0] ** da
            den = h ** (da - 1)
            val, rem = divmod(num, den)
            if rem:
                raise InexactDivisionError("final subresultant scale not exact")
            return s * t * val


def sylvester_matrix(f: IntPoly1, g: IntPoly1) -> List[List[int]]:
    """Sylvester matrix with deg g rows of f first, then deg f rows of g."""
    m, n = len(f.coeffs) - 1, len(g.coeffs) - 1
    size = m + n
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - i - len(fr)))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - i - len(gr)))
    return rows


def sylvester_resultant(f: IntPoly1, g: IntPoly1) -> int:
    """Determinant of the Sylvester matrix, by FLINT's multimodular fmpz_mat.det."""
    rows = sylvester_matrix(f, g)
    return int(fmpz_mat(rows).det()) if rows else 1


def _unit_euclid_step(f: IntPoly1, g: IntPoly1) -> Optional[int]:
    """
    When the operand of lower degree has leading coefficient +-1, reduce the
    other one modulo it over Z and finish on the small pair with a Sylvester
    determinant. None otherwise.
    """
    m, n = int(f.degree), int(g.degree)
    if m >= n >= 1 and abs(g.leading_coefficient) == 1:
        r = IntPoly1(from_flint(divmod(to_flint(f.coeffs), to_flint(g.coeffs))[1]), f.var)
        if r.is_zero():
            return 0
        # res(f, g) = (-1)^(mn) res(g, f) = (-1)^(mn) lc(g)^(m - deg r) res(g, r)
        sign = (-1) ** ((m * n) % 2) * g.leading_coefficient ** ((m - int(r.degree)) % 2)
        return sign * sylvester_resultant(g, r)
    if n > m >= 1 and abs(f.leading_coefficient) == 1:
        r = IntPoly1(from_flint(divmod(to_flint(g.coeffs), to_flint(f.coeffs))[1]), g.var)
        if r.is_zero():
            return 0
        return f.leading_coefficient ** ((n - int(r.degree)) % 2) * sylvester_resultant(f, r)
    return None


def resultant(f: IntPoly1, g: IntPoly1) -> int:
    """
    Exact resultant, equal to the Sylvester determinant with f-rows first, so
    res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomialError("resultant of the zero polynomial")
    if f.var != g.var and not (f.is_constant() or g.is_constant()):
        raise VariableMismatchError(f"variables {f.var!r} and {g.var!r} differ")
    value = _unit_euclid_step(f, g)
    if value is None:
        value = subresultant_resultant(f, g)
    if max(f.degree, g.degree) <= SYLVESTER_MAX_DEGREE:
        check = sylvester_resultant(f, g)
        if check != value:
            raise DynirrError(f"resultant cross-check failed: PRS {value} vs Sylvester {check}")
    return value


def discriminant(f: IntPoly1) -> int:
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    n = f.degree
    if f.is_zero() or n < 1:
        raise ZeroPolynomialError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = resultant(f, f.derivative())
    q, rem = divmod(res, f.leading_coefficient)
    if rem:
        raise InexactDivisionError("resultant not divisible by the leading coefficient")
    return -q if (n * (n - 1) // 2) % 2 else q


def poly_gcd(f: IntPoly1, g: IntPoly1) -> IntPoly1:
    """Primitive gcd over Z[x] (equivalently, the gcd over Q normalized to Z)."""
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    h = to_flint(f.coeffs).gcd(to_flint(g.coeffs))
    return IntPoly1(from_flint(h), f.var).primitive_part()


# ---------------------------------------------------------------------------
# JSON codec: coefficients travel as decimal strings
# ---------------------------------------------------------------------------

_DECIMAL = re.compile(r"-?[0-9]+\Z")


def _decimal(token) -> int:
    if not isinstance(token, str) or not _DECIMAL.match(token):
        raise PolynomialParseError(f"coefficient {token!r} is not a decimal string", token=token)
    return int(token)


def _exponent(token) -> int:
    if isinstance(token, bool) or not isinstance(token, int) or token < 0:
        raise PolynomialParseError(f"exponent {token!r} is not a non-negative integer", token=token)
    return token


def to_json_dict(f: Union[IntPoly1, IntPoly2, ModPoly]) -> Dict:
    """Serializable form of a polynomial."""
    if isinstance(f, IntPoly1):
        return {"var": f.var, "coeffs": [str(c) for c in f.coeffs]}
    if isinstance(f, IntPoly2):
        return {"vars": list(f.vars), "terms": [[[i, j], str(c)] for (i, j), c in f.terms]}
    if isinstance(f, ModPoly):
        return {"p": f.p, "var": f.var, "coeffs": [str(c) for c in f.coeffs]}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def from_json_dict(obj) -> Union[IntPoly1, IntPoly2, ModPoly]:
    """Inverse of to_json_dict; raises PolynomialParseError on malformed input."""
    if not isinstance(obj, dict):
        raise PolynomialParseError("polynomial must be a JSON object")
    if "terms" in obj:
        names = obj.get("vars", ["a", "b"])
        if not (isinstance(names, list) and len(names) == 2 and all(isinstance(v, str) for v in names)):
            raise PolynomialParseError(f"bad variable pair {names!r}")
        terms = obj["terms"]
        if not isinstance(terms, list):
            raise PolynomialParseError("'terms' must be a list")
        parsed = []
        for entry in terms:
            if not (isinstance(entry, list) and len(entry) == 2
                    and isinstance(entry[0], list) and len(entry[0]) == 2):
                raise PolynomialParseError(f"malformed term {entry!r}")
            (i, j), c = entry
            parsed.append(((_exponent(i), _exponent(j)), _decimal(c)))
        return IntPoly2(tuple(parsed), tuple(names))
    if "coeffs" in obj:
        var = obj.get("var", "a")
        coeffs = obj["coeffs"]
        if not isinstance(var, str) or not isinstance(coeffs, list):
            raise PolynomialParseError("'var' must be a string and 'coeffs' a list")
        values = [_decimal(c) for c in coeffs]
        if "p" in obj:
            p = obj["p"]
            if isinstance(p, bool) or not isinstance(p, int):
                raise PolynomialParseError(f"modulus {p!r} is not an integer", token=p)
            if any(not 0 <= c < p for c in values):
                raise PolynomialParseError(f"coefficients must lie in 0..{p - 1}")
            return ModPoly(p, tuple(values), var)
        return IntPoly1(tuple(values), var)
    raise PolynomialParseError("object has neither 'coeffs' nor 'terms'")
