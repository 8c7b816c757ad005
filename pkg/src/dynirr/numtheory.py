"""
Small-integer number theory: primality, factorization, Möbius, totient,
prime-power decomposition and the orbit-degree counts N_k.

Arguments here are tiny (degrees, periods, moduli), so trial division is enough.
"""

from functools import lru_cache
from typing import List, Optional, Tuple

from .errors import NotPrimeError


def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> int:
    """Return p, raising NotPrimeError when it is not prime."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p!r} is not prime")
    return p


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of n >= 1 as sorted ((prime, exponent), ...)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: List[Tuple[int, int]] = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> List[int]:
    return [q for q, _ in factorize(n)]


def divisors(n: int) -> List[int]:
    """Sorted positive divisors of n."""
    divs = [1]
    for q, e in factorize(n):
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    """Möbius function."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n: int) -> int:
    """Euler's totient."""
    result = n
    for q, _ in factorize(n):
        result = result // q * (q - 1)
    return result


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """Return (p, e) when n = p^e with e >= 1, else None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) != 1:
        return None
    return fac[0]


def valuation(n: int, p: int) -> Optional[int]:
    """p-adic valuation of a nonzero integer by repeated exact division; None for 0."""
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def orbit_degree(D: int, k: int) -> int:
    """N_k = (D^k - 1) / (D - 1), the degree of P_{k+1}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return (D**k - 1) // (D - 1)
