"""
Irreducibility certificates.

Three engines: the classic Eisenstein criterion (optionally after a shift
a -> a + h), the generalized criterion for monic A with A = B^N mod p, and the
end-to-end pipeline for the unicritical factors R_{k,n,d}. Verdicts are never
"reducible": a criterion that does not apply yields "inconclusive".
"""

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from dateutil.parser import isoparse

from .config import Verdict
from .errors import (
    ConstantPolynomialError,
    NonMonicError,
    PolynomialParseError,
    SpecError,
)
from .fppoly import as_power_of, is_irreducible
from .logger import get_logger
from .numtheory import prime_power, require_prime, valuation
from .reports import CheckResult
from .unifam import UnicriticalContext
from .zpoly import IntPoly1, IntPoly2, from_json_dict, reduce_mod, resultant, to_json_dict

CLASSIC = "classic"
GENERALIZED = "generalized"
SHIFTED = "shifted"


def polynomial_digest(f) -> str:
    """SHA-256 of the canonical JSON form."""
    payload = json.dumps(to_json_dict(f), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class EisensteinCertificate:
    """Machine-checkable record of one Eisenstein-type argument."""
    variant: str
    p: int
    polynomial: IntPoly1
    digest: str
    hypotheses: Dict[str, bool]
    verdict: Verdict
    failed: Optional[str] = None
    base: Optional[IntPoly1] = None
    exponent: Optional[int] = None
    resultant: Optional[int] = None
    valuation: Optional[int] = None
    shift: Optional[int] = None
    fp_transcript: Dict[str, Any] = field(default_factory=dict)
    issued_at: str = field(default_factory=_now)

    @property
    def is_irreducible(self) -> bool:
        return self.verdict == Verdict.IRREDUCIBLE

    @property
    def bound(self) -> Optional[int]:
        """p^(2 deg B) for the generalized variant."""
        if self.base is None:
            return None
        return self.p ** (2 * int(self.base.degree))

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "variant": self.variant,
            "p": self.p,
            "polynomial": to_json_dict(self.polynomial),
            "digest": self.digest,
            "hypotheses": dict(self.hypotheses),
            "failed": self.failed,
            "verdict": self.verdict.value,
            "issued_at": self.issued_at,
        }
        if self.base is not None:
            out["base"] = to_json_dict(self.base)
            out["bound"] = str(self.bound)
        if self.exponent is not None:
            out["exponent"] = self.exponent
        if self.resultant is not None:
            out["resultant"] = str(self.resultant)
        if self.valuation is not None:
            out["valuation"] = self.valuation
        if self.shift is not None:
            out["shift"] = self.shift
        if self.fp_transcript:
            out["fp_transcript"] = dict(self.fp_transcript)
        return out

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "EisensteinCertificate":
        if not isinstance(obj, dict):
            raise PolynomialParseError("certificate must be a JSON object")
        try:
            variant = obj["variant"]
            p = obj["p"]
            poly = from_json_dict(obj["polynomial"])
            verdict = Verdict(obj["verdict"])
            issued_at = obj["issued_at"]
            isoparse(issued_at)
        except KeyError as exc:
            raise PolynomialParseError(f"certificate is missing field {exc.args[0]!r}")
        except (ValueError, TypeError) as exc:
            raise PolynomialParseError(f"bad certificate field: {exc}")
        if variant not in (CLASSIC, GENERALIZED, SHIFTED):
            raise PolynomialParseError(f"unknown certificate variant {variant!r}", token=variant)
        if not isinstance(poly, IntPoly1):
            raise PolynomialParseError("certificate polynomial must be univariate over Z")
        base = from_json_dict(obj["base"]) if "base" in obj else None
        res = obj.get("resultant")
        return cls(
            variant=variant,
            p=p,
            polynomial=poly,
            digest=obj.get("digest", ""),
            hypotheses=dict(obj.get("hypotheses", {})),
            verdict=verdict,
            failed=obj.get("failed"),
            base=base,
            exponent=obj.get("exponent"),
            resultant=int(res) if res is not None else None,
            valuation=obj.get("valuation"),
            shift=obj.get("shift"),
            fp_transcript=dict(obj.get("fp_transcript", {})),
            issued_at=issued_at,
        )


@dataclass
class OriginReport:
    """Hypotheses of the origin criterion: f(0,0) = 0 with a nonzero linear part."""
    constant: int
    linear: tuple
    vanishes: bool
    linear_nonzero: bool
    verdict: Verdict
    implication: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "constant": str(self.constant),
            "linear": [str(c) for c in self.linear],
            "vanishes": self.vanishes,
            "linear_nonzero": self.linear_nonzero,
            "verdict": self.verdict.value,
            "implication": self.implication,
        }


def _first_failure(hypotheses: Dict[str, bool]) -> Optional[str]:
    for name, ok in hypotheses.items():
        if not ok:
            return name
    return None


def _classic_hypotheses(f: IntPoly1, p: int) -> Dict[str, bool]:
    c = f.coeffs
    return {
        "lower_coefficients_divisible": all(x % p == 0 for x in c[:-1]),
        "constant_not_divisible_by_p2": c[0] % (p * p) != 0,
        "leading_not_divisible": c[-1] % p != 0,
    }


def eisenstein_classic(f: IntPoly1, p: int) -> EisensteinCertificate:
    """Classic Eisenstein criterion at p."""
    require_prime(p)
    if f.degree < 1:
        raise ConstantPolynomialError("Eisenstein needs degree >= 1")
    hyp = _classic_hypotheses(f, p)
    failed = _first_failure(hyp)
    cert = EisensteinCertificate(
        variant=CLASSIC,
        p=p,
        polynomial=f,
        digest=polynomial_digest(f),
        hypotheses=hyp,
        verdict=Verdict.IRREDUCIBLE if failed is None else Verdict.INCONCLUSIVE,
        failed=failed,
    )
    get_logger().log_check_result("eisenstein.classic", cert.verdict.value, {"p": p, "degree": f.degree})
    return cert


def eisenstein_shifted(f: IntPoly1, p: int, shift: int) -> EisensteinCertificate:
    """Classic Eisenstein applied to f(a + shift); irreducibility transfers back to f."""
    require_prime(p)
    if f.degree < 1:
        raise ConstantPolynomialError("Eisenstein needs degree >= 1")
    g = f.compose(IntPoly1((shift, 1), f.var))
    hyp = _classic_hypotheses(g, p)
    failed = _first_failure(hyp)
    return EisensteinCertificate(
        variant=SHIFTED,
        p=p,
        polynomial=f,
        digest=polynomial_digest(f),
        hypotheses=hyp,
        verdict=Verdict.IRREDUCIBLE if failed is None else Verdict.INCONCLUSIVE,
        failed=failed,
        shift=shift,
    )


def eisenstein_general(A: IntPoly1, B: IntPoly1, p: int) -> EisensteinCertificate:
    """
    Generalized criterion: A, B monic over Z, A = B^N mod p with N >= 1,
    B irreducible mod p, and p^(2 deg B) not dividing resultant(A, B).
    """
    require_prime(p)
    if not A.is_monic() or not B.is_monic():
        raise NonMonicError("generalized Eisenstein needs monic A and B")
    if B.degree < 1:
        raise ConstantPolynomialError("base polynomial must have degree >= 1")
    Am, Bm = reduce_mod(A, p), reduce_mod(B, p)
    match = as_power_of(Am, Bm)
    base_irreducible = is_irreducible(Bm)
    res = resultant(A, B)
    v = valuation(res, p)
    bound_exp = 2 * int(B.degree)
    hyp = {
        "power_mod_p": match is not None and match.exponent >= 1 and match.scalar == 1,
        "base_irreducible_mod_p": base_irreducible,
        "resultant_valuation": v is not None and v < bound_exp,
    }
    failed = _first_failure(hyp)
    cert = EisensteinCertificate(
        variant=GENERALIZED,
        p=p,
        polynomial=A,
        digest=polynomial_digest(A),
        hypotheses=hyp,
        verdict=Verdict.IRREDUCIBLE if failed is None else Verdict.INCONCLUSIVE,
        failed=failed,
        base=B,
        exponent=None if match is None else match.exponent,
        resultant=res,
        valuation=v,
        fp_transcript={"p": p, "degree": int(B.degree), "method": "rabin", "irreducible": base_irreducible},
    )
    get_logger().log_check_result(
        "eisenstein.generalized", cert.verdict.value, {"p": p, "degree": A.degree, "failed": failed}
    )
    return cert


def verify_certificate(cert: EisensteinCertificate) -> bool:
    """Recompute a certificate from its recorded polynomials and compare every witness."""
    if polynomial_digest(cert.polynomial) != cert.digest:
        return False
    if cert.variant == CLASSIC:
        fresh = eisenstein_classic(cert.polynomial, cert.p)
    elif cert.variant == SHIFTED:
        if cert.shift is None:
            return False
        fresh = eisenstein_shifted(cert.polynomial, cert.p, cert.shift)
    elif cert.variant == GENERALIZED:
        if cert.base is None:
            return False
        fresh = eisenstein_general(cert.polynomial, cert.base, cert.p)
        if (fresh.exponent, fresh.resultant, fresh.valuation) != (cert.exponent, cert.resultant, cert.valuation):
            return False
    else:
        return False
    return fresh.verdict == cert.verdict and fresh.hypotheses == cert.hypotheses


def origin_criterion_hypotheses(f: IntPoly2) -> OriginReport:
    """f(0,0) = 0 and nonzero linear part; then irreducibility over Q transfers to C."""
    constant = f.coefficient(0, 0)
    linear = (f.coefficient(1, 0), f.coefficient(0, 1))
    vanishes = constant == 0
    linear_nonzero = any(linear)
    ok = vanishes and linear_nonzero
    return OriginReport(
        constant=constant,
        linear=linear,
        vanishes=vanishes,
        linear_nonzero=linear_nonzero,
        verdict=Verdict.PASS if ok else Verdict.FAIL,
        implication="irreducible over Q implies irreducible over C" if ok else None,
    )


@dataclass
class PipelineBundle:
    """All legs of the certification of one R_{k,n,d}."""
    D: int
    k: int
    n: int
    d: int
    verdict: Verdict
    legs: Dict[str, CheckResult] = field(default_factory=dict)
    certificate: Optional[EisensteinCertificate] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "D": self.D, "k": self.k, "n": self.n, "d": self.d,
            "verdict": self.verdict.value,
            "legs": {name: leg.to_dict() for name, leg in self.legs.items()},
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def theorem_pipeline(
    D: int, k: int, n: int, d: int, ctx: Optional[UnicriticalContext] = None
) -> PipelineBundle:
    """
    Certify R_{k,n,d} for D = p^e: base B = a (n = 1) or R_n; B mod p must be
    irreducible, R_{k,n,d} mod p a power of it, and the resultant p^deg(R_n).
    A reducible R_n mod p puts the instance outside the certification hypotheses.
    """
    pp = prime_power(D)
    if pp is None:
        raise SpecError(f"theorem pipeline needs a prime-power degree, got {D}")
    p = pp[0]
    ctx = ctx or UnicriticalContext(D)
    logger = get_logger()
    bundle = PipelineBundle(D, k, n, d, Verdict.FAIL)

    A = ctx.preperiodic_factor(k, n, d).poly
    B = IntPoly1.gen() if n == 1 else ctx.gleason_factor(n)
    base_mod_p = reduce_mod(B, p)
    base_ok = is_irreducible(base_mod_p)
    bundle.legs["base_irreducible"] = CheckResult(
        "base_irreducible", Verdict.PASS if base_ok else Verdict.INFO, {"degree": int(B.degree)}
    )
    if not base_ok:
        bundle.verdict = Verdict.OUT_OF_HYPOTHESES
        logger.log_check_result("pipeline", bundle.verdict.value, {"D": D, "k": k, "n": n, "d": d})
        return bundle

    # the certificate carries the mod-p exponent and the resultant the legs report
    cert = eisenstein_general(A, B, p)
    bundle.certificate = cert
    bundle.legs["power_mod_p"] = CheckResult(
        "power_mod_p", Verdict.PASS if cert.exponent is not None else Verdict.FAIL,
        {"exponent": cert.exponent},
    )
    if n >= 2:
        expected = p ** int(B.degree)
        bundle.legs["resultant"] = CheckResult(
            "resultant", Verdict.PASS if abs(cert.resultant) == expected else Verdict.FAIL,
            {"resultant": str(cert.resultant), "expected_abs": str(expected)},
        )

    legs_ok = all(bundle.legs.values())
    bundle.verdict = Verdict.IRREDUCIBLE if cert.is_irreducible and legs_ok else Verdict.FAIL
    logger.log_check_result("pipeline", bundle.verdict.value, {"D": D, "k": k, "n": n, "d": d})
    return bundle


__all__ = [
    "EisensteinCertificate",
    "OriginReport",
    "PipelineBundle",
    "eisenstein_classic",
    "eisenstein_general",
    "eisenstein_shifted",
    "origin_criterion_hypotheses",
    "polynomial_digest",
    "theorem_pipeline",
    "verify_certificate",
]
