"""
dynirr - exact construction and irreducibility certification of the curve
polynomials attached to maps with a preperiodic critical point.
"""

__version__ = "1.0.0"
__license__ = "MIT"

from .config import DEFAULT_CONFIG, CheckKind, DynirrConfig, Family, Verdict
from .logger import get_logger
from .zpoly import IntPoly1, IntPoly2, resultant
from .certify import EisensteinCertificate, theorem_pipeline, verify_certificate
from .runner import JobRunner, JobSpec

__all__ = [
    'DEFAULT_CONFIG',
    'CheckKind',
    'DynirrConfig',
    'Family',
    'Verdict',
    'IntPoly1',
    'IntPoly2',
    'resultant',
    'EisensteinCertificate',
    'theorem_pipeline',
    'verify_certificate',
    'JobRunner',
    'JobSpec',
    'get_logger',
]
