"""Exact arithmetic for an unramified quadratic extension of Q_p, the
quaternion division algebra over Q_p, the unitary groups U(1,1) and U(2),
beta-characters, finite quotient groups and the lattice model of the Weil
representation, together with seeded verification suites."""

from .cyclotomic import CycNum, CycVal
from .local_field import ExtNum, FieldParams, PadicNum, PrecisionError, chi, psi
from .quaternion import QuatNum, cayley, delta
from .unitary_groups import GrpElemU2, GrpElemU11, Mat2

__all__ = [
    "CycNum", "CycVal", "ExtNum", "FieldParams", "GrpElemU11", "GrpElemU2", "Mat2", "PadicNum",
    "PrecisionError", "QuatNum", "cayley", "chi", "delta", "psi",
]
