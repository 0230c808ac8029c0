"""Certified rank bounds for y^2 = x^3 - n^2 x by 2-isogeny descent."""

from .curves import Curve, SingularCurveError
from .descent import ENGINE_VERSION

__version__ = "0.1.0"
__all__ = ["Curve", "ENGINE_VERSION", "SingularCurveError", "__version__"]
