"""Exact tilt-stability numerics on polarized threefolds."""

from .scalar import IncompatibleRadicandError, Scalar, sqrt_rational

__version__ = "0.1.0"

__all__ = ["Scalar", "sqrt_rational", "IncompatibleRadicandError", "__version__"]
