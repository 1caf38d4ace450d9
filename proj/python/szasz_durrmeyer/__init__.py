"""Generalized Szasz-Mirakjan-Durrmeyer operators B*."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, DivergentIntegral, ConvergenceFailure  # noqa: F401

__version__ = "0.1.0"
