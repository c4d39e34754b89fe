"""Skew-orthogonal polynomials, Pfaffian kernels and small eigenvalue ensembles
for the Jacobi, Laguerre and Gaussian weights at beta = 1 and beta = 4."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
