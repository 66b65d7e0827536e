"""Deformed hyperoctahedral q-Whittaker functions and the difference Toda chain.

Exact rational engines for the Macdonald-Koornwinder polynomials at generic t
and their t = 0 degeneration, the lattice Toda operators they diagonalize,
torus quadrature for the orthogonality relations, and the scattering data.
"""
from .exactnum import exact, fmt
from .params import ParamSet, ParameterError, preset, preset_names
from .report import VerificationReport
from .suites import SUITES, run_suite
from .weyl import InvariantPoly, partitions

__version__ = "0.1.0"

__all__ = [
    "exact", "fmt", "ParamSet", "ParameterError", "preset", "preset_names", "VerificationReport",
    "SUITES", "run_suite", "InvariantPoly", "partitions", "__version__",
]
