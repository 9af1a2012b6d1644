"""Delta-delta discretization of the finite Hilbert transform equation.

Thin python layer over the C++ core: grids, exact-solution catalog,
Toeplitz operator, solvers, error diagnostics and spectral scans.
"""

from ddhilbert._core import *  # noqa: F401,F403
from ddhilbert._core import __doc__, __version__  # noqa: F401
