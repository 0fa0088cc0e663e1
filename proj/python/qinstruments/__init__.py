"""Quantum instruments, measurement dilations, and the spin-bath erasure model.

The heavy lifting lives in the compiled extension; this package simply
re-exports it.
"""

from qinstruments._core import *  # noqa: F401,F403
from qinstruments._core import __doc__  # noqa: F401
