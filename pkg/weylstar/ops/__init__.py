"""
Operations classes.
"""

from .operation import Operation

# Products and forms

from .star import Star
from .bracket import Bracket
from .forms import Str, Kappa, Bform
from .rho import Rho

# osp(1, 2n) and the decompositions of W

from .osp_checks import OspRoots, OspCheck, CkImage, Cg

# Operators on polynomials

from .calculus import Reconstruct, Wmap
from .series import Strwbar, Rstr, Iw
