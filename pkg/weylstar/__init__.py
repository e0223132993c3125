"""
Exact Weyl algebra computations with the Moyal product

This package (c) 2023 Jamie Hardt. All Rights Reserved.
Licensed under the BSD 3-Clause license; see the project metadata for
your rights to use, modify and redistribute this software package.

weylstar realizes the Weyl algebra as polynomials in ``p1..pn, q1..qn``
under the Moyal product, with exact Gaussian-rational coefficients. It
computes supertraces and the invariant forms, checks the osp(1, 2n)
structure of the algebra, reconstructs operators on polynomials as
differential operators and sums renormalized supertraces and inverse Weyl
transforms.

Note on Versions
----------------

The `__version__` property of this module uses semantic versioning.

- The first element increments with incompatible changes to the Engine
  or the command line.
- The second element increments with new commands and checks.
- The third element increments with bug fixes or modifications to docs,
  build system, etc.

"""

from .errors import (DegreeBoundError, DomainError, ExpressionError,
                     VariableMismatchError, WeylStarError)
from .poly import Poly, VarKind
from .runner import Runner, open_runner
from .engine import Engine, open_engine

__version__ = '1.0.0'
