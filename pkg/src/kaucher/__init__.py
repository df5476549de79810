"""Formal solutions of interval linear systems in Kaucher arithmetic.

The package is organised bottom-up: scalar arithmetic (:mod:`.interval`),
interval vectors and matrices (:mod:`.linalg`), dense real helpers
(:mod:`.reallinalg`), the standard immersion into R^2n (:mod:`.immersion`),
splitting iterations (:mod:`.splitting`), the subdifferential Newton method
(:mod:`.newton`) and the problem format plus command line (:mod:`.problems`,
:mod:`.cli`).
"""

from .errors import (
    ArithmeticOverflowError, BoundUnavailableError, KaucherError, ProblemSyntaxError,
    ShapeError, SingularMatrixError, SplittingError, StartFailureError, ZeroInProjectionError,
)
from .immersion import (
    Regularity, extended_multiplier, is_absolutely_regular, markov_solve,
    solve_point_system, sti, sti_inv, zeta,
)
from .interval import (
    KInterval, SignClass, add, ceil_point, classify, dist, div, dual, floor_point,
    includes, inv, join, leq, mag, meet, mid, mig, mul, mul_lakeyev, mul_table, ominus,
    opp, oslash, pro, rad, scalar_mul, sgn, sub,
)
from .linalg import Dist, IntervalMatrix, IntervalVector, mat_dual, mat_vec, residual, vec_dual
from .newton import NewtonOptions, induced_phi, newton_solve, subgradient
from .problems import Problem, load_fixture, parse_problem
from .reallinalg import inverse, is_singular, lu_factor, lu_solve, spectral_radius
from .splitting import (
    PointSplitting, SolveReport, Status, TriangularSplitting, apply_H,
    arm_convergence_criterion, arm_iterate, arm_split_markov, arm_split_simple,
    trn_convergence_criterion, trn_error_bound, trn_iterate, trn_split,
)

__version__ = "0.1.0"
