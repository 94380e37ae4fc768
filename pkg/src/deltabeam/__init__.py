"""Modal analysis of Euler-Bernoulli beams with stiffness jumps and point
cracks, built on an exact piecewise-distribution calculus."""

from .smooth import (SmoothExpr, const, cos_expr, cosh_expr, exp_expr,
                     monomial, poly, sin_expr, sinh_expr)
from .distributions import (DeltaTerm, PiecewiseDistribution, dirac,
                            from_smooth, heaviside, piecewise, star)
from .beam import BeamModel, Mode, SweepSpec
from .errors import (FrequencyShortfallError, NotAFrequencyError,
                     PreconditionError)

__version__ = "0.1.0"

__all__ = [
    "SmoothExpr", "const", "poly", "monomial", "sin_expr", "cos_expr",
    "sinh_expr", "cosh_expr", "exp_expr",
    "DeltaTerm", "PiecewiseDistribution", "from_smooth", "piecewise",
    "heaviside", "dirac", "star",
    "BeamModel", "Mode", "SweepSpec",
    "FrequencyShortfallError", "NotAFrequencyError", "PreconditionError",
    "__version__",
]
