"""qshuffle: exact shuffle-algebra computations for toroidal relation checking.

The package is organized bottom-up:

  exactalg    exact Laurent-polynomial / rational-function substrate
  quiver      quivers, weight functions, Cartan data, parity sequences
  roots       finite root systems and the loop-root set with Kac data
  shuffle     kernels, symmetrization, shuffle products, Hall-Littlewood
  characters  truncated (q, z)-series, plethystic Exp, dimension counts
  verify      relation checkers emitting structured reports
  cli         command-line front end (`qshuffle ...`)
"""

from .exactalg import (
    Var,
    QVAR,
    TVAR,
    xvar,
    poly_var,
    LaurentPoly,
    RationalFunction,
    FactoredProduct,
    rf_arith,
    rf_equal,
    exact_divide,
)
from .quiver import (
    Quiver,
    WeightFunction,
    CartanData,
    ParitySequence,
    double_quiver,
    triple_quiver,
    normal_weights,
    kac_moody_cartan,
    build_super_quiver,
    builtin,
)
from .shuffle import (
    Kernel,
    ShuffleAlgebra,
    ShuffleElement,
    build_kernel,
    generator,
    hall_littlewood,
    q_binomial,
    shuffle_mul,
    sym_over_shuffles,
    unit,
)

__version__ = "0.1.0"

__all__ = [
    "Var",
    "QVAR",
    "TVAR",
    "xvar",
    "poly_var",
    "LaurentPoly",
    "RationalFunction",
    "FactoredProduct",
    "rf_arith",
    "rf_equal",
    "exact_divide",
    "Quiver",
    "WeightFunction",
    "CartanData",
    "ParitySequence",
    "double_quiver",
    "triple_quiver",
    "normal_weights",
    "kac_moody_cartan",
    "build_super_quiver",
    "builtin",
    "Kernel",
    "ShuffleAlgebra",
    "ShuffleElement",
    "build_kernel",
    "generator",
    "hall_littlewood",
    "q_binomial",
    "shuffle_mul",
    "sym_over_shuffles",
    "unit",
    "__version__",
]
