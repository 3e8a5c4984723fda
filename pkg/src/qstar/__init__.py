"""Exact Q*_s numeration and the digit-distance function class ``f_a``."""
from .digits import DigitSeq, parse_seq, render
from .dimension import level_set_dimension, moran_dimension
from .errors import BudgetError, DomainError
from .functions import (
    JumpReport,
    SAdicParam,
    apply_digits,
    continuity_modulus,
    eval_at_point,
    evaluate,
    inversor,
    jump,
    jump_vanishes,
    lemma1_partner,
)
from .numeration import (
    CylinderInterval,
    EncodeResult,
    QStarSystem,
    StochasticColumn,
    beta,
    canonicalize,
    column,
    cylinder,
    decode,
    encode,
    is_binary,
    twin,
)
from .sets import (
    CantorSpec,
    LevelKind,
    LevelProfile,
    PeriodicSets,
    ValueSetKind,
    ValueSetSpec,
    level_enumerate,
    level_profile,
    value_set,
    value_set_intervals,
    value_set_measure,
)

__version__ = "0.1.0"
