"""Compact local Smith-McMillan form of rational matrices via block Toeplitz rank search."""
from .exceptions import (
    DegenerateDraw,
    DimensionMismatch,
    EvalAtPole,
    IncompleteProfile,
    InsufficientSeriesOrder,
    MaxOrderExceeded,
    MismatchedShapes,
    NegativeShiftOnNonzeroEntry,
    NoZeroAtPoint,
    NonFiniteInput,
    NormalRankExceeded,
    ParseError,
    PointMismatch,
    RankDecrease,
    RankDeficientL,
    SmithFormError,
    ZeroFunctionError,
)
from .polymat import LaurentMatrix, PolyMatrix, ZeroFunction, evaluate, reexpand
from .smithform import (
    CompactDecomposition,
    certificates,
    decompose,
    decompose_left,
    extract_root_vectors,
    residual_report,
)
from .toeplitz_oracle import ToeplitzProfile, oracle_profile
from .estimator import LocalSmithForm

__version__ = "0.1.0"

__all__ = [
    "CompactDecomposition",
    "DegenerateDraw",
    "DimensionMismatch",
    "EvalAtPole",
    "IncompleteProfile",
    "InsufficientSeriesOrder",
    "LaurentMatrix",
    "LocalSmithForm",
    "MaxOrderExceeded",
    "MismatchedShapes",
    "NegativeShiftOnNonzeroEntry",
    "NoZeroAtPoint",
    "NonFiniteInput",
    "NormalRankExceeded",
    "ParseError",
    "PointMismatch",
    "PolyMatrix",
    "RankDecrease",
    "RankDeficientL",
    "SmithFormError",
    "ToeplitzProfile",
    "ZeroFunction",
    "ZeroFunctionError",
    "certificates",
    "decompose",
    "decompose_left",
    "evaluate",
    "extract_root_vectors",
    "oracle_profile",
    "reexpand",
    "residual_report",
]
