from .tiling import (
    ArrowSpec, FaceSpec, TilingSpec, PotentialTerm, DimVector, ValidationReport, Violation,
    TilingError, TilingParseError, TilingValidationError,
    validate_tiling, potential_terms, ringel_form
)
from .matching import Matching, RCharge
from .cover import CoverVertex, CoverArrow, PathClass
from .ideal import Ideal, SeriesByDim
from .dimer import MatchingDiff, HeightField
from .report import ConsistencyReport
from .series import TruncatedSeries, RationalFunctionGuess, SeriesError

__all__ = [
    'ArrowSpec', 'FaceSpec', 'TilingSpec', 'PotentialTerm', 'DimVector', 'ValidationReport', 'Violation',
    'TilingError', 'TilingParseError', 'TilingValidationError',
    'validate_tiling', 'potential_terms', 'ringel_form',
    'Matching', 'RCharge',
    'CoverVertex', 'CoverArrow', 'PathClass',
    'Ideal', 'SeriesByDim',
    'MatchingDiff', 'HeightField',
    'ConsistencyReport',
    'TruncatedSeries', 'RationalFunctionGuess', 'SeriesError'
]
