"""richdist: exact constructions and verification of point sets with many repeated distances."""

from .cyclo import (ComplexBox, CycloField, CycloNum, EmbeddingError,
                    FieldMismatchError, NotRealError, Ordering, compare_real,
                    cyclotomic_polynomial)
from .geometry import (BasePolygon, CoincidenceError, DegenerateFigureError,
                       PointSet, Reflection, Rotation, polygon_copies,
                       reflect_line, regular_ngon, replay_provenance,
                       rotate_about, squared_distance)
from .constructions import (BelowThresholdError, ConstructionPlan,
                            SearchExhaustedError, Verification, build_theorem1,
                            build_theorem2, decompose, replay, verify_claim)
from .spectrum import (DistanceClass, DistanceSpectrum, SpectrumStats,
                       diameter_multiplicity, distance_spectrum,
                       regular_polygon_class_count, rich_classes,
                       spectrum_stats)
from .oracle import (ApproxPointSet, ApproxSpectrum, CrossCheckResult,
                     OracleMismatchError, approx_points, approx_spectrum,
                     cross_check)
from .pointsfile import PointsParseError, parse, serialize
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "ApproxPointSet", "ApproxSpectrum", "BasePolygon", "BelowThresholdError",
    "CoincidenceError", "ComplexBox", "ConstructionPlan", "CrossCheckResult",
    "CycloField", "CycloNum", "DegenerateFigureError", "DistanceClass",
    "DistanceSpectrum", "EmbeddingError", "FieldMismatchError", "NotRealError",
    "OracleMismatchError", "Ordering", "PointSet", "PointsParseError",
    "Reflection", "Rotation", "SearchExhaustedError", "SpectrumStats",
    "Verification", "approx_points", "approx_spectrum", "build_theorem1",
    "build_theorem2", "compare_real", "cross_check", "cyclotomic_polynomial",
    "decompose", "diameter_multiplicity", "distance_spectrum", "parse",
    "polygon_copies", "reflect_line", "regular_ngon", "regular_polygon_class_count",
    "render_svg", "replay", "replay_provenance", "rich_classes", "rotate_about",
    "serialize", "spectrum_stats", "squared_distance", "verify_claim",
]
