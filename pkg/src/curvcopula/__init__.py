"""Quasi-copulas with a prescribed section along a monotone curve.

Construct the greatest and smallest quasi-copulas whose restriction to
the curve (u, phi(u)) equals a given admissible section, verify copula
properties by rectangle sweeps, and decide from the section's structure
alone whether the greatest one is a copula.
"""

from .characterize import (BertinoComparison, CharacterizationVerdict,
                           GapDiagnostics, NecessityDiagnostics,
                           NotDetermined, SectionIsEnvelope,
                           check_bertino_is_M, decide, diagnose_necessity,
                           extract_gap_intervals)
from .curves import MonotoneCurve, m_phi, solve_curve_plus_identity
from .errors import (ConfigError, DisjointnessError, DomainError,
                     IntervalError, PropertyViolation)
from .pwl import PiecewiseLinearFn, RangeExtremumTable
from .sections import (CurvilinearSection, GapInterval, Incompatibility,
                       IntervalFamily, SectionPiece, compatibility_check,
                       determined_section, envelope_section,
                       generate_compatible_family, product_section,
                       section_from_config, section_from_copula,
                       validate_section, w_section)
from .surfaces import (M, PI, W, BertinoSurface, Independence, LowerFrechet,
                       Surface, UpperBoundSurface, UpperFrechet,
                       WSectionUpperBound, build_surface,
                       w_section_closed_form, write_grid_csv)
from .verify import (CopulaReport, QuasiReport, Rectangle, VolumeReport,
                     check_copula, check_quasi, classify_rectangle,
                     find_worst_rectangle, volume)

__version__ = "0.1.0"

__all__ = [
    "BertinoComparison", "BertinoSurface", "CharacterizationVerdict",
    "ConfigError", "CopulaReport", "CurvilinearSection", "DisjointnessError",
    "DomainError", "GapDiagnostics", "GapInterval", "Incompatibility",
    "Independence", "IntervalError", "IntervalFamily", "LowerFrechet", "M",
    "MonotoneCurve", "NecessityDiagnostics", "NotDetermined", "PI",
    "PiecewiseLinearFn", "PropertyViolation", "QuasiReport",
    "RangeExtremumTable", "Rectangle", "SectionIsEnvelope", "SectionPiece",
    "Surface", "UpperBoundSurface", "UpperFrechet", "VolumeReport", "W",
    "WSectionUpperBound", "build_surface", "check_bertino_is_M",
    "check_copula", "check_quasi", "classify_rectangle", "compatibility_check",
    "decide", "determined_section", "diagnose_necessity", "envelope_section",
    "extract_gap_intervals", "find_worst_rectangle",
    "generate_compatible_family", "m_phi", "product_section",
    "section_from_config",
    "section_from_copula", "solve_curve_plus_identity", "validate_section",
    "volume", "w_section", "w_section_closed_form", "write_grid_csv",
]
