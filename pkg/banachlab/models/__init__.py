"""
数据模型模块
"""

from .space import Functional, NormedSpace, NormKind, PolyhedralData, ScalarField
from .operator import NormResult, Operator
from .results import (
    DaugavetResult,
    IndexCertificate,
    IndexMethod,
    PiNormResult,
    RadiusResult,
    RankOneTerm,
    StatePair,
    TensorElement,
    TensorNormResult,
)
from .pipeline import (
    InequalityReport,
    SolverOptions,
    SuiteContext,
    SuiteStep,
    Verdict,
)
from .slices import (
    DeterminingVerdict,
    Separation,
    SliceDaugavetReport,
    SliceSpec,
    StronglyExposedReport,
)
from .report import Command, OutputFormat, ReportItem, RunConfig, RunReport
from .catalog import Catalog, CatalogVector, SliceFamily

__all__ = [
    "Functional",
    "NormedSpace",
    "NormKind",
    "PolyhedralData",
    "ScalarField",
    "NormResult",
    "Operator",
    "DaugavetResult",
    "IndexCertificate",
    "IndexMethod",
    "PiNormResult",
    "RadiusResult",
    "RankOneTerm",
    "StatePair",
    "TensorElement",
    "TensorNormResult",
    "InequalityReport",
    "SolverOptions",
    "SuiteContext",
    "SuiteStep",
    "Verdict",
    "DeterminingVerdict",
    "Separation",
    "SliceDaugavetReport",
    "SliceSpec",
    "StronglyExposedReport",
    "Command",
    "OutputFormat",
    "ReportItem",
    "RunConfig",
    "RunReport",
    "Catalog",
    "CatalogVector",
    "SliceFamily",
]
