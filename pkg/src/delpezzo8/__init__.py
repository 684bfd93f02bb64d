"""Exact rationality decision and parametrization for degree-8 Del Pezzo surfaces in P^8."""
from .conic import ConicCertificate, TernaryForm, recheck_certificate, solve_conic
from .estimator import DelPezzoParametrizer, check_height, check_ideal
from .field import QuadExt, QuadField, factor, squarefree_part
from .lie import LieAlgebra, Sl2Triple, find_sl2_triple, identify_sl2, killing_form
from .models import CanonicalModel, ParamMap, QuadricIdeal, model_for
from .pipeline import (
    PipelineResult,
    classify,
    classify_and_parametrize,
    generate_instance,
    lie_algebra_of_variety,
    verify_parametrization,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalModel",
    "ConicCertificate",
    "DelPezzoParametrizer",
    "LieAlgebra",
    "ParamMap",
    "PipelineResult",
    "QuadExt",
    "QuadField",
    "QuadricIdeal",
    "Sl2Triple",
    "TernaryForm",
    "check_height",
    "check_ideal",
    "classify",
    "classify_and_parametrize",
    "factor",
    "find_sl2_triple",
    "generate_instance",
    "identify_sl2",
    "killing_form",
    "lie_algebra_of_variety",
    "model_for",
    "recheck_certificate",
    "solve_conic",
    "squarefree_part",
    "verify_parametrization",
]
