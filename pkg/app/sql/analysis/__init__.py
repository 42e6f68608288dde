"""
Semantic analysis of dialect statements: namer, consistency and typer phases.
"""
from .consistency import check_consistency
from .errors import AnalysisError, Phase
from .namer import resolve_names
from .typer import Parameter, infer_types, parameters


def run_analysis(statement, info):
    """
    Runs the three phases in order and returns the typed statement. The first
    failing phase raises AnalysisError.
    """
    named = resolve_names(statement, info)
    consistent = check_consistency(named, info)
    return infer_types(consistent, info)


__all__ = ["AnalysisError", "Parameter", "Phase", "check_consistency", "infer_types",
           "parameters", "resolve_names", "run_analysis"]
