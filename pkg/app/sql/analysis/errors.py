"""
Errors reported by the semantic analysis phases.
"""
from __future__ import annotations

from enum import Enum

from app.sql.tokens import CompileError


class Phase(Enum):
    """ The analysis phase that rejected a statement. """
    NAMER = "Namer"
    CONSISTENCY = "Consistency"
    TYPER = "Typer"

    def __str__(self):
        return self.value


class AnalysisError(CompileError):
    """
    A semantic error. The message names the offending identifiers or types.
    """

    def __init__(self, phase, message, position):
        super(AnalysisError, self).__init__(message, position)
        self.phase = phase

    def __str__(self):
        return "%s: [%s] %s" % (self.position, self.phase, self.message)
