"""
The compile pipeline: parse, analyse, translate and render one statement.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

from app.sql.analysis import Parameter, parameters, run_analysis
from app.sql.ast import Statement
from app.sql.parser import parse_statement
from app.sql.tokens import CompileError, split_statements
from app.sql.translate import RenderedQuery, render, translate
from app.sql.translate.plan import QueryPlan


@dataclass(frozen=True)
class CompiledStatement:
    """ Every stage of one compiled statement. """
    ast: Statement
    typed: Statement
    plan: QueryPlan
    rendered: RenderedQuery

    @property
    def parameters(self) -> List[Parameter]:
        """ The embedded expressions the statement must be given at run time. """
        return parameters(self.typed)


def compile_statement(text, info, line=1, column=1):
    """
    Compiles one statement. Raises CompileError on the first problem.
    """
    statement = parse_statement(text, line, column)
    typed = run_analysis(statement, info)
    plan = translate(typed, info)
    return CompiledStatement(statement, typed, plan, render(plan))


def compile_script(text, info):
    """
    Compiles every statement of a script independently. Returns a list of
    (CompiledStatement or None, CompileError or None) pairs in script order.
    """
    results = []
    for piece, line, column in split_statements(text):
        try:
            results.append((compile_statement(piece, info, line, column), None))
        except CompileError as error:
            results.append((None, error))
    return results
