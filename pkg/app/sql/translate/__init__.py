"""
Query plans, their construction from typed statements and their SQL rendering.
"""
from .plan import describe_plan
from .render import Hole, RenderedQuery, render
from .translator import desugar_satisfies, translate

__all__ = ["Hole", "RenderedQuery", "describe_plan", "desugar_satisfies", "render",
           "translate"]
