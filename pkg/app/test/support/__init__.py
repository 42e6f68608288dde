"""
Shared helpers for the test suite: model, data and statement generators, and an
in-memory evaluator used as the reference semantics for queries.
"""
