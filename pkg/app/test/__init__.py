"""
Test suite for ersql.
"""
