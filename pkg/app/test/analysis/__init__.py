"""
Tests for app.sql.analysis.
"""
