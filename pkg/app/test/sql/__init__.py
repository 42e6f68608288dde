"""
Tests for app.sql.
"""
