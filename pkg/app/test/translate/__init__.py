"""
Tests for app.sql.translate.
"""
