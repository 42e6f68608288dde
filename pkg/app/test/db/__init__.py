"""
Tests for app.db.
"""
