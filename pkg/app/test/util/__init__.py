"""
Tests for app.util.
"""
