"""
Tests for app.erd.
"""
