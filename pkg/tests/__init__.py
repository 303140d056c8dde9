# tests/__init__.py
"""Test package."""
