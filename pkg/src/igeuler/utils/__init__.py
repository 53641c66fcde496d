"""Provide utilities."""
