"""Provide the command-line front end."""
