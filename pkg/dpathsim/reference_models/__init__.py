"""Bundled reference stage models."""
