"""Unit tests for application services."""
