"""Unit tests for infrastructure adapters."""
