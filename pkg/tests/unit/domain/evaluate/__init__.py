"""Unit test package for evaluation."""
