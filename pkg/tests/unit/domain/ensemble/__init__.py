"""Unit test package for the ensemble."""
