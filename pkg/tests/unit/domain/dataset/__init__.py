"""Unit test package for the dataset domain."""
