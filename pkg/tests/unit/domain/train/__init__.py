"""Unit test package for training."""
