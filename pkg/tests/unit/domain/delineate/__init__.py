"""Unit test package for decoding."""
