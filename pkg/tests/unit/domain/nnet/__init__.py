"""Unit test package for the network."""
