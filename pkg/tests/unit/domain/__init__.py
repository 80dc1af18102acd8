"""Unit test package for domain modules."""