"""Integration test package."""