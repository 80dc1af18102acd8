"""Utility and migration scripts package."""