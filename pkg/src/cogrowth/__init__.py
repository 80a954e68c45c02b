"""Exact cogrowth series and algebraic equations for free products of finite groups and copies of Z."""
__version__ = "0.1.0"
