"""Exact counts and growth rates of k-noncrossing RNA structures with minimum arc length."""

__version__ = "0.1.0"
