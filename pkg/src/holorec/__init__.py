"""Exact P-finite recurrences for holonomic generating functions."""
