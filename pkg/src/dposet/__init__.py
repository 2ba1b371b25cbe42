"""Exact polyhedral combinatorics of posets and double posets."""
