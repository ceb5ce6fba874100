"""Exact pivot rules and short monotone paths on lattice polytopes."""
