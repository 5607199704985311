"""Grid classes of permutations."""

__version__ = "0.1.0"
