"""Exact-arithmetic checkers for the F-transform, Pernici's series identities,
graph positivity of regular bipartite graphs and the weighted-configuration
theorem for Stirling numbers."""

__version__ = "0.1.0"
