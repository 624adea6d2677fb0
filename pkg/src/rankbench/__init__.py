"""rankbench: a benchmark harness for feature-ranking algorithms."""

__version__ = "0.1.0"
