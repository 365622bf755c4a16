"""Turkish-aware ad-hoc retrieval experimentation toolkit."""

__version__ = "0.1.0"
