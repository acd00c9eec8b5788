"""flexlab: flexibility of complete bipartite bar-joint frameworks."""

__version__ = "0.1.0"
