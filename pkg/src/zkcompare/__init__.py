"""A pairing SNARK and a FRI STARK implemented side by side, with a benchmark harness."""

__version__ = "0.1.0"
