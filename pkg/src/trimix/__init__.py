"""Exact representation numbers of mixed triangular/square/hexagonal forms."""

__version__ = "0.1.0"
