"""Fixed points, tangent weights and invariant curves of type-A bow varieties."""

__version__ = "0.1.0"
