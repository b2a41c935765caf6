"""Group theory, equivariant interpolation and Groebner verification for
building Galois covers of surfaces from explicit equations."""

__version__ = "0.1.0"
