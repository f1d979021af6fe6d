"""L1 cross-validation toolkit for compressed sensing under impulse noise."""

__version__ = "0.1.0"
