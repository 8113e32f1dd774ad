"""Computational toolkit for finiteness properties of totally disconnected
locally compact groups.

Submodules: ``linalg`` (exact integer linear algebra), ``germ`` (Cayley-Abels
graph windows), ``complex`` and ``homology`` (simplicial chains), ``scan``
(Brown-criterion diagnostics), ``perm`` (permutation-module calculus),
``orbit`` (deflated orbit complexes) and ``inference`` (rule engine).
"""

from .errors import InputError, InvariantError, ResourceLimitError, TdlcError

__version__ = "0.1.0"

__all__ = ["InputError", "InvariantError", "ResourceLimitError", "TdlcError", "__version__"]
