"""Differentially oblivious algorithms over traced memory, with a privacy auditor.

The heavy lifting lives in the C++ extension ``_oblab``; this package re-exports
its surface. When working from a plain CMake build tree, point PYTHONPATH at the
build's ``bindings`` directory and the fallback import below picks the module up.
"""

try:
    from ._oblab import *  # noqa: F401,F403
    from ._oblab import __version__  # noqa: F401
except ImportError:  # pragma: no cover - dev-tree fallback
    from _oblab import *  # noqa: F401,F403
    from _oblab import __version__  # noqa: F401

__all__ = [
    "Rng",
    "laplace",
    "truncated_laplace",
    "search",
    "prefix_sum",
    "locate",
    "tester",
    "MultiSearch",
    "audit_search",
    "audit_locate",
    "lowerbound_demo",
    "cycle_edges",
    "triangles_edges",
]
