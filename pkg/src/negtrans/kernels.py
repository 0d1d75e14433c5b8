"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback. Set ``NEGTRANS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("NEGTRANS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

eval_program = _impl.eval_program
search_monoids = _impl.search_monoids

OP_VAR = _pykernels.OP_VAR
OP_CONST = _pykernels.OP_CONST
OP_TENSOR = _pykernels.OP_TENSOR
OP_LOLLY = _pykernels.OP_LOLLY


def backends() -> dict:
    """Every importable backend by name, for cross-checking and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


def use(name: str) -> None:
    """Switch the process-wide backend to ``name``."""
    global BACKEND, eval_program, search_monoids
    avail = backends()
    if name not in avail:
        raise ValueError(f"backend {name!r} is not available (have {', '.join(avail)})")
    BACKEND = name
    eval_program = avail[name].eval_program
    search_monoids = avail[name].search_monoids
