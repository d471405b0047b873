"""Kernel selection: compiled echelon when available, pure Python otherwise.

The compiled extension works over int64 and raises OverflowError when
an intermediate value would not fit; in that case the computation is
redone with arbitrary-precision integers.  Set ``BNTORIC_PURE_PYTHON=1``
to force the pure path (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _elim_py
from ._elim_py import EchelonResult

_compiled = None
if not os.environ.get("BNTORIC_PURE_PYTHON"):
    try:
        from . import _elim as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

IMPLEMENTATION = "compiled" if _compiled is not None else "python"


def echelon(rows, track: bool = False) -> EchelonResult:
    if _compiled is not None:
        try:
            parts = _compiled.echelon_parts(rows, track)
            return EchelonResult(*parts)
        except OverflowError:
            pass
    return _elim_py.echelon(rows, track)


def echelon_pure(rows, track: bool = False) -> EchelonResult:
    return _elim_py.echelon(rows, track)
