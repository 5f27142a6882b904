"""Backend selection for the elimination kernels.

The compiled extension is used when it imports; set ``ECHELON_PURE_PYTHON=1``
to force the pure-Python kernels.  Exact entry points transparently rerun the
pure-Python kernel when the compiled one reports 64-bit overflow.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_compiled = None
if os.environ.get("ECHELON_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as _compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

#: Two primes below 2**31 used by the modular prescreen.
PRIMES = (2147483629, 2147483587)


def _as_rows(M) -> list[list[int]]:
    if isinstance(M, np.ndarray):
        return M.tolist()
    return [[int(v) for v in row] for row in M]


def bruhat_pivots(M, ncols: int | None = None, backend: str | None = None) -> list[int]:
    """Exact pivot rows of the first ``ncols`` columns (``-1`` = no pivot)."""
    ncols = len(M[0]) if ncols is None else ncols
    if (backend or BACKEND) == "compiled" and _compiled is not None:
        try:
            return _compiled.bruhat_pivots(M, ncols)
        except OverflowError:
            pass
    return _pykernels.bruhat_pivots(_as_rows(M), ncols)


def bruhat_pivots_mod(M, p: int, ncols: int | None = None, backend: str | None = None) -> list[int]:
    ncols = len(M[0]) if ncols is None else ncols
    if (backend or BACKEND) == "compiled" and _compiled is not None:
        try:
            return _compiled.bruhat_pivots_mod(M, ncols, p)
        except OverflowError:  # entries too large for int64 before reduction
            pass
    return _pykernels.bruhat_pivots_mod(_as_rows(M), ncols, p)


def rank_exact(M, backend: str | None = None) -> int:
    if len(M) == 0 or len(M[0]) == 0:
        return 0
    if (backend or BACKEND) == "compiled" and _compiled is not None:
        try:
            return _compiled.rank_exact(M)
        except OverflowError:
            pass
    return _pykernels.rank_exact(_as_rows(M))


def rank_mod(M, p: int, backend: str | None = None) -> int:
    if len(M) == 0 or len(M[0]) == 0:
        return 0
    if (backend or BACKEND) == "compiled" and _compiled is not None:
        try:
            return _compiled.rank_mod(M, p)
        except OverflowError:
            pass
    return _pykernels.rank_mod(_as_rows(M), p)
