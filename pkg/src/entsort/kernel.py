"""Kernel selection: compiled statistics-tree core with pure-Python fallback.

The compiled kernel (`entsort._kernel_c`, built from Cython) and the pure
kernel (`entsort._kernel_py`) expose identical surfaces. Import-time
selection prefers the compiled one; set ENTSORT_KERNEL=python (or =c) to
force a choice. `get_kernel` lets benchmarks run both side by side.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernel_py

_FORCED = os.environ.get("ENTSORT_KERNEL", "").strip().lower()

_kernel_c = None
if _FORCED != "python":
    try:
        from . import _kernel_c  # type: ignore[no-redef]
    except ImportError:
        _kernel_c = None
        if _FORCED == "c":
            raise ImportError(
                "ENTSORT_KERNEL=c but the compiled kernel is not built")

_impl: ModuleType = _kernel_c if _kernel_c is not None else _kernel_py

KERNEL_NAME: str = _impl.KERNEL_NAME
StatsTree = _impl.StatsTree
from_pairs = _impl.from_pairs

EQUAL = _impl.EQUAL
PREDECESSOR = _impl.PREDECESSOR
SUCCESSOR = _impl.SUCCESSOR
MAX_TOTAL_WEIGHT = _impl.MAX_TOTAL_WEIGHT


def available_kernels() -> tuple[str, ...]:
    return ("python", "c") if _kernel_c is not None else ("python",)


def get_kernel(name: str | None = None) -> ModuleType:
    """Kernel module by name ('python' or 'c'); default is the selected one."""
    if name is None or name == KERNEL_NAME or name == "auto":
        return _impl
    if name == "python":
        return _kernel_py
    if name == "c":
        if _kernel_c is None:
            raise ValueError("compiled kernel is not available")
        return _kernel_c
    raise ValueError(f"unknown kernel {name!r}")
