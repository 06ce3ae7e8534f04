"""Selects the fixed-precision decode kernel at import time.

The compiled extension is preferred; set ``DALC_BACKEND=python`` to force
the pure-Python fallback (or ``compiled`` to fail loudly if the extension
is unavailable).
"""

from __future__ import annotations

import os


def _load():
    choice = os.environ.get("DALC_BACKEND", "auto")
    if choice not in {"auto", "compiled", "python"}:
        raise ValueError(f"DALC_BACKEND must be auto/compiled/python, got {choice!r}")
    if choice in {"auto", "compiled"}:
        try:
            from . import _kernel

            return _kernel
        except ImportError:
            if choice == "compiled":
                raise
    from . import _kernel_py

    return _kernel_py


kernel = _load()
BACKEND = kernel.BACKEND
