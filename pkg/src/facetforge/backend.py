"""Scoring kernel selection.

Prefers the compiled extension, falls back to the numpy implementation
when the extension was not built. Set FACETFORGE_PURE_PYTHON=1 to force
the fallback (used by the benchmark to compare both).
"""

from __future__ import annotations

import os

if os.environ.get("FACETFORGE_PURE_PYTHON") == "1":
    from . import _scoring_py as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _scoring as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _scoring_py as _impl

        BACKEND = "numpy"

scatter_max = _impl.scatter_max
