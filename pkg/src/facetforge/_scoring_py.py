"""NumPy fallback for the scoring kernel.

Numerically identical to the compiled version in _scoring.pyx: both
compute factor * degree per posting and fold with max, so backends can
be swapped without changing any score bit.
"""

from __future__ import annotations

import numpy as np


def scatter_max(scores, doc_idx, degrees, factor):
    np.maximum.at(scores, doc_idx, factor * degrees)
