# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled scoring kernel: posting-list max accumulation.

The search hot loop folds one expanded query class into the per-document
facet score array. Doing this in C keeps large corpora inside the
latency budget; facetforge._scoring_py holds the interchangeable numpy
fallback.
"""


def scatter_max(double[::1] scores, const int[::1] doc_idx,
                const double[::1] degrees, double factor):
    """scores[doc_idx[i]] = max(scores[doc_idx[i]], factor * degrees[i])"""
    cdef Py_ssize_t i, n = doc_idx.shape[0]
    cdef int j
    cdef double value
    for i in range(n):
        value = factor * degrees[i]
        j = doc_idx[i]
        if value > scores[j]:
            scores[j] = value
