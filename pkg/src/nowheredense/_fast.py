"""Compiled kernels for large inputs.

Each kernel returns exactly what its pure-Python reference returns; the test
suite compares the two on random graphs.
"""

from __future__ import annotations

from itertools import chain

import numpy as np
from numba import njit


@njit(cache=True)
def _sift_up(heap, where, key, i):
    item = heap[i]
    k = key[item]
    while i > 0:
        parent = (i - 1) >> 1
        p = heap[parent]
        if key[p] <= k:
            break
        heap[i] = p
        where[p] = i
        i = parent
    heap[i] = item
    where[item] = i


@njit(cache=True)
def _sift_down(heap, where, key, i, size):
    item = heap[i]
    k = key[item]
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size and key[heap[child + 1]] < key[heap[child]]:
            child += 1
        c = heap[child]
        if key[c] >= k:
            break
        heap[i] = c
        where[c] = i
        i = child
    heap[i] = item
    where[item] = i


@njit(cache=True)
def _smallest_last_csr(indptr, indices):
    n = indptr.size - 1
    key = np.empty(n, dtype=np.int64)
    for v in range(n):
        key[v] = (indptr[v + 1] - indptr[v]) * n + v
    heap = np.arange(n, dtype=np.int64)
    where = np.arange(n, dtype=np.int64)
    for i in range(n // 2 - 1, -1, -1):
        _sift_down(heap, where, key, i, n)
    removed = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    size = n
    worst = 0
    for step in range(n):
        v = heap[0]
        size -= 1
        if size > 0:
            heap[0] = heap[size]
            where[heap[0]] = 0
            _sift_down(heap, where, key, 0, size)
        removed[v] = True
        order[step] = v
        d = key[v] // n
        if d > worst:
            worst = d
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if not removed[w]:
                key[w] -= n
                _sift_up(heap, where, key, where[w])
    return order, worst


def csr_from_lists(lists) -> tuple[np.ndarray, np.ndarray]:
    lengths = np.fromiter((len(x) for x in lists), dtype=np.int64, count=len(lists))
    indptr = np.zeros(len(lists) + 1, dtype=np.int64)
    np.cumsum(lengths, out=indptr[1:])
    indices = np.fromiter(chain.from_iterable(lists), dtype=np.int64, count=int(indptr[-1]))
    return indptr, indices


def smallest_last_removal_csr(indptr: np.ndarray, indices: np.ndarray) -> tuple[list[int], int]:
    """Same result as :func:`nowheredense.graph.smallest_last_removal` on CSR adjacency."""
    order, worst = _smallest_last_csr(indptr, indices)
    return order.tolist(), int(worst)


def warm_up() -> None:
    """Compile the kernels ahead of a timed run."""
    indptr, indices = csr_from_lists([(1,), (0,)])
    smallest_last_removal_csr(indptr, indices)
