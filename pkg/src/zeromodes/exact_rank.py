"""Exact rank of integer matrices.

The fast path eliminates modulo two large primes and accepts the result
only if both agree; otherwise a fraction-free (Bareiss) elimination over the
integers decides.
"""

from __future__ import annotations

import numpy as np

PRIMES = (2_147_483_647, 2_147_483_629)


def rank_mod_p(matrix, p: int) -> int:
    """Rank over GF(p), ``p < 2**31`` so products fit in int64."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if below.size:
            factors = a[below, c][:, None]
            a[np.ix_(below, np.arange(c, cols))] = (a[np.ix_(below, np.arange(c, cols))] - factors * a[r, c:]) % p
        r += 1
    return r


def rank_bareiss(matrix) -> int:
    """Rank over the rationals by fraction-free elimination on Python ints."""
    a = [[int(x) for x in row] for row in np.asarray(matrix)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def exact_rank(matrix) -> int:
    a = np.asarray(matrix)
    if a.size == 0:
        return 0
    ranks = {rank_mod_p(a, p) for p in PRIMES}
    if len(ranks) == 1:
        return ranks.pop()
    return rank_bareiss(a)
