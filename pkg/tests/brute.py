"""Reference implementations written straight from the definitions.

Nothing here touches ebilab internals, so the tests can compare against
code paths that share no logic with the package.
"""

import itertools


def naive_eval(p, q, labels):
    """(e0, e1, v0, v1, unlabeled) for a row-major 0/1 sequence."""
    grid = [labels[r * q:(r + 1) * q] for r in range(p)]
    e1 = sum(labels)
    e0 = len(labels) - e1
    v = {0: 0, 1: 0, None: 0}
    for row in grid:
        ones = sum(row)
        v[1 if ones > q - ones else 0 if ones < q - ones else None] += 1
    for col in zip(*grid):
        ones = sum(col)
        v[1 if ones > p - ones else 0 if ones < p - ones else None] += 1
    return e0, e1, v[0], v[1], v[None]


def naive_index(p, q, labels):
    _, _, v0, v1, _ = naive_eval(p, q, labels)
    return abs(v0 - v1)


def brute_ebi(p, q):
    """Every index of an edge-friendly labeling, by trying all subsets of 1-edges."""
    n = p * q
    found = set()
    for k in {n // 2, (n + 1) // 2}:
        for ones in itertools.combinations(range(n), k):
            labels = [0] * n
            for i in ones:
                labels[i] = 1
            found.add(naive_index(p, q, labels))
    return found
