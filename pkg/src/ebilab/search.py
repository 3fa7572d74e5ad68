"""Exhaustive and randomized search for edge-balanced index sets.

Plain mode walks every edge-friendly labeling. The last ``TAIL_BITS`` edge
positions are tabulated once with numpy, and each assignment of the
leading positions is scored against the whole table in one vectorized
step. Symmetry mode generates only labelings that equal their own
canonical form under row and column permutations.

Work is split into shards keyed by the first 1-edge position (plain) or
the first row (symmetry). Shards merge by set union plus
min-witness, so the result does not depend on chunking or completion
order.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import Labeling, Shape, evaluate, serialize_labeling
from .errors import MalformedInputError, PartialResultError, ShapeTooLargeError

PLAIN_EDGE_LIMIT = 25
SYMMETRY_EDGE_LIMIT = 35
TAIL_BITS = 16


@dataclass(frozen=True)
class SearchOptions:
    use_symmetry: bool = False
    worker_chunks: int = 1
    budget: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.worker_chunks, int) or self.worker_chunks < 1:
            raise MalformedInputError("worker_chunks must be a positive integer")
        if not isinstance(self.budget, int) or self.budget < 1:
            raise MalformedInputError("budget must be >= 1")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise MalformedInputError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class EbiResult:
    shape: Shape
    achieved: tuple
    exhaustive: bool
    witnesses: dict = field(hash=False)
    examined: int = 0
    # only for 1-edge shapes: the set when labelings must also be surjective
    surjective_achieved: tuple | None = None

    def to_dict(self) -> dict:
        out = {
            "shape": [self.shape.p, self.shape.q],
            "achieved": list(self.achieved),
            "exhaustive": self.exhaustive,
            "examined": self.examined,
            "witnesses": {
                str(k): serialize_labeling(self.shape, self.witnesses[k]) for k in sorted(self.witnesses)
            },
        }
        if self.surjective_achieved is not None:
            out["surjective_achieved"] = list(self.surjective_achieved)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# -- canonical forms -----------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


def canonical_rows(rows, q: int) -> tuple:
    """Lexicographically smallest row-major form under row and column permutations.

    Rows are q-bit integers with column 0 as the most significant bit. The
    search fixes rows one at a time. The columns are an ordered partition
    into cells, and a row reads as zeros-then-ones inside each cell. Every
    distinct row that attains the minimal reading at the current depth is
    tried, and prefixes already worse than the best complete form are
    pruned.
    """
    best = None

    def reading(r, cells):
        val = 0
        for cell, size in cells:
            val = (val << size) | ((1 << _popcount(r & cell)) - 1)
        return val

    def rec(remaining, cells, prefix):
        nonlocal best
        if not remaining:
            if best is None or prefix < best:
                best = prefix
            return
        readings = {r: reading(r, cells) for r in set(remaining)}
        low = min(readings.values())
        depth = len(prefix)
        if best is not None and prefix + (low,) > best[:depth + 1]:
            return
        for r in sorted(r for r, v in readings.items() if v == low):
            split = []
            for cell, size in cells:
                zeros, ones = cell & ~r, cell & r
                if zeros:
                    split.append((zeros, _popcount(zeros)))
                if ones:
                    split.append((ones, _popcount(ones)))
            rest = list(remaining)
            rest.remove(r)
            rec(tuple(rest), split, prefix + (low,))

    rec(tuple(rows), [((1 << q) - 1, q)], ())
    return best


def canonical_key(shape: Shape, labeling: Labeling) -> bytes:
    if labeling.shape != shape:
        raise MalformedInputError("labeling does not belong to shape")
    width = (shape.q + 7) // 8
    rows = canonical_rows(labeling.row_masks(), shape.q)
    return shape.p.to_bytes(2, "big") + shape.q.to_bytes(2, "big") + b"".join(
        r.to_bytes(width, "big") for r in rows
    )


def canonical_labeling(shape: Shape, labeling: Labeling) -> Labeling:
    return Labeling.from_row_masks(shape, canonical_rows(labeling.row_masks(), shape.q))


# -- plain enumeration -----------------------------------------------------------


@lru_cache(maxsize=4)
def _tail_table(p, q, tail):
    head = p * q - tail
    ids = np.arange(1 << tail, dtype=np.int64)
    bits = ((ids[:, None] >> np.arange(tail - 1, -1, -1)) & 1).astype(np.int16)
    pos = head + np.arange(tail)
    row_sel = np.zeros((tail, p), dtype=np.int16)
    row_sel[np.arange(tail), pos // q] = 1
    col_sel = np.zeros((tail, q), dtype=np.int16)
    col_sel[np.arange(tail), pos % q] = 1
    weight = bits.sum(axis=1)
    by_weight = {w: np.flatnonzero(weight == w) for w in range(tail + 1)}
    return bits @ row_sel, bits @ col_sel, by_weight


def _plain_shards(p, q):
    return [-1] + list(range(p * q))


def _scan_plain(p, q, weights, shards, deadline):
    tail = min(p * q, TAIL_BITS)
    head = p * q - tail
    t_rows, t_cols, by_weight = _tail_table(p, q, tail)
    best = {}
    examined = 0
    for s in shards:
        if s == -1:
            heads, window = [0], (0, 1)
        elif s < head:
            heads, window = range(1 << (head - 1 - s), 1 << (head - s)), None
        else:
            k = s - head
            heads, window = [0], (1 << (tail - 1 - k), 1 << (tail - k))
        for h in heads:
            h_rows = np.zeros(p, dtype=np.int16)
            h_cols = np.zeros(q, dtype=np.int16)
            hw = 0
            for pos in range(head):
                if (h >> (head - 1 - pos)) & 1:
                    h_rows[pos // q] += 1
                    h_cols[pos % q] += 1
                    hw += 1
            for w in weights:
                tw = w - hw
                if not 0 <= tw <= tail:
                    continue
                sel = by_weight[tw]
                if window is not None:
                    sel = sel[(sel >= window[0]) & (sel < window[1])]
                if not sel.size:
                    continue
                score = np.sign(2 * (t_rows[sel] + h_rows) - q).sum(axis=1)
                score += np.sign(2 * (t_cols[sel] + h_cols) - p).sum(axis=1)
                values, first = np.unique(np.abs(score), return_index=True)
                for idx, f in zip(values.tolist(), first.tolist()):
                    code = (h << tail) | int(sel[f])
                    if idx not in best or code < best[idx]:
                        best[idx] = code
                examined += int(sel.size)
            if deadline is not None and time.time() > deadline:
                return best, examined, False
    return best, examined, True


# -- orderly generation ---------------------------------------------------------


def _sorted_matrices(p, q, weight, first_row=None):
    """Matrices with nondecreasing rows and nondecreasing columns.

    Columns tied so far form blocks; inside a block the next row must read
    zeros then ones. Every canonical form has this shape.
    """

    def rec(rows, blocks, prev, remaining):
        left = p - len(rows)
        if left == 0:
            if remaining == 0:
                yield tuple(rows)
            return
        if remaining < 0 or remaining > left * q:
            return
        options = [(0, 0, [])]
        for s, e in blocks:
            grown = []
            for val, wt, nb in options:
                for k in range(e - s + 1):
                    ones = ((1 << k) - 1) << (q - e)
                    parts = [b for b in ((s, e - k), (e - k, e)) if b[1] > b[0]]
                    grown.append((val | ones, wt + k, nb + parts))
            options = grown
        for val, wt, nb in sorted(options):
            if val < prev or (not rows and first_row is not None and val != first_row):
                continue
            rows.append(val)
            yield from rec(rows, nb, val, remaining - wt)
            rows.pop()

    yield from rec([], [(0, q)], 0, weight)


def _symmetry_shards(p, q):
    return [(1 << k) - 1 for k in range(q + 1)]


def _scan_symmetric(p, q, weights, shards, deadline):
    best = {}
    examined = 0
    cols_bits = [q - 1 - j for j in range(q)]
    for first in shards:
        for w in weights:
            for count, rows in enumerate(_sorted_matrices(p, q, w, first)):
                if canonical_rows(rows, q) != rows:
                    continue
                examined += 1
                score = sum((2 * _popcount(r) > q) - (2 * _popcount(r) < q) for r in rows)
                for b in cols_bits:
                    ones = sum((r >> b) & 1 for r in rows)
                    score += (2 * ones > p) - (2 * ones < p)
                idx = abs(score)
                code = 0
                for r in rows:
                    code = (code << q) | r
                if idx not in best or code < best[idx]:
                    best[idx] = code
                if deadline is not None and count % 512 == 0 and time.time() > deadline:
                    return best, examined, False
    return best, examined, True


# -- driver ---------------------------------------------------------------------------


def _friendly_weights(n_edges, fold_complement):
    if n_edges % 2 == 0:
        return (n_edges // 2,)
    if fold_complement:
        return ((n_edges + 1) // 2,)
    return (n_edges // 2, (n_edges + 1) // 2)


def _scan(kind, p, q, weights, shards, deadline):
    scan = _scan_symmetric if kind == "symmetry" else _scan_plain
    return scan(p, q, weights, shards, deadline)


def ebi_exhaustive(
    shape: Shape,
    options: SearchOptions | None = None,
    *,
    fold_complement: bool = True,
    max_edges: int | None = None,
    timeout: float | None = None,
) -> EbiResult:
    """Every index reached by an edge-friendly labeling of ``shape``.

    For an odd edge count only the heavier weight is enumerated unless
    ``fold_complement`` is False: complementing maps it onto the lighter
    weight and keeps the index. Witnesses are the lexicographically
    smallest serialized labeling per index among those enumerated.
    """
    options = options or SearchOptions()
    p, q = shape.p, shape.q
    limit = max_edges or (SYMMETRY_EDGE_LIMIT if options.use_symmetry else PLAIN_EDGE_LIMIT)
    if shape.n_edges > limit:
        hint = " or enable use_symmetry" if not options.use_symmetry and shape.n_edges <= SYMMETRY_EDGE_LIMIT else ""
        raise ShapeTooLargeError(
            f"{shape} has {shape.n_edges} edges, above the exhaustive limit {limit}; use local_search{hint}"
        )
    kind = "symmetry" if options.use_symmetry else "plain"
    weights = _friendly_weights(shape.n_edges, fold_complement)
    shards = _symmetry_shards(p, q) if options.use_symmetry else _plain_shards(p, q)
    groups = [shards[k::options.worker_chunks] for k in range(options.worker_chunks)]
    groups = [g for g in groups if g]
    deadline = None if timeout is None else time.time() + timeout

    if len(groups) == 1:
        parts = [_scan(kind, p, q, weights, groups[0], deadline)]
    else:
        workers = min(len(groups), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan, kind, p, q, weights, g, deadline) for g in groups]
            parts = [f.result() for f in futures]

    best = {}
    examined = 0
    complete = True
    for part_best, part_examined, part_complete in parts:
        examined += part_examined
        complete = complete and part_complete
        for idx, code in part_best.items():
            if idx not in best or code < best[idx]:
                best[idx] = code

    witnesses = {idx: _decode(shape, code) for idx, code in sorted(best.items())}
    result = EbiResult(
        shape=shape,
        achieved=tuple(sorted(best)),
        exhaustive=complete,
        witnesses=witnesses,
        examined=examined,
        surjective_achieved=() if shape.n_edges == 1 else None,
    )
    if not complete:
        raise PartialResultError(f"exhaustive search of {shape} stopped after {examined} labelings", result)
    return result


def _decode(shape, code):
    n = shape.n_edges
    return Labeling(shape, [(code >> (n - 1 - i)) & 1 for i in range(n)])


# -- local search -------------------------------------------------------------------


def local_search(shape: Shape, target_index: int, options: SearchOptions | None = None) -> Labeling | None:
    """Hill-climb towards ``target_index`` using label swaps along shared vertices.

    Sideways moves are accepted, and a random restart follows a long run
    without improvement. ``options.budget`` caps the number of candidate
    moves scored. Returns None when the budget runs out.
    """
    options = options or SearchOptions()
    if not isinstance(target_index, int) or target_index < 0:
        raise MalformedInputError("target_index must be a non-negative integer")
    p, q = shape.p, shape.q
    n = shape.n_edges
    if target_index > p + q:
        return None
    rng = random.Random(options.seed)
    patience = 40 * n + 200
    weights = _friendly_weights(n, fold_complement=False)

    def sign(ones, degree):
        return (2 * ones > degree) - (2 * ones < degree)

    examined = 0
    while examined < options.budget:
        examined += 1  # a restart counts against the budget
        w = rng.choice(weights)
        ones_pos = rng.sample(range(n), w)
        labels = bytearray(n)
        for pos in ones_pos:
            labels[pos] = 1
        row_deg = [sum(labels[r * q:(r + 1) * q]) for r in range(p)]
        col_deg = [sum(labels[c::q]) for c in range(q)]
        score = sum(sign(d, q) for d in row_deg) + sum(sign(d, p) for d in col_deg)
        dist = abs(abs(score) - target_index)
        stall = 0
        while examined < options.budget and stall < patience:
            if dist == 0:
                found = Labeling(shape, labels)
                ev = evaluate(shape, found)
                if ev.edge_friendly and ev.index == target_index:
                    return found
                break
            if not ones_pos or w == n:
                break
            slot = rng.randrange(len(ones_pos))
            pos1 = ones_pos[slot]
            r, c = divmod(pos1, q)
            if rng.random() < 0.5:
                c2 = rng.randrange(q)
                pos2 = r * q + c2
                if labels[pos2]:
                    stall += 1
                    continue
                delta = (
                    sign(col_deg[c] - 1, p) - sign(col_deg[c], p) + sign(col_deg[c2] + 1, p) - sign(col_deg[c2], p)
                )
                move = ("col", c, c2)
            else:
                r2 = rng.randrange(p)
                pos2 = r2 * q + c
                if labels[pos2]:
                    stall += 1
                    continue
                delta = (
                    sign(row_deg[r] - 1, q) - sign(row_deg[r], q) + sign(row_deg[r2] + 1, q) - sign(row_deg[r2], q)
                )
                move = ("row", r, r2)
            examined += 1
            new_dist = abs(abs(score + delta) - target_index)
            if new_dist > dist:
                stall += 1
                continue
            stall = 0 if new_dist < dist else stall + 1
            labels[pos1], labels[pos2] = 0, 1
            ones_pos[slot] = pos2
            kind, x, y = move
            if kind == "col":
                col_deg[x] -= 1
                col_deg[y] += 1
            else:
                row_deg[x] -= 1
                row_deg[y] += 1
            score += delta
            dist = new_dist
    return None
