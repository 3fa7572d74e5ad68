"""Complete bipartite graphs K_{p,q} with 0/1 edge labelings.

Part A vertices are rows ``0..p-1``, part B vertices are columns ``0..q-1``.
Edge ``(row, col)`` lives at linear position ``row * q + col``; every format
and canonical form in the package uses that convention.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    InvalidSwapError,
    MalformedInputError,
    ParseError,
    ScheduleVerificationError,
)


@dataclass(frozen=True)
class Shape:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise MalformedInputError(f"shape sizes must be integers, got {self.p!r}, {self.q!r}")
        if self.p < 1 or self.q < 1:
            raise MalformedInputError(f"shape sizes must be >= 1, got {self.p}x{self.q}")

    @property
    def n_edges(self) -> int:
        return self.p * self.q

    @property
    def n_vertices(self) -> int:
        return self.p + self.q

    def position(self, row: int, col: int) -> int:
        if not (0 <= row < self.p and 0 <= col < self.q):
            raise MalformedInputError(f"edge ({row}, {col}) outside K_{{{self.p},{self.q}}}")
        return row * self.q + col

    def __str__(self):
        return f"K_{{{self.p},{self.q}}}"


class EdgeRef(NamedTuple):
    row: int
    col: int


class Side(str, enum.Enum):
    A = "A"
    B = "B"


class VertexRef(NamedTuple):
    side: Side
    index: int


class VertexClass(enum.Enum):
    ZERO = "0"
    ONE = "1"
    UNLABELED = "-"


@dataclass(frozen=True)
class Labeling:
    """A total 0/1 assignment to the edges of ``shape`` (row-major)."""

    shape: Shape
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.shape.n_edges:
            raise MalformedInputError(
                f"labeling has {len(labels)} entries, {self.shape} needs {self.shape.n_edges}"
            )
        if any(x != 0 and x != 1 for x in labels):
            raise MalformedInputError("labels must be 0 or 1")

    @classmethod
    def zeros(cls, shape: Shape) -> "Labeling":
        return cls(shape, (0,) * shape.n_edges)

    @classmethod
    def from_ones(cls, shape: Shape, ones: Iterable[tuple[int, int]]) -> "Labeling":
        labels = [0] * shape.n_edges
        for row, col in ones:
            labels[shape.position(row, col)] = 1
        return cls(shape, labels)

    @classmethod
    def from_row_masks(cls, shape: Shape, rows: Sequence[int]) -> "Labeling":
        """Rows as integers whose most significant bit is column 0."""
        q = shape.q
        labels = []
        for mask in rows:
            labels.extend((mask >> (q - 1 - j)) & 1 for j in range(q))
        return cls(shape, labels)

    def label(self, row: int, col: int) -> int:
        return self.labels[self.shape.position(row, col)]

    def ones(self) -> list[EdgeRef]:
        q = self.shape.q
        return [EdgeRef(*divmod(i, q)) for i, x in enumerate(self.labels) if x]

    def row_masks(self) -> tuple[int, ...]:
        q = self.shape.q
        out = []
        for r in range(self.shape.p):
            mask = 0
            for x in self.labels[r * q:(r + 1) * q]:
                mask = (mask << 1) | x
            out.append(mask)
        return tuple(out)

    def with_labels(self, updates: dict[int, int]) -> "Labeling":
        labels = list(self.labels)
        for pos, value in updates.items():
            labels[pos] = value
        return Labeling(self.shape, labels)


@dataclass(frozen=True)
class Evaluation:
    e0: int
    e1: int
    v0: int
    v1: int
    unlabeled: int
    index: int
    edge_friendly: bool
    classes: tuple  # part A classes then part B classes
    deg1: tuple  # same vertex order as classes

    def to_dict(self) -> dict:
        return {
            "e0": self.e0,
            "e1": self.e1,
            "v0": self.v0,
            "v1": self.v1,
            "unlabeled": self.unlabeled,
            "index": self.index,
            "edge_friendly": self.edge_friendly,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def zero_vertices(self, p: int) -> set[VertexRef]:
        """Class-Zero vertices, given the part-A size ``p``."""
        out = set()
        for k, cls in enumerate(self.classes):
            if cls is VertexClass.ZERO:
                out.add(VertexRef(Side.A, k) if k < p else VertexRef(Side.B, k - p))
        return out


def _classify(ones: int, degree: int) -> VertexClass:
    twice = 2 * ones
    if twice > degree:
        return VertexClass.ONE
    if twice < degree:
        return VertexClass.ZERO
    return VertexClass.UNLABELED


def _check_belongs(shape: Shape, labeling: Labeling):
    if not isinstance(labeling, Labeling):
        raise MalformedInputError("expected a Labeling")
    if labeling.shape != shape or len(labeling.labels) != shape.n_edges:
        raise MalformedInputError(f"labeling for {labeling.shape} does not belong to {shape}")


def evaluate(shape: Shape, labeling: Labeling) -> Evaluation:
    _check_belongs(shape, labeling)
    p, q = shape.p, shape.q
    row_deg = [0] * p
    col_deg = [0] * q
    labels = labeling.labels
    pos = 0
    for r in range(p):
        for c in range(q):
            if labels[pos]:
                row_deg[r] += 1
                col_deg[c] += 1
            pos += 1
    e1 = sum(row_deg)
    e0 = shape.n_edges - e1
    classes = tuple(_classify(d, q) for d in row_deg) + tuple(_classify(d, p) for d in col_deg)
    v0 = sum(1 for c in classes if c is VertexClass.ZERO)
    v1 = sum(1 for c in classes if c is VertexClass.ONE)
    return Evaluation(
        e0=e0,
        e1=e1,
        v0=v0,
        v1=v1,
        unlabeled=len(classes) - v0 - v1,
        index=abs(v0 - v1),
        edge_friendly=abs(e0 - e1) <= 1,
        classes=classes,
        deg1=tuple(row_deg) + tuple(col_deg),
    )


def vertex_class(shape: Shape, labeling: Labeling, v: VertexRef) -> VertexClass:
    _check_belongs(shape, labeling)
    side, index = v
    side = Side(side)
    labels = labeling.labels
    if side is Side.A:
        if not 0 <= index < shape.p:
            raise MalformedInputError(f"vertex A{index} out of range")
        ones = sum(labels[index * shape.q:(index + 1) * shape.q])
        return _classify(ones, shape.q)
    if not 0 <= index < shape.q:
        raise MalformedInputError(f"vertex B{index} out of range")
    ones = sum(labels[index::shape.q])
    return _classify(ones, shape.p)


# -- swaps and schedules ---------------------------------------------------


class SwapStep(NamedTuple):
    edge_a: EdgeRef
    edge_b: EdgeRef

    def shared_vertex(self) -> VertexRef:
        a, b = EdgeRef(*self.edge_a), EdgeRef(*self.edge_b)
        if a == b:
            raise InvalidSwapError(f"swap names the same edge twice: {a}")
        if a.row == b.row:
            return VertexRef(Side.A, a.row)
        if a.col == b.col:
            return VertexRef(Side.B, a.col)
        raise InvalidSwapError(f"edges {a} and {b} share no endpoint")


class Checkpoint(NamedTuple):
    prefix: int
    expected_index: int


@dataclass(frozen=True)
class Schedule:
    steps: tuple = ()
    checkpoints: tuple = ()

    def __post_init__(self):
        steps = tuple(SwapStep(EdgeRef(*s[0]), EdgeRef(*s[1])) for s in self.steps)
        checkpoints = tuple(Checkpoint(*c) for c in self.checkpoints)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "checkpoints", checkpoints)
        last = -1
        for cp in checkpoints:
            if cp.prefix <= last or cp.prefix > len(steps):
                raise MalformedInputError(f"checkpoint prefixes must increase within 0..{len(steps)}")
            last = cp.prefix
        for prev, cur in zip(checkpoints, checkpoints[1:]):
            if cur.expected_index != prev.expected_index - 2:
                raise MalformedInputError("checkpoint indices must decrease by exactly 2")


def apply_swap(labeling: Labeling, step: SwapStep) -> Labeling:
    step = SwapStep(EdgeRef(*step[0]), EdgeRef(*step[1]))
    step.shared_vertex()
    shape = labeling.shape
    pa = shape.position(*step.edge_a)
    pb = shape.position(*step.edge_b)
    la, lb = labeling.labels[pa], labeling.labels[pb]
    if la == lb:
        raise InvalidSwapError(f"edges {tuple(step.edge_a)} and {tuple(step.edge_b)} both carry {la}")
    return labeling.with_labels({pa: lb, pb: la})


def apply_schedule(labeling: Labeling, schedule: Schedule) -> list:
    """Run ``schedule`` and return ``(checkpoint, labeling, evaluation)`` triples.

    Swaps never change the edge counts, so friendliness of every
    intermediate labeling follows from friendliness of the start.
    """
    shape = labeling.shape
    start = evaluate(shape, labeling)
    if not start.edge_friendly:
        raise ScheduleVerificationError("starting labeling is not edge-friendly", 0)
    if not schedule.checkpoints:
        current = labeling
        for k, step in enumerate(schedule.steps, 1):
            try:
                current = apply_swap(current, step)
            except InvalidSwapError as exc:
                raise ScheduleVerificationError(str(exc), k) from exc
        ev = evaluate(shape, current)
        return [(Checkpoint(len(schedule.steps), ev.index), current, ev)]

    out = []
    current = labeling
    done = 0
    for cp in schedule.checkpoints:
        while done < cp.prefix:
            try:
                current = apply_swap(current, schedule.steps[done])
            except InvalidSwapError as exc:
                raise ScheduleVerificationError(str(exc), done + 1) from exc
            done += 1
        ev = evaluate(shape, current)
        if ev.index != cp.expected_index:
            raise ScheduleVerificationError(
                f"expected index {cp.expected_index}, evaluator gives {ev.index}", cp.prefix
            )
        if not ev.edge_friendly:
            raise ScheduleVerificationError("labeling is not edge-friendly", cp.prefix)
        out.append((cp, current, ev))
    return out


def complement(labeling: Labeling) -> Labeling:
    return Labeling(labeling.shape, tuple(1 - x for x in labeling.labels))


# -- text format -------------------------------------------------------------


def serialize_labeling(shape: Shape, labeling: Labeling) -> str:
    _check_belongs(shape, labeling)
    q = shape.q
    digits = "".join("1" if x else "0" for x in labeling.labels)
    lines = [f"{shape.p} {shape.q}"]
    lines.extend(digits[r * q:(r + 1) * q] for r in range(shape.p))
    return "\n".join(lines) + "\n"


def parse_labeling(text: str) -> tuple[Shape, Labeling]:
    """Parse the ``p q`` header plus ``p`` rows of ``q`` binary digits.

    Trailing whitespace, CRLF line ends, a missing final newline and
    trailing blank lines are tolerated; anything else is a ParseError.
    """
    lines = [ln.rstrip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise ParseError(f"expected 'p q', got {lines[0]!r}", 1)
    p, q = int(header[0]), int(header[1])
    if p < 1 or q < 1:
        raise ParseError(f"dimensions must be positive, got {p} {q}", 1)
    body = lines[1:]
    if len(body) != p:
        line = min(len(body), p) + 2
        raise ParseError(f"expected {p} rows, found {len(body)}", line)
    labels = []
    for k, row in enumerate(body, start=2):
        if len(row) != q:
            raise ParseError(f"expected {q} digits, found {len(row)}", k)
        bad = [ch for ch in row if ch not in "01"]
        if bad:
            raise ParseError(f"invalid character {bad[0]!r}", k)
        labels.extend(1 if ch == "1" else 0 for ch in row)
    shape = Shape(p, q)
    return shape, Labeling(shape, labels)
