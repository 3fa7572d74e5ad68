"""Explicit edge-friendly labelings of K_{n-2a, n} for odd n.

Vertex naming used throughout (0-based rows/columns of the core model):

* two-diff max   (K_{n-2,n}): row 0 = u, rows 1..n-3 = u_1..u_{n-3};
  col 0 = v, col 1 = v', cols 2..n-1 = v_1..v_{n-2}.
* two-diff base  (K_{n-2,n}): rows as above; cols 0,1,2 = v, v', v'';
  cols 3..n-1 = v_1..v_{n-3}.
* general        (K_{n-2a,n}): row 0 = u, rows 1..n-2a-1 = u_1..;
  cols 0..c-1 = v^1..v^c, cols c..n-1 = v_1..v_{n-c}.

Every builder re-evaluates its output and raises ConstructionError when a
count identity, a class assignment or the resulting index is off.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .core import (
    Checkpoint,
    EdgeRef,
    Labeling,
    Schedule,
    Shape,
    Side,
    SwapStep,
    VertexClass,
    VertexRef,
    apply_schedule,
    evaluate,
)
from .errors import (
    BudgetExceededError,
    ConstructionError,
    InfeasibleParametersError,
    ParameterError,
)

log = logging.getLogger(__name__)

FAMILIES = ("two-diff", "general", "square-odd", "square-even")


@dataclass(frozen=True)
class TheoremParams:
    n: int
    a: int = 1
    c: int | None = None

    def __post_init__(self):
        _check_n(self.n)
        if not isinstance(self.a, int) or self.a < 1 or 4 * self.a > self.n - 3:
            raise ParameterError(f"a must satisfy 1 <= a <= (n-3)/4, got a={self.a}, n={self.n}")
        if self.c is not None and not (isinstance(self.c, int) and 2 <= self.c <= 2 * self.a + 1):
            raise ParameterError(f"c must satisfy 2 <= c <= 2a+1, got c={self.c}, a={self.a}")


@dataclass(frozen=True)
class DensePlan:
    dense_A: frozenset
    dense_B: frozenset

    def vertices(self) -> set[VertexRef]:
        return {VertexRef(Side.A, i) for i in self.dense_A} | {VertexRef(Side.B, j) for j in self.dense_B}


@dataclass(frozen=True)
class CyclicWindow:
    """``length`` consecutive positions of a cyclically ordered sparse part.

    ``anchor`` is the position paired with the window's owner; the window
    starts ``start_offset`` places after it.
    """

    anchor: int
    start_offset: int
    length: int

    def members(self, size: int) -> list[int]:
        if not 1 <= self.length <= size:
            raise ConstructionError(f"window of length {self.length} does not fit a part of size {size}")
        start = self.anchor + self.start_offset
        return [(start + k) % size for k in range(self.length)]


@dataclass(frozen=True)
class KNResult:
    K: int
    N: int

    @property
    def extra(self) -> int:
        """Number of sparse-B vertices that receive the longer window."""
        return max(0, -self.N // 2)


@dataclass(frozen=True)
class BoundReport:
    e1_min: int
    e0_max: int
    gap: int
    feasible: bool


@dataclass(frozen=True)
class ClaimedSet:
    family: str
    params: dict = field(hash=False)
    indices: tuple


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or n % 2 == 0 or n <= 5:
        raise ParameterError(f"n must be an odd integer > 5, got {n!r}")


def _verify(cond, message):
    if not cond:
        raise ConstructionError(message)


# -- two-diff family: K_{n-2, n} --------------------------------------------


def theorem1_max_windows(n: int) -> list[CyclicWindow]:
    """Windows of sparse-A positions receiving 1-edges from v_1..v_{n-2}.

    The first (n-3)/2 windows have (n+1)/2 members and the rest (n-1)/2;
    this is the assignment for which e(0) - e(1) = -1 before the hub edges.
    """
    _check_n(n)
    m = n - 3
    out = []
    for i in range(1, n - 1):
        length = (n + 1) // 2 if i <= (n - 3) // 2 else (n - 1) // 2
        out.append(CyclicWindow(anchor=(i - 1) % m, start_offset=0, length=length))
    return out


def build_theorem1_max(n: int) -> Labeling:
    _check_n(n)
    shape = Shape(n - 2, n)
    m = n - 3
    ones = []
    for i, window in enumerate(theorem1_max_windows(n), start=1):
        col = i + 1
        ones.extend((1 + pos, col) for pos in window.members(m))
    # hub edges (u, v) and (u, v') stay 0
    labeling = Labeling.from_ones(shape, ones)

    e1 = len(ones)
    e0 = shape.n_edges - 2 - e1
    _verify(e0 - e1 == -1, f"pre-hub e0-e1 = {e0 - e1}, expected -1")
    _verify(e0 == 2 * (n - 3) + (n - 3) ** 2 // 2, f"pre-hub e0 = {e0} breaks the count identity")

    ev = evaluate(shape, labeling)
    _verify(ev.edge_friendly, "two-diff max labeling is not edge-friendly")
    _verify(ev.zero_vertices(shape.p) == dense_plan("two-diff", n).vertices(), "zero class differs from {u, v, v'}")
    _verify(ev.unlabeled == 0 and ev.index == 2 * n - 8, f"index {ev.index}, expected {2 * n - 8}")
    return labeling


def build_theorem1_base(n: int) -> Labeling:
    """Four dense vertices u, v, v', v''; every u_i sends (n+1)/2 ones along V_i."""
    _check_n(n)
    shape = Shape(n - 2, n)
    m = n - 3
    half = (n + 1) // 2
    ones = []
    for i in range(1, n - 2):
        window = CyclicWindow(anchor=i - 1, start_offset=0, length=half)
        ones.extend((i, 3 + pos) for pos in window.members(m))
    pre_e1 = len(ones)
    pre_e0 = shape.n_edges - 3 - pre_e1
    _verify(pre_e0 == pre_e1 == (n + 1) * (n - 3) // 2, "base count identity e(0) = e(1) = (n+1)(n-3)/2 fails")
    ones.append((0, 2))  # (u, v'') = 1; (u, v) and (u, v') stay 0
    labeling = Labeling.from_ones(shape, ones)

    ev = evaluate(shape, labeling)
    _verify(ev.edge_friendly, "two-diff base labeling is not edge-friendly")
    _verify(all(d == half for d in ev.deg1[1:shape.p]), "sparse A vertex without (n+1)/2 ones")
    _verify(ev.v0 == 4 and ev.index == 2 * n - 10, f"base index {ev.index}, expected {2 * n - 10}")
    return labeling


def schedule_theorem1(n: int) -> Schedule:
    """Swaps taking the base labeling from index 2n-10 down to 0.

    v_2..v_{(n-1)/2} each lose two 1-edges (one to v, one to v'), then
    u_{(n+1)/2}..u_{n-4} each lose one 1-edge to u.
    """
    _check_n(n)

    def col(i):
        return i + 2

    steps = []
    checkpoints = []
    index = 2 * n - 10
    for k in range(2, (n - 1) // 2 + 1):
        steps.append(SwapStep(EdgeRef(k, 0), EdgeRef(k, col(k))))
        steps.append(SwapStep(EdgeRef(k - 1, 1), EdgeRef(k - 1, col(k))))
        index -= 2
        checkpoints.append(Checkpoint(len(steps), index))
    for k in range((n + 1) // 2, n - 3):
        steps.append(SwapStep(EdgeRef(0, col(k)), EdgeRef(k, col(k))))
        index -= 2
        checkpoints.append(Checkpoint(len(steps), index))
    _verify(len(checkpoints) == n - 5 and index == 0, "two-diff schedule does not reach index 0")
    return Schedule(tuple(steps), tuple(checkpoints))


def build_two_dense(n: int) -> Labeling:
    """K_{n-2,n} with only u and v dense; index 2n-6.

    Each of the n-1 sparse B vertices takes (n-1)/2 ones, windows laid end
    to end over the n-3 sparse A vertices. This attains one more index
    step than the four- and three-dense constructions.
    """
    if not isinstance(n, int) or n % 2 == 0 or n < 5:
        raise ParameterError(f"n must be an odd integer >= 5, got {n!r}")
    shape = Shape(n - 2, n)
    m = n - 3
    length = (n - 1) // 2
    ones = []
    start = 0
    for j in range(1, n):
        window = CyclicWindow(anchor=(j - 1) % m, start_offset=start - (j - 1) % m, length=length)
        ones.extend((1 + pos, j) for pos in window.members(m))
        start = (start + length) % m
    labeling = Labeling.from_ones(shape, ones)
    ev = evaluate(shape, labeling)
    _verify(ev.edge_friendly and ev.v0 == 2, "two-dense labeling failed its checks")
    _verify(ev.index == 2 * n - 6, f"two-dense index {ev.index}, expected {2 * n - 6}")
    return labeling


# -- general family: K_{n-2a, n} --------------------------------------------


def compute_KN(n: int, a: int, c: int) -> KNResult:
    TheoremParams(n, a, c)
    cap = (n - 2 * a - 3) // 2
    n0 = 2 * a * c - n * (c - 1)
    if n0 > 1:
        raise InfeasibleParametersError(f"N = {n0} > 1 already at K = 0 for n={n}, a={a}, c={c}")
    K = min(cap, (1 - n0) // (2 * (n - c)))
    return KNResult(K=K, N=n0 + 2 * K * (n - c))


def theorem2_windows(n: int, a: int, c: int) -> list[CyclicWindow]:
    """Windows for v_1..v_{n-c}, laid end to end around the sparse A cycle.

    Back-to-back placement keeps every sparse A 1-degree within one of the
    mean; anchoring each window at u_i instead can leave a sparse A vertex
    short of its majority (already at n=11, a=2, c=2).
    """
    kn = compute_KN(n, a, c)
    m = n - 2 * a - 1
    base = (n - 2 * a + 1) // 2 + kn.K
    out = []
    start = 0
    for i in range(1, n - c + 1):
        length = base + 1 if i <= kn.extra else base
        anchor = (i - 1) % m
        out.append(CyclicWindow(anchor=anchor, start_offset=start - anchor, length=length))
        start = (start + length) % m
    return out


def build_theorem2(n: int, a: int, c: int) -> Labeling:
    params = TheoremParams(n, a, c)
    kn = compute_KN(n, a, c)
    _verify(4 * a <= 2 * n - 3, "window feasibility a <= n/2 - 3/4 fails")
    shape = Shape(n - 2 * a, n)
    m = n - 2 * a - 1
    windows = theorem2_windows(n, a, c)
    ones = []
    for i, window in enumerate(windows, start=1):
        _verify(window.length <= m, f"window of v_{i} exceeds the sparse A part")
        ones.extend((1 + pos, c + i - 1) for pos in window.members(m))
    zeros_on_hub = c // 2  # (c-1)/2 for odd c, c/2 for even c
    hub_ones = [(0, j) for j in range(zeros_on_hub, c)]
    labeling = Labeling.from_ones(shape, ones + hub_ones)

    ev = evaluate(shape, labeling)
    if not ev.edge_friendly:
        # flip one hub edge towards balance
        col = zeros_on_hub if ev.e1 > ev.e0 else zeros_on_hub - 1
        pos = shape.position(0, col)
        labeling = labeling.with_labels({pos: 1 - labeling.labels[pos]})
        log.warning("hub edge (u, v^%d) flipped to restore edge-friendliness for %s", col + 1, params)
        ev = evaluate(shape, labeling)
    _verify(ev.edge_friendly, f"general labeling for {params} is not edge-friendly")

    plan = dense_plan("general", n, a, c)
    _verify(ev.zero_vertices(shape.p) == plan.vertices(), f"zero class differs from the dense set for {params}")
    _verify(ev.v0 == c + 1 and ev.v1 == 2 * n - 2 * a - c - 1, f"class counts off for {params}")
    _verify(ev.index == 2 * n - 2 * a - 2 * (c + 1), f"index {ev.index} off for {params}")
    high = (n - 2 * a + 3) // 2 + kn.K
    for i in range(1, n - c + 1):
        expected = high if i <= kn.extra else high - 1
        _verify(ev.deg1[shape.p + c + i - 1] == expected, f"deg1(v_{i}) != {expected} for {params}")
    return labeling


def schedule_theorem2(n: int, a: int) -> Schedule:
    """Swaps turning v_1..v_{n-3a-2} from One to Zero in the c = 2a+1 labeling.

    v_i needs K+2 swaps when it carries the longer window, otherwise K+1.
    Each swap moves a 1 from (u_j, v_i) onto (v^s, u_j), with v^s running
    cyclically through v^1, v^2, ... while v^s can still absorb a 1 and
    stay Zero. Once no dense vertex has room, the 1 goes to one of the
    v_l that is never flipped; those are class One and stay One.
    """
    TheoremParams(n, a)
    c = 2 * a + 1
    kn = compute_KN(n, a, c)
    flips = n - 3 * a - 2
    base = build_theorem2(n, a, c)
    shape = base.shape
    p, q = shape.p, shape.q
    m = n - 2 * a - 1
    labels = list(base.labels)
    windows = theorem2_windows(n, a, c)
    threshold = (n - 2 * a - 1) // 2
    # ones a dense column may still take while its 1-degree stays <= threshold
    room = [threshold - sum(labels[r * q + j] for r in range(p)) for j in range(c)]
    sinks = list(range(c + flips, q))

    def free_row(rows, col, target):
        return next((r for r in rows if labels[r * q + col] == 1 and labels[r * q + target] == 0), None)

    steps = []
    checkpoints = []
    index = 2 * n - 6 * a - 4
    source = 0
    for i in range(1, flips + 1):
        col = c + i - 1
        need = kn.K + 2 if i <= kn.extra else kn.K + 1
        degree = sum(labels[r * q + col] for r in range(p))
        _verify(degree - need == threshold, f"v_{i} needs {degree - threshold} swaps, formula says {need}")
        rows = [1 + pos for pos in windows[i - 1].members(m)]
        for _ in range(need):
            target = row = None
            for k in range(c):
                src = (source + k) % c
                if room[src] > 0:
                    row = free_row(rows, col, src)
                    if row is not None:
                        target = src
                        room[src] -= 1
                        source = src + 1
                        break
            if row is None:
                for sink in sorted(sinks, key=lambda j: sum(labels[r * q + j] for r in range(p))):
                    row = free_row(rows, col, sink)
                    if row is not None:
                        target = sink
                        break
            if row is None:
                raise BudgetExceededError(f"no dense or sink capacity left while flipping v_{i} (n={n}, a={a})")
            labels[row * q + target], labels[row * q + col] = 1, 0
            steps.append(SwapStep(EdgeRef(row, target), EdgeRef(row, col)))
        index -= 2
        checkpoints.append(Checkpoint(len(steps), index))
    _verify(index == 0, "general schedule does not reach index 0")
    schedule = Schedule(tuple(steps), tuple(checkpoints))
    apply_schedule(base, schedule)
    return schedule


def switching_budget_holds(n: int, a: int) -> bool:
    """Whether (K+2)(n-3a-2) <= (n-2a-1)(2a+1)/2 at c = 2a+1."""
    kn = compute_KN(n, a, 2 * a + 1)
    return 2 * (kn.K + 2) * (n - 3 * a - 2) <= (n - 2 * a - 1) * (2 * a + 1)


def switching_subcase(n: int, a: int) -> str:
    """Which branch of the switching procedure applies at c = 2a+1."""
    kn = compute_KN(n, a, 2 * a + 1)
    return "all-long" if n - 3 * a - 2 <= kn.extra else "mixed"


# -- bounds, plans, claims, fixtures -----------------------------------------


def dense_bound_check(n: int, a: int, dense_count: int) -> BoundReport:
    """Edge-count bounds when too few vertices are dense.

    ``dense_count=2`` is the two-diff count (u, v dense; requires a=1);
    ``dense_count=1`` is the general count with one dense B vertex (c=1).
    These reproduce the published inequalities; see ``dense_bound_exact``.
    """
    _check_n(n)
    if not isinstance(a, int) or a < 1:
        raise ParameterError(f"a must be >= 1, got {a!r}")
    if dense_count == 2:
        if a != 1:
            raise ParameterError("the two-dense count is stated for K_{n-2,n} only (a=1)")
        e1_min = (n - 1) // 2 * (n - 1)
        e0_max = n - 3 + (n - 3) // 2 * (n - 1)
    elif dense_count == 1:
        e0_max = n - 2 * a - 1 + (n - 2 * a - 1) // 2 * (n - 1)
        e1_min = (n - 2 * a + 1) // 2 * (n - 1)
    else:
        raise ParameterError(f"dense_count must be 1 or 2, got {dense_count!r}")
    gap = e1_min - e0_max
    return BoundReport(e1_min, e0_max, gap, gap <= 1)


def dense_bound_exact(n: int, a: int) -> BoundReport:
    """Exact forced balance on K_{n-2a,n} when only u and v are dense.

    The n-1 sparse B vertices need (n-2a+1)/2 ones each; every other edge,
    including all n edges at u, may be 0.
    """
    _check_n(n)
    if not isinstance(a, int) or a < 1 or 2 * a > n - 3:
        raise ParameterError(f"need 1 <= a <= (n-3)/2, got a={a!r}")
    e1_min = (n - 1) * (n - 2 * a + 1) // 2
    e0_max = n * (n - 2 * a) - e1_min
    gap = e1_min - e0_max
    return BoundReport(e1_min, e0_max, gap, gap <= 1)


def dense_plan(family: str, n: int, a: int | None = None, c: int | None = None) -> DensePlan:
    if family == "two-diff":
        _check_n(n)
        return DensePlan(frozenset({0}), frozenset({0, 1}))
    if family == "two-diff-base":
        _check_n(n)
        return DensePlan(frozenset({0}), frozenset({0, 1, 2}))
    if family == "general":
        TheoremParams(n, a, c)
        if c is None:
            raise ParameterError("general plan needs c")
        return DensePlan(frozenset({0}), frozenset(range(c)))
    raise ParameterError(f"no dense plan for family {family!r}")


def claimed_ebi(family: str, n: int, a: int | None = None) -> ClaimedSet:
    if family == "two-diff":
        _check_n(n)
        top = 2 * n - 8
        return ClaimedSet(family, {"n": n}, tuple(range(0, top + 1, 2)))
    if family == "general":
        if a is None:
            raise ParameterError("general family needs a")
        TheoremParams(n, a)
        top = 2 * n - 2 * a - 6
        return ClaimedSet(family, {"n": n, "a": a}, tuple(range(0, top + 1, 2)))
    if family == "square-odd":
        if not isinstance(n, int) or n < 3 or n % 2 == 0:
            raise ParameterError(f"square-odd needs odd n >= 3, got {n!r}")
        return ClaimedSet(family, {"n": n}, tuple(range(0, 2 * n - 4 + 1, 2)))
    if family == "square-even":
        if not isinstance(n, int) or n < 4 or n % 2:
            raise ParameterError(f"square-even needs even n >= 4, got {n!r}")
        return ClaimedSet(family, {"n": n}, tuple(range(0, 2 * n - 8 + 1)))
    raise ParameterError(f"unknown family {family!r}")


_K35_ONES = {
    "a": [(1, 1), (1, 2), (1, 4), (2, 2), (2, 3), (2, 4), (3, 3)],
    "b": [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 5)],
}


def fixture_k35(variant: str) -> Labeling:
    """The two reference K_{3,5} labelings (1-edges given 1-based as (u_i, v_j))."""
    try:
        ones = _K35_ONES[variant]
    except KeyError:
        raise ParameterError(f"unknown fixture variant {variant!r}; use 'a' or 'b'") from None
    return Labeling.from_ones(Shape(3, 5), [(i - 1, j - 1) for i, j in ones])
