"""Minimum-coverage-time visit orders over decomposition cell centers.

The flight model: a UAV starts in cell 1, ends in cell |I|, travels in
straight lines between cell centers at constant airspeed. Selecting which
center-to-center arcs to fly is posed as a degree-constrained arc model:

  * every cell except the last has exactly one outgoing arc, every cell
    except the first exactly one incoming arc (cell 1 has no entry, the
    last cell no exit),
  * an arc and its reverse cannot both be used, and self-arcs are banned,
  * total time is sum of arc lengths over airspeed.

`solve_paper_mode` optimizes exactly this model. Its optimum decomposes
into one path from cell 1 to cell |I| plus possibly disjoint cycles of
length >= 3, so the value is a lower bound on any true flight path.
`solve_valid_path` strengthens it to an exact minimum-cost Hamiltonian
path by branching away every cycle. Both run a best-first branch-and-bound
whose relaxation is a linear assignment problem.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _kernels
from .decomposition import agd_decompose, sgd_decompose, sgd_lower_bound
from .geometry import Polygon, polygon_area

DEFAULT_EXACT_CAP = 60

_TIE_EPS = 1e-12


class NonPositiveSpeed(ValueError):
    """Airspeed must be a positive finite number."""


class InvalidPermutation(ValueError):
    """Visit order is not a permutation of the cell indices."""


class SizeLimitExceeded(RuntimeError):
    """Instance is larger than the configured exact-solve cap."""


class Infeasible(RuntimeError):
    """No arc selection satisfies the degree constraints."""


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric center-to-center distances plus the airspeed dividing them."""

    distances: np.ndarray
    speed: float

    @property
    def n(self) -> int:
        return self.distances.shape[0]


def distance_matrix(centers, speed: float) -> DistanceMatrix:
    """Euclidean distances between cell centers; zero diagonal."""
    if not (isinstance(speed, (int, float)) and math.isfinite(speed) and speed > 0):
        raise NonPositiveSpeed(f"airspeed must be > 0, got {speed!r}")
    pts = np.asarray(centers, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] != 2:
        raise ValueError("need at least two 2-D centers")
    d = np.hypot(
        pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1]
    )
    d.setflags(write=False)
    return DistanceMatrix(distances=d, speed=float(speed))


@dataclass(frozen=True)
class ArcSolution:
    """Arc selection for the relaxed model; indices are 1-based cell ids.

    `entered[i-1]`/`exited[i-1]` are the entry/exit indicators of cell i.
    `single_path` tells whether the arcs already form one path from cell 1
    to cell n (if not, the value is only a lower bound on a flyable path).
    """

    arcs: tuple[tuple[int, int], ...]
    entered: tuple[int, ...]
    exited: tuple[int, ...]
    t_cov: float
    mode: str
    optimal: bool
    single_path: bool


@dataclass(frozen=True)
class PathPlan:
    """A flyable visit order (1-based cell ids) and its coverage time."""

    order: tuple[int, ...]
    t_cov: float
    mode: str
    optimal: bool


# ---------------------------------------------------------------------------
# branch-and-bound core (0-based indices internally)
# ---------------------------------------------------------------------------


def _assignment_relaxation(d: np.ndarray, banned: frozenset):
    """Min-cost successor map: rows 0..n-2 pick distinct targets 1..n-1.

    Self-arcs and `banned` arcs are excluded. Returns (cost, succ) or None
    when no feasible assignment remains.
    """
    n = d.shape[0]
    cost = np.array(d[: n - 1, 1:], dtype=np.float64)
    for i in range(1, n - 1):
        cost[i, i - 1] = np.inf
    for i, j in banned:
        if i < n - 1 and j >= 1:
            cost[i, j - 1] = np.inf
    try:
        rows, cols = linear_sum_assignment(cost)
    except ValueError:
        return None
    total = float(cost[rows, cols].sum())
    if not math.isfinite(total):
        return None
    succ = [0] * (n - 1)
    for i, j in zip(rows, cols):
        succ[int(i)] = int(j) + 1
    return total, tuple(succ)


def _two_cycles(succ) -> list[tuple[int, int]]:
    out = []
    for i, j in enumerate(succ):
        if j < len(succ) and succ[j] == i and i < j:
            out.append((i, j))
    return out


def _cycles(succ, n: int) -> list[list[int]]:
    """Cycles disjoint from the 0 -> n-1 path of a successor map."""
    seen = [False] * n
    node = 0
    while node != n - 1:
        seen[node] = True
        node = succ[node]
    seen[n - 1] = True
    cycles = []
    for start in range(n - 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = succ[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = succ[nxt]
        cycles.append(cyc)
    return cycles


def _exact_cost(d: np.ndarray, succ) -> float:
    total = 0.0
    for i, j in enumerate(succ):
        total += float(d[i, j])
    return total


def _branch_and_bound(d: np.ndarray, *, forbid_subtours: bool, warm=None):
    """Best-first search over banned-arc sets.

    Nodes relax to the assignment problem; violated pair exchanges (and, in
    valid-path mode, longer cycles) are branched on by banning one arc per
    child. `warm` seeds the incumbent with a known feasible successor map.
    Deterministic: float bounds plus an insertion counter order the heap.
    """
    n = d.shape[0]
    best_cost = math.inf
    best_succ = None
    if warm is not None:
        best_cost = _exact_cost(d, warm)
        best_succ = tuple(warm)
    root = _assignment_relaxation(d, frozenset())
    if root is None:
        raise Infeasible("no feasible arc assignment")
    counter = itertools.count()
    heap = [(root[0], next(counter), frozenset(), root[1])]
    while heap:
        bound, _, banned, succ = heapq.heappop(heap)
        if bound >= best_cost - _TIE_EPS:
            continue
        twos = _two_cycles(succ)
        longer = _cycles(succ, n) if (forbid_subtours and not twos) else []
        if not twos and not longer:
            exact = _exact_cost(d, succ)
            if exact < best_cost - _TIE_EPS:
                best_cost = exact
                best_succ = succ
            continue
        if twos:
            i, j = twos[0]
            children = ((i, j), (j, i))
        else:
            cyc = min(longer, key=lambda c: (len(c), c))
            children = tuple(
                (cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))
            )
        for arc in children:
            child_banned = banned | {arc}
            relaxed = _assignment_relaxation(d, child_banned)
            if relaxed is not None and relaxed[0] < best_cost - _TIE_EPS:
                heapq.heappush(
                    heap, (relaxed[0], next(counter), child_banned, relaxed[1])
                )
    if best_succ is None:
        raise Infeasible("no feasible arc assignment")
    return best_cost, best_succ


def _nearest_neighbor_order(d: np.ndarray) -> list[int]:
    n = d.shape[0]
    order = [0]
    todo = set(range(1, n - 1))
    cur = 0
    while todo:
        nxt = min(todo, key=lambda j: (d[cur, j], j))
        order.append(nxt)
        todo.discard(nxt)
        cur = nxt
    order.append(n - 1)
    return order


def _heuristic_succ(d: np.ndarray):
    order = _kernels.two_opt(d, _nearest_neighbor_order(d))
    succ = [0] * (d.shape[0] - 1)
    for a, b in zip(order[:-1], order[1:]):
        succ[int(a)] = int(b)
    return tuple(succ), [int(v) for v in order]


def _path_from_succ(succ, n: int) -> list[int]:
    order = [0]
    while order[-1] != n - 1:
        order.append(succ[order[-1]])
    return order


def _check_cap(n: int, exact_cap) -> None:
    cap = DEFAULT_EXACT_CAP if exact_cap is None else int(exact_cap)
    if n > cap:
        raise SizeLimitExceeded(
            f"{n} cells exceed the exact-solve cap of {cap}; "
            "use heuristic_path or raise the cap"
        )


def _endpoint_permutations(n: int):
    """Index relabelings putting each unordered cell pair at the ends."""
    for s in range(n):
        for e in range(s + 1, n):
            middle = [k for k in range(n) if k not in (s, e)]
            yield [s] + middle + [e]


# ---------------------------------------------------------------------------
# public solvers
# ---------------------------------------------------------------------------


def solve_paper_mode(m: DistanceMatrix, *, exact_cap: int | None = None) -> ArcSolution:
    """Exact optimum of the relaxed arc model.

    The arc set is one 1 -> n path plus possibly cycles; `single_path`
    reports which. The value never exceeds `solve_valid_path`'s.
    """
    n = m.n
    _check_cap(n, exact_cap)
    d = m.distances
    if n == 2:
        cost, succ = float(d[0, 1]), (1,)
    else:
        warm, _ = _heuristic_succ(d)
        cost, succ = _branch_and_bound(d, forbid_subtours=False, warm=warm)
    arcs = tuple(sorted((i + 1, j + 1) for i, j in enumerate(succ)))
    entered = [0] * n
    exited = [0] * n
    for i, j in enumerate(succ):
        exited[i] = 1
        entered[j] = 1
    return ArcSolution(
        arcs=arcs,
        entered=tuple(entered),
        exited=tuple(exited),
        t_cov=cost / m.speed,
        mode="paper",
        optimal=True,
        single_path=not _cycles(succ, n),
    )


def solve_valid_path(
    m: DistanceMatrix,
    *,
    exact_cap: int | None = None,
    free_endpoints: bool = False,
) -> PathPlan:
    """Exact minimum-time path visiting every cell once, from cell 1 to cell n.

    With `free_endpoints` the model is re-solved for every unordered endpoint
    pair and the best plan returned (its order then starts/ends wherever
    optimal). Raises SizeLimitExceeded above the cap (default 60 cells).
    """
    n = m.n
    _check_cap(n, exact_cap)
    d = m.distances
    if free_endpoints:
        return _best_over_endpoints(m, lambda sub: solve_valid_path(sub, exact_cap=exact_cap))
    if n == 2:
        order = [0, 1]
        cost = float(d[0, 1])
    else:
        warm, _ = _heuristic_succ(d)
        cost, succ = _branch_and_bound(d, forbid_subtours=True, warm=warm)
        order = _path_from_succ(succ, n)
    return PathPlan(
        order=tuple(i + 1 for i in order),
        t_cov=_order_cost(d, order) / m.speed,
        mode="valid",
        optimal=True,
    )


def heuristic_path(m: DistanceMatrix, *, free_endpoints: bool = False) -> PathPlan:
    """Nearest-neighbor construction improved by 2-opt; fast upper bound."""
    if free_endpoints:
        return _best_over_endpoints(m, heuristic_path)
    d = m.distances
    _, order = _heuristic_succ(d) if m.n > 2 else ((1,), [0, m.n - 1])
    return PathPlan(
        order=tuple(i + 1 for i in order),
        t_cov=_order_cost(d, order) / m.speed,
        mode="heuristic",
        optimal=False,
    )


def brute_force_path(m: DistanceMatrix, *, size_limit: int = 10) -> PathPlan:
    """Reference solver: enumerate every 1 -> n permutation.

    Independent of the branch-and-bound machinery; intended for tests and
    sanity checks on small instances.
    """
    n = m.n
    if n > size_limit:
        raise SizeLimitExceeded(f"{n} cells exceed the enumeration limit {size_limit}")
    d = m.distances
    best_cost = math.inf
    best_order = None
    for middle in itertools.permutations(range(1, n - 1)):
        order = (0, *middle, n - 1)
        cost = 0.0
        for a, b in zip(order[:-1], order[1:]):
            cost += float(d[a, b])
            if cost >= best_cost:
                break
        if cost < best_cost - _TIE_EPS:
            best_cost = cost
            best_order = order
    return PathPlan(
        order=tuple(i + 1 for i in best_order),
        t_cov=best_cost / m.speed,
        mode="valid",
        optimal=True,
    )


def _order_cost(d: np.ndarray, order) -> float:
    total = 0.0
    for a, b in zip(order[:-1], order[1:]):
        total += float(d[a, b])
    return total


def _best_over_endpoints(m: DistanceMatrix, solve) -> PathPlan:
    d = m.distances
    best: PathPlan | None = None
    for perm in _endpoint_permutations(m.n):
        sub = DistanceMatrix(d[np.ix_(perm, perm)], m.speed)
        plan = solve(sub)
        if best is None or plan.t_cov < best.t_cov - _TIE_EPS:
            best = PathPlan(
                order=tuple(perm[i - 1] + 1 for i in plan.order),
                t_cov=plan.t_cov,
                mode=plan.mode,
                optimal=plan.optimal,
            )
    return best


def coverage_time(order, m: DistanceMatrix) -> float:
    """Travel time of a visit order: consecutive distances over airspeed."""
    n = m.n
    ids = [int(i) for i in order]
    if sorted(ids) != list(range(1, n + 1)):
        raise InvalidPermutation(f"order must be a permutation of 1..{n}")
    return _order_cost(m.distances, [i - 1 for i in ids]) / m.speed


def verify_arc_solution(sol: ArcSolution, m: DistanceMatrix) -> None:
    """Independent feasibility check of an ArcSolution; raises on violation.

    Recomputes degrees, indicator sums and the time from the raw arc set
    rather than trusting the solver's bookkeeping.
    """
    n = m.n
    arcs = set(sol.arcs)
    if len(arcs) != len(sol.arcs):
        raise ValueError("duplicate arcs")
    indeg = [0] * (n + 1)
    outdeg = [0] * (n + 1)
    for i, j in arcs:
        if i == j:
            raise ValueError(f"self-arc at cell {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"arc ({i},{j}) out of range")
        if (j, i) in arcs:
            raise ValueError(f"two-cell loop between {i} and {j}")
        outdeg[i] += 1
        indeg[j] += 1
    if sol.entered[0] != 0 or sol.exited[n - 1] != 0:
        raise ValueError("cell 1 must not be entered and cell n must not be exited")
    for i in range(1, n + 1):
        if indeg[i] != sol.entered[i - 1]:
            raise ValueError(f"in-degree of {i} disagrees with its entry indicator")
        if outdeg[i] != sol.exited[i - 1]:
            raise ValueError(f"out-degree of {i} disagrees with its exit indicator")
        if indeg[i] > 1 or outdeg[i] > 1:
            raise ValueError(f"cell {i} has degree above 1")
    if sum(sol.entered) + sum(sol.exited) < 2 * n - 2:
        raise ValueError("arc set does not connect all cells")
    t = sum(float(m.distances[i - 1, j - 1]) for i, j in sorted(arcs)) / m.speed
    if abs(t - sol.t_cov) > 1e-9 * max(1.0, abs(t)):
        raise ValueError(f"t_cov mismatch: {sol.t_cov} vs recomputed {t}")


# ---------------------------------------------------------------------------
# method comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonRow:
    """One polygon's adaptive-vs-uniform comparison.

    `z_sgd` is the uniform grid's coverage-time lower bound, `z_agd` the
    adaptive decomposition's planned time (exact below the cap, 2-opt
    heuristic above it, see `optimal`).
    """

    area: float
    n_sgd: int
    n_agd: int
    cell_reduction: int
    z_sgd: float
    z_agd: float
    relative_improvement: float
    absolute_gap: float
    optimal: bool
    mode: str


def compare_methods(
    p: Polygon,
    radius: float,
    speed: float,
    *,
    exact_cap: int | None = None,
    free_endpoints: bool = False,
) -> ComparisonRow:
    """Decompose with both methods and plan the adaptive grid's path."""
    if not (isinstance(speed, (int, float)) and math.isfinite(speed) and speed > 0):
        raise NonPositiveSpeed(f"airspeed must be > 0, got {speed!r}")
    agd = agd_decompose(p, radius)
    sgd = sgd_decompose(p, radius)
    n_agd = len(agd.cells)
    n_sgd = len(sgd.cells)
    z_sgd = sgd_lower_bound(n_sgd, radius, speed)
    if n_agd < 2:
        z_agd, optimal, mode = 0.0, True, "valid"
    else:
        m = distance_matrix(agd.centers_array(), speed)
        cap = DEFAULT_EXACT_CAP if exact_cap is None else int(exact_cap)
        if n_agd <= cap:
            plan = solve_valid_path(m, exact_cap=cap, free_endpoints=free_endpoints)
        else:
            plan = heuristic_path(m, free_endpoints=free_endpoints)
        z_agd, optimal, mode = plan.t_cov, plan.optimal, plan.mode
    improvement = 0.0 if z_sgd <= 0 else (z_sgd - z_agd) / z_sgd
    return ComparisonRow(
        area=polygon_area(p),
        n_sgd=n_sgd,
        n_agd=n_agd,
        cell_reduction=n_sgd - n_agd,
        z_sgd=z_sgd,
        z_agd=z_agd,
        relative_improvement=improvement,
        absolute_gap=abs(z_sgd - z_agd),
        optimal=optimal,
        mode=mode,
    )
