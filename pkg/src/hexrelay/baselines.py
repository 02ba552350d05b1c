"""Comparison algorithms: exhaustive optimum and steinerized-MST baselines.

The exhaustive search is the ground-truth benchmark: it tries every
combination of candidate cells at increasing relay counts until the whole
graph is coverage-connected, so its answer is minimal by construction.  The
disk-model baselines bead evenly spaced relays along Euclidean MST edges
using the plain overlap threshold ``2R``; the lattice variant beads with
robust hexagon hops instead.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BudgetExceededError
from .hcs import (
    HexCoord,
    feasible_hop_offsets,
    from_cartesian,
    hex_distance,
    is_coverage_connected,
    to_cartesian,
)
from .mst import NodeRecord, _DSU
from .placement import Placement
from .scenario import Scenario

DEFAULT_BUDGET = 20_000_000


@dataclass
class FeasibleMatrix:
    """Candidate relay cells plus the closed-form count estimate."""

    rows: list[HexCoord]
    m: int  # ceil(field area / cell area) - cluster count


def build_feasible_matrix(scenario: Scenario) -> FeasibleMatrix:
    """All in-field cell centers not occupied by a cluster gateway."""
    frame = scenario.frame()
    r = scenario.r
    step = math.sqrt(3.0) * r
    ox, oy = frame.origin
    cluster_cells = {from_cartesian(p, frame) for p in scenario.clusters}

    cells = []
    y_lo = math.ceil((0.0 - oy) / (1.5 * r) - 1e-9)
    y_hi = math.floor((scenario.field_h - oy) / (1.5 * r) + 1e-9)
    for y in range(y_lo, y_hi + 1):
        x_lo = math.ceil((0.0 - ox) / step - y / 2.0 - 1e-9)
        x_hi = math.floor((scenario.field_w - ox) / step - y / 2.0 + 1e-9)
        for x in range(x_lo, x_hi + 1):
            c = HexCoord(x, y)
            if c not in cluster_cells:
                cells.append(c)
    cells.sort()

    cell_area = 1.5 * math.sqrt(3.0) * r * r
    m = math.ceil(scenario.area / cell_area) - len(scenario.clusters)
    return FeasibleMatrix(rows=cells, m=m)


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _dist_to_hull(p: tuple[float, float], hull: list[tuple[float, float]]) -> float:
    if len(hull) == 1:
        return math.dist(p, hull[0])
    segments = (
        [(hull[0], hull[1])]
        if len(hull) == 2
        else [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]
    )
    px, py = p
    if len(hull) > 2 and all(
        (bx - ax) * (py - ay) - (by - ay) * (px - ax) >= 0
        for (ax, ay), (bx, by) in segments
    ):
        return 0.0  # inside the hull
    best = math.inf
    for (ax, ay), (bx, by) in segments:
        vx, vy = bx - ax, by - ay
        denom = vx * vx + vy * vy
        t = 0.0 if denom == 0 else max(0.0, min(1.0, ((px - ax) * vx + (py - ay) * vy) / denom))
        best = min(best, math.hypot(px - (ax + t * vx), py - (ay + t * vy)))
    return best


def _coverage_components(cells: list[HexCoord], n: int) -> list[int]:
    """Component label per cell under the coverage predicate."""
    dsu = _DSU(range(len(cells)))
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if is_coverage_connected(cells[i], cells[j], n):
                dsu.union(i, j)
    roots = {}
    labels = []
    for i in range(len(cells)):
        root = dsu.find(i)
        labels.append(roots.setdefault(root, len(roots)))
    return labels


def _coverage_spanning_edges(nodes: list[NodeRecord], n: int) -> list[tuple[int, int]]:
    """Deterministic BFS spanning tree of the coverage graph."""
    if len(nodes) <= 1:
        return []
    edges = []
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop(0)
        for nd in nodes:
            if nd.id not in seen and is_coverage_connected(nodes[u].pos, nd.pos, n):
                seen.add(nd.id)
                edges.append((u, nd.id))
                frontier.append(nd.id)
    return edges


def exhaustive_search(
    scenario: Scenario, pruning: bool = False, budget: int = DEFAULT_BUDGET
) -> Placement:
    """Minimum-cardinality relay set achieving full coverage connectivity.

    Tests relay counts upward from zero; within a count, candidate cell
    combinations are scanned in lexicographic cell order and the first
    success is returned, so the answer is unique regardless of how the scan
    might be partitioned.  Raises BudgetExceededError once more than
    ``budget`` combinations have been inspected.

    ``pruning`` drops candidates farther than one coverage diameter outside
    the cluster convex hull; relays rarely pay off out there, but the result
    is then only optimal over the pruned candidate set.
    """
    t0 = time.perf_counter()
    frame = scenario.frame()
    n = frame.n
    gateways = []
    for i, cart in enumerate(scenario.clusters):
        cell = from_cartesian(cart, frame)
        gateways.append(NodeRecord(i, "gateway", cell, to_cartesian(cell, frame)))

    gw_cells = [nd.pos for nd in gateways]
    labels = _coverage_components(gw_cells, n)
    n_comp = max(labels) + 1 if labels else 0

    def finish(relay_cells: list[HexCoord]) -> Placement:
        nodes = list(gateways)
        for cell in relay_cells:
            nodes.append(
                NodeRecord(len(nodes), "intermediate", cell, to_cartesian(cell, frame))
            )
        return Placement(
            algorithm="exhaustive",
            frame=frame,
            nodes=nodes,
            edges=_coverage_spanning_edges(nodes, n),
            eta=len(relay_cells),
            iterations=0,
            wall_time_s=time.perf_counter() - t0,
            tree=None,
        )

    if n_comp <= 1:
        return finish([])

    fm = build_feasible_matrix(scenario)
    cells = fm.rows
    if pruning:
        hull = _convex_hull(list(scenario.clusters))
        reach = 2.0 * scenario.big_radius
        cells = [
            c for c in cells if _dist_to_hull(to_cartesian(c, frame), hull) <= reach
        ]

    full = (1 << n_comp) - 1
    masks = []
    for c in cells:
        m = 0
        for gi, gcell in enumerate(gw_cells):
            if is_coverage_connected(c, gcell, n):
                m |= 1 << labels[gi]
        masks.append(m)
    masks_np = np.array(masks, dtype=np.int64)

    tested = 0

    def connected(chosen: tuple[int, ...]) -> bool:
        # union-find over gateway components plus the chosen relays
        dsu = _DSU(list(range(n_comp)) + [n_comp + i for i in range(len(chosen))])
        for ri, ci in enumerate(chosen):
            m = masks[ci]
            b = 0
            while m:
                if m & 1:
                    dsu.union(b, n_comp + ri)
                m >>= 1
                b += 1
        for ri, ci in enumerate(chosen):
            for rj in range(ri + 1, len(chosen)):
                if is_coverage_connected(cells[ci], cells[chosen[rj]], n):
                    dsu.union(n_comp + ri, n_comp + rj)
        root = dsu.find(0)
        return all(
            dsu.find(x) == root
            for x in list(range(1, n_comp)) + [n_comp + i for i in range(len(chosen))]
        )

    for kappa in range(1, len(cells) + 1):
        if kappa == 1:
            for i, m in enumerate(masks):
                tested += 1
                if tested > budget:
                    raise BudgetExceededError(
                        "exhaustive search budget exceeded", kappa, tested
                    )
                if m == full:
                    return finish([cells[i]])
        elif kappa == 2:
            for i in range(len(cells)):
                mi = masks[i]
                for j in range(i + 1, len(cells)):
                    tested += 1
                    if tested > budget:
                        raise BudgetExceededError(
                            "exhaustive search budget exceeded", kappa, tested
                        )
                    if (mi | masks[j]) == full and connected((i, j)):
                        return finish([cells[i], cells[j]])
        else:
            # vectorize the innermost index; keep lexicographic order
            for head in combinations(range(len(cells)), kappa - 1):
                mh = 0
                for i in head:
                    mh |= masks[i]
                start = head[-1] + 1
                if start >= len(cells):
                    continue
                tail = masks_np[start:]
                tested += len(tail)
                if tested > budget:
                    raise BudgetExceededError(
                        "exhaustive search budget exceeded", kappa, tested
                    )
                hits = np.nonzero((mh | tail) == full)[0]
                for h in hits:
                    chosen = head + (start + int(h),)
                    if connected(chosen):
                        return finish([cells[i] for i in chosen])

    raise BudgetExceededError("no feasible configuration found", None, tested)


def _euclid_mst(points: np.ndarray) -> list[tuple[int, int, float]]:
    """Kruskal over all pairs, ties by (min id, max id); same machinery as the
    lattice tree so runtime comparisons reflect how often trees are rebuilt."""
    n = len(points)
    if n <= 1:
        return []
    d2 = ((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
    iu, ju = np.triu_indices(n, k=1)
    lens = d2[iu, ju]
    order = np.lexsort((ju, iu, lens))
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = []
    for k in order:
        a, b = int(iu[k]), int(ju[k])
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            edges.append((a, b, math.sqrt(float(lens[k]))))
            if len(edges) == n - 1:
                break
    return edges


def _bead_edge(
    p: tuple[float, float], q: tuple[float, float], d: float
) -> list[tuple[float, float]]:
    """Evenly spaced relay positions keeping consecutive spacing <= d."""
    length = math.dist(p, q)
    m = math.ceil(length / d)
    return [
        (p[0] + (q[0] - p[0]) * i / m, p[1] + (q[1] - p[1]) * i / m)
        for i in range(1, m)
    ]


def _disk_placement(scenario: Scenario, algorithm: str) -> Placement:
    t0 = time.perf_counter()
    frame = scenario.frame()
    d = 2.0 * scenario.big_radius
    carts = [tuple(p) for p in scenario.clusters]
    kinds = ["gateway"] * len(carts)

    if algorithm == "stasmt":
        mst = _euclid_mst(np.array(carts))
        mst.sort(key=lambda e: (e[2], min(e[0], e[1]), max(e[0], e[1])))
        out_edges = []
        for u, v, length in mst:
            if length <= d:
                out_edges.append((u, v))
                continue
            prev = u
            for pos in _bead_edge(carts[u], carts[v], d):
                carts.append(pos)
                kinds.append("intermediate")
                out_edges.append((prev, len(carts) - 1))
                prev = len(carts) - 1
            out_edges.append((prev, v))
    else:
        # dynsmt: connect MST edges shortest first, rebuilding the whole tree
        # after every one (even no-op edges cost a rebuild; that is the point
        # of the comparison)
        done: set[tuple[int, int]] = set()
        while True:
            mst = _euclid_mst(np.array(carts))
            mst.sort(key=lambda e: (e[2], min(e[0], e[1]), max(e[0], e[1])))
            pending = [e for e in mst if (min(e[0], e[1]), max(e[0], e[1])) not in done]
            if not pending:
                out_edges = [(u, v) for u, v, _ in mst]
                break
            u, v, length = pending[0]
            done.add((min(u, v), max(u, v)))
            if length > d:
                for pos in _bead_edge(carts[u], carts[v], d):
                    carts.append(pos)
                    kinds.append("intermediate")

    nodes = [
        NodeRecord(i, kinds[i], from_cartesian(carts[i], frame), carts[i])
        for i in range(len(carts))
    ]
    return Placement(
        algorithm=algorithm,
        frame=frame,
        nodes=nodes,
        edges=out_edges,
        eta=sum(1 for k in kinds if k == "intermediate"),
        iterations=0,
        wall_time_s=time.perf_counter() - t0,
        tree=None,
    )


def sta_smt(scenario: Scenario) -> Placement:
    """Disk-model baseline: bead every over-long edge of one static Euclidean MST."""
    return _disk_placement(scenario, "stasmt")


def dyn_smt(scenario: Scenario) -> Placement:
    """Disk-model baseline recomputing the Euclidean MST after each beaded edge."""
    return _disk_placement(scenario, "dynsmt")


def smt_in_hcs(scenario: Scenario) -> Placement:
    """Edge beading with lattice relays: every consecutive hop is a robust hop.

    Walks each Euclidean-MST edge from one snapped endpoint toward the other,
    greedily taking the feasible hop offset with the most progress along the
    edge direction (ties: least remaining distance, then coordinate order),
    until the pair's hexagons meet.
    """
    t0 = time.perf_counter()
    frame = scenario.frame()
    n = frame.n
    nodes = []
    for i, cart in enumerate(scenario.clusters):
        cell = from_cartesian(cart, frame)
        nodes.append(NodeRecord(i, "gateway", cell, to_cartesian(cell, frame)))

    offsets = sorted(feasible_hop_offsets(n))
    off_cart = [
        (
            math.sqrt(3.0) * frame.r * (o.dx + o.dy / 2.0),
            math.sqrt(3.0) * frame.r * (math.sqrt(3.0) / 2.0) * o.dy,
        )
        for o in offsets
    ]

    pts = np.array([nd.cart for nd in nodes])
    mst = _euclid_mst(pts)
    mst.sort(key=lambda e: (e[2], min(e[0], e[1]), max(e[0], e[1])))

    out_edges = []
    for u, v, _length in mst:
        cur_id, cur = u, nodes[u].pos
        target = nodes[v].pos
        tx, ty = nodes[v].cart
        ux, uy = nodes[u].cart
        norm = math.hypot(tx - ux, ty - uy)
        dirx, diry = ((tx - ux) / norm, (ty - uy) / norm) if norm > 0 else (1.0, 0.0)
        hops = 0
        max_hops = 16 + 4 * hex_distance(cur, target) // (12 * n + 7)
        while not is_coverage_connected(cur, target, n):
            cx, cy = to_cartesian(cur, frame)
            best = None
            best_key = None
            for o, (ox, oy) in zip(offsets, off_cart):
                proj = ox * dirx + oy * diry
                rem = math.hypot(cx + ox - tx, cy + oy - ty)
                key = (-proj, rem, o)
                if best_key is None or key < best_key:
                    best, best_key = o, key
            nxt = cur.shift(best)
            if math.hypot(*(np.subtract(to_cartesian(nxt, frame), (tx, ty)))) >= math.hypot(
                cx - tx, cy - ty
            ):
                # progress stalled along the edge direction: walk straight at the target
                nxt = cur.shift(
                    min(
                        offsets,
                        key=lambda o: (
                            hex_distance(cur.shift(o), target),
                            math.dist(to_cartesian(cur.shift(o), frame), (tx, ty)),
                            o,
                        ),
                    )
                )
            relay = NodeRecord(
                len(nodes), "intermediate", nxt, to_cartesian(nxt, frame)
            )
            nodes.append(relay)
            out_edges.append((cur_id, relay.id))
            cur_id, cur = relay.id, nxt
            hops += 1
            if hops > max_hops:
                raise RuntimeError("beading failed to approach the edge target")
        out_edges.append((cur_id, v))

    return Placement(
        algorithm="smt-hcs",
        frame=frame,
        nodes=nodes,
        edges=out_edges,
        eta=sum(1 for nd in nodes if nd.kind == "intermediate"),
        iterations=0,
        wall_time_s=time.perf_counter() - t0,
        tree=None,
    )
