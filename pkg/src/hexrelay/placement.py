"""Iterative relay placement on the lattice.

The driver keeps a spanning tree of all nodes as a sorted edge matrix.  Each
iteration takes the longest edge whose endpoints' coverage hexagons do not
yet intersect and connects that pair:

* single-relay case -- some cell is a robust hop from both endpoints; the
  candidates are scored by total hop length (larger is better: it pushes
  coverage outward with minimal overlap), then proximity to the lattice
  origin, then coordinate order;
* two-relay case -- one relay goes on each endpoint's facade facing the
  other endpoint, the pair chosen to minimize the remaining gap plus both
  relays' pull toward the origin.  If the gap is still open the same
  process recurses on the two new relays.

The fast variant splices the new rows into the existing tree and may
re-attach one nearby adjustable node per new relay when that shortens the
tree; the slow variant simply recomputes the whole spanning tree after each
iteration.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InternalInvariantError
from .hcs import (
    UNIT_FACADES,
    HcsFrame,
    HexCoord,
    HexVec,
    facade_track,
    feasible_hop_offsets,
    from_cartesian,
    hex_distance,
    is_coverage_connected,
    is_robustly_connected,
    to_cartesian,
)
from .mst import EdgeMatrix, NodeRecord, extract_line_graphs, is_tree, kruskal_mst, make_row
from .scenario import Scenario

ORIGIN = HexCoord(0, 0)

# hard stop for the placement loop; hit only on an invariant breach
MAX_OUTER_ITERATIONS = 100_000


@dataclass
class PlacementState:
    frame: HcsFrame
    nodes: list[NodeRecord]
    tree: EdgeMatrix
    k: int = 0
    placed: list[list[int]] = field(default_factory=list)
    immutable: set[int] = field(default_factory=set)

    def pos(self, node_id: int) -> HexCoord:
        return self.nodes[node_id].pos


@dataclass
class Placement:
    """Result of one placement run."""

    algorithm: str
    frame: HcsFrame
    nodes: list[NodeRecord]
    edges: list[tuple[int, int]]
    eta: int
    iterations: int
    wall_time_s: float
    tree: EdgeMatrix | None = None

    def to_json_dict(self, meta: dict | None = None) -> dict:
        doc = {
            "algorithm": self.algorithm,
            "eta": self.eta,
            "iterations": self.iterations,
            "frame": {
                "origin_m": [self.frame.origin[0], self.frame.origin[1]],
                "r_m": self.frame.r,
                "n": self.frame.n,
            },
            "nodes": [
                {
                    "id": nd.id,
                    "kind": nd.kind,
                    "hex": [nd.pos.x, nd.pos.y],
                    "cart_m": [nd.cart[0], nd.cart[1]],
                }
                for nd in self.nodes
            ],
            "edges": [[u, v] for u, v in self.edges],
        }
        if meta is not None:
            doc["meta"] = meta
        return doc


def select_edge(s: PlacementState) -> tuple[int, int]:
    """Endpoints of the longest (last) tree row."""
    row = s.tree.last()
    return row.u, row.v


def case1_applicable(P: HexCoord, Q: HexCoord, n: int) -> list[HexCoord]:
    """Cells from which a single relay joins P and Q, in coordinate order.

    A candidate sits on one endpoint's facade track (a robust hop off that
    endpoint) and its hexagon must at least touch the other endpoint's, so
    the link criterion holds on both sides.  Empty means no single relay
    can join the pair and one relay per side is needed.  Raises if the pair
    is already robustly connected (nothing to place).
    """
    if is_robustly_connected(P, Q, n):
        raise ValueError("endpoints are already robustly connected")
    offs = feasible_hop_offsets(n)
    out = set()
    for o in offs:
        c = P.shift(o)
        if is_coverage_connected(c, Q, n):
            out.add(c)
        c = Q.shift(o)
        if is_coverage_connected(c, P, n):
            out.add(c)
    return sorted(out)


def place_case1(P: HexCoord, Q: HexCoord, n: int, origin: HexCoord = ORIGIN) -> HexCoord:
    """Single-relay cell bridging P and Q.

    Longer hops buy reach at the price of contact: a robust hop of length
    lam + k has slid k steps away from full shared-edge alignment, and an
    overlap link is deepest (safest) when short.  Selection therefore
    prefers the smallest total hop length (maximal contact or overlap depth
    on both sides), pulls toward the lattice origin to help catch still-
    isolated clusters, and falls back to coordinate order.
    """
    cands = case1_applicable(P, Q, n)
    if not cands:
        raise ValueError("no single-relay candidate; two relays are needed")
    return min(
        cands,
        key=lambda c: (
            hex_distance(P, c) + hex_distance(Q, c),
            hex_distance(c, origin),
            c,
        ),
    )


def facing_facade(P: HexCoord, Q: HexCoord) -> HexVec:
    """Unit facade of P's hexagon that faces Q: max inner product with Q - P."""
    d = Q - P
    best_u = None
    best_s = None
    for u in sorted(UNIT_FACADES):
        # doubled inner product keeps the comparison in exact integers
        s = 2 * (u.dx * d.dx + u.dy * d.dy) + u.dx * d.dy + u.dy * d.dx
        if best_s is None or s > best_s:
            best_u, best_s = u, s
    return best_u


def place_case2(
    P: HexCoord, Q: HexCoord, n: int, origin: HexCoord = ORIGIN
) -> tuple[HexCoord, HexCoord]:
    """One relay on each endpoint's facing facade, working the gap between them.

    Scans all (8n+5)^2 combinations of the two slide tracks with ordered
    criteria: pairs that already close the gap (hexagons meeting) beat pairs
    that do not -- the relay count is the primary cost; then the shortest
    total anchor hops win, since a hop of length lam + k gives up k slide
    steps of shared-edge contact and with it nearly all perturbation margin
    (the lattice metric is flat across whole slide sectors, so a plain
    sum objective would routinely ride out to the zero-margin track ends);
    then the smaller remaining gap, the stronger pull toward the origin,
    and coordinate order.
    """
    track_p = facade_track(P, facing_facade(P, Q), n)
    track_q = facade_track(Q, facing_facade(Q, P), n)
    lam = 12 * n + 7

    ax = np.array([c.x for c in track_p], dtype=np.int64)[:, None]
    ay = np.array([c.y for c in track_p], dtype=np.int64)[:, None]
    bx = np.array([c.x for c in track_q], dtype=np.int64)[None, :]
    by = np.array([c.y for c in track_q], dtype=np.int64)[None, :]

    def hexd(dx, dy):
        return np.maximum(np.abs(dx), np.maximum(np.abs(dy), np.abs(dx + dy)))

    gap = hexd(bx - ax, by - ay)
    ux = 2 * (bx - ax) + (by - ay)
    uy = 3 * (by - ay)
    open_gap = ~(
        (np.abs(ux) <= 2 * lam) & (np.abs(ux + uy) <= 4 * lam) & (np.abs(ux - uy) <= 4 * lam)
    )
    hops = hexd(ax - P.x, ay - P.y) + hexd(bx - Q.x, by - Q.y)
    pull = hexd(ax - origin.x, ay - origin.y) + hexd(bx - origin.x, by - origin.y)
    ones = np.ones((len(track_p), len(track_q)), dtype=np.int64)
    # least significant key first; primary criterion goes last
    order = np.lexsort(
        (
            (ones * by).ravel(),
            (ones * bx).ravel(),
            (ay * ones).ravel(),
            (ax * ones).ravel(),
            pull.ravel(),
            gap.ravel(),
            hops.ravel(),
            open_gap.ravel(),
        )
    )
    i, j = divmod(int(order[0]), len(track_q))
    return track_p[i], track_q[j]


def modify_mst(
    s: PlacementState, placed: list[int], P: int, Q: int
) -> PlacementState:
    """Splice newly placed relays into the tree, then try one reroute per relay.

    Removes the row (P, Q); inserts the relay anchor rows (and the remaining
    gap row when two relays were placed), keeping rows sorted by length.
    Then, walking the adjustable-node lines, the first node strictly closer
    to a new relay than to its own next edge is re-attached to that relay;
    the relay's edges become permanent and its search stops.
    """
    pos = s.pos
    n = s.frame.n
    s.tree.remove(P, Q)
    if len(placed) == 1:
        a = placed[0]
        s.tree.insert(make_row(P, a, hex_distance(pos(P), pos(a))))
        s.tree.insert(make_row(Q, a, hex_distance(pos(Q), pos(a))))
    elif len(placed) == 2:
        a, b = placed
        s.tree.insert(make_row(P, a, hex_distance(pos(P), pos(a))))
        s.tree.insert(make_row(Q, b, hex_distance(pos(Q), pos(b))))
        s.tree.insert(make_row(a, b, hex_distance(pos(a), pos(b))))
    else:
        raise ValueError("placed must hold one or two relay ids")

    selected = {P, Q}
    for a in placed:
        apos = pos(a)
        done = False
        for line in extract_line_graphs(s.tree, selected):
            for idx, j in enumerate(line.members):
                succ = line.members[idx + 1] if idx + 1 < len(line.members) else line.stop
                if succ in s.immutable:
                    continue
                row = s.tree.find(j, succ)
                delta = hex_distance(apos, pos(j))
                if delta < row.length:
                    s.tree.remove(j, succ)
                    s.tree.insert(make_row(a, j, delta))
                    s.immutable.add(a)
                    done = True
                    break
            if done:
                break

    s.tree.assert_sorted()
    if not is_tree(s.tree, len(s.nodes)):
        raise InternalInvariantError("tree invariant broken after splice")
    return s


def _last_unsatisfied(s: PlacementState):
    n = s.frame.n
    for row in reversed(s.tree.rows):
        if not is_coverage_connected(s.pos(row.u), s.pos(row.v), n):
            return row
    return None


def _add_relay(s: PlacementState, cell: HexCoord) -> int:
    node_id = len(s.nodes)
    s.nodes.append(
        NodeRecord(node_id, "intermediate", cell, to_cartesian(cell, s.frame))
    )
    return node_id


def _run(scenario: Scenario, algorithm: str) -> Placement:
    if not scenario.clusters:
        raise ValueError("placement needs at least one cluster")
    t0 = time.perf_counter()
    frame = scenario.frame()
    n = frame.n
    splice = algorithm == "egdo"
    nodes = []
    for i, cart in enumerate(scenario.clusters):
        cell = from_cartesian(cart, frame)
        nodes.append(NodeRecord(i, "gateway", cell, to_cartesian(cell, frame)))
    state = PlacementState(frame, nodes, kruskal_mst(nodes))

    while True:
        row = _last_unsatisfied(state)
        if row is None:
            break
        state.k += 1
        if state.k > MAX_OUTER_ITERATIONS:
            raise InternalInvariantError("placement loop failed to converge")
        new_ids: list[int] = []
        cur_p, cur_q = row.u, row.v
        while True:
            ppos, qpos = state.pos(cur_p), state.pos(cur_q)
            cands = case1_applicable(ppos, qpos, n)
            if cands:
                site = place_case1(ppos, qpos, n)
                a = _add_relay(state, site)
                new_ids.append(a)
                if splice:
                    modify_mst(state, [a], cur_p, cur_q)
                break
            s1, s2 = place_case2(ppos, qpos, n)
            a = _add_relay(state, s1)
            b = _add_relay(state, s2)
            new_ids.extend((a, b))
            if splice:
                modify_mst(state, [a, b], cur_p, cur_q)
            if is_coverage_connected(s1, s2, n):
                break
            cur_p, cur_q = a, b
        state.placed.append(new_ids)
        if not splice:
            state.tree = kruskal_mst(state.nodes)

    eta = sum(1 for nd in state.nodes if nd.kind == "intermediate")
    return Placement(
        algorithm=algorithm,
        frame=frame,
        nodes=state.nodes,
        edges=[(r.u, r.v) for r in state.tree.rows],
        eta=eta,
        iterations=state.k,
        wall_time_s=time.perf_counter() - t0,
        tree=state.tree,
    )


def run_egdo(scenario: Scenario) -> Placement:
    """Place relays with incremental tree splicing and local rerouting."""
    return _run(scenario, "egdo")


def run_gdo(scenario: Scenario) -> Placement:
    """Place relays recomputing the full spanning tree after each iteration."""
    return _run(scenario, "gdo")


def coverage_graph_connected(placement: Placement) -> bool:
    """True when every node pair is joined by a path of intersecting hexagons."""
    nodes = placement.nodes
    n = placement.frame.n
    if len(nodes) <= 1:
        return True
    seen = {nodes[0].id}
    stack = [nodes[0].id]
    while stack:
        u = stack.pop()
        upos = nodes[u].pos
        for nd in nodes:
            if nd.id not in seen and is_coverage_connected(upos, nd.pos, n):
                seen.add(nd.id)
                stack.append(nd.id)
    return len(seen) == len(nodes)
