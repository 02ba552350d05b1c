"""Spanning-tree machinery over lattice nodes.

The tree is kept as a list of edge rows sorted ascending by lattice length
(ties by endpoint ids), because the placement loop repeatedly needs the
longest remaining edge and splices new rows in while preserving the order.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import InternalInvariantError
from .hcs import HexCoord, hex_distance


class NodeRecord(NamedTuple):
    id: int
    kind: str  # "gateway" | "intermediate"
    pos: HexCoord
    cart: tuple[float, float]


class EdgeRow(NamedTuple):
    """One tree edge; ``u < v`` and rows compare as (len, u, v)."""

    length: int
    u: int
    v: int


def make_row(a: int, b: int, length: int) -> EdgeRow:
    return EdgeRow(length, a, b) if a < b else EdgeRow(length, b, a)


@dataclass
class EdgeMatrix:
    """Tree edges sorted ascending by (length, min id, max id)."""

    rows: list[EdgeRow] = field(default_factory=list)

    def insert(self, row: EdgeRow) -> None:
        insort(self.rows, row)

    def remove(self, a: int, b: int) -> EdgeRow:
        if a > b:
            a, b = b, a
        for i, row in enumerate(self.rows):
            if row.u == a and row.v == b:
                return self.rows.pop(i)
        raise KeyError(f"edge ({a}, {b}) not in tree")

    def find(self, a: int, b: int) -> EdgeRow | None:
        if a > b:
            a, b = b, a
        for row in self.rows:
            if row.u == a and row.v == b:
                return row
        return None

    def last(self) -> EdgeRow:
        if not self.rows:
            raise ValueError("edge matrix is empty")
        return self.rows[-1]

    def neighbors(self, node: int) -> list[int]:
        out = []
        for row in self.rows:
            if row.u == node:
                out.append(row.v)
            elif row.v == node:
                out.append(row.u)
        return out

    def degree(self, node: int) -> int:
        return sum(1 for row in self.rows if node in (row.u, row.v))

    def assert_sorted(self) -> None:
        if any(self.rows[i] > self.rows[i + 1] for i in range(len(self.rows) - 1)):
            raise InternalInvariantError("edge rows out of ascending order")

    def copy(self) -> "EdgeMatrix":
        return EdgeMatrix(list(self.rows))


class _DSU:
    def __init__(self, items: Iterable[int]):
        self.parent = {i: i for i in items}

    def find(self, a: int) -> int:
        p = self.parent
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def kruskal_mst(nodes: list[NodeRecord]) -> EdgeMatrix:
    """Minimum spanning tree under lattice distance, rows sorted ascending.

    Ties are broken by (length, min id, max id) so the result is unique and
    reproducible.  Uses a vectorized distance matrix for larger inputs.
    """
    if not nodes:
        raise ValueError("kruskal_mst needs at least one node")
    if len(nodes) == 1:
        return EdgeMatrix()
    ids = [nd.id for nd in nodes]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate node ids")

    if len(nodes) <= 40:
        edges = sorted(
            make_row(a.id, b.id, hex_distance(a.pos, b.pos))
            for i, a in enumerate(nodes)
            for b in nodes[i + 1 :]
        )
        dsu = _DSU(ids)
        tree = EdgeMatrix()
        needed = len(nodes) - 1
        for row in edges:
            if dsu.union(row.u, row.v):
                tree.rows.append(row)
                if len(tree.rows) == needed:
                    break
        tree.rows.sort()
        return tree
    return _kruskal_np(nodes)


def _kruskal_np(nodes: list[NodeRecord]) -> EdgeMatrix:
    xs = np.array([nd.pos.x for nd in nodes], dtype=np.int64)
    ys = np.array([nd.pos.y for nd in nodes], dtype=np.int64)
    dx = xs[:, None] - xs[None, :]
    dy = ys[:, None] - ys[None, :]
    dist = np.maximum(np.abs(dx), np.maximum(np.abs(dy), np.abs(dx + dy)))
    iu, ju = np.triu_indices(len(nodes), k=1)
    ids = np.array([nd.id for nd in nodes], dtype=np.int64)
    a = np.minimum(ids[iu], ids[ju])
    b = np.maximum(ids[iu], ids[ju])
    lens = dist[iu, ju]
    order = np.lexsort((b, a, lens))

    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    id_index = {nd.id: i for i, nd in enumerate(nodes)}
    tree = EdgeMatrix()
    needed = len(nodes) - 1
    for k in order:
        ra, rb = find(id_index[int(a[k])]), find(id_index[int(b[k])])
        if ra != rb:
            parent[rb] = ra
            tree.rows.append(EdgeRow(int(lens[k]), int(a[k]), int(b[k])))
            if len(tree.rows) == needed:
                break
    tree.rows.sort()
    return tree


def find_terminals(t: EdgeMatrix) -> set[int]:
    """All degree-1 nodes of the tree."""
    deg: dict[int, int] = {}
    for row in t.rows:
        deg[row.u] = deg.get(row.u, 0) + 1
        deg[row.v] = deg.get(row.v, 0) + 1
    return {node for node, d in deg.items() if d == 1}


class LineGraph(NamedTuple):
    """A path walked from a terminal up to (excluding) its stop node.

    ``members`` are the adjustable nodes in walk order, terminal first; the
    stop node is the successor of the last member.
    """

    members: tuple[int, ...]
    stop: int


def extract_line_graphs(t: EdgeMatrix, selected: set[int]) -> list[LineGraph]:
    """Walk each terminal's path until a 3-connected, terminal, or selected node.

    The collected members (the walk's terminal plus interior 2-connected
    nodes) are the potentially adjustable nodes: re-attaching any of them to
    a new relay cannot create a cycle.  Stop nodes are excluded, as are
    walks starting from a selected terminal.  Lines are returned ordered by
    their starting terminal id.
    """
    adj: dict[int, list[int]] = {}
    for row in t.rows:
        adj.setdefault(row.u, []).append(row.v)
        adj.setdefault(row.v, []).append(row.u)
    lines = []
    for term in sorted(find_terminals(t)):
        if term in selected:
            continue
        members = [term]
        prev, cur = term, adj[term][0]
        while True:
            deg = len(adj[cur])
            if deg != 2 or cur in selected:
                break
            members.append(cur)
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
        lines.append(LineGraph(tuple(members), cur))
    return lines


def is_tree(t: EdgeMatrix, node_count: int) -> bool:
    """True iff the rows form a spanning tree over ``node_count`` nodes."""
    if node_count <= 0:
        return node_count == 0 and not t.rows
    if len(t.rows) != node_count - 1:
        return False
    if node_count == 1:
        return True
    touched: set[int] = set()
    for row in t.rows:
        touched.add(row.u)
        touched.add(row.v)
    if len(touched) != node_count:
        return False
    dsu = _DSU(touched)
    for row in t.rows:
        if not dsu.union(row.u, row.v):
            return False  # cycle
    root = dsu.find(next(iter(touched)))
    return all(dsu.find(v) == root for v in touched)
