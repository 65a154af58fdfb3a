"""Loopless mixed graphs with arrows, arcs, and lines.

The graph value is immutable: every operation returns a new graph, and all
derived structure (adjacency maps, ribbon reports, class tags) is cached on
the instance, so graphs are safe to share between threads.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Iterable, NamedTuple

LINE = "line"
ARC = "arc"
ARROW = "arrow"

HEAD = "head"
TAIL = "tail"

KIND_RANK = {LINE: 0, ARC: 1, ARROW: 2}
EDGE_TOKEN = {LINE: "--", ARC: "<->", ARROW: "->"}

_LABEL_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class MixedGraphError(Exception):
    """Base class for all domain errors raised by this package."""


class LoopEdge(MixedGraphError):
    pass


class UnknownNode(MixedGraphError):
    pass


class InvalidLabel(MixedGraphError):
    pass


class Edge(NamedTuple):
    """One edge of a mixed graph.

    Lines and arcs are unordered and stored with endpoints sorted; arrows are
    stored as (tail, head).
    """

    kind: str
    a: str
    b: str

    def mark_at(self, node):
        """Arrowhead status ('head'/'tail') of this edge at one endpoint."""
        if self.kind == LINE:
            return TAIL
        if self.kind == ARC:
            return HEAD
        return HEAD if node == self.b else TAIL

    def other(self, node):
        return self.b if node == self.a else self.a

    def render(self):
        return f"{self.a} {EDGE_TOKEN[self.kind]} {self.b}"


def line(x, y) -> Edge:
    x, y = sorted((x, y))
    return Edge(LINE, x, y)


def arc(x, y) -> Edge:
    x, y = sorted((x, y))
    return Edge(ARC, x, y)


def arrow(tail, head) -> Edge:
    return Edge(ARROW, tail, head)


def canonical_edge(edge: Edge) -> Edge:
    """Normalize endpoint order for symmetric edges; reject loops."""
    kind, a, b = edge
    if kind not in KIND_RANK:
        raise InvalidLabel(f"unknown edge kind {kind!r}")
    if a == b:
        raise LoopEdge(f"loop at node {a!r}")
    if kind != ARROW and a > b:
        return Edge(kind, b, a)
    return Edge(kind, a, b)


def edge_sort_key(edge: Edge):
    return (KIND_RANK[edge.kind], edge.a, edge.b)


def signature_edge(mark_a, mark_b, a, b) -> Edge:
    """The edge whose endpoint marks at (a, b) are (mark_a, mark_b)."""
    if mark_a == HEAD and mark_b == HEAD:
        return arc(a, b)
    if mark_a == TAIL and mark_b == TAIL:
        return line(a, b)
    if mark_b == HEAD:
        return arrow(a, b)
    return arrow(b, a)


class RibbonReport(NamedTuple):
    """A collider V <h, inner, j> violating ribbonlessness.

    witness_kind is 'line' or 'cycle'; witness_node is the inner node or the
    descendant of it that touches a line / lies on a direction-preserving
    cycle.
    """

    h: str
    inner: str
    j: str
    witness_kind: str
    witness_node: str


class MixedGraph:
    """An immutable loopless mixed graph over labeled nodes.

    At most one edge of each kind per unordered pair (arrows counted per
    direction), no loops. Node order is lexicographic everywhere.
    """

    def __init__(self, nodes: Iterable[str], edges: Iterable[Edge] = ()):
        node_set = set()
        for n in nodes:
            if not isinstance(n, str) or not _LABEL_RE.match(n):
                raise InvalidLabel(f"bad node label {n!r}")
            node_set.add(n)
        canon = set()
        for e in edges:
            e = canonical_edge(e)
            if e.a not in node_set:
                raise UnknownNode(f"edge endpoint {e.a!r} not a declared node")
            if e.b not in node_set:
                raise UnknownNode(f"edge endpoint {e.b!r} not a declared node")
            canon.add(e)
        self._nodes = tuple(sorted(node_set))
        self._node_set = frozenset(node_set)
        self._edges = frozenset(canon)

        parents = {n: set() for n in self._nodes}
        children = {n: set() for n in self._nodes}
        spouses = {n: set() for n in self._nodes}
        neighbours = {n: set() for n in self._nodes}
        incident = {n: [] for n in self._nodes}
        for e in canon:
            incident[e.a].append(e)
            incident[e.b].append(e)
            if e.kind == ARROW:
                parents[e.b].add(e.a)
                children[e.a].add(e.b)
            elif e.kind == ARC:
                spouses[e.a].add(e.b)
                spouses[e.b].add(e.a)
            else:
                neighbours[e.a].add(e.b)
                neighbours[e.b].add(e.a)
        self._parents = {n: frozenset(s) for n, s in parents.items()}
        self._children = {n: frozenset(s) for n, s in children.items()}
        self._spouses = {n: frozenset(s) for n, s in spouses.items()}
        self._neighbours = {n: frozenset(s) for n, s in neighbours.items()}
        # (other endpoint, mark here, mark there, edge), in canonical order;
        # this is the walk structure used by the separation engine.
        self._flows = {
            n: tuple(
                (e.other(n), e.mark_at(n), e.mark_at(e.other(n)), e)
                for e in sorted(incident[n], key=edge_sort_key)
            )
            for n in self._nodes
        }

    # --- basic accessors -------------------------------------------------

    @property
    def nodes(self) -> tuple:
        return self._nodes

    @property
    def node_set(self) -> frozenset:
        return self._node_set

    @property
    def edges(self) -> frozenset:
        return self._edges

    def sorted_edges(self) -> list:
        return sorted(self._edges, key=edge_sort_key)

    def __contains__(self, node):
        return node in self._node_set

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._node_set == other._node_set and self._edges == other._edges

    def __hash__(self):
        return hash((self._node_set, self._edges))

    def __repr__(self):
        edges = ", ".join(e.render() for e in self.sorted_edges())
        return f"MixedGraph(nodes={list(self._nodes)}, edges=[{edges}])"

    def _check_node(self, node):
        if node not in self._node_set:
            raise UnknownNode(f"node {node!r} not in graph")

    def _check_nodes(self, nodes):
        for n in nodes:
            self._check_node(n)

    # --- structural queries ----------------------------------------------

    def parents(self, node) -> frozenset:
        self._check_node(node)
        return self._parents[node]

    def children(self, node) -> frozenset:
        self._check_node(node)
        return self._children[node]

    def spouses(self, node) -> frozenset:
        self._check_node(node)
        return self._spouses[node]

    def neighbours(self, node) -> frozenset:
        self._check_node(node)
        return self._neighbours[node]

    def adjacent(self, i, j) -> bool:
        self._check_node(i)
        self._check_node(j)
        return (
            j in self._parents[i]
            or j in self._children[i]
            or j in self._spouses[i]
            or j in self._neighbours[i]
        )

    def edges_between(self, i, j) -> list:
        self._check_node(i)
        self._check_node(j)
        return [e for e in self._flows[i] if e[0] == j]

    def flows(self, node) -> tuple:
        return self._flows[node]

    def ancestors(self, targets) -> frozenset:
        """Nodes with a direction-preserving arrow path of length >= 1 into
        some target. Lines and arcs never transmit ancestry; the result meets
        the targets only through directed cycles."""
        targets = set(targets)
        self._check_nodes(targets)
        seen = set()
        frontier = list(targets)
        while frontier:
            nxt = []
            for t in frontier:
                for p in self._parents[t]:
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        return frozenset(seen)

    def descendants(self, targets) -> frozenset:
        targets = set(targets)
        self._check_nodes(targets)
        seen = set()
        frontier = list(targets)
        while frontier:
            nxt = []
            for t in frontier:
                for c in self._children[t]:
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def cycle_nodes(self) -> frozenset:
        """Nodes lying on some direction-preserving cycle."""
        return frozenset(n for n in self._nodes if n in self.ancestors({n}))

    def induced_subgraph(self, keep) -> "MixedGraph":
        keep = set(keep)
        self._check_nodes(keep)
        return MixedGraph(
            keep, [e for e in self._edges if e.a in keep and e.b in keep]
        )

    # --- class structure ---------------------------------------------------

    @cached_property
    def ribbons(self) -> tuple:
        return tuple(_find_ribbons(self))

    @cached_property
    def is_ribbonless(self) -> bool:
        return not self.ribbons

    @cached_property
    def class_tags(self) -> frozenset:
        return _classify(self)


def make_graph(nodes: Iterable[str], edges: Iterable[Edge] = ()) -> MixedGraph:
    """Build a canonical, deduplicated mixed graph."""
    return MixedGraph(nodes, edges)


def graph_equal(g1: MixedGraph, g2: MixedGraph) -> bool:
    """Labeled-graph equality: identical node sets and canonical edge sets."""
    return g1 == g2


def direction_preserving_cycles(g: MixedGraph) -> frozenset:
    return g.cycle_nodes


def collider_vs(g: MixedGraph):
    """All collider V-configurations as (h, edge1, inner, edge2, j).

    Each unordered configuration is yielded once; for a mixed arrow/arc
    collider the arrow endpoint is listed first.
    """
    for t in g.nodes:
        head_edges = sorted(
            (e for (_o, mt, _mo, e) in g.flows(t) if mt == HEAD),
            key=edge_sort_key,
        )
        for e1, e2 in itertools.combinations(head_edges, 2):
            o1, o2 = e1.other(t), e2.other(t)
            if o1 == o2:
                continue
            yield _orient_collider(e1, o1, t, e2, o2)


def _orient_collider(e1, h, t, e2, j):
    k1 = ARROW if e1.kind == ARROW else ARC
    k2 = ARROW if e2.kind == ARROW else ARC
    if (k1, k2) == (ARC, ARROW) or (k1 == k2 and h > j):
        return (j, e2, t, e1, h)
    return (h, e1, t, e2, j)


def _ribbon_blocker(e1, h, e2, j, g: MixedGraph) -> bool:
    """Whether the endpoint-identical h-j edge for this collider V exists."""
    arrow1 = e1.kind == ARROW
    arrow2 = e2.kind == ARROW
    if arrow1 and arrow2:
        return line(h, j) in g.edges
    if not arrow1 and not arrow2:
        return arc(h, j) in g.edges
    return arrow(h, j) in g.edges  # h -> inner <-> j needs an h -> j arrow


def _find_ribbons(g: MixedGraph):
    reports = []
    for h, e1, t, e2, j in collider_vs(g):
        if _ribbon_blocker(e1, h, e2, j, g):
            continue
        witness = _ribbon_witness(g, t)
        if witness is not None:
            reports.append(RibbonReport(h, t, j, witness[0], witness[1]))
    return reports


def _ribbon_witness(g: MixedGraph, inner):
    reach = sorted({inner} | g.descendants({inner}))
    for d in reach:
        if g.neighbours(d):
            return ("line", d)
    for d in reach:
        if d in g.cycle_nodes:
            return ("cycle", d)
    return None


def find_ribbons(g: MixedGraph) -> tuple:
    """Exhaustively list ribbons; empty exactly when g is ribbonless."""
    return g.ribbons


def _classify(g: MixedGraph) -> frozenset:
    tags = {"LMG"}
    kinds = {e.kind for e in g.edges}
    acyclic = not g.cycle_nodes
    if kinds <= {LINE}:
        tags.add("UG")
    if kinds <= {ARC}:
        tags.add("BG")
    if kinds <= {ARROW} and acyclic:
        tags.add("DAG")
    if g.is_ribbonless:
        tags.add("RG")
    no_head_at_line = all(
        not (g.neighbours(n) and (g.parents(n) or g.spouses(n))) for n in g.nodes
    )
    if no_head_at_line and acyclic:
        tags.add("SG")
        simple = all(len(g.edges_between(e.a, e.b)) == 1 for e in g.edges)
        ancestral = all(
            n not in g.ancestors(g.parents(n) | g.spouses(n))
            for n in g.nodes
            if g.parents(n) or g.spouses(n)
        )
        if simple and ancestral:
            tags.add("AG")
    return frozenset(tags)


def classify(g: MixedGraph) -> frozenset:
    """Class tags of g among {LMG, UG, BG, DAG, RG, SG, AG}."""
    return g.class_tags
