"""m-separation queries on loopless mixed graphs.

A path m-connects given M and C when every collider inner node is in
C ∪ an(C) and every non-collider inner node is in M. The fast engine runs a
BFS over walk states (node, arrival mark); on ribbonless graphs a legal walk
exists iff a legal path does (connecting-walk concatenation only shortcuts
through configurations that ribbonlessness forces to carry an
endpoint-identical edge), so the walk verdict is exact there. On other
graphs walks can over-connect — e.g. a->t<-b with a line t--x admits the
walk a->t--x--t<-b but no connecting path — so a "connected" walk verdict is
re-checked by exhaustive simple-path search before it is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import HEAD, TAIL, MixedGraph, MixedGraphError, signature_edge


class NotDisjoint(MixedGraphError):
    pass


class OverlapError(MixedGraphError):
    pass


@dataclass(frozen=True)
class ConnectionQuery:
    """A source/target connection question given explicit M and C sets."""

    source: str
    target: str
    allowed_noncolliders: frozenset
    collider_enablers: frozenset

    def __post_init__(self):
        object.__setattr__(
            self, "allowed_noncolliders", frozenset(self.allowed_noncolliders)
        )
        object.__setattr__(
            self, "collider_enablers", frozenset(self.collider_enablers)
        )
        if self.source == self.target:
            raise OverlapError("source and target must differ")
        if {self.source, self.target} & self.collider_enablers:
            raise OverlapError("source/target may not be collider enablers")


@dataclass(frozen=True)
class PathWitness:
    """A connecting path: node sequence, chosen edges, per-inner collider flags."""

    nodes: tuple
    edges: tuple
    colliders: tuple

    def render(self):
        parts = []
        for u, e in zip(self.nodes, self.edges):
            if e.kind == "arrow":
                token = "->" if e.a == u else "<-"
            elif e.kind == "arc":
                token = "<->"
            else:
                token = "--"
            parts.extend((u, token))
        parts.append(self.nodes[-1])
        return " ".join(parts)


@dataclass(frozen=True)
class PathEnumeration:
    paths: tuple
    truncated: bool

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)

    def __bool__(self):
        return bool(self.paths)


def _walk_reach(g: MixedGraph, source, collider_set, allowed, blocked):
    """All nodes reachable from source along legal m-connecting walks.

    Non-collider inner nodes must lie in `allowed` when given, otherwise
    merely outside `blocked`.
    """
    reached = set()
    seen = set()
    frontier = []
    for o, _mh, mo, _e in g.flows(source):
        reached.add(o)
        state = (o, mo == HEAD)
        if state not in seen:
            seen.add(state)
            frontier.append(state)
    while frontier:
        nxt = []
        for t, arrived_head in frontier:
            for o, mh, mo, _e in g.flows(t):
                if arrived_head and mh == HEAD:
                    if t not in collider_set:
                        continue
                elif allowed is not None:
                    if t not in allowed:
                        continue
                elif t in blocked:
                    continue
                reached.add(o)
                state = (o, mo == HEAD)
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return reached


def _iter_paths(g: MixedGraph, source, target, collider_set, allowed, blocked):
    """All m-connecting simple paths, depth-first in canonical node order."""
    flows = g.flows

    def rec(t, arrived_head, visited, nodes, edges, flags):
        for o, mh, mo, e in flows(t):
            if o in visited:
                continue
            if t != source:
                is_coll = arrived_head and mh == HEAD
                if is_coll:
                    if t not in collider_set:
                        continue
                elif allowed is not None:
                    if t not in allowed:
                        continue
                elif t in blocked:
                    continue
                new_flags = flags + (is_coll,)
            else:
                new_flags = flags
            new_nodes = nodes + (o,)
            new_edges = edges + (e,)
            if o == target:
                yield PathWitness(new_nodes, new_edges, new_flags)
            else:
                visited.add(o)
                yield from rec(o, mo == HEAD, visited, new_nodes, new_edges, new_flags)
                visited.discard(o)

    yield from rec(source, False, {source}, (source,), (), ())


def _query_sets(g: MixedGraph, query: ConnectionQuery):
    g._check_node(query.source)
    g._check_node(query.target)
    g._check_nodes(query.allowed_noncolliders)
    g._check_nodes(query.collider_enablers)
    enablers = query.collider_enablers
    return enablers | g.ancestors(enablers)


def connecting_path_exists(g: MixedGraph, query: ConnectionQuery) -> bool:
    """Whether some path m-connects source and target given the query sets."""
    collider_set = _query_sets(g, query)
    allowed = query.allowed_noncolliders
    if query.target not in _walk_reach(g, query.source, collider_set, allowed, None):
        return False
    if g.is_ribbonless:
        return True
    paths = _iter_paths(g, query.source, query.target, collider_set, allowed, None)
    return next(iter(paths), None) is not None


def enumerate_connecting_paths(
    g: MixedGraph, query: ConnectionQuery, limit: int = 1_000_000
) -> PathEnumeration:
    """Exhaustive oracle: all m-connecting simple paths, truncated at limit."""
    collider_set = _query_sets(g, query)
    out = []
    truncated = False
    for witness in _iter_paths(
        g, query.source, query.target, collider_set, query.allowed_noncolliders, None
    ):
        if len(out) >= limit:
            truncated = True
            break
        out.append(witness)
    return PathEnumeration(tuple(out), truncated)


def _pair_path_connected(g, a, b, collider_set, allowed, blocked):
    return next(
        iter(_iter_paths(g, a, b, collider_set, allowed, blocked)), None
    ) is not None


def m_separated(g: MixedGraph, A, B, C) -> bool:
    """Whether A ⊥_m B | C: no m-connecting path between A and B given C,
    with non-colliders required outside A ∪ B ∪ C."""
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    if A & B or A & C or B & C:
        raise NotDisjoint("A, B, C must be pairwise disjoint")
    g._check_nodes(A | B | C)
    if not A or not B:
        return True
    collider_set = C | g.ancestors(C)
    allowed_paper = g.node_set - A - B - C
    ribbonless = g.is_ribbonless
    for a in sorted(A):
        reached = _walk_reach(g, a, collider_set, None, C)
        hits = reached & B
        if not hits:
            continue
        if ribbonless:
            return False
        for b in sorted(hits):
            if _pair_path_connected(g, a, b, collider_set, allowed_paper, None):
                return False
    return True


def _walk_signature_reach(g, source, first_mark, collider_set, allowed):
    """Arrival marks realized at each node by m-connecting walks out of
    source whose first edge carries `first_mark` at the source."""
    arrivals = {}
    seen = set()
    frontier = []
    for o, mh, mo, _e in g.flows(source):
        if mh != first_mark:
            continue
        arrivals.setdefault(o, set()).add(mo)
        state = (o, mo == HEAD)
        if state not in seen:
            seen.add(state)
            frontier.append(state)
    while frontier:
        nxt = []
        for t, arrived_head in frontier:
            for o, mh, mo, _e in g.flows(t):
                if arrived_head and mh == HEAD:
                    if t not in collider_set:
                        continue
                elif t not in allowed:
                    continue
                arrivals.setdefault(o, set()).add(mo)
                state = (o, mo == HEAD)
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return arrivals


def endpoint_identical_connection(g: MixedGraph, i, j, M, C) -> frozenset:
    """Mark signatures (at i, at j) realized by m-connecting walks given M, C.

    Each signature corresponds to the edge type a connection of that shape
    would generate: tail/tail a line, head/head an arc, and a mixed pair the
    arrow into the head end. Walks rather than simple paths: on multi-edge
    graphs a connecting walk may revisit an endpoint and realize a signature
    no simple path carries (d -> a <-> d <-> b realizes tail-at-d/head-at-b
    when a enables the collider), and it is the walk reading under which
    generated projection edges match connection signatures exactly.
    """
    M, C = frozenset(M), frozenset(C)
    if M & C:
        raise NotDisjoint("M and C must be disjoint")
    if {i, j} & (M | C):
        raise OverlapError("endpoints may not lie in M or C")
    g._check_nodes({i, j} | M | C)
    collider_set = C | g.ancestors(C)
    signatures = set()
    for first in (TAIL, HEAD):
        arrivals = _walk_signature_reach(g, i, first, collider_set, M)
        for mark in arrivals.get(j, ()):
            signatures.add((first, mark))
    return frozenset(signatures)


def signature_edges(signatures, i, j):
    """Translate mark signatures between i and j into concrete edges."""
    return frozenset(signature_edge(mi, mj, i, j) for mi, mj in signatures)
