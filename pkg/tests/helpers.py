"""Shared test machinery: independent oracles and exhaustive enumerators.

Everything here is deliberately written from scratch against the definitions
(not by calling the code paths under test) so the dual-route checks stay
meaningful.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from mixedgraphs.core import ARROW, MixedGraph, arc, arrow, line
from mixedgraphs.independence import independence_model
from mixedgraphs.msep import ConnectionQuery, enumerate_connecting_paths
from mixedgraphs.project import ProjectionSpec


def mk(text):
    from mixedgraphs.textfmt import graph_from_text

    return graph_from_text(text)


def all_dags(labels):
    """Every labeled DAG over the given nodes."""
    pairs = [(a, b) for a in labels for b in labels if a != b]
    for r in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, r):
            g = MixedGraph(labels, [arrow(a, b) for a, b in combo])
            if not g.cycle_nodes:
                yield g


def pair_edge_options(a, b, multi):
    """Edge fillings of one unordered pair: all 16 subsets of the four slots,
    or the 5 at-most-one-edge choices when multi is False."""
    slots = [line(a, b), arc(a, b), arrow(a, b), arrow(b, a)]
    if multi:
        for mask in range(16):
            yield tuple(slots[k] for k in range(4) if (mask >> k) & 1)
    else:
        yield ()
        for s in slots:
            yield (s,)


def all_mixed_graphs(labels, multi=True):
    """Every LMG over the labels (multi=False: at most one edge per pair)."""
    pairs = list(itertools.combinations(labels, 2))
    option_lists = [list(pair_edge_options(a, b, multi)) for a, b in pairs]
    for combo in itertools.product(*option_lists):
        yield MixedGraph(labels, [e for part in combo for e in part])


def model_fingerprint(g_or_model):
    model = (
        g_or_model
        if hasattr(g_or_model, "statements")
        else independence_model(g_or_model)
    )
    return frozenset(s.key for s in model.statements)


def moral_separated(dag: MixedGraph, A, B, C):
    """Moralisation-based separation on DAGs, written independently of the
    walk engine: restrict to ancestors, marry parents, drop directions,
    delete C, test undirected connectivity."""
    A, B, C = set(A), set(B), set(C)
    if not A or not B:
        return True
    keep = A | B | C
    keep |= dag.ancestors(keep)
    sub = dag.induced_subgraph(keep)
    und = {frozenset((e.a, e.b)) for e in sub.edges}
    for n in sub.nodes:
        for x, y in itertools.combinations(sorted(sub.parents(n)), 2):
            und.add(frozenset((x, y)))
    adj = defaultdict(set)
    for fs in und:
        x, y = tuple(fs)
        if x in C or y in C:
            continue
        adj[x].add(y)
        adj[y].add(x)
    seen = set(A)
    frontier = list(A)
    while frontier:
        n = frontier.pop()
        for m in adj[n]:
            if m not in seen:
                seen.add(m)
                frontier.append(m)
    return not (seen & B)


def path_connects(g, a, b, M, C):
    """Strict simple-path m-connection with an explicit non-collider set."""
    return bool(
        enumerate_connecting_paths(g, ConnectionQuery(a, b, frozenset(M), frozenset(C)), limit=1)
    )


def pairwise_path_separated_paper(g, A, B, C):
    """m-separation by exhaustive simple paths, with the non-collider set
    taken as V minus A, B, C (the displayed form of the criterion)."""
    M = g.node_set - set(A) - set(B) - set(C)
    return not any(path_connects(g, a, b, M, C) for a in A for b in B)


def pairwise_path_separated_loose(g, A, B, C):
    """Same, but non-colliders may sit anywhere outside C."""
    M = g.node_set - set(C)
    return not any(path_connects(g, a, b, M - {a, b}, C) for a in A for b in B)


def path_signatures(g, i, j, M, C):
    """End-mark signatures over strict simple paths (the reading under which
    the edge characterization is *not* exact on multi-edge graphs)."""
    query = ConnectionQuery(i, j, frozenset(M), frozenset(C))
    sigs = set()
    for w in enumerate_connecting_paths(g, query):
        sigs.add((w.edges[0].mark_at(i), w.edges[-1].mark_at(j)))
    return frozenset(sigs)


def replay_trace(graph: MixedGraph, spec: ProjectionSpec, trace):
    """Reapply a recorded projection trace mechanically: V-rule additions on
    the full node set, then restriction to the survivors, then the
    replacement steps."""
    edges = set(graph.edges)
    survivors = graph.node_set - spec.removed
    restricted = False
    for step in trace:
        if step.rule.isdigit():
            assert not restricted, "V-rule step after restriction"
            edges.add(step.generated)
            continue
        if not restricted:
            edges = {e for e in edges if e.a in survivors and e.b in survivors}
            restricted = True
        if step.removed is not None:
            edges.discard(step.removed)
        if step.generated is not None:
            edges.add(step.generated)
    if not restricted:
        edges = {e for e in edges if e.a in survivors and e.b in survivors}
    return MixedGraph(survivors, edges)


def closure_random_order(g: MixedGraph, spec: ProjectionSpec, rng):
    """Independent randomized-order reimplementation of the V-rule closure:
    applies one applicable rule at a time, chosen at random."""
    edges = set(g.edges)
    while True:
        parents = defaultdict(set)
        for e in edges:
            if e.kind == ARROW:
                parents[e.b].add(e.a)
        enab = set(spec.cond)
        frontier = list(enab)
        while frontier:
            t = frontier.pop()
            for p in parents[t]:
                if p not in enab:
                    enab.add(p)
                    frontier.append(p)
        enab |= spec.cond
        applicable = []
        for t in g.nodes:
            incident = [e for e in edges if t in (e.a, e.b)]
            for e1, e2 in itertools.combinations(incident, 2):
                i, j = e1.other(t), e2.other(t)
                if i == j:
                    continue
                collider = e1.mark_at(t) == "head" and e2.mark_at(t) == "head"
                if collider and t not in enab:
                    continue
                if not collider and t not in spec.marg:
                    continue
                from mixedgraphs.core import signature_edge

                gen = signature_edge(e1.mark_at(i), e2.mark_at(j), i, j)
                if gen not in edges:
                    applicable.append(gen)
        if not applicable:
            break
        edges.add(rng.choice(applicable))
    return MixedGraph(g.nodes, edges)
