"""Exhaustive search for DAG-non-stability certificates.

A certificate is a DAG plus a marginalisation set whose marginalised
independence model equals the model of no DAG on the remaining nodes. The
sweep over the remaining-node DAGs is exhaustive, so a hit certifies that the
DAG class is not stable under marginalisation.
"""

from __future__ import annotations

import itertools

from mixedgraphs.core import MixedGraph, arrow
from mixedgraphs.independence import independence_model, marginalise_condition

from .helpers import all_dags, model_fingerprint


def _labels(n):
    return tuple(f"v{k}" for k in range(n))


def dag_model_fingerprints(n):
    """Fingerprints of J_m(G) for every labeled DAG G on v0..v{n-1}."""
    return {model_fingerprint(g) for g in all_dags(_labels(n))}


def sweep_up_to(total_nodes):
    """All certificates with at most `total_nodes` nodes, trying every
    removal size and every marginalise/condition split of the removed block.

    Relabeling symmetry lets the removed block be the trailing labels.
    Returns (certificates, graphs_examined).
    """
    finger_cache = {k: dag_model_fingerprints(k) for k in range(1, total_nodes)}
    certificates = []
    examined = 0
    for n in range(2, total_nodes + 1):
        labels = _labels(n)
        for g in all_dags(labels):
            examined += 1
            J = independence_model(g)
            for k_removed in range(1, n):
                removed = labels[n - k_removed :]
                for m_size in range(k_removed + 1):
                    for M in itertools.combinations(removed, m_size):
                        C = set(removed) - set(M)
                        alpha = marginalise_condition(J, set(M), C)
                        if model_fingerprint(alpha) not in finger_cache[n - k_removed]:
                            certificates.append((g, set(M), C))
    return certificates, examined


def find_marginalisation_certificate(total_nodes):
    """First DAG on `total_nodes` nodes (edge count ascending) whose model,
    marginalised over the last node, no smaller DAG induces."""
    labels = _labels(total_nodes)
    m = labels[-1]
    remaining_fingerprints = dag_model_fingerprints(total_nodes - 1)
    pairs = [(a, b) for a in labels for b in labels if a != b]
    tried = 0
    for r in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, r):
            if sum(1 for t, _h in combo if t == m) < 2:
                continue  # an arc needs a marginalised common source
            g = MixedGraph(labels, [arrow(a, b) for a, b in combo])
            if g.cycle_nodes:
                continue
            tried += 1
            alpha = marginalise_condition(independence_model(g), {m}, set())
            if model_fingerprint(alpha) not in remaining_fingerprints:
                return g, {m}, alpha, tried, len(remaining_fingerprints)
    return None
