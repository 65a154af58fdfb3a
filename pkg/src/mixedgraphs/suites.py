"""Property suites behind the CLI `check` command.

Each suite runs randomized checks rooted at one input graph and reports a
serialized reproducer for every counterexample it finds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import MixedGraph, MixedGraphError, graph_equal
from .generators import random_spec
from .independence import independence_model, marginalise_condition, model_diff, model_equal
from .msep import endpoint_identical_connection, signature_edges
from .project import PROJECTORS, ProjectionSpec, project_ag, project_rg, project_sg
from .textfmt import document_for, serialize_graph
from .witness import is_maximal, is_maximal_literal, maximalize

MODEL_NODE_LIMIT = 8


class UnsuitableGraph(MixedGraphError):
    pass


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, message, graph=None, spec=None):
        parts = [message]
        if graph is not None:
            parts.append(
                serialize_graph(
                    document_for(
                        graph,
                        marg=spec.marg if spec else (),
                        cond=spec.cond if spec else (),
                    )
                ).rstrip()
            )
        self.failures.append("\n".join(parts))

    def summary(self):
        status = "ok" if self.ok else f"{len(self.failures)} counterexamples"
        return f"suite={self.suite} checked={self.checked} result={status}"


def _rng(base_seed, k):
    return random.Random((base_seed + 1) * 1_000_003 + k)


def _applicable_projectors(g: MixedGraph):
    out = []
    for name, tag in (("rg", "RG"), ("sg", "SG"), ("ag", "AG")):
        if tag in g.class_tags:
            out.append((name, PROJECTORS[name]))
    return out


def _require(condition, message):
    if not condition:
        raise UnsuitableGraph(message)


def stability_suite(g: MixedGraph, seeds: int = 20, base_seed: int = 0) -> SuiteResult:
    """Projected graphs must induce the marginalised/conditioned model."""
    result = SuiteResult("stability")
    _require(len(g.nodes) <= MODEL_NODE_LIMIT, "stability needs <= 8 nodes")
    projectors = _applicable_projectors(g)
    _require(projectors, "stability needs a ribbonless input")
    base_model = independence_model(g)
    for k in range(seeds):
        rng = _rng(base_seed, k)
        spec = random_spec(rng, g)
        expected = marginalise_condition(base_model, spec.marg, spec.cond)
        for name, projector in projectors:
            got = independence_model(projector(g, spec))
            result.checked += 1
            if not model_equal(expected, got):
                missing, extra = model_diff(expected, got)
                result.fail(
                    f"{name} projection changed the model "
                    f"(missing={sorted(missing)}, extra={sorted(extra)})",
                    g,
                    spec,
                )
    return result


def composition_suite(g: MixedGraph, seeds: int = 20, base_seed: int = 0) -> SuiteResult:
    """Two-stage projection must equal the one-stage union projection."""
    result = SuiteResult("composition")
    projectors = _applicable_projectors(g)
    _require(projectors, "composition needs a ribbonless input")
    for k in range(seeds):
        rng = _rng(base_seed, k)
        first = random_spec(rng, g)
        survivors = g.node_set - first.removed
        rest = sorted(survivors)
        rng.shuffle(rest)
        second_nodes = rest[: rng.randint(0, len(rest))]
        marg1 = {x for x in second_nodes if rng.random() < 0.5}
        second = ProjectionSpec(marg1, set(second_nodes) - marg1)
        union = ProjectionSpec(first.marg | second.marg, first.cond | second.cond)
        for name, projector in projectors:
            staged = projector(projector(g, first), second)
            direct = projector(g, union)
            result.checked += 1
            if not graph_equal(staged, direct):
                result.fail(
                    f"{name} two-stage != one-stage for "
                    f"M={sorted(first.marg)},C={sorted(first.cond)} then "
                    f"M1={sorted(second.marg)},C1={sorted(second.cond)}",
                    g,
                    union,
                )
    return result


def correspondence_suite(g: MixedGraph, seeds: int = 20, base_seed: int = 0) -> SuiteResult:
    """The RG, SG, and AG projections of a DAG induce the same model."""
    result = SuiteResult("correspondence")
    _require("DAG" in g.class_tags, "correspondence needs a DAG input")
    _require(len(g.nodes) <= MODEL_NODE_LIMIT, "correspondence needs <= 8 nodes")
    for k in range(seeds):
        rng = _rng(base_seed, k)
        spec = random_spec(rng, g)
        models = {
            name: independence_model(projector(g, spec))
            for name, projector in (
                ("rg", project_rg),
                ("sg", project_sg),
                ("ag", project_ag),
            )
        }
        result.checked += 1
        if not (
            model_equal(models["rg"], models["sg"])
            and model_equal(models["rg"], models["ag"])
        ):
            result.fail("projections induce different models", g, spec)
    return result


def lemma1_suite(g: MixedGraph, seeds: int = 20, base_seed: int = 0) -> SuiteResult:
    """Edges of the RG projection match endpoint-identical connection
    signatures computed in the input graph."""
    result = SuiteResult("lemma1")
    _require("RG" in g.class_tags, "lemma1 needs a ribbonless input")
    for k in range(seeds):
        rng = _rng(base_seed, k)
        spec = random_spec(rng, g)
        projected = project_rg(g, spec)
        nodes = projected.nodes
        ok = True
        for pos, i in enumerate(nodes):
            for j in nodes[pos + 1 :]:
                expected = signature_edges(
                    endpoint_identical_connection(g, i, j, spec.marg, spec.cond),
                    i,
                    j,
                )
                actual = frozenset(e for _o, _mh, _mo, e in projected.flows(i) if _o == j)
                if expected != actual:
                    ok = False
                    result.fail(
                        f"edge signatures between {i} and {j} differ: "
                        f"expected {sorted(e.render() for e in expected)}, "
                        f"got {sorted(e.render() for e in actual)}",
                        g,
                        spec,
                    )
        result.checked += 1
        if not ok:
            break
    return result


def maximality_suite(g: MixedGraph, seeds: int = 0, base_seed: int = 0) -> SuiteResult:
    """PIP-emptiness vs the literal definition, plus maximalize invariants."""
    result = SuiteResult("maximality")
    _require("RG" in g.class_tags, "maximality needs a ribbonless input")
    _require(len(g.nodes) <= MODEL_NODE_LIMIT, "maximality needs <= 8 nodes")
    pip_maximal = is_maximal(g)
    literal = is_maximal_literal(g)
    result.checked += 1
    if pip_maximal != literal:
        result.fail(
            f"PIP criterion says maximal={pip_maximal}, literal says {literal}", g
        )
    maximal = maximalize(g)
    result.checked += 1
    if not model_equal(independence_model(g), independence_model(maximal)):
        result.fail("maximalize changed the independence model", g)
    result.checked += 1
    if not is_maximal_literal(maximal):
        result.fail("maximalize output is not pairwise Markov", maximal)
    return result


SUITES = {
    "stability": stability_suite,
    "composition": composition_suite,
    "correspondence": correspondence_suite,
    "lemma1": lemma1_suite,
    "maximality": maximality_suite,
}
