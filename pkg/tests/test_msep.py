import itertools
import random

import pytest

from mixedgraphs.core import HEAD, TAIL
from mixedgraphs.generators import random_dag, random_lmg
from mixedgraphs.msep import (
    ConnectionQuery,
    NotDisjoint,
    OverlapError,
    connecting_path_exists,
    endpoint_identical_connection,
    enumerate_connecting_paths,
    m_separated,
)

from .helpers import (
    mk,
    moral_separated,
    pairwise_path_separated_loose,
    pairwise_path_separated_paper,
)


def q(a, b, M=(), C=()):
    return ConnectionQuery(a, b, frozenset(M), frozenset(C))


def test_chain_connects_through_allowed_noncollider():
    g = mk("a -> m\nm -> b")
    assert connecting_path_exists(g, q("a", "b", M={"m"}))
    assert not connecting_path_exists(g, q("a", "b"))


def test_collider_blocked_until_enabled():
    g = mk("a -> c\nb -> c")
    assert not connecting_path_exists(g, q("a", "b"))
    assert connecting_path_exists(g, q("a", "b", C={"c"}))


def test_collider_enabled_through_descendant():
    g = mk("a -> c\nb -> c\nc -> d")
    assert connecting_path_exists(g, q("a", "b", C={"d"}))


def test_query_validation():
    g = mk("a -> b")
    with pytest.raises(OverlapError):
        q("a", "a")
    with pytest.raises(OverlapError):
        q("a", "b", C={"b"})


def test_enumerate_chain():
    g = mk("a -> m\nm -> b")
    result = enumerate_connecting_paths(g, q("a", "b", M={"m"}))
    assert [w.nodes for w in result] == [("a", "m", "b")]
    assert result.paths[0].colliders == (False,)
    assert not result.truncated


def test_enumerate_blocked_collider_is_empty():
    g = mk("a -> c\nb -> c")
    assert len(enumerate_connecting_paths(g, q("a", "b"))) == 0


def test_witness_collider_flags():
    g = mk("a -> c\nb -> c")
    (w,) = enumerate_connecting_paths(g, q("a", "b", C={"c"})).paths
    assert w.nodes == ("a", "c", "b")
    assert w.colliders == (True,)


def test_enumerate_two_parallel_routes():
    g = mk("a -> m1\nm1 -> b\na -> m2\nm2 -> b")
    result = enumerate_connecting_paths(g, q("a", "b", M={"m1", "m2"}))
    assert len(result) == 2


def test_enumerate_respects_limit():
    g = mk("a -> m1\nm1 -> b\na -> m2\nm2 -> b")
    result = enumerate_connecting_paths(g, q("a", "b", M={"m1", "m2"}), limit=1)
    assert len(result) == 1 and result.truncated


def test_m_separated_chain():
    g = mk("a -> m\nm -> b")
    assert m_separated(g, {"a"}, {"b"}, {"m"})
    assert not m_separated(g, {"a"}, {"b"}, set())


def test_adjacent_pair_never_separated():
    g = mk("a -> b\nb -> c")
    for csize in range(2):
        for C in itertools.combinations({"c"}, csize):
            assert not m_separated(g, {"a"}, {"b"}, set(C))


def test_empty_side_is_separated():
    g = mk("a -> b")
    assert m_separated(g, set(), {"b"}, set())


def test_m_separated_not_disjoint():
    g = mk("a -> b")
    with pytest.raises(NotDisjoint):
        m_separated(g, {"a"}, {"a"}, set())


def test_symmetry():
    rng = random.Random(17)
    for _ in range(200):
        g = random_lmg(rng, rng.randint(2, 6), p=0.2)
        nodes = list(g.nodes)
        rng.shuffle(nodes)
        A = set(nodes[:1])
        B = set(nodes[1:2])
        C = set(nodes[2:4])
        if not B:
            continue
        assert m_separated(g, A, B, C) == m_separated(g, B, A, C)


def test_engine_matches_path_oracle():
    # walk-state verdicts equal exhaustive path enumeration, including on
    # graphs that are not ribbonless
    rng = random.Random(23)
    for _ in range(1000):
        g = random_lmg(rng, rng.randint(2, 7), p=rng.uniform(0.05, 0.3))
        nodes = list(g.nodes)
        a, b = rng.sample(nodes, 2)
        rest = [x for x in nodes if x not in (a, b)]
        C = {x for x in rest if rng.random() < 0.3}
        M = {x for x in rest if x not in C and rng.random() < 0.6}
        query = q(a, b, M, C)
        assert connecting_path_exists(g, query) == bool(
            enumerate_connecting_paths(g, query)
        )


def test_walk_over_connects_on_ribbon_graphs_is_handled():
    # a->t<-b with a line t--x admits an m-connecting walk but no path; the
    # engine must still return the path verdict
    g = mk("a -> t\nb -> t\nt -- x")
    assert not connecting_path_exists(g, q("a", "b", M={"t", "x"}))
    assert m_separated(g, {"a"}, {"b"}, set())


def test_pairwise_reduction_soundness():
    # the displayed criterion (non-colliders in V minus A,B,C) agrees with
    # the loose variant (non-colliders anywhere outside C), and both agree
    # with m_separated
    rng = random.Random(31)
    for _ in range(250):
        g = random_lmg(rng, rng.randint(2, 6), p=rng.uniform(0.05, 0.3))
        nodes = list(g.nodes)
        rng.shuffle(nodes)
        ka = rng.randint(1, 2)
        kb = rng.randint(1, 2)
        kc = rng.randint(0, 2)
        if ka + kb + kc > len(nodes):
            continue
        A = set(nodes[:ka])
        B = set(nodes[ka : ka + kb])
        C = set(nodes[ka + kb : ka + kb + kc])
        paper = pairwise_path_separated_paper(g, A, B, C)
        loose = pairwise_path_separated_loose(g, A, B, C)
        fast = m_separated(g, A, B, C)
        assert paper == loose == fast, (g, A, B, C)


def test_matches_moralisation_on_dags():
    rng = random.Random(37)
    for _ in range(300):
        g = random_dag(rng, rng.randint(2, 7))
        nodes = list(g.nodes)
        rng.shuffle(nodes)
        A = set(nodes[:1])
        B = set(nodes[1:3])
        C = set(nodes[3 : 3 + rng.randint(0, 3)])
        assert m_separated(g, A, B, C) == moral_separated(g, A, B, C), (g, A, B, C)


def test_signatures_fork_generates_arc():
    g = mk("m -> a\nm -> b")
    assert endpoint_identical_connection(g, "a", "b", {"m"}, set()) == {(HEAD, HEAD)}


def test_signatures_enabled_collider_generates_line():
    g = mk("a -> s\nb -> s")
    assert endpoint_identical_connection(g, "a", "b", set(), {"s"}) == {(TAIL, TAIL)}


def test_signatures_direct_edge():
    g = mk("a -> b")
    assert endpoint_identical_connection(g, "a", "b", set(), set()) == {(TAIL, HEAD)}


def test_signature_validation():
    g = mk("a -> b\nb -> c")
    with pytest.raises(NotDisjoint):
        endpoint_identical_connection(g, "a", "c", {"b"}, {"b"})
    with pytest.raises(OverlapError):
        endpoint_identical_connection(g, "a", "b", {"a"}, set())


def test_witness_render():
    g = mk("a -> m\nm -> b")
    w = enumerate_connecting_paths(g, q("a", "b", M={"m"})).paths[0]
    assert w.render() == "a -> m -> b"
