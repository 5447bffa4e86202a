import itertools

import numpy as np
import pytest

from perfcode import codes, groups
from perfcode.errors import LimitExceeded, UsageError

from conftest import brute_transversal_exists


def sub(spec, *gens):
    G = groups.make_named(spec)
    return G, groups.subgroup_closure(G, [G.parse_element(g) for g in gens])


def test_phi_cyclic4_center_fails():
    G, H = sub("cyclic:4", "2")
    res = codes.phi_check(groups.whole(G), H)
    assert not res.holds and res.counterexample == 1
    assert res.witness_map == {0: 0, 1: None, 2: 0, 3: None}


@pytest.mark.parametrize("spec", ["cyclic:5", "sym:4", "quaternion:8"])
def test_phi_whole_group_holds(spec):
    G = groups.make_named(spec)
    res = codes.phi_check(groups.whole(G), groups.whole(G))
    assert res.holds and res.counterexample is None


def test_phi_paper_witness_is_counterexample(agl2):
    G, H = agl2
    tw = G.tower
    g = G.encode((0, tw.alpha ^ tw.s, 1, tw.alpha, 0, 1))
    assert codes.verify_phi_counterexample(G, H, g)
    res = codes.phi_check(groups.whole(G), H)
    assert not res.holds
    assert res.witness_map[g] is None


def test_two_group_criterion_examples(agl1):
    G, H = sub("sym:3", "(12)")
    flag, res = codes.two_group_criterion(G, H)
    assert flag and res.scanned == 2
    G, H = sub("quaternion:8", "-1")
    flag, res = codes.two_group_criterion(G, H)
    assert not flag and res.counterexample == G.parse_element("i")
    G, H = agl1
    flag, res = codes.two_group_criterion(G, H)
    assert flag and res.scanned == 96
    G, H = sub("cyclic:6", "2")
    with pytest.raises(UsageError):
        codes.two_group_criterion(G, H)


def test_backtracking_examples():
    G, H = sub("cyclic:6", "3")
    T = codes.transversal_search_backtracking(G, H)
    assert T.ids() == [0, 1, 5] and T.contains_identity
    G, H = sub("cyclic:4", "2")
    assert codes.transversal_search_backtracking(G, H) is None
    G, H = sub("sym:3", "(12)")
    T = codes.transversal_search_backtracking(G, H)
    assert sorted(G.label(x) for x in T.ids()) == ["()", "(13)", "(23)"]


def test_matching_examples():
    G, H = sub("cyclic:6", "3")
    cos = groups.left_cosets(G, H)
    cig = codes.coset_inverse_graph(G, cos)
    assert cig.n_cosets == 3
    assert cig.edges == {(1, 2): (1, 5)}        # pair (2, 4) realizes the same edge
    assert cig.self_cover == {0: 0}
    T = codes.transversal_search_matching(G, H)
    assert codes.validate_transversal(G, cos, T.elements)
    G, H = sub("cyclic:4", "2")
    cig = codes.coset_inverse_graph(G, groups.left_cosets(G, H))
    assert cig.edges == {} and cig.unusable_pairs == 1 and 1 not in cig.self_cover
    assert codes.transversal_search_matching(G, H) is None


@pytest.mark.parametrize("spec", ["sym:4", "cyclic:7", "quaternion:8"])
def test_trivial_subgroup_transversal_is_group(spec):
    G = groups.make_named(spec)
    T = codes.transversal_search_matching(G, groups.trivial(G))
    assert T.elements == set(G.elements())


def test_search_limits():
    G, H = sub("cyclic:12")
    with pytest.raises(LimitExceeded):
        codes.transversal_search_backtracking(G, H, limit=5)
    with pytest.raises(LimitExceeded):
        codes.transversal_search_matching(G, H, limit=11)


def test_connection_set_examples():
    G, H = sub("cyclic:6", "3")
    T = codes.transversal_search_backtracking(G, H)
    S = codes.connection_set_from_transversal(G, T)
    assert S.ids() == [1, 5]
    assert codes.cayley_perfect_code_check(G, S.elements, H.elements)
    G = groups.make_named("sym:3")
    S = codes.connection_set_from_transversal(G, codes.TransversalWitness(frozenset([0]), True))
    assert S.ids() == []
    assert codes.cayley_perfect_code_check(G, [], G.elements())
    with pytest.raises(UsageError):
        codes.connection_set_from_transversal(G, codes.TransversalWitness(frozenset([1]), False))
    G, H = sub("sym:3", "(12)")
    T = codes.transversal_search_backtracking(G, H)
    S = codes.connection_set_from_transversal(G, T)
    assert sorted(G.label(x) for x in S.ids()) == ["(13)", "(23)"]
    assert codes.cayley_perfect_code_check(G, S.elements, H.elements)


def test_cayley_checks(tmp_path):
    c6 = groups.make_named("cyclic:6")
    assert codes.cayley_perfect_code_check(c6, [1, 5], [0, 3])
    assert not codes.cayley_perfect_code_check(c6, [1, 5], [0, 2])
    p = tmp_path / "z2cubed.txt"
    groups.write_table_file(p, [[a ^ b for b in range(8)] for a in range(8)])
    cube = groups.make_named(f"table:{p}")
    assert codes.cayley_perfect_code_check(cube, [0b100, 0b010, 0b001], [0b000, 0b111])
    with pytest.raises(UsageError):
        codes.cayley_perfect_code_check(c6, [1], [0, 3])
    with pytest.raises(UsageError):
        codes.cayley_perfect_code_check(c6, [0, 1, 5], [0, 3])


def test_cayley_radius_two():
    # 10-cycle: {0, 5} is a perfect 2-code, {0, 4} is not
    c10 = groups.make_named("cyclic:10")
    assert codes.cayley_perfect_code_check(c10, [1, 9], [0, 5], t=2)
    assert not codes.cayley_perfect_code_check(c10, [1, 9], [0, 4], t=2)
    # radius 1 agrees with the t=1 fast path
    assert codes.cayley_perfect_code_check(c10, [1, 9], [0, 3, 6], t=1) is False
    c9 = groups.make_named("cyclic:9")
    assert codes.cayley_perfect_code_check(c9, [1, 8], [0, 3, 6], t=1)


def brute_graph_perfect_code(G, H):
    """Search every inverse-closed S directly."""
    orbits = sorted({tuple(sorted({g, G.inv(g)})) for g in G.elements() if g != G.identity})
    for mask in range(1 << len(orbits)):
        S = [x for i, o in enumerate(orbits) if mask >> i & 1 for x in o]
        if codes.cayley_perfect_code_check(G, S, H.elements):
            return True
    return False


@pytest.mark.parametrize("spec", ["cyclic:4", "cyclic:6", "cyclic:8", "sym:3", "quaternion:8", "dihedral:8",
                                  "dihedral:6", "cyclic:9"])
def test_definition_oracle(spec):
    G = groups.make_named(spec)
    for H in groups.all_subgroups(G):
        rep = codes.is_perfect_code(G, H, "decide")
        assert (rep.verdict == "perfect_code") == brute_graph_perfect_code(G, H), (spec, H.ids())


def test_pipeline_examples(agl1):
    G, H = sub("cyclic:4", "2")
    rep = codes.is_perfect_code(G, H, "cross_validate")
    assert rep.verdict == "not_perfect_code"
    assert rep.methods[0].name == "normal_phi"
    assert {"transversal_matching", "transversal_backtracking"} <= set(rep.methods_run)
    G, H = agl1
    rep = codes.is_perfect_code(G, H, "decide")
    assert rep.verdict == "perfect_code"
    assert rep.methods_run == ["two_group_criterion"]
    assert not codes.phi_check(groups.whole(G), H).holds
    G = groups.make_named("dihedral:10")
    rep = codes.is_perfect_code(G, groups.trivial(G), "cross_validate")
    assert rep.verdict == "perfect_code" and rep.transversal.elements == set(G.elements())


def test_pipeline_degenerate_large(agl2):
    G, _ = agl2
    rep = codes.is_perfect_code(G, groups.trivial(G))
    assert rep.verdict == "perfect_code" and rep.methods[0].name == "degenerate"


def test_pipeline_inconclusive():
    G, H = sub("sym:4", "(123)")
    rep = codes.is_perfect_code(G, H, methods=["transversal_backtracking"], backtrack_limit=2)
    assert rep.verdict == "inconclusive"
    assert rep.methods[0].outcome == "inconclusive"


def test_report_json_is_stable():
    G, H = sub("cyclic:6", "3")
    rep = codes.is_perfect_code(G, H, "cross_validate")
    d = rep.to_json()
    assert d["verdict"] == "perfect_code"
    assert d["witnesses"] == {"transversal": ["0", "1", "5"], "connection_set": ["1", "5"]}
    assert d["subgroup"] == ["3"]
    assert all("millis" not in m for m in d["methods"])
    assert all("millis" in m for m in rep.to_json(timings=True)["methods"])


def test_matching_graph_accounting():
    for spec in ["sym:4", "dihedral:12", "quaternion:8", "cyclic:10"]:
        G = groups.make_named(spec)
        for H in groups.all_subgroups(G):
            cig = codes.coset_inverse_graph(G, groups.left_cosets(G, H))
            assert cig.orbit_count_ok(G)


def test_brute_transversal_oracle_small():
    G, H = sub("cyclic:6", "3")
    assert brute_transversal_exists(G, H)
    G, H = sub("cyclic:4", "2")
    assert not brute_transversal_exists(G, H)


@pytest.mark.parametrize("spec", __import__("conftest").corpus_specs())
def test_corpus_invariants(spec):
    G = groups.make_named(spec)
    for H in groups.all_subgroups(G):
        cos = groups.left_cosets(G, H)
        bt = codes.transversal_search_backtracking(G, H, cosets=cos)
        mt = codes.transversal_search_matching(G, H, cosets=cos)
        exists = brute_transversal_exists(G, H)
        assert (bt is not None) == (mt is not None) == exists
        for T in (bt, mt):
            if T is not None:
                assert codes.validate_transversal(G, cos, T.elements)
        if groups.is_normal(G, H):
            assert codes.phi_check(groups.whole(G), H).holds == exists
        # a transversal exists iff one through e exists
        with_e = codes.transversal_search_matching(G, H, require_identity=True, cosets=cos)
        assert (with_e is not None) == exists
        if with_e is not None:
            assert with_e.contains_identity
            assert brute_transversal_exists(G, H, require_identity=True)
            S = codes.connection_set_from_transversal(G, with_e)
            assert codes.cayley_perfect_code_check(G, S.elements, H.elements)
