import pytest

from perfcode import groups, repro
from perfcode.errors import UsageError


def test_paper_witness_square(agl1, agl2):
    for G, H in (agl1, agl2):
        res = repro.verify_phi_failure(G.tower, G, H, full_scan=False)
        assert res.passed
        assert res.data["g_squared"] == G.label(G.encode((G.tower.t, 0, 1, 0, 0, 1)))


def test_phi_failure_product_n1(agl1):
    G, H = agl1
    g = G.encode(repro.paper_witness(G.tower))
    x = G.mul(g, G.identity)
    assert G.decode(G.mul(x, x)) == (1, 0, 1, 0, 0, 1)


def test_phi_failure_shape_n2(agl2):
    G, H = agl2
    g = G.encode(repro.paper_witness(G.tower))
    for h in H:
        x = G.mul(g, h)
        y = G.decode(G.mul(x, x))
        assert y[1] == 0 and y[0] != 0 and y[2:] == (1, 0, 0, 1)


def test_constructive_examples(agl1):
    G, H = agl1
    a = G.tower.alpha
    h, case = repro.constructive_h_witness(G.tower, G, G.encode((a, 1, 1, 1, 0, 1)))
    assert case == "t=1,u=0" and G.decode(h)[:2] == (0, 1)
    h, case = repro.constructive_h_witness(G.tower, G, G.encode((a, a ^ 1, 0, 1, 1, 0)))
    assert case == "t!=1" and G.decode(h)[:2] == (0, 1)
    for x, y in [(0, 0), (a, 3), (2, 1)]:
        h, case = repro.constructive_h_witness(G.tower, G, G.encode((x, y, 1, 0, 0, 1)))
        assert case == "identity" and h == G.identity


def test_constructive_rejects_bad_input(agl1):
    G, H = agl1
    with pytest.raises(UsageError):
        repro.constructive_h_witness(G.tower, G, G.encode((0, 3, 1, 2, 0, 1)))   # A not over GF(2)
    with pytest.raises(UsageError):
        repro.constructive_h_witness(G.tower, G, G.encode((0, 0, 1, 1, 1, 0)))   # A^2 != I


@pytest.mark.parametrize("n", [1, 2])
def test_constructive_agrees_with_brute_force(towers, n):
    tw = towers[n]
    G = groups.make_agl2(tw)
    H = groups.make_hq(tw, G)
    N = groups.normalizer(G, H)
    count = 0
    for g in N:
        if G.mul(g, g) not in H:
            continue
        count += 1
        h, _ = repro.constructive_h_witness(tw, G, g)
        x = G.mul(g, h)
        assert G.mul(x, x) == G.identity
        assert any(G.mul(G.mul(g, k), G.mul(g, k)) == G.identity for k in H)
    assert count == {1: 40, 2: 1216}[n]


@pytest.mark.parametrize("n", [1, 2])
def test_involution_facts(towers, n):
    G = groups.make_agl2(towers[n])
    n_inv, ok = repro.involution_facts(towers[n], G)
    assert ok and n_inv == towers[n].q ** 2


def test_reproduce_n1():
    rep = repro.reproduce(1)
    assert [c.name for c in rep.checks] == list(repro.CHECK_NAMES)
    assert rep.overall
    assert rep.check("normalizer_matches_closed_form").data["brute_force_order"] == 96
    assert rep.check("transversal_and_graph_confirm").data["cosets"] == 720
    assert rep.check("phi_N_holds").data["scanned"] == 96


def test_reproduce_n2_quick():
    rep = repro.reproduce(2, full_scan=False, trials=2000)
    assert [c.name for c in rep.checks] == list(repro.CHECK_NAMES[:-1])
    assert rep.overall
    assert rep.notes


def test_reproduce_rejects_n():
    with pytest.raises(UsageError):
        repro.reproduce(4)


def test_report_json(agl1):
    d = repro.reproduce(1).to_json()
    assert d["overall"] and d["modulus"] == "7"
    assert [c["name"] for c in d["checks"]] == list(repro.CHECK_NAMES)
    assert all("millis" not in c for c in d["checks"])
