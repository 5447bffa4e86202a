import itertools

import pytest

from perfcode import fields, groups


def poly_mulmod(x, y, modulus):
    """Schoolbook product of coefficient lists, then long division."""
    xs = [(x >> i) & 1 for i in range(x.bit_length())]
    ys = [(y >> i) & 1 for i in range(y.bit_length())]
    prod = [0] * (len(xs) + len(ys))
    for i, a in enumerate(xs):
        for j, b in enumerate(ys):
            prod[i + j] ^= a & b
    ms = [(modulus >> i) & 1 for i in range(modulus.bit_length())]
    deg = len(ms) - 1
    for k in range(len(prod) - 1, deg - 1, -1):
        if prod[k]:
            for i, c in enumerate(ms):
                prod[k - deg + i] ^= c
    return sum(c << i for i, c in enumerate(prod[:deg]))


@pytest.fixture(scope="session")
def towers():
    return {n: fields.tower_create(n) for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def agl1(towers):
    G = groups.make_agl2(towers[1])
    return G, groups.make_hq(towers[1], G)


@pytest.fixture(scope="session")
def agl2(towers):
    G = groups.make_agl2(towers[2])
    return G, groups.make_hq(towers[2], G)


def corpus_specs():
    return ([f"cyclic:{k}" for k in range(1, 25)] + [f"dihedral:{k}" for k in range(4, 25, 2)]
            + ["quaternion:8", "sym:3", "sym:4", "alt:4"])


def brute_transversal_exists(G, H, require_identity=False):
    cosets = groups.left_cosets(G, H)
    cells = [list(c) for c in cosets.cells]
    if require_identity:
        cells[cosets.coset_of[G.identity]] = [G.identity]
    for pick in itertools.product(*cells):
        T = set(pick)
        if all(G.inv(x) in T for x in T):
            return True
    return False


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
