"""Finite groups addressed by canonical integer indices.

Every group hands out elements as non-negative ints. Table- and
permutation-backed groups number their elements 0..order-1 with 0 the
identity; the affine group packs (a1, a2, A11, A12, A21, A22) as base-q^2
digits, a1 most significant, so the index space has holes where A is
singular.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import fields
from .errors import GroupValidationError, LimitExceeded, NotEnumerableError, UsageError
from .fields import FieldTower

CLOSURE_LIMIT = 10**6
# brute-force normalizer / enumeration bound for generic code paths
ENUMERATION_LIMIT = 20_000_000


class Group:
    backing = "abstract"

    def __init__(self, spec: str, order: int):
        self.spec = spec
        self.order = order

    identity = 0

    def mul(self, g: int, h: int) -> int:
        raise NotImplementedError

    def inv(self, g: int) -> int:
        raise NotImplementedError

    @property
    def enumerable(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        """All elements in increasing index order."""
        return iter(range(self.order))

    def contains(self, g: int) -> bool:
        return 0 <= g < self.order

    def left_mul_vec(self, g: int, hs: np.ndarray) -> np.ndarray:
        """Indices of g*h for every h in `hs`."""
        return np.fromiter((self.mul(g, int(h)) for h in hs), dtype=np.int64, count=len(hs))

    def label(self, g: int) -> str:
        return str(g)

    def parse_element(self, text: str) -> int:
        text = text.strip()
        try:
            g = int(text, 0)
        except ValueError:
            raise UsageError(f"cannot parse element {text!r} of {self.spec}") from None
        if not self.contains(g):
            raise UsageError(f"{g} is not an element of {self.spec}")
        return g

    def check_member(self, *gs: int) -> None:
        for g in gs:
            if not self.contains(g):
                raise UsageError(f"{g} is not an element of {self.spec}")

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec} order={self.order}>"


class TableGroup(Group):
    """A group given by its Cayley table; row g, column h holds g*h."""

    backing = "table"

    def __init__(self, table, spec: str, labels: Sequence[str] | None = None, validate: bool = True):
        table = np.asarray(table, dtype=np.int64)
        super().__init__(spec, table.shape[0])
        if validate:
            validate_table(table)
        self.table = table
        self._rows = table.tolist()
        self._inv = [row.index(0) for row in self._rows]
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None:
            self._by_label = {lab: i for i, lab in enumerate(self.labels)}

    def mul(self, g, h):
        return self._rows[g][h]

    def inv(self, g):
        return self._inv[g]

    def left_mul_vec(self, g, hs):
        return self.table[g, np.asarray(hs, dtype=np.int64)]

    def label(self, g):
        return self.labels[g] if self.labels is not None else str(g)

    def parse_element(self, text):
        if self.labels is not None and text.strip() in self._by_label:
            return self._by_label[text.strip()]
        return super().parse_element(text)


def validate_table(table: np.ndarray) -> None:
    k = table.shape[0]
    if table.ndim != 2 or table.shape != (k, k) or k == 0:
        raise GroupValidationError("table must be a non-empty square array")
    if table.min() < 0 or table.max() >= k:
        raise GroupValidationError("table entries out of range")
    ar = np.arange(k)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise GroupValidationError("index 0 is not a two-sided identity")
    srt = np.sort(table, axis=1)
    if not (np.all(srt == ar) and np.all(np.sort(table, axis=0) == ar[:, None])):
        raise GroupValidationError("table is not a Latin square (inverses fail)")
    # (ab)c == a(bc) for all triples
    lhs = table[table][:, :, :]            # lhs[a, b, c] = table[table[a, b], c]
    rhs = table[:, table]                  # rhs[a, b, c] = table[a, table[b, c]]
    if not np.array_equal(lhs, rhs):
        raise GroupValidationError("table is not associative")


def _cycles(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    sep = "" if len(perm) <= 9 else ","
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + sep.join(cyc) + ")")
    return "".join(parts) or "()"


class PermutationGroup(TableGroup):
    """Permutations of {0..degree-1}; (p*q)(i) = p(q(i)).

    Elements are numbered in lexicographic order of their image tuples, so
    the identity is 0.
    """

    backing = "permutation"

    def __init__(self, degree: int, perms: Iterable[Sequence[int]], spec: str):
        perms = sorted(set(tuple(p) for p in perms))
        if perms[0] != tuple(range(degree)):
            raise GroupValidationError("identity missing")
        pos = {p: i for i, p in enumerate(perms)}
        try:
            table = [[pos[tuple(p[x] for x in q)] for q in perms] for p in perms]
        except KeyError:
            raise GroupValidationError("permutations not closed under composition") from None
        self.degree = degree
        self.perms = perms
        self._pos = pos
        super().__init__(table, spec, labels=[_cycles(p) for p in perms], validate=False)

    def parse_element(self, text):
        text = text.strip()
        if text.startswith("("):
            img = list(range(self.degree))
            for cyc in re.findall(r"\(([^)]*)\)", text):
                pts = cyc.split(",") if "," in cyc else list(cyc.replace(" ", ""))
                pts = [int(p) - 1 for p in pts if p.strip()]
                if any(not 0 <= p < self.degree for p in pts) or len(set(pts)) != len(pts):
                    raise UsageError(f"bad cycle {cyc!r} for degree {self.degree}")
                # cycles compose right-to-left
                step = list(range(self.degree))
                for a, b in zip(pts, pts[1:] + pts[:1]):
                    step[a] = b
                img = [img[step[x]] for x in range(self.degree)]
            key = tuple(img)
            if key not in self._pos:
                raise UsageError(f"{text} is not an element of {self.spec}")
            return self._pos[key]
        return super().parse_element(text)


def cyclic_table(k: int) -> np.ndarray:
    ar = np.arange(k)
    return (ar[:, None] + ar[None, :]) % k


def dihedral_group(order: int, spec: str) -> TableGroup:
    """r^i s^j has index i + k*j; s r s = r^-1."""
    if order < 2 or order % 2:
        raise UsageError(f"dihedral order must be even and >= 2, got {order}")
    k = order // 2
    table = np.zeros((order, order), dtype=np.int64)
    for i, a, j, b in itertools.product(range(k), range(2), range(k), range(2)):
        r = (i + (j if a == 0 else -j)) % k
        table[i + k * a, j + k * b] = r + k * ((a + b) % 2)
    labels = [("r^%d" % i if i else "e") if a == 0 else ("s" if i == 0 else "r^%ds" % i)
              for a in range(2) for i in range(k)]
    return TableGroup(table, spec, labels)


def quaternion_group(spec: str = "quaternion:8") -> TableGroup:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # unit products: u*v = sign * w
    unit = {("1", x): (1, x) for x in "1ijk"}
    unit.update({(x, "1"): (1, x) for x in "ijk"})
    unit.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})

    def split(name):
        return (-1, name[1:]) if name.startswith("-") else (1, name)

    table = np.zeros((8, 8), dtype=np.int64)
    for x, y in itertools.product(range(8), repeat=2):
        sx, ux = split(names[x])
        sy, uy = split(names[y])
        s, w = unit[(ux, uy)]
        s *= sx * sy
        table[x, y] = names.index(w if s > 0 else "-" + w)
    return TableGroup(table, spec, names)


def read_table_file(path: str | Path) -> np.ndarray:
    toks = Path(path).read_text().split()
    if not toks:
        raise GroupValidationError(f"{path}: empty table file")
    try:
        nums = [int(x) for x in toks]
    except ValueError as exc:
        raise GroupValidationError(f"{path}: {exc}") from None
    k = nums[0]
    if k < 1 or len(nums) != 1 + k * k:
        raise GroupValidationError(f"{path}: expected order k followed by k*k entries")
    return np.array(nums[1:], dtype=np.int64).reshape(k, k)


def write_table_file(path: str | Path, table) -> None:
    table = np.asarray(table)
    lines = [str(table.shape[0])] + [" ".join(map(str, row)) for row in table.tolist()]
    Path(path).write_text("\n".join(lines) + "\n")


def _parity(p: Sequence[int]) -> int:
    seen, par = set(), 0
    for i in range(len(p)):
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length:
            par ^= (length - 1) & 1
    return par


def make_named(spec: str) -> Group:
    """Build a group from `cyclic:k`, `dihedral:2k`, `quaternion:8`,
    `sym:k`, `alt:k` (k <= 5), `table:<path>` or `agl:<n>`."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise UsageError(f"malformed group spec {spec!r}")
    if kind == "table":
        return TableGroup(read_table_file(arg), spec)
    try:
        k = int(arg)
    except ValueError:
        raise UsageError(f"malformed group spec {spec!r}") from None
    if kind == "cyclic":
        if k < 1:
            raise UsageError("cyclic order must be positive")
        return TableGroup(cyclic_table(k), spec)
    if kind == "dihedral":
        return dihedral_group(k, spec)
    if kind == "quaternion":
        if k != 8:
            raise UsageError("only quaternion:8 is built in")
        return quaternion_group(spec)
    if kind in ("sym", "alt"):
        if not 1 <= k <= 5:
            raise UsageError(f"{kind} degree must be in 1..5")
        perms = itertools.permutations(range(k))
        if kind == "alt":
            perms = (p for p in perms if _parity(p) == 0)
        return PermutationGroup(k, perms, spec)
    if kind == "agl":
        return make_agl2(fields.tower_create(k))
    raise UsageError(f"unknown group kind {kind!r} in {spec!r}")


# -- affine group -------------------------------------------------------------

AffineElement = tuple  # (a1, a2, A11, A12, A21, A22)


class AffineGroup(Group):
    """AGL(2, q^2) with (a, A)(b, B) = (a + A b, A B)."""

    backing = "affine"

    def __init__(self, tower: FieldTower):
        Q = tower.size
        order = Q * Q * (Q**2 - 1) * (Q**2 - Q)
        super().__init__(f"agl:{tower.n}", order)
        self.tower = tower
        self.Q = Q
        self._m = tower.mul_table.tolist()
        self._i = tower.inv_table.tolist()
        self.identity = self.encode((0, 0, 1, 0, 0, 1))
        self._gl2 = {}

    # codec
    def encode(self, el: AffineElement) -> int:
        Q = self.Q
        idx = 0
        for d in el:
            idx = idx * Q + d
        return idx

    def decode(self, idx: int) -> AffineElement:
        Q = self.Q
        out = []
        for _ in range(6):
            idx, d = divmod(idx, Q)
            out.append(d)
        return tuple(reversed(out))

    def encode_vec(self, parts: np.ndarray) -> np.ndarray:
        idx = np.zeros(parts.shape[1], dtype=np.int64)
        for row in parts:
            idx = idx * self.Q + row
        return idx

    def decode_vec(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64).copy()
        out = np.empty((6, len(idx)), dtype=np.int64)
        for k in range(5, -1, -1):
            out[k] = idx % self.Q
            idx //= self.Q
        return out

    def contains(self, g):
        if not 0 <= g < self.Q**6:
            return False
        _, _, p, r, s, u = self.decode(g)
        m = self._m
        return (m[p][u] ^ m[r][s]) != 0

    @property
    def enumerable(self):
        return self.tower.n <= 2

    # arithmetic on tuples
    def el_mul(self, x: AffineElement, y: AffineElement) -> AffineElement:
        m = self._m
        a1, a2, p, r, s, u = x
        b1, b2, P, R, S, U = y
        return (a1 ^ m[p][b1] ^ m[r][b2], a2 ^ m[s][b1] ^ m[u][b2],
                m[p][P] ^ m[r][S], m[p][R] ^ m[r][U],
                m[s][P] ^ m[u][S], m[s][R] ^ m[u][U])

    def el_inv(self, x: AffineElement) -> AffineElement:
        m = self._m
        a1, a2, p, r, s, u = x
        d = m[p][u] ^ m[r][s]
        if d == 0:
            raise UsageError("singular matrix")
        di = self._i[d]
        # char 2: the adjugate has no signs
        P, R, S, U = m[di][u], m[di][r], m[di][s], m[di][p]
        return (m[P][a1] ^ m[R][a2], m[S][a1] ^ m[U][a2], P, R, S, U)

    def mul(self, g, h):
        return self.encode(self.el_mul(self.decode(g), self.decode(h)))

    def inv(self, g):
        return self.encode(self.el_inv(self.decode(g)))

    def mul_arrays(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Componentwise products of decoded (6, k) arrays."""
        m = self.tower.mul_table.astype(np.int64)
        a1, a2, p, r, s, u = X
        b1, b2, P, R, S, U = Y
        return np.stack([a1 ^ m[p, b1] ^ m[r, b2], a2 ^ m[s, b1] ^ m[u, b2],
                         m[p, P] ^ m[r, S], m[p, R] ^ m[r, U],
                         m[s, P] ^ m[u, S], m[s, R] ^ m[u, U]])

    def inv_arrays(self, X: np.ndarray) -> np.ndarray:
        m = self.tower.mul_table.astype(np.int64)
        iv = self.tower.inv_table.astype(np.int64)
        a1, a2, p, r, s, u = X
        di = iv[m[p, u] ^ m[r, s]]
        P, R, S, U = m[di, u], m[di, r], m[di, s], m[di, p]
        return np.stack([m[P, a1] ^ m[R, a2], m[S, a1] ^ m[U, a2], P, R, S, U])

    def left_mul_vec(self, g, hs):
        X = np.repeat(np.array(self.decode(g), dtype=np.int64)[:, None], len(hs), axis=1)
        return self.encode_vec(self.mul_arrays(X, self.decode_vec(hs)))

    def gl2(self, subfield_only: bool = False) -> np.ndarray:
        """Invertible matrices as rows (A11, A12, A21, A22), lexicographic."""
        key = bool(subfield_only)
        if key not in self._gl2:
            entries = np.array(self.tower.subfield() if subfield_only else range(self.Q), dtype=np.int64)
            grid = np.array(np.meshgrid(entries, entries, entries, entries, indexing="ij")).reshape(4, -1)
            m = self.tower.mul_table
            det = m[grid[0], grid[3]] ^ m[grid[1], grid[2]]
            mats = np.ascontiguousarray(grid[:, det != 0].T)
            mats.setflags(write=False)
            self._gl2[key] = mats
        return self._gl2[key]

    def elements(self):
        if not self.enumerable:
            raise NotEnumerableError(f"{self.spec} has {self.order} elements; enumeration is limited to n <= 2")
        return _stream(self, self.gl2())

    def label(self, g):
        return format_affine(self.decode(g))

    def parse_element(self, text):
        el = parse_affine(self.tower, text)
        g = self.encode(el)
        if not self.contains(g):
            raise UsageError(f"{text!r}: matrix is singular")
        return g


def _stream(G: AffineGroup, mats: np.ndarray) -> Iterator[int]:
    Q = G.Q
    codes = (((mats[:, 0] * Q + mats[:, 1]) * Q + mats[:, 2]) * Q + mats[:, 3]).tolist()
    block = Q**4
    for v in range(Q * Q):
        base = v * block
        for c in codes:
            yield base + c


def format_affine(el: AffineElement) -> str:
    h = [format(x, "x") for x in el]
    return f"{h[0]},{h[1]};{h[2]},{h[3]},{h[4]},{h[5]}"


def parse_affine(tower: FieldTower, text: str) -> AffineElement:
    """Parse ``a1,a2;A11,A12,A21,A22`` with hex field entries."""
    vec, sep, mat = text.strip().partition(";")
    parts = vec.split(",") + mat.split(",")
    if not sep or len(parts) != 6:
        raise UsageError(f"affine literal must look like 'a1,a2;A11,A12,A21,A22', got {text!r}")
    try:
        return tuple(fields.from_hex(tower, p.strip()) for p in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def make_agl2(tower: FieldTower) -> AffineGroup:
    return AffineGroup(tower)


# -- subgroups ----------------------------------------------------------------

class SubgroupView:
    """A subgroup given by its explicit element set."""

    kind = "explicit"

    def __init__(self, parent: Group, elements: Iterable[int], generators: Sequence[int] | None = None,
                 validate: bool = True):
        self.parent = parent
        self.elements = frozenset(elements)
        self.order = len(self.elements)
        self.generators = tuple(generators) if generators is not None else None
        if validate:
            self._validate()

    def _validate(self):
        G = self.parent
        if G.identity not in self.elements:
            raise GroupValidationError("subgroup does not contain the identity")
        gens = self.generators if self.generators is not None else self.elements
        if self.order > 4096 and self.generators is None:
            gens = sorted(self.elements)[:64]
        for x in self.elements:
            if G.inv(x) not in self.elements:
                raise GroupValidationError(f"not closed under inversion at {G.label(x)}")
            for y in gens:
                if G.mul(x, y) not in self.elements:
                    raise GroupValidationError("not closed under multiplication")
        if G.order % self.order:
            raise GroupValidationError(f"subgroup order {self.order} does not divide {G.order}")

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements))

    def __len__(self):
        return self.order

    @property
    def enumerable(self) -> bool:
        return True

    def ids(self) -> list[int]:
        return sorted(self.elements)


class TranslationSubgroup(SubgroupView):
    """H_q: translations (b, I) with both coordinates of b in GF(q)."""

    kind = "hq"

    def __init__(self, G: AffineGroup):
        tw = G.tower
        sub = tw.subfield()
        els = [G.encode((b1, b2, 1, 0, 0, 1)) for b1 in sub for b2 in sub]
        gamma = fields.ff_pow(tw, tw.alpha, tw.q + 1)     # generates GF(q)*
        basis = [fields.ff_pow(tw, gamma, k) for k in range(tw.n)]
        gens = [G.encode((b, 0, 1, 0, 0, 1)) for b in basis] + [G.encode((0, b, 1, 0, 0, 1)) for b in basis]
        super().__init__(G, els, gens, validate=False)
        self.tower = tw

    def __contains__(self, g):
        a1, a2, p, r, s, u = self.parent.decode(g)
        sub = self.tower.sub_mask
        return (p, r, s, u) == (1, 0, 0, 1) and bool(sub[a1]) and bool(sub[a2])

    def translations(self) -> np.ndarray:
        """(k, 2) array of the translation vectors, in index order."""
        G = self.parent
        return np.array([G.decode(h)[:2] for h in self], dtype=np.int64)


class AffineNormalizerView(SubgroupView):
    """Closed form of N(H_q): all (a, A) with A in GL2(q), a arbitrary."""

    kind = "normalizer_hq"

    def __init__(self, G: AffineGroup):
        self.parent = G
        self.tower = G.tower
        self.generators = None
        self.order = G.Q**2 * len(G.gl2(subfield_only=True))

    @property
    def elements(self):
        if self.order > ENUMERATION_LIMIT:
            raise NotEnumerableError("normalizer too large to materialize")
        return frozenset(self)

    def __contains__(self, g):
        G = self.parent
        if not G.contains(g):
            return False
        sub = self.tower.sub_mask
        return all(sub[x] for x in G.decode(g)[2:])

    def __iter__(self):
        return _stream(self.parent, self.parent.gl2(subfield_only=True))

    def matrices(self) -> np.ndarray:
        return self.parent.gl2(subfield_only=True)


class WholeGroupView(SubgroupView):
    """G as a subgroup of itself, without materializing elements."""

    kind = "whole"

    def __init__(self, G: Group):
        self.parent = G
        self.order = G.order
        self.generators = None

    @property
    def elements(self):
        return frozenset(self.parent.elements())

    @property
    def enumerable(self):
        return self.parent.enumerable

    def __contains__(self, g):
        return self.parent.contains(g)

    def __iter__(self):
        return self.parent.elements()


def make_hq(tower: FieldTower, agl: AffineGroup) -> TranslationSubgroup:
    if not isinstance(agl, AffineGroup):
        raise UsageError("make_hq needs an affine-backed group")
    if agl.tower != tower:
        raise UsageError(f"tower mismatch: group over n={agl.tower.n}, tower n={tower.n}")
    return TranslationSubgroup(agl)


def subgroup_closure(G: Group, generators: Sequence[int], limit: int = CLOSURE_LIMIT) -> SubgroupView:
    G.check_member(*generators)
    gens = sorted(set(generators) - {G.identity})
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise LimitExceeded(f"closure exceeds {limit} elements")
                queue.append(y)
    return SubgroupView(G, seen, generators=list(generators), validate=False)


def same_subgroup_as_hq(G: Group, H: SubgroupView) -> bool:
    if isinstance(H, TranslationSubgroup):
        return True
    if not isinstance(G, AffineGroup) or H.order != G.tower.q**2:
        return False
    hq = TranslationSubgroup(G)
    return all(h in hq for h in H.elements)


# -- cosets, conjugation, normalizers ----------------------------------------

@dataclass
class Cosets:
    """Left cosets gH. ``cells[c]`` lists members in index order; the
    representative is the minimum index."""

    coset_of: dict
    cells: list

    @property
    def reps(self) -> list[int]:
        return [c[0] for c in self.cells]

    def __len__(self):
        return len(self.cells)


def left_cosets(G: Group, H: SubgroupView) -> Cosets:
    if not G.enumerable:
        raise NotEnumerableError(f"{G.spec} is not enumerable")
    hs = np.array(sorted(H.elements), dtype=np.int64)
    coset_of: dict[int, int] = {}
    cells = []
    for g in G.elements():
        if g in coset_of:
            continue
        cell = sorted(G.left_mul_vec(g, hs).tolist())
        cid = len(cells)
        for x in cell:
            coset_of[x] = cid
        cells.append(cell)
    return Cosets(coset_of, cells)


def conjugate(G: Group, g: int, h: int) -> int:
    """g h g^-1"""
    return G.mul(G.mul(g, h), G.inv(g))


def normalizes(G: Group, g: int, H: SubgroupView) -> bool:
    gens = H.generators if H.generators is not None else H.elements
    gi = G.inv(g)
    return all(G.mul(G.mul(g, h), gi) in H for h in gens)


def normalizer(G: Group, H: SubgroupView, mode: str = "auto") -> SubgroupView:
    """{g : g H g^-1 = H}.

    mode "closed" (or "auto" when H is H_q) uses the closed form for the
    affine group; "brute" scans G, testing conjugates of H's generators.
    """
    if mode not in ("auto", "closed", "brute"):
        raise UsageError(f"unknown normalizer mode {mode!r}")
    if mode == "closed" or (mode == "auto" and same_subgroup_as_hq(G, H)):
        if not same_subgroup_as_hq(G, H):
            raise UsageError("closed-form normalizer exists only for H_q in AGL(2, q^2)")
        return AffineNormalizerView(G)
    if not G.enumerable or G.order > ENUMERATION_LIMIT:
        raise NotEnumerableError(f"brute-force normalizer needs an enumerable group, {G.spec} is not")
    els = [g for g in G.elements() if normalizes(G, g, H)]
    return SubgroupView(G, els, validate=False)


def is_normal(G: Group, H: SubgroupView) -> bool:
    if same_subgroup_as_hq(G, H):
        return AffineNormalizerView(G).order == G.order
    gens = H.generators if H.generators is not None else H.elements
    if not G.enumerable:
        raise NotEnumerableError(f"{G.spec} is not enumerable")
    return all(normalizes(G, g, H) for g in G.elements()) if gens else True


def is_2_group(H: SubgroupView) -> bool:
    k = H.order
    return k & (k - 1) == 0


def whole(G: Group) -> WholeGroupView:
    return WholeGroupView(G)


def trivial(G: Group) -> SubgroupView:
    return SubgroupView(G, [G.identity], generators=[], validate=False)


def all_subgroups(G: Group, max_order: int = 24) -> list[SubgroupView]:
    """Every subgroup of a small group, ordered by (order, elements).

    Closures of generator pairs, then joins until nothing new appears.
    """
    if G.order > max_order:
        raise LimitExceeded(f"subgroup enumeration is limited to order <= {max_order}")
    els = list(G.elements())
    found: dict[frozenset, SubgroupView] = {}

    def add(gens):
        H = subgroup_closure(G, gens)
        if H.elements not in found:
            found[H.elements] = H
            return True
        return False

    add([])
    for i, x in enumerate(els):
        for y in els[i:]:
            add([x] if x == y else [x, y])
    grew = True
    while grew:
        grew = False
        current = list(found.values())
        for i, A in enumerate(current):
            for B in current[i + 1:]:
                if A.elements <= B.elements or B.elements <= A.elements:
                    continue
                grew |= add(list(A.generators) + list(B.generators))
    return sorted(found.values(), key=lambda H: (H.order, sorted(H.elements)))
