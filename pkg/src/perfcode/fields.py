"""Arithmetic in GF(2^(2n)) viewed as a quadratic extension of GF(2^n).

Field elements are plain ints: bit i is the coefficient of x^i, always
reduced modulo the tower's modulus. Zero and one are 0 and 1, addition is
xor. The tower object carries the modulus plus lookup tables that the
group kernels index directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, FieldDomainError

FFElement = int

# primitive polynomials over GF(2), indexed by n (field degree 2n)
MODULI = {
    1: 0b111,          # x^2 + x + 1
    2: 0b10011,        # x^4 + x + 1
    3: 0b1000011,      # x^6 + x + 1
    4: 0b100011101,    # x^8 + x^4 + x^3 + x^2 + 1
}


def clmul_mod(x: int, y: int, modulus: int) -> int:
    """Carry-less product of x and y reduced modulo `modulus`."""
    deg = modulus.bit_length() - 1
    top = 1 << deg
    r = 0
    while y:
        if y & 1:
            r ^= x
        y >>= 1
        x <<= 1
        if x & top:
            x ^= modulus
    return r


def poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a and a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def _prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


@dataclass(frozen=True, eq=False)
class FieldTower:
    """GF(q) inside GF(q^2), q = 2^n, with alpha = class of x.

    ``s`` and ``t`` are the trace and norm of alpha over GF(q), so that
    alpha^2 = s*alpha + t.
    """

    n: int
    modulus: int
    alpha: FFElement
    s: FFElement
    t: FFElement
    mul_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    sub_mask: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def size(self) -> int:
        """Order of the big field, q^2."""
        return 1 << (2 * self.n)

    def subfield(self) -> list[FFElement]:
        return [int(z) for z in np.flatnonzero(self.sub_mask)]

    def to_json(self) -> dict:
        return {"n": self.n, "modulus": format(self.modulus, "x")}

    def __eq__(self, other):
        return isinstance(other, FieldTower) and (self.n, self.modulus) == (other.n, other.modulus)

    def __hash__(self):
        return hash((self.n, self.modulus))


def tower_create(n: int) -> FieldTower:
    if n not in MODULI:
        raise ConfigurationError(
            f"no modulus for n={n}: built-in table covers GF(2^2m) for n in {sorted(MODULI)}")
    modulus = MODULI[n]
    m = 2 * n
    if not is_irreducible(modulus):
        raise ConfigurationError(f"modulus {modulus:#x} is reducible")
    size = 1 << m
    alpha = 2
    for p in _prime_factors(size - 1):
        if _pow_raw(alpha, (size - 1) // p, modulus) == 1:
            raise ConfigurationError(f"x is not primitive modulo {modulus:#x}")

    dtype = np.uint8 if size <= 256 else np.uint16
    mul = np.zeros((size, size), dtype=dtype)
    # via exp/log: a*b = exp[log a + log b]
    exp = np.zeros(2 * size, dtype=np.int64)
    log = np.zeros(size, dtype=np.int64)
    z = 1
    for i in range(size - 1):
        exp[i] = z
        log[z] = i
        z = clmul_mod(z, alpha, modulus)
    exp[size - 1:2 * size - 2] = exp[:size - 1]
    nz = np.arange(1, size)
    mul[1:, 1:] = exp[log[nz][:, None] + log[nz][None, :]]
    inv = np.zeros(size, dtype=dtype)
    inv[nz] = exp[(size - 1 - log[nz]) % (size - 1)]

    q = 1 << n
    sub = np.zeros(size, dtype=np.bool_)
    for z in range(size):
        sub[z] = _pow_raw(z, q, modulus) == z

    alpha_q = _pow_raw(alpha, q, modulus)
    s = alpha ^ alpha_q
    t = clmul_mod(alpha, alpha_q, modulus)
    for name, val in (("s", s), ("t", t)):
        if not sub[val]:
            raise ConfigurationError(f"{name}={val:x} not in the subfield")
    if t == 0 or clmul_mod(alpha, alpha, modulus) ^ clmul_mod(s, alpha, modulus) ^ t:
        raise ConfigurationError("alpha^2 + s*alpha + t != 0")
    for arr in (mul, inv, sub):
        arr.setflags(write=False)
    return FieldTower(n=n, modulus=modulus, alpha=alpha, s=s, t=t,
                      mul_table=mul, inv_table=inv, sub_mask=sub)


def _pow_raw(x: int, k: int, modulus: int) -> int:
    r = 1
    while k:
        if k & 1:
            r = clmul_mod(r, x, modulus)
        x = clmul_mod(x, x, modulus)
        k >>= 1
    return r


def ff_add(tower: FieldTower, x: FFElement, y: FFElement) -> FFElement:
    return x ^ y


def ff_mul(tower: FieldTower, x: FFElement, y: FFElement) -> FFElement:
    return clmul_mod(x, y, tower.modulus)


def ff_pow(tower: FieldTower, x: FFElement, k: int) -> FFElement:
    if k < 0:
        return _pow_raw(ff_inv(tower, x), -k, tower.modulus)
    return _pow_raw(x, k, tower.modulus)


def ff_inv(tower: FieldTower, x: FFElement) -> FFElement:
    if x == 0:
        raise FieldDomainError("inverse of zero")
    # x^(2^m - 2)
    return _pow_raw(x, tower.size - 2, tower.modulus)


def in_subfield(tower: FieldTower, z: FFElement) -> bool:
    """True iff z is fixed by z -> z^q."""
    return _pow_raw(z, tower.q, tower.modulus) == z


def decompose(tower: FieldTower, z: FFElement) -> tuple[FFElement, FFElement]:
    """Write z = x + y*alpha with x, y in GF(q).

    Applying z -> z^q gives z + z^q = y*(alpha + alpha^q) = y*s.
    """
    zq = _pow_raw(z, tower.q, tower.modulus)
    y = ff_mul(tower, z ^ zq, ff_inv(tower, tower.s))
    x = z ^ ff_mul(tower, y, tower.alpha)
    if not (in_subfield(tower, x) and in_subfield(tower, y)):
        raise AssertionError(f"broken tower: decompose({z:x}) gave ({x:x}, {y:x})")
    return x, y


def to_hex(z: FFElement) -> str:
    return format(z, "x")


def from_hex(tower: FieldTower, text: str) -> FFElement:
    z = int(text, 16)
    if not 0 <= z < tower.size:
        raise ValueError(f"{text!r} is not an element of GF({tower.size})")
    return z
