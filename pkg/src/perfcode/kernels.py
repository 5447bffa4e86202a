"""Hot loops over AGL(2, q^2).

The scan visits every g = (a, A) with a ranging over GF(Q)^2 and A over a
given list of matrices, in canonical index order. For each g with g^2 in
H_q it looks for a translation h = (b, I) in H_q with (gh)^2 = e.

Two interchangeable backends: an element-by-element numba loop and a
chunked numpy version. `_accel.USE_NUMBA` picks one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from ._accel import njit


@dataclass
class ScanResult:
    scanned: int
    g: np.ndarray        # canonical indices of g with g^2 in H, ascending
    h: np.ndarray        # row of the translation list that works, or -1
    backend: str

    @property
    def bad_square_count(self) -> int:
        return len(self.g)

    @property
    def failures(self) -> np.ndarray:
        return self.g[self.h < 0]

    @property
    def first_failure(self) -> int | None:
        f = self.failures
        return int(f[0]) if len(f) else None


def _mat_codes(mats: np.ndarray, Q: int) -> np.ndarray:
    m = mats.astype(np.int64)
    return ((m[:, 0] * Q + m[:, 1]) * Q + m[:, 2]) * Q + m[:, 3]


@njit
def _scan_nb(mul, sub, mats, codes, Q, hv, fill, out_g, out_h):
    count = 0
    M = mats.shape[0]
    block = Q * Q * Q * Q
    for a1 in range(Q):
        for a2 in range(Q):
            base = (a1 * Q + a2) * block
            for k in range(M):
                p = mats[k, 0]
                r = mats[k, 1]
                s = mats[k, 2]
                u = mats[k, 3]
                # g^2 = (a + A a, A A)
                if (mul[p, p] ^ mul[r, s]) != 1 or (mul[p, r] ^ mul[r, u]) != 0:
                    continue
                if (mul[s, p] ^ mul[u, s]) != 0 or (mul[s, r] ^ mul[u, u]) != 1:
                    continue
                c1 = a1 ^ mul[p, a1] ^ mul[r, a2]
                c2 = a2 ^ mul[s, a1] ^ mul[u, a2]
                if not (sub[c1] and sub[c2]):
                    continue
                if fill:
                    found = -1
                    for j in range(hv.shape[0]):
                        b1 = hv[j, 0]
                        b2 = hv[j, 1]
                        # gh = (a + A b, A);  (gh)^2 = (d + A d, A A)
                        d1 = a1 ^ mul[p, b1] ^ mul[r, b2]
                        d2 = a2 ^ mul[s, b1] ^ mul[u, b2]
                        e1 = d1 ^ mul[p, d1] ^ mul[r, d2]
                        e2 = d2 ^ mul[s, d1] ^ mul[u, d2]
                        if e1 == 0 and e2 == 0:
                            found = j
                            break
                    out_g[count] = base + codes[k]
                    out_h[count] = found
                count += 1
    return count


def _scan_numba(mul, sub, mats, Q, hv):
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    hv = np.ascontiguousarray(hv, dtype=np.int64)
    codes = _mat_codes(mats, Q)
    empty = np.empty(0, dtype=np.int64)
    n = _scan_nb(mul, sub, mats, codes, Q, hv, False, empty, empty)
    out_g = np.empty(n, dtype=np.int64)
    out_h = np.empty(n, dtype=np.int64)
    _scan_nb(mul, sub, mats, codes, Q, hv, True, out_g, out_h)
    return out_g, out_h


def _scan_numpy(mul, sub, mats, Q, hv, chunk=1 << 14):
    mul = np.asarray(mul, dtype=np.int64)
    hv = np.asarray(hv, dtype=np.int64)
    codes = _mat_codes(mats, Q)
    a = np.indices((Q, Q)).reshape(2, -1)
    gs, hs = [], []
    for lo in range(0, len(mats), chunk):
        blk = mats[lo:lo + chunk].astype(np.int64)
        p, r, s, u = blk.T
        sq_id = ((mul[p, p] ^ mul[r, s]) == 1) & ((mul[p, r] ^ mul[r, u]) == 0) \
            & ((mul[s, p] ^ mul[u, s]) == 0) & ((mul[s, r] ^ mul[u, u]) == 1)
        if not sq_id.any():
            continue
        p, r, s, u = (x[sq_id][:, None] for x in (p, r, s, u))
        code = codes[lo:lo + chunk][sq_id][:, None]
        a1, a2 = a[0][None, :], a[1][None, :]
        c1 = a1 ^ mul[p, a1] ^ mul[r, a2]
        c2 = a2 ^ mul[s, a1] ^ mul[u, a2]
        mi, vi = np.nonzero(sub[c1] & sub[c2])
        if not len(mi):
            continue
        p, r, s, u = (x[mi, 0][:, None] for x in (p, r, s, u))
        a1, a2 = a[0][vi][:, None], a[1][vi][:, None]
        b1, b2 = hv[:, 0][None, :], hv[:, 1][None, :]
        d1 = a1 ^ mul[p, b1] ^ mul[r, b2]
        d2 = a2 ^ mul[s, b1] ^ mul[u, b2]
        ok = ((d1 ^ mul[p, d1] ^ mul[r, d2]) == 0) & ((d2 ^ mul[s, d1] ^ mul[u, d2]) == 0)
        found = np.where(ok.any(axis=1), ok.argmax(axis=1), -1)
        gs.append(vi * Q**4 + code[mi, 0])
        hs.append(found)
    if not gs:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    g = np.concatenate(gs).astype(np.int64)
    h = np.concatenate(hs).astype(np.int64)
    order = np.argsort(g, kind="stable")
    return g[order], h[order]


def phi_scan_affine(tower, mats: np.ndarray, hvecs: np.ndarray, use_numba: bool | None = None) -> ScanResult:
    """Scan all (a, A), a in GF(Q)^2, A in `mats` (sorted rows)."""
    use_numba = _accel.USE_NUMBA if use_numba is None else (use_numba and _accel.HAVE_NUMBA)
    Q = tower.size
    sub = np.ascontiguousarray(tower.sub_mask)
    fn = _scan_numba if use_numba else _scan_numpy
    g, h = fn(tower.mul_table, sub, mats, Q, hvecs)
    return ScanResult(scanned=Q * Q * len(mats), g=g, h=h, backend="numba" if use_numba else "numpy")
