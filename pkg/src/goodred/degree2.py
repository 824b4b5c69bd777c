"""Vectorized verdicts for quadratic maps.

For F = a0 X^2 + a1 XY + a2 Y^2 and G = b0 X^2 + b1 XY + b2 Y^2 write
m01, m02, m12 for the 2x2 minors of the coefficient rows. Then

* Res(F, G) = m02^2 - m01 m12,
* the Wronskian form is W = (m01, 2 m02, m12), with disc W = 4 Res(F, G),
* the branch form is B(U, V) = Res(V F - U G, W),

and a primitive quadratic form is squarefree mod p exactly when p does not
divide its discriminant (for p = 2 as well, since b^2 - 4ac = b^2 mod 2).
So every verdict needed for the degree-2 criterion is a handful of integer
array operations, which makes an exhaustive sweep over a coefficient box
cheap. The generic per-map code in :mod:`goodred.reduction` is the reference
and the two are compared on samples in the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _res22(c0, c1, c2, w0, w1, w2):
    return (c0 * w2 - c2 * w0) ** 2 - (c0 * w1 - c1 * w0) * (c1 * w2 - c2 * w1)


def _content(*cols):
    g = np.abs(cols[0])
    for c in cols[1:]:
        g = np.gcd(g, c)
    return g


def _disc_of_primitive(c0, c1, c2):
    g = _content(c0, c1, c2)
    if np.any(g == 0):
        raise ArithmeticError("zero quadratic form")
    c0, c1, c2 = c0 // g, c1 // g, c2 // g
    return c1 * c1 - 4 * c0 * c2


@dataclass
class QuadraticBatch:
    """Integer invariants of many quadratic maps, one row per map."""

    F: np.ndarray
    G: np.ndarray
    res: np.ndarray
    minors: np.ndarray
    disc_radW: np.ndarray
    disc_radB: np.ndarray
    W: np.ndarray
    B: np.ndarray

    def __len__(self) -> int:
        return len(self.res)

    def sgr(self, p: int) -> np.ndarray:
        return self.res % p != 0

    def nonconstant(self, p: int) -> np.ndarray:
        return np.any(self.minors % p != 0, axis=1)

    def ram_nonsingular(self, p: int) -> np.ndarray:
        return self.disc_radW % p != 0

    def branch_nonsingular(self, p: int) -> np.ndarray:
        return self.disc_radB % p != 0

    def cgr(self, p: int) -> np.ndarray:
        return self.ram_nonsingular(p) & self.branch_nonsingular(p)

    def unstripped_frobenius(self) -> np.ndarray:
        """Middle coefficients of F and G even; the Frobenius test when no strip happens."""
        return (self.F[:, 1] % 2 == 0) & (self.G[:, 1] % 2 == 0)

    def verify(self, p: int) -> np.ndarray:
        """Per-map truth of the degree-2 equivalence at p."""
        rhs = self.cgr(p) & self.nonconstant(p)
        sgr = self.sgr(p)
        if p == 2:
            # with S.G.R. at 2 nothing is stripped, so the unstripped test is the Frobenius test
            return (sgr & self.unstripped_frobenius()) == rhs
        return sgr == rhs


def quadratic_batch(F: np.ndarray, G: np.ndarray) -> QuadraticBatch:
    """Invariants for rows of coefficient triples; every map must have nonzero resultant."""
    F = np.asarray(F, dtype=np.int64)
    G = np.asarray(G, dtype=np.int64)
    a0, a1, a2 = F.T
    b0, b1, b2 = G.T
    m01 = a0 * b1 - a1 * b0
    m02 = a0 * b2 - a2 * b0
    m12 = a1 * b2 - a2 * b1
    res = m02 * m02 - m01 * m12
    if np.any(res == 0):
        raise ValueError("batch contains maps with a common factor")
    w0, w1, w2 = m01, 2 * m02, m12
    # B(U, V) = Res(V F - U G, W) = P^2 - Q R with P, Q, R linear in (U, V)
    pa, pb = a0 * w2 - a2 * w0, b0 * w2 - b2 * w0
    qa, qb = a0 * w1 - a1 * w0, b0 * w1 - b1 * w0
    ra, rb = a1 * w2 - a2 * w1, b1 * w2 - b2 * w1
    B0 = pb * pb - qb * rb
    B1 = -2 * pa * pb + qa * rb + qb * ra
    B2 = pa * pa - qa * ra
    disc_W = _disc_of_primitive(w0, w1, w2)
    disc_B = _disc_of_primitive(B0, B1, B2)
    if np.any(disc_W == 0) or np.any(disc_B == 0):
        raise ArithmeticError("a quadratic map in characteristic 0 has two distinct critical values")
    return QuadraticBatch(
        F=F, G=G, res=res,
        minors=np.stack([m01, m02, m12], axis=1),
        disc_radW=disc_W, disc_radB=disc_B,
        W=np.stack([w0, w1, w2], axis=1),
        B=np.stack([B0, B1, B2], axis=1),
    )


def normalized_quadratic_maps(bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Every degree-2 map with coefficients in [-bound, bound], each exactly once.

    A pair (F, G) is kept when Res(F, G) != 0, the joint content is 1 and the
    first nonzero entry of G followed by F is positive, which is the
    normalization used by :func:`goodred.maps.new_map`.
    """
    side = 2 * bound + 1
    # row k holds the base-side digits of k, shifted into [-bound, bound], in product order
    grid = np.stack(np.unravel_index(np.arange(side**6), (side,) * 6), axis=1).astype(np.int64) - bound
    F, G = grid[:, :3], grid[:, 3:]
    m01 = F[:, 0] * G[:, 1] - F[:, 1] * G[:, 0]
    m02 = F[:, 0] * G[:, 2] - F[:, 2] * G[:, 0]
    m12 = F[:, 1] * G[:, 2] - F[:, 2] * G[:, 1]
    keep = (m02 * m02 - m01 * m12) != 0
    keep &= _content(*grid.T) == 1
    order = np.concatenate([G, F], axis=1)
    first = order[np.arange(len(order)), np.argmax(order != 0, axis=1)]
    keep &= first > 0
    return F[keep], G[keep]
