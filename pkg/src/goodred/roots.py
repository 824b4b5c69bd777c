"""Rational roots of integer binary forms by p-adic lifting.

A root [x:y] of a primitive form with nonzero extreme coefficients has
|x| <= |c_n| and |y| <= |c_0|. Simple roots modulo a suitable prime are
lifted by Newton iteration until the modulus exceeds 2 |c_0 c_n|, then
rationally reconstructed and checked exactly.
"""

from __future__ import annotations

from .factor import primes_up_to
from .forms import (
    IntBinaryForm,
    ModPForm,
    modp_trim,
    poly_deriv,
    poly_eval,
    primitive_part,
    radical,
    squarefree_mod_p,
)
from .maps import ProjPointQ


def _reconstruct(r: int, modulus: int, xbound: int, ybound: int) -> tuple[int, int] | None:
    """Find x, y with x = r*y (mod modulus), |x| <= xbound, 0 < y <= ybound."""
    r0, r1 = modulus, r % modulus
    t0, t1 = 0, 1
    while r1 > xbound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > ybound:
        return None
    if t1 < 0:
        return -r1, -t1
    return r1, t1


def _affine_roots(f: list[int]) -> list[tuple[int, int]]:
    """Rational roots (as coprime (x, y), y > 0) of a squarefree f in Z[x] with f(0) != 0."""
    if len(f) < 2:
        return []
    if len(f) == 2:
        return [(-f[0], f[1])]
    lead, const = abs(f[-1]), abs(f[0])
    target = 2 * lead * const + 1
    df = poly_deriv(f)
    for p in primes_up_to(max(1000, 4 * len(f))):
        if lead % p == 0 or const % p == 0:
            continue
        if not squarefree_mod_p(ModPForm(p, tuple(reversed(f)))):
            continue
        break
    else:  # pragma: no cover - needs a form singular mod every small prime
        raise RuntimeError("no suitable prime for p-adic lifting")
    fp = modp_trim(f, p)
    starts = [r for r in range(p) if poly_eval(fp, r) % p == 0]
    out = []
    for r in starts:
        modulus = p
        while modulus < target:
            modulus = modulus * modulus
            r = (r - poly_eval(f, r) * pow(poly_eval(df, r), -1, modulus)) % modulus
        pair = _reconstruct(r, modulus, const, lead)
        if pair is None:
            continue
        x, y = pair
        n = len(f) - 1
        if sum(c * x**k * y ** (n - k) for k, c in enumerate(f)) == 0:
            out.append((x, y))
    return out


def rational_roots(form: IntBinaryForm) -> list[ProjPointQ]:
    """All roots of a nonzero form in P^1(Q), sorted."""
    if form.is_zero():
        raise ValueError("zero form")
    if form.degree == 0:
        return []
    rad = radical(primitive_part(form))
    out = []
    if rad.infinity_multiplicity:
        out.append(ProjPointQ.infinity())
    f = rad.chart_y1()
    if f and f[0] == 0:
        out.append(ProjPointQ(0, 1))
        f = f[1:]
    out.extend(ProjPointQ(x, y) for x, y in _affine_roots(f))
    return sorted(set(out), key=_point_key)


def _point_key(P: ProjPointQ):
    return (P.y == 0, P.to_fraction() if P.y else 0)
