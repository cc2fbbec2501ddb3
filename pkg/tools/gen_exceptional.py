"""Regenerate the exceptional arrangement tables in src/ramcert/catalog/data/.

G23 and G25/G26 are written down directly; G24 (Klein) and G27 (Valentiner)
are obtained by closing classical generator sets to a finite matrix group
and taking the mirror of every involution.  Each table is checked against
its known combinatorial signature before it is written.

    python tools/gen_exceptional.py
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

from ramcert.arrangement import Arrangement, ProjLine, arrangement_to_json, incidence
from ramcert.catalog import CATALOG, ceva
from ramcert.cyclofield import CycloElement, lift

DATA = Path(__file__).resolve().parents[1] / "src" / "ramcert" / "catalog" / "data"


def mat_mul(a, b):
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(3)), a[0][0] * 0) for j in range(3))
        for i in range(3)
    )


def identity(m):
    one, zero = CycloElement.rational(m, 1), CycloElement.rational(m, 0)
    return tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3))


def close_group(gens, m, limit=5000):
    ident = identity(m)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = mat_mul(g, h)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > limit:
                        raise RuntimeError("group closure exceeded limit")
        frontier = nxt
    return seen


def mirrors(group, m):
    """Lines fixed pointwise by the involutions -g (g of order 2, det 1)."""
    ident = identity(m)
    out = {}
    for g in group:
        if g == ident or mat_mul(g, g) != ident:
            continue
        gi = [[g[i][j] + ident[i][j] for j in range(3)] for i in range(3)]
        row = next(r for r in gi if any(not c.is_zero() for c in r))
        ln = ProjLine(tuple(row))
        out.setdefault(ln.key, ln)
    return [out[k] for k in sorted(out, key=lambda key: [c.to_strings() for c in key])]


def klein():
    m = 7
    z = lambda k: CycloElement.zeta(m, k)
    zero = CycloElement.rational(m, 0)
    s = ((z(4), zero, zero), (zero, z(2), zero), (zero, zero, z(1)))
    one = CycloElement.rational(m, 1)
    t = ((zero, one, zero), (zero, zero, one), (one, zero, zero))
    sqrt_m7 = z(1) + z(2) + z(4) - z(3) - z(5) - z(6)
    a, b, c = z(1) - z(6), z(2) - z(5), z(4) - z(3)
    f = -sqrt_m7.inv()
    r = tuple(tuple(f * x for x in row) for row in ((a, b, c), (b, c, a), (c, a, b)))
    group = close_group([s, t, r], m)
    return group, mirrors(group, m)


def valentiner():
    m = 15
    one = CycloElement.rational(m, 1)
    zero = CycloElement.rational(m, 0)
    half = CycloElement.rational(m, "1/2")
    z5 = lambda k: lift(CycloElement.zeta(5, k), m)
    omega = lift(CycloElement.zeta(3, 1), m)
    sqrt5 = 1 + 2 * (z5(1) + z5(4))
    mu1 = (sqrt5 - 1) * half
    mu2 = (-sqrt5 - 1) * half
    g1 = ((one, zero, zero), (zero, -one, zero), (zero, zero, -one))
    g2 = ((zero, one, zero), (zero, zero, one), (one, zero, zero))
    g3 = tuple(
        tuple(half * x for x in row)
        for row in ((-one, mu2, mu1), (mu2, mu1, -one), (mu1, -one, mu2))
    )
    g4 = ((-one, zero, zero), (zero, zero, -omega), (zero, -omega * omega, zero))
    group = close_group([g1, g2, g3, g4], m)
    return group, mirrors(group, m)


def icosahedral():
    m = 5
    phi = 1 + CycloElement.zeta(m, 1) + CycloElement.zeta(m, 4)
    inv_phi = phi - 1
    one = CycloElement.rational(m, 1)
    zero = CycloElement.rational(m, 0)
    rows = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    for s1 in (1, -1):
        for s2 in (1, -1):
            base = (one, phi * s1, inv_phi * s2)
            for shift in range(3):
                rows.append(tuple(base[(i - shift) % 3] for i in range(3)))
    return [ProjLine(r) for r in rows]


def hesse():
    m = 3
    w = lambda k: CycloElement.zeta(m, k)
    one = CycloElement.rational(m, 1)
    zero = CycloElement.rational(m, 0)
    rows = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    rows += [(one, w(a), w(b)) for a in range(3) for b in range(3)]
    return [ProjLine(r) for r in rows]


def hesse_extended():
    return hesse() + list(ceva(3).lines)


def write(name, field_order, lines):
    arr = Arrangement(field_order, tuple(lines), name)
    entry = CATALOG[name]
    sig = incidence(arr).signature()
    if not entry.verify(arr):
        raise SystemExit(f"{name}: signature {sig} does not match {entry.signature}")
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / f"{name}.json").write_text(json.dumps(arrangement_to_json(arr), indent=1) + "\n")
    print(f"{name}: {len(lines)} lines, signature {sig}")


def main(argv):
    names = argv or ["icosahedral", "hesse", "hesse_extended", "klein", "valentiner"]
    for name in names:
        if name == "icosahedral":
            write(name, 5, icosahedral())
        elif name == "hesse":
            write(name, 3, hesse())
        elif name == "hesse_extended":
            write(name, 3, hesse_extended())
        elif name == "klein":
            group, lines = klein()
            print(f"klein: group of order {len(group)}")
            write(name, 7, lines)
        elif name == "valentiner":
            group, lines = valentiner()
            print(f"valentiner: group of order {len(group)}")
            write(name, 15, lines)


if __name__ == "__main__":
    main(sys.argv[1:])
