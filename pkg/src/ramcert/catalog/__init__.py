"""Named arrangements: Ceva families, the exceptional reflection
arrangements (shipped as exact coefficient tables) and test generators."""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional

from ..arrangement import Arrangement, ProjLine, incidence, hirzebruch_check
from ..cyclofield import CycloElement
from ..errors import InvalidParameters, UnknownName


def _line(m: int, a, b, c) -> ProjLine:
    def conv(x):
        return x if isinstance(x, CycloElement) else CycloElement.rational(m, x)

    return ProjLine((conv(a), conv(b), conv(c)))


def ceva(m: int) -> Arrangement:
    """x - z^k y, y - z^k z, z - z^k x for k = 0..m-1 over Q(zeta_m)."""
    if not isinstance(m, int) or m < 2:
        raise InvalidParameter(f"ceva needs m >= 2, got {m!r}")
    notes = ()
    if m == 2:
        warnings.warn("ceva(2) lies outside the m >= 3 range of the reflection family")
        notes = ("m = 2 is outside the reflection family A_m^0 (m >= 3)",)
    lines = []
    for k in range(m):
        mz = -CycloElement.zeta(m, k)
        lines.append(_line(m, 1, mz, 0))
    for k in range(m):
        mz = -CycloElement.zeta(m, k)
        lines.append(_line(m, 0, 1, mz))
    for k in range(m):
        mz = -CycloElement.zeta(m, k)
        lines.append(_line(m, mz, 0, 1))
    return Arrangement(m, tuple(lines), f"ceva{m}", notes)


def extended_ceva(m: int) -> Arrangement:
    if not isinstance(m, int) or m < 2:
        raise InvalidParameter(f"extended_ceva needs m >= 2, got {m!r}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        base = ceva(m)
    coord = tuple(_line(m, *row) for row in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return Arrangement(m, base.lines + coord, f"extended_ceva{m}")


def triangle() -> Arrangement:
    lines = tuple(_line(1, *row) for row in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return Arrangement(1, lines, "triangle")


def pencil(k: int) -> Arrangement:
    """k lines through [0:0:1]."""
    if k < 1:
        raise InvalidParameters("pencil needs k >= 1")
    lines = [_line(1, 1, 0, 0)] + [_line(1, j, 1, 0) for j in range(k - 1)]
    return Arrangement(1, tuple(lines), f"pencil{k}")


def generic_random(k: int, seed: int = 0, bound: int = 9) -> Arrangement:
    """k rational lines with small integer coefficients and only double points.

    Resamples until every intersection point has multiplicity 2.
    """
    if k < 1:
        raise InvalidParameters("generic_random needs k >= 1")
    rng = random.Random(seed)
    while True:
        rows = set()
        while len(rows) < k:
            row = tuple(rng.randint(-bound, bound) for _ in range(3))
            if any(row):
                rows.add(_primitive(row))
        lines = tuple(_line(1, *row) for row in sorted(rows))
        arr = Arrangement(1, lines, f"generic{k}_seed{seed}")
        if all(p.multiplicity == 2 for p in incidence(arr).points):
            return arr


def _primitive(row):
    from math import gcd

    g = 0
    for v in row:
        g = gcd(g, v)
    row = tuple(v // g for v in row)
    for v in row:
        if v:
            return row if v > 0 else tuple(-x for x in row)
    return row


# --- exceptional reflection arrangements (data) ---------------------------

EXCEPTIONAL = {
    "icosahedral": "G23",
    "klein": "G24",
    "hesse": "G25",
    "hesse_extended": "G26",
    "valentiner": "G27",
}
_ALIASES = {
    "g23": "icosahedral",
    "g24": "klein",
    "g25": "hesse",
    "hesse_family": "hesse",
    "g26": "hesse_extended",
    "g27": "valentiner",
}


@lru_cache(maxsize=None)
def _load_table(name: str) -> dict:
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def exceptional(name: str) -> Arrangement:
    from ..arrangement import arrangement_from_json

    key = _ALIASES.get(name.lower(), name.lower())
    if key not in EXCEPTIONAL:
        raise UnknownName(name)
    arr = arrangement_from_json(_load_table(key))
    return Arrangement(arr.field_order, arr.lines, key)


# --- registry -------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], Arrangement]
    n_lines: int
    signature: dict  # multiplicity -> number of points
    hirzebruch_n: Optional[int]
    description: str = ""

    def verify(self, arr: Optional[Arrangement] = None) -> bool:
        arr = arr if arr is not None else self.build()
        inc = incidence(arr)
        hz = hirzebruch_check(arr, inc)
        return (
            len(arr.lines) == self.n_lines
            and inc.signature() == self.signature
            and (hz.n if hz.holds else None) == self.hirzebruch_n
        )


def _ceva_signature(m: int) -> dict:
    if m == 2:
        return {2: 3, 3: 4}
    if m == 3:
        return {3: 12}
    return {3: m * m, m: 3}


def _extended_ceva_signature(m: int) -> dict:
    # A_m^3: m^2 triple points, 3 points of multiplicity m+2, 3m double points
    sig = {2: 3 * m, 3: m * m}
    sig[m + 2] = sig.get(m + 2, 0) + 3
    return dict(sorted(sig.items()))


def _entries() -> dict:
    out = {"triangle": CatalogEntry("triangle", triangle, 3, {2: 3}, 1, "three generic lines")}
    for m in range(2, 9):
        out[f"ceva{m}"] = CatalogEntry(
            f"ceva{m}", (lambda m=m: ceva(m)), 3 * m, _ceva_signature(m),
            m if m >= 2 else None, f"Ceva arrangement A_{m}^0",
        )
    for m in range(2, 9):
        out[f"extended_ceva{m}"] = CatalogEntry(
            f"extended_ceva{m}", (lambda m=m: extended_ceva(m)), 3 * m + 3,
            _extended_ceva_signature(m), m + 1, f"extended Ceva arrangement A_{m}^3",
        )
    out["icosahedral"] = CatalogEntry(
        "icosahedral", lambda: exceptional("icosahedral"), 15, {2: 15, 3: 10, 5: 6}, 5,
        "reflection arrangement of G23 (H3)",
    )
    out["klein"] = CatalogEntry(
        "klein", lambda: exceptional("klein"), 21, {3: 28, 4: 21}, 7,
        "reflection arrangement of G24",
    )
    out["hesse"] = CatalogEntry(
        "hesse", lambda: exceptional("hesse"), 12, {2: 12, 4: 9}, 4,
        "reflection arrangement of G25 (Hesse)",
    )
    out["hesse_extended"] = CatalogEntry(
        "hesse_extended", lambda: exceptional("hesse_extended"), 21, {2: 36, 4: 9, 5: 12}, 7,
        "reflection arrangement of G26",
    )
    out["valentiner"] = CatalogEntry(
        "valentiner", lambda: exceptional("valentiner"), 45, {3: 120, 4: 45, 5: 36}, 15,
        "reflection arrangement of G27",
    )
    for k in (3, 4, 5):
        out[f"pencil{k}"] = CatalogEntry(f"pencil{k}", (lambda k=k: pencil(k)), k, {k: 1}, None)
    return out


CATALOG = _entries()


def build(name: str) -> Arrangement:
    """Construct a catalog entry by name (``ceva3``, ``klein``, ``G27``, ...)."""
    key = _ALIASES.get(name.lower(), name.lower())
    if key in CATALOG:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return CATALOG[key].build()
    if key.startswith("generic"):
        # generic<k> or generic<k>_seed<s>
        body = key[len("generic"):]
        k, _, s = body.partition("_seed")
        try:
            return generic_random(int(k), int(s or 0))
        except ValueError:
            pass
    raise UnknownName(name)


class InvalidParameter(InvalidParameters):
    pass
