"""Line arrangements in the complex projective plane, with exact incidence."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from .cyclofield import CycloElement, OrderMismatch, euler_phi
from .errors import CoincidentLines, DuplicateLines, ValidationError


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _normalize(coords):
    for c in coords:
        if not c.is_zero():
            if c == 1:
                return tuple(coords)
            s = c.inv()
            return tuple(x * s for x in coords)
    raise ValidationError("all homogeneous coordinates are zero")


class _Homogeneous:
    __slots__ = ("coords", "_key")

    def __init__(self, coords: Sequence[CycloElement]):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValidationError("need exactly three homogeneous coordinates")
        order = coords[0].order
        if any(c.order != order for c in coords):
            raise OrderMismatch("homogeneous coordinates live in different fields")
        if all(c.is_zero() for c in coords):
            raise ValidationError("all homogeneous coordinates are zero")
        self.coords = coords
        self._key = None

    @property
    def order(self) -> int:
        return self.coords[0].order

    def normalized(self):
        """Representative scaled so the first nonzero coordinate is 1."""
        return type(self)(self.key)

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = _normalize(self.coords)
        return self._key

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return all(c.is_zero() for c in _cross(self.coords, other.coords))

    def __hash__(self):
        return hash(self.key)

    def embed(self) -> tuple[complex, complex, complex]:
        return tuple(complex(c) for c in self.coords)

    def __repr__(self):
        return f"{type(self).__name__}[{' : '.join(map(repr, self.coords))}]"


class ProjPoint(_Homogeneous):
    __slots__ = ()


class ProjLine(_Homogeneous):
    """The line a*x + b*y + c*z = 0."""

    __slots__ = ()

    def contains(self, p: ProjPoint) -> bool:
        return _dot(self.coords, p.coords).is_zero()


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    c = _cross(l1.coords, l2.coords)
    if all(x.is_zero() for x in c):
        raise CoincidentLines(f"{l1!r} and {l2!r} coincide")
    return ProjPoint(c)


def proj_equal(p: _Homogeneous, q: _Homogeneous) -> bool:
    return all(x.is_zero() for x in _cross(p.coords, q.coords))


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    c = _cross(p.coords, q.coords)
    if all(x.is_zero() for x in c):
        raise ValidationError("cannot join a point with itself")
    return ProjLine(c)


@dataclass(frozen=True)
class Arrangement:
    field_order: int
    lines: tuple
    name: Optional[str] = None
    notes: tuple = ()

    def __post_init__(self):
        lines = tuple(
            ln if isinstance(ln, ProjLine) else ProjLine(ln) for ln in self.lines
        )
        object.__setattr__(self, "lines", lines)
        if not lines:
            raise ValidationError("an arrangement needs at least one line")
        for i, ln in enumerate(lines):
            if ln.order != self.field_order:
                raise OrderMismatch(
                    f"line {i} lives in Q(zeta_{ln.order}), "
                    f"arrangement field is Q(zeta_{self.field_order})"
                )
        seen = {}
        for i, ln in enumerate(lines):
            j = seen.setdefault(ln.key, i)
            if j != i:
                raise DuplicateLines(f"lines {j} and {i} are the same projective line")

    def __len__(self):
        return len(self.lines)

    def transformed(self, matrix) -> "Arrangement":
        """Lines pulled back along the coordinate change p = matrix @ p'."""
        cols = list(zip(*matrix))
        new = [ProjLine(tuple(_dot(ln.coords, col) for col in cols)) for ln in self.lines]
        return Arrangement(self.field_order, tuple(new), self.name)

    def scaled(self, factors) -> "Arrangement":
        new = [ProjLine(tuple(c * f for c in ln.coords)) for ln, f in zip(self.lines, factors)]
        return Arrangement(self.field_order, tuple(new), self.name)


@dataclass(frozen=True)
class IncidencePoint:
    point: ProjPoint
    lines: tuple
    multiplicity: int


@dataclass(frozen=True)
class IncidenceData:
    points: tuple
    per_line: tuple
    n_lines: int = field(default=0)

    def multiplicities(self) -> list[int]:
        return sorted(p.multiplicity for p in self.points)

    def signature(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.points:
            out[p.multiplicity] = out.get(p.multiplicity, 0) + 1
        return dict(sorted(out.items()))

    def point_of_pair(self, i: int, j: int) -> IncidencePoint:
        for idx in self.per_line[i]:
            if j in self.points[idx].lines:
                return self.points[idx]
        raise KeyError((i, j))

    def heavy_points(self) -> list[int]:
        return [k for k, p in enumerate(self.points) if p.multiplicity >= 3]


def incidence(arr: Arrangement) -> IncidenceData:
    """Group all pairwise intersections by projective equality."""
    lines = arr.lines
    groups: dict[tuple, list] = {}
    order: list[tuple] = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = intersect(lines[i], lines[j])
            key = p.key
            if key not in groups:
                groups[key] = [ProjPoint(key), set()]
                order.append(key)
            groups[key][1].update((i, j))
    points = []
    per_line: list[list[int]] = [[] for _ in lines]
    for idx, key in enumerate(order):
        pt, members = groups[key]
        members = tuple(sorted(members))
        points.append(IncidencePoint(pt, members, len(members)))
        for i in members:
            per_line[i].append(idx)
    return IncidenceData(tuple(points), tuple(tuple(x) for x in per_line), len(lines))


@dataclass(frozen=True)
class HirzebruchResult:
    holds: bool
    n: Optional[int]
    per_line_point_counts: tuple


def hirzebruch_check(arr: Arrangement, inc: Optional[IncidenceData] = None) -> HirzebruchResult:
    """3n lines, each meeting the others at exactly n+1 points."""
    if inc is None:
        inc = incidence(arr)
    counts = tuple(len(p) for p in inc.per_line)
    k = len(arr.lines)
    if k % 3 or k == 0:
        return HirzebruchResult(False, None, counts)
    n = k // 3
    return HirzebruchResult(all(c == n + 1 for c in counts), n, counts)


def pair_count_holds(inc: IncidenceData) -> bool:
    return sum(comb(p.multiplicity, 2) for p in inc.points) == comb(inc.n_lines, 2)


def check_consistency(inc: IncidenceData) -> None:
    """Cross-check points against per-line lists in both directions."""
    for idx, p in enumerate(inc.points):
        if p.multiplicity != len(p.lines) or p.multiplicity < 2:
            raise ValidationError(f"point {idx}: bad multiplicity")
        for i in p.lines:
            if idx not in inc.per_line[i]:
                raise ValidationError(f"point {idx} missing from line {i}")
    for i, pts in enumerate(inc.per_line):
        for idx in pts:
            if i not in inc.points[idx].lines:
                raise ValidationError(f"line {i} lists point {idx} it does not contain")
    if not pair_count_holds(inc):
        raise ValidationError("pair-count identity violated")


# --- JSON ---------------------------------------------------------------

def arrangement_from_json(data: dict) -> Arrangement:
    if not isinstance(data, dict):
        raise ValidationError("arrangement JSON must be an object")
    try:
        m = data["cyclotomic_order"]
        raw_lines = data["lines"]
    except KeyError as exc:
        raise ValidationError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValidationError("cyclotomic_order must be a positive integer")
    if not isinstance(raw_lines, list) or not raw_lines:
        raise ValidationError("lines must be a non-empty list")
    lines = []
    for i, ln in enumerate(raw_lines):
        if not isinstance(ln, list) or len(ln) != 3:
            raise ValidationError(f"line {i} must have three coefficients")
        lines.append(ProjLine(tuple(CycloElement.from_strings(m, c) for c in ln)))
    return Arrangement(m, tuple(lines), data.get("name"))


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "name": arr.name,
        "cyclotomic_order": arr.field_order,
        "lines": [[c.to_strings() for c in ln.coords] for ln in arr.lines],
    }


def load_arrangement(path) -> Arrangement:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc})") from None
    arr = arrangement_from_json(data)
    if arr.name is None:
        arr = Arrangement(arr.field_order, arr.lines, path.stem)
    return arr


def coordinate_strings(p: _Homogeneous) -> list[list[str]]:
    return [c.to_strings() for c in p.key]


def degree_of(arr: Arrangement) -> int:
    return euler_phi(arr.field_order)
