"""Linear colorings of hypercube faces and the constructions built from them.

A linear Q_ell-coloring sends the region-count vector ``(a_0, ..., a_ell)`` of
a face to ``sum(a_i * weights[i])`` in a finite abelian group.  The weights must
generate the group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .groups import Group, GroupElement, StructureError, subgroup_index

FORMAT_VERSION = 1

# Construction column as printed in the reference table (d -> cyclic factors).
PRINTED_CONSTRUCTION = {
    4: (3, 2),
    5: (3, 3),
    6: (5, 3),
    7: (5, 4),
    8: (7, 4),
    9: (10, 4),
    10: (13, 4),
    11: (13, 5),
    12: (17, 5),
}


class NotSurjective(ValueError):
    pass


class ParamViolation(ValueError):
    pass


class ColoringFormatError(ValueError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


@dataclass(frozen=True)
class LinearColoring:
    ell: int
    group: Group
    weights: tuple[GroupElement, ...]
    label: str = ""
    target_d: int | None = field(default=None, compare=False)
    note: str | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def exponent(self) -> int:
        return self.group.exponent

    def color(self, v: Sequence[int]) -> GroupElement:
        return face_color(self, v)

    def weight_indices(self) -> list[int]:
        return [self.group.index(w) for w in self.weights]

    def reversed(self) -> "LinearColoring":
        return LinearColoring(self.ell, self.group, self.weights[::-1],
                              f"reversed({self.label})", self.target_d)


@dataclass(frozen=True)
class CruxParams:
    t: int
    modulus_n: int
    variant: str = "A"

    @property
    def m(self) -> int:
        t = self.t
        return t * t + 1 if self.variant == "A" else t * t + t + 1

    @property
    def d(self) -> int:
        extra = -1 if self.variant == "A" else 0
        return 2 * self.t + self.modulus_n + extra

    def validate(self) -> "CruxParams":
        if self.variant not in ("A", "B"):
            raise ParamViolation(f"variant must be 'A' or 'B', got {self.variant!r}")
        min_t = 2 if self.variant == "A" else 1
        if self.t < min_t:
            raise ParamViolation(f"variant {self.variant} needs t >= {min_t}, got t={self.t}")
        if self.modulus_n <= self.t:
            raise ParamViolation(f"need n > t, got n={self.modulus_n}, t={self.t}")
        return self


def make_linear(group: Group, weights: Sequence[Sequence[int]], ell: int,
                label: str = "", target_d: int | None = None,
                note: str | None = None) -> LinearColoring:
    if ell < 0:
        raise StructureError(f"ell must be >= 0, got {ell}")
    if len(weights) != ell + 1:
        raise StructureError(f"need ell+1 = {ell + 1} weights, got {len(weights)}")
    ws = tuple(group.check(w) for w in weights)
    if subgroup_index(group, ws) != 1:
        raise NotSurjective(f"weights {list(ws)} do not generate {group}")
    return LinearColoring(ell, group, ws, label, target_d, note)


def balanced_moduli(d: int, ell: int) -> tuple[int, ...]:
    """ell+1 positive parts of d+1 differing by at most one, larger first."""
    if ell < 0 or d < ell:
        raise ValueError(f"need d >= ell >= 0, got d={d}, ell={ell}")
    q, r = divmod(d + 1, ell + 1)
    return (q + 1,) * r + (q,) * (ell + 1 - r)


def basic_coloring(d: int, ell: int, moduli: Sequence[int] | None = None) -> LinearColoring:
    if moduli is None:
        moduli = balanced_moduli(d, ell)
    else:
        moduli = tuple(int(m) for m in moduli)
        if len(moduli) != ell + 1 or any(m < 1 for m in moduli) or sum(moduli) != d + 1:
            raise ValueError(f"moduli {moduli} must be ell+1 positive integers summing to d+1")
    g = Group(tuple(moduli))
    units = [tuple(int(i == j) % g.moduli[j] for j in range(g.rank)) for i in range(ell + 1)]
    return make_linear(g, units, ell, label=f"basic d={d} moduli={list(moduli)}", target_d=d)


def crux_coloring(p: CruxParams) -> LinearColoring:
    p.validate()
    m, n = p.m, p.modulus_n
    g = Group((m, n))
    weights = [(1 % m, 1 % n), ((-p.t) % m, 1 % n), (0, 1 % n)]
    return make_linear(g, weights, 2, label=f"crux t={p.t} n={n} {p.variant}",
                       target_d=p.d)


def main_params(d: int) -> CruxParams:
    if d < 4:
        raise ParamViolation(f"main construction needs d >= 4, got {d}")
    k, r = divmod(d, 3)
    if r == 0:
        return CruxParams(k, k + 1, "A")
    if r == 1:
        return CruxParams(k, k + 1, "B")
    return CruxParams(k, k + 2, "B")


def main_color_count(d: int) -> int:
    k, r = divmod(d, 3)
    if r == 0:
        return (k * k + 1) * (k + 1)
    if r == 1:
        return (k * k + k + 1) * (k + 1)
    return (k * k + k + 1) * (k + 2)


def table_discrepancy(d: int, moduli: Sequence[int]) -> str | None:
    printed = PRINTED_CONSTRUCTION.get(d)
    if printed is None or tuple(moduli) == printed:
        return None
    a, b = printed
    return (f"reference table prints {a * b}={a}*{b}; construction gives "
            f"{'*'.join(map(str, moduli))}")


def main_coloring(d: int) -> LinearColoring:
    c = crux_coloring(main_params(d))
    note = table_discrepancy(d, c.group.moduli)
    return LinearColoring(c.ell, c.group, c.weights, f"main d={d} ({c.label})", d, note)


def product_coloring(c0: LinearColoring, c1: LinearColoring) -> LinearColoring:
    """Direct sum: c0 colors the leading c0.ell+1 regions, c1 the trailing ones."""
    g = Group(c0.group.moduli + c1.group.moduli)
    pad0 = (0,) * c1.group.rank
    pad1 = (0,) * c0.group.rank
    weights = [w + pad0 for w in c0.weights] + [pad1 + w for w in c1.weights]
    target = None
    if c0.target_d is not None and c1.target_d is not None:
        target = c0.target_d + c1.target_d + 1
    return make_linear(g, weights, c0.ell + c1.ell + 1,
                       label=f"({c0.label}) + ({c1.label})", target_d=target)


def trivial_coloring(ell: int) -> LinearColoring:
    return make_linear(Group((1,)), [(0,)] * (ell + 1), ell, label="trivial", target_d=ell)


def face_color(c: LinearColoring, v: Sequence[int]) -> GroupElement:
    if len(v) != c.ell + 1:
        raise StructureError(f"face vector needs {c.ell + 1} entries, got {len(v)}")
    acc = [0] * c.group.rank
    for a, w in zip(v, c.weights):
        for j, x in enumerate(w):
            acc[j] += a * x
    return c.group.element(acc)


# -- coloring files ---------------------------------------------------------

_KEYS = ("format_version", "ell", "moduli", "weights", "label")


def to_dict(c: LinearColoring) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "ell": c.ell,
        "moduli": list(c.group.moduli),
        "weights": [list(w) for w in c.weights],
        "label": c.label or "",
    }


def encode(c: LinearColoring) -> str:
    d = to_dict(c)
    lines = [f'  "{k}": {json.dumps(d[k], separators=(", ", ": "))}' for k in _KEYS]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for no, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return no
    return None


def _int_list(value, key: str, text: str) -> list[int]:
    if not isinstance(value, list) or not all(type(x) is int for x in value):
        raise ColoringFormatError("expected a list of integers", key, _line_of(text, key))
    return value


def from_dict(data: dict, text: str = "") -> LinearColoring:
    if not isinstance(data, dict):
        raise ColoringFormatError("top level must be an object", line=1)
    for k in _KEYS:
        if k not in data:
            raise ColoringFormatError("missing field", k)
    extra = sorted(set(data) - set(_KEYS))
    if extra:
        raise ColoringFormatError("unknown field", extra[0], _line_of(text, extra[0]))
    if data["format_version"] != FORMAT_VERSION:
        raise ColoringFormatError(f"unsupported version {data['format_version']!r}",
                                  "format_version", _line_of(text, "format_version"))
    ell = data["ell"]
    if type(ell) is not int or ell < 0:
        raise ColoringFormatError("ell must be a nonnegative integer", "ell", _line_of(text, "ell"))
    moduli = _int_list(data["moduli"], "moduli", text)
    weights = data["weights"]
    if not isinstance(weights, list):
        raise ColoringFormatError("expected a list of lists", "weights", _line_of(text, "weights"))
    weights = [_int_list(w, "weights", text) for w in weights]
    label = data["label"]
    if not isinstance(label, str):
        raise ColoringFormatError("label must be a string", "label", _line_of(text, "label"))
    try:
        g = Group(tuple(moduli))
    except StructureError as exc:
        raise ColoringFormatError(str(exc), "moduli", _line_of(text, "moduli")) from exc
    try:
        return make_linear(g, weights, ell, label)
    except NotSurjective:
        raise
    except StructureError as exc:
        raise ColoringFormatError(str(exc), "weights", _line_of(text, "weights")) from exc


def decode(text: str) -> LinearColoring:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ColoringFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return from_dict(data, text)


def save(c: LinearColoring, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(encode(c))


def load(path) -> LinearColoring:
    with open(path, encoding="utf-8") as fh:
        return decode(fh.read())
