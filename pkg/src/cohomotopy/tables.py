"""Low-dimensional homotopy groups of spheres, odd Moore spaces and Chang complexes.

The data lives in ``data/homotopy_tables.json``.  A query outside the
transcribed range returns ``None``: absence never means "trivial group".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd

from .abelian import FgAbGroup, factor, lcm, prime_power, superscript

_KINDS = ("sphere", "moore", "chang")


@dataclass(frozen=True, order=True)
class Space:
    """Sphere S^d, Moore space P^d(q) = S^(d-1) ∪_q e^d, or Chang complex C^d_η."""

    kind: str
    dim: int
    order: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "sphere" and self.dim < 1:
            raise ValueError("sphere dimension must be >= 1")
        if self.kind == "moore" and (self.order <= 1 or self.dim < 2):
            raise ValueError("Moore space needs order > 1 and dimension >= 2")
        if self.kind == "chang" and self.dim < 4:
            raise ValueError("Chang complex dimension must be >= 4")
        if self.kind != "moore" and self.order:
            raise ValueError("only Moore spaces carry an order")

    @classmethod
    def sphere(cls, d: int) -> "Space":
        return cls("sphere", d)

    @classmethod
    def moore(cls, d: int, q: int) -> "Space":
        return cls("moore", d, q)

    @classmethod
    def chang(cls, d: int) -> "Space":
        return cls("chang", d)

    def reduced_homology(self) -> dict[int, FgAbGroup]:
        if self.kind == "sphere":
            return {self.dim: FgAbGroup(1)}
        if self.kind == "moore":
            return {self.dim - 1: FgAbGroup.cyclic(self.order)}
        return {self.dim - 2: FgAbGroup(1), self.dim: FgAbGroup(1)}

    def __str__(self) -> str:
        d = superscript(self.dim)
        if self.kind == "sphere":
            return f"S{d}"
        if self.kind == "moore":
            return f"P{d}({self.order})"
        return f"C{d}_η"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim}
        if self.kind == "moore":
            out["order"] = self.order
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Space":
        return cls(data["kind"], int(data["dim"]), int(data.get("order", 0)))


@dataclass(frozen=True)
class Side:
    text: str
    vectors: tuple[tuple[int, ...], ...] = ()
    order_bound: int | None = None


@dataclass(frozen=True)
class Relation:
    lhs: Side
    rhs: Side
    home_orders: tuple[int, ...] | None = None
    symbols: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.lhs.text} = {self.rhs.text}"


@dataclass(frozen=True)
class HomotopyEntry:
    """[source, target] with its group, named generators and stored relations.

    ``printed_orders`` lists the cyclic summands in the order the generators are
    named (0 = Z); relation vectors are coordinates in these summands.
    """

    source: Space
    target: Space
    group: FgAbGroup
    printed_orders: tuple[int, ...]
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = field(default=(), compare=False)

    @property
    def source_dim(self) -> int:
        return self.source.dim

    def describe(self) -> str:
        if not self.generators:
            return "0"
        parts = []
        for q, g in zip(self.printed_orders, self.generators):
            parts.append(f"{'Z' if q == 0 else f'Z/{q}'}⟨{g}⟩")
        return " ⊕ ".join(parts)


def _fmt(text: str, n: int, r: int) -> str:
    return text.format(n=n, n1=n + 1, n2=n + 2, n3=n + 3, nm3=n - 3, r=r)


def _moore_matches(pattern: dict, q: int) -> int | None:
    """Return the exponent r when P(q) satisfies the pattern's prime condition."""
    pr = prime_power(q)
    if pr is None:
        return None
    p, r = pr
    want = pattern.get("prime", "odd")
    if want == "odd" and p == 2:
        return None
    if want == "ge5" and p < 5:
        return None
    if isinstance(want, int) and p != want:
        return None
    if r < pattern.get("exp_min", 1) or r > pattern.get("exp_max", r):
        return None
    return r


def _match_space(pattern: dict, space: Space, n: int) -> tuple[bool, int]:
    if pattern["kind"] != space.kind or space.dim != n + pattern["offset"]:
        return False, 0
    if space.kind == "moore":
        r = _moore_matches(pattern, space.order)
        return (r is not None), (r or 0)
    return True, 0


def _n_in_range(rec: dict, n: int) -> bool:
    return rec["n_min"] <= n <= rec.get("n_max", n)


def _build(rec: dict, source: Space, target: Space, n: int, r: int) -> HomotopyEntry:
    q = next((s.order for s in (source, target) if s.kind == "moore"), 0)
    printed = tuple([0] * rec["group"]["free_rank"] + [q if c == "q" else int(c) for c in rec["group"]["cyclic"]])
    rels = []
    for rel in rec.get("relations", ()):
        sides = []
        for key in ("lhs", "rhs"):
            s = rel[key]
            sides.append(
                Side(
                    _fmt(s["text"], n, r),
                    tuple(tuple(v) for v in s.get("vectors", ())),
                    s.get("order_bound"),
                )
            )
        home = rel.get("home")
        home_orders = None
        if home is not None:
            home_orders = tuple([0] * home["free_rank"] + list(home["cyclic"]))
        rels.append(Relation(sides[0], sides[1], home_orders, tuple(rel.get("symbols", ()))))
    return HomotopyEntry(
        source,
        target,
        FgAbGroup.from_orders(printed),
        printed,
        tuple(_fmt(g, n, r) for g in rec["generators"]),
        tuple(rels),
    )


@lru_cache(maxsize=1)
def _data() -> dict:
    with resources.files(__package__).joinpath("data/homotopy_tables.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def lookup(source_dim: int, target: Space) -> HomotopyEntry | None:
    """π_source_dim(target), or None when the table does not cover it."""
    for rec in _data()["homotopy_groups"]:
        n = target.dim - rec["target"]["offset"]
        if not _n_in_range(rec, n) or source_dim != n + rec["source"]:
            continue
        ok, r = _match_space(rec["target"], target, n)
        if ok:
            return _build(rec, Space.sphere(source_dim), target, n, r)
    return None


def lookup_maps(source: Space, target: Space) -> HomotopyEntry | None:
    """[source, target] for the tabulated non-sphere sources, else None."""
    if source.kind == "sphere":
        return lookup(source.dim, target)
    for rec in _data()["maps"]:
        n = target.dim - rec["target"]["offset"]
        if not _n_in_range(rec, n):
            continue
        ok_t, r_t = _match_space(rec["target"], target, n)
        ok_s, r_s = _match_space(rec["source"], source, n)
        if ok_t and ok_s:
            return _build(rec, source, target, n, r_s or r_t)
    return None


def relations_for(entry: HomotopyEntry) -> list[Relation]:
    return list(entry.relations)


def all_entries(max_n: int = 8) -> list[HomotopyEntry]:
    """Every entry instantiated for n up to ``max_n`` and Moore orders 2, 4, 3, 9, 5."""
    out = []
    for rec in _data()["homotopy_groups"]:
        for n in range(rec["n_min"], rec.get("n_max", max_n) + 1):
            kind = rec["target"]["kind"]
            d = n + rec["target"]["offset"]
            targets = [Space.moore(d, q) for q in (2, 4, 3, 9, 5)] if kind == "moore" else [Space(kind, d)]
            for t in targets:
                e = lookup(n + rec["source"], t)
                if e is not None and e not in out:
                    out.append(e)
    return out


def _vector_order(orders: tuple[int, ...], vec: tuple[int, ...]) -> int:
    out = 1
    for q, x in zip(orders, vec):
        if q == 0:
            if x:
                return 0
        else:
            out = lcm(out, q // gcd(q, x))
    return out


def relation_consistent(rel: Relation, entry: HomotopyEntry) -> bool:
    """Check that both sides of a relation can have the same order in its home group."""
    orders = rel.home_orders if rel.home_orders is not None else entry.printed_orders

    def possible(side: Side) -> set[int] | int | None:
        if side.vectors:
            return {_vector_order(orders, v) for v in side.vectors}
        return side.order_bound

    a, b = possible(rel.lhs), possible(rel.rhs)
    if isinstance(a, set) and isinstance(b, set):
        return bool(a & b)
    for exact, bound in ((a, b), (b, a)):
        if isinstance(exact, set) and isinstance(bound, int):
            return all(bound == 0 or (o != 0 and bound % o == 0) for o in exact)
    return True


def moore_summands(orders: list[int], d: int) -> list[Space]:
    """P^d(G) for G = ⊕ Z/q, split into one Moore space per prime-power factor."""
    out = []
    for q in orders:
        for p, r in factor(q).items():
            out.append(Space.moore(d, p**r))
    return out
