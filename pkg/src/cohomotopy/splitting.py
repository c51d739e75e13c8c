"""Suspension splittings of ΣM and the normal form of the top-cell attaching map.

The attaching vector of ΣM's top cell lives in a direct sum of cyclic
groups, one block per family of wedge summands.  Self-equivalences of the
wedge act on it by a small set of moves; ``normalize`` picks the canonical
representative of each orbit in closed form and ``orbit_oracle`` recovers
whole orbits by breadth-first search so tests can certify the closed form.

Canonical representative: the minimum of the orbit under ``canonical_key``,
which reads the blocks in schema order and each block from its last entry
to its first.  This puts surviving entries at the front of a block.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterator

import numpy as np

from .abelian import FgAbGroup, direct_sum
from .manifold import (
    BLOCK_SCHEMA,
    AttachingVector,
    BlockSpec,
    ManifoldDescriptor,
    homology_table,
    require_valid,
)
from .tables import Space, moore_summands

__all__ = [
    "AttachingVector",
    "Cofibre",
    "MoveRule",
    "NormalizedAttachment",
    "OracleBoundExceeded",
    "Orbit",
    "WedgeDecomposition",
    "canonical_key",
    "homology_check",
    "move_set",
    "normalize",
    "orbit_oracle",
    "suspension_splitting",
]

ORACLE_MAX_BLOCK = 3

# Moore blocks: which way coefficient may be transferred between slots.
# "min": slot j may absorb slot i when r_i <= r_j, so the support settles on
# the smallest exponent; "max" is the reverse.
MOORE_DIRECTION = {(2, "z"): "max", (3, "u"): "min", (3, "w"): "max", (4, "w"): "min"}

# Blocks that interact through moves; each group is contiguous in schema order.
COMPONENTS = {
    2: (("x",), ("y",), ("z",), ("w",)),
    3: (("x",), ("y",), ("z",), ("u",), ("w",)),
    4: (("x",), ("y", "z1", "z2"), ("w",)),
}


class OracleBoundExceeded(ValueError):
    """The orbit oracle only runs at test scale."""


@dataclass(frozen=True)
class MoveRule:
    kind: str  # "transvect", "negate", "transfer", "pair-transvect", "pair-negate", "feed"
    blocks: tuple[str, ...]
    note: str

    def __str__(self) -> str:
        return f"{self.kind}[{','.join(self.blocks)}]: {self.note}"


def move_set(n: int) -> list[MoveRule]:
    """The rewrite moves acting on attaching vectors for a given n."""
    if n not in BLOCK_SCHEMA:
        raise ValueError(f"n must be one of {sorted(BLOCK_SCHEMA)}")
    rules = []
    for spec in BLOCK_SCHEMA[n]:
        if n == 4 and spec.name in ("z1", "z2"):
            continue
        direction = MOORE_DIRECTION.get((n, spec.name))
        if direction is not None:
            cond = "r_i <= r_j" if direction == "min" else "r_i >= r_j"
            rules.append(MoveRule("transfer", (spec.name,), f"{spec.name}_j += {spec.name}_i when {cond}"))
        else:
            rules.append(MoveRule("transvect", (spec.name,), f"{spec.name}_j += {spec.name}_i (i != j)"))
        rules.append(MoveRule("negate", (spec.name,), f"{spec.name}_i -> -{spec.name}_i"))
    if n == 4:
        rules.append(MoveRule("pair-transvect", ("z1", "z2"), "(z1_j, z2_j) += (z1_i, z2_i): one C⁷_η summand onto another"))
        rules.append(MoveRule("pair-negate", ("z1", "z2"), "(z1_i, z2_i) -> (-z1_i, z2_i): degree -1 on C⁷_η"))
        rules.append(MoveRule("feed", ("y", "z2"), "z2_i += y_j: bottom-cell inclusion S⁵ -> C⁷_η"))
    return rules


# ---------------------------------------------------------------------------
# closed-form normal form


@dataclass(frozen=True)
class NormalizedAttachment:
    """Canonical attaching vector plus the exponents it singles out.

    r_j0, r_j1 are the 3-exponents carrying the Moore support (0 when the
    block is zero); delta = 1 iff n = 3 and the surviving x entry is odd.
    """

    vector: AttachingVector
    r_j0: int = 0
    r_j1: int = 0
    delta: int = 0

    @property
    def n(self) -> int:
        return self.vector.n

    def __getitem__(self, name: str) -> tuple[int, ...]:
        return self.vector[name]

    def is_zero(self) -> bool:
        return self.vector.is_zero()

    def to_dict(self) -> dict:
        return {"blocks": self.vector.to_dict(), "r_j0": self.r_j0, "r_j1": self.r_j1, "delta": self.delta}


def _cyclic_normal(vals: tuple[int, ...], mod: int) -> tuple[int, ...]:
    if not vals:
        return ()
    if len(vals) == 1:
        v = vals[0] % mod
        return (min(v, (mod - v) % mod),)
    g = mod
    for v in vals:
        g = gcd(g, v)
    return (g % mod,) + (0,) * (len(vals) - 1)


def _moore_normal(vals: tuple[int, ...], exps: tuple[int, ...], direction: str) -> tuple[tuple[int, ...], int]:
    support = [r for v, r in zip(vals, exps) if v % 3]
    if not support:
        return (0,) * len(vals), 0
    target = min(support) if direction == "min" else max(support)
    j = exps.index(target)
    return tuple(int(i == j) for i in range(len(vals))), target


def _coupled_normal(y: tuple[int, ...], z1: tuple[int, ...], z2: tuple[int, ...]):
    c = len(z1)
    y = tuple(v % 2 for v in y)
    if any(y):
        ny = (1,) + (0,) * (len(y) - 1)
        return ny, _cyclic_normal(z1, 24), (0,) * c
    if c == 0:
        return y, (), ()
    if c == 1:
        a = z1[0] % 24
        return y, (min(a, (24 - a) % 24),), (z2[0] % 2,)
    d = 24
    for a in z1:
        d = gcd(d, a)
    d %= 24
    nz1 = (d,) + (0,) * (c - 1)
    cols = [(a % 24, b % 2) for a, b in zip(z1, z2)]
    if not any(b for _, b in cols):
        return y, nz1, (0,) * c
    if _span(cols) == _span([(d, 1)]):
        return y, nz1, (1,) + (0,) * (c - 1)
    return y, nz1, (0, 1) + (0,) * (c - 2)


def _span(gens: list[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Subgroup of Z/24 ⊕ Z/2 generated by ``gens``."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        a, b = frontier.pop()
        for ga, gb in gens:
            nxt = ((a + ga) % 24, (b + gb) % 2)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def normalize(v: AttachingVector) -> NormalizedAttachment:
    """Canonical representative of v's orbit under ``move_set``."""
    n, exps = v.n, v.exponents
    lengths = v.lengths()
    for spec in BLOCK_SCHEMA[n]:
        if spec.length == "t" and lengths[spec.name] != len(exps):
            raise ValueError(f"block {spec.name} has {lengths[spec.name]} entries but T has {len(exps)} 3-primary factors")
    out: dict[str, tuple[int, ...]] = {}
    r_j0 = r_j1 = 0
    for spec in BLOCK_SCHEMA[n]:
        name = spec.name
        direction = MOORE_DIRECTION.get((n, name))
        if direction is not None:
            out[name], r = _moore_normal(v[name], exps, direction)
            if (n, name) in ((2, "z"), (3, "u"), (4, "w")):
                r_j0 = r
            else:
                r_j1 = r
        elif n == 4 and name in ("y", "z1", "z2"):
            continue
        else:
            out[name] = _cyclic_normal(v[name], spec.modulus)
    if n == 4:
        out["y"], out["z1"], out["z2"] = _coupled_normal(v["y"], v["z1"], v["z2"])
    delta = 0
    if n == 3 and out["x"]:
        delta = out["x"][0] % 2
    vec = AttachingVector(n, tuple(out.items()), exps)
    return NormalizedAttachment(vec, r_j0, r_j1, delta)


def canonical_key(v: AttachingVector) -> tuple[int, ...]:
    out: list[int] = []
    for _, vals in v.blocks:
        out.extend(reversed(vals))
    return tuple(out)


# ---------------------------------------------------------------------------
# orbit oracle


def _component_moves(n: int, names: tuple[str, ...], lengths: dict[str, int], exps: tuple[int, ...]):
    """Concrete moves on the flat state of one component: (adds, negations)."""
    offs, pos = {}, 0
    for name in names:
        offs[name] = pos
        pos += lengths[name]
    moves: list[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]] = []
    for name in names:
        if n == 4 and name in ("z1", "z2"):
            continue
        m, o = lengths[name], offs[name]
        direction = MOORE_DIRECTION.get((n, name))
        for i in range(m):
            moves.append(((), (o + i,)))
            for j in range(m):
                if i == j:
                    continue
                if direction == "min" and exps[i] > exps[j]:
                    continue
                if direction == "max" and exps[i] < exps[j]:
                    continue
                moves.append((((o + j, o + i),), ()))
    if n == 4 and "z1" in names:
        c, a, b = lengths["z1"], offs["z1"], offs["z2"]
        for i in range(c):
            moves.append(((), (a + i,)))
            for j in range(c):
                if i != j:
                    moves.append((((a + j, a + i), (b + j, b + i)), ()))
        y = offs["y"]
        for j in range(lengths["y"]):
            for i in range(c):
                moves.append((((b + i, y + j),), ()))
    return moves


@dataclass(frozen=True, eq=False)
class ComponentOrbit:
    """Orbit of one move component, states encoded in mixed radix over ``mods``."""

    names: tuple[str, ...]
    lengths: tuple[int, ...]
    mods: tuple[int, ...]
    codes: np.ndarray  # sorted

    @property
    def weights(self) -> np.ndarray:
        w = np.ones(len(self.mods), dtype=np.int64)
        for i in range(len(self.mods) - 2, -1, -1):
            w[i] = w[i + 1] * self.mods[i + 1]
        return w

    def encode(self, state: tuple[int, ...]) -> int:
        return int(np.dot(np.array(state, dtype=np.int64), self.weights)) if state else 0

    def digits(self) -> np.ndarray:
        return (self.codes[:, None] // self.weights) % np.array(self.mods, dtype=np.int64)

    def __len__(self) -> int:
        return int(self.codes.size)

    def __contains__(self, state: tuple[int, ...]) -> bool:
        code = self.encode(state)
        i = int(np.searchsorted(self.codes, code))
        return i < self.codes.size and int(self.codes[i]) == code

    def states(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.digits()]

    def key_columns(self) -> list[int]:
        """Column order of the canonical key: blocks in order, each block reversed."""
        cols, pos = [], 0
        for m in self.lengths:
            cols.extend(range(pos + m - 1, pos - 1, -1))
            pos += m
        return cols

    def canonical(self) -> tuple[int, ...]:
        if not self.mods:
            return ()
        d = self.digits()
        cols = self.key_columns()
        # lexsort sorts by its last key first
        order = np.lexsort(tuple(d[:, c] for c in reversed(cols)))
        return tuple(int(x) for x in d[order[0]])


def _bfs(start: tuple[int, ...], mods: tuple[int, ...], moves) -> np.ndarray:
    """Breadth-first closure, one numpy pass per move and level.

    States are encoded in mixed radix over ``mods``; the visited set is a
    boolean array over the whole state space.  Returns the sorted codes.
    """
    if not mods:
        return np.zeros(1, dtype=np.int64)
    radix = np.array(mods, dtype=np.int64)
    weights = np.ones(len(mods), dtype=np.int64)
    for i in range(len(mods) - 2, -1, -1):
        weights[i] = weights[i + 1] * radix[i + 1]
    seen = np.zeros(int(weights[0] * radix[0]), dtype=bool)
    code = int(np.dot(np.array(start, dtype=np.int64), weights))
    seen[code] = True
    frontier = np.array([code], dtype=np.int64)
    while frontier.size:
        digits = (frontier[:, None] // weights) % radix
        found = []
        for adds, negs in moves:
            t = digits.copy()
            for dst, src in adds:
                t[:, dst] = (digits[:, dst] + digits[:, src]) % radix[dst]
            for i in negs:
                t[:, i] = (-digits[:, i]) % radix[i]
            codes = t @ weights
            found.append(codes[~seen[codes]])
        nxt = np.unique(np.concatenate(found))
        seen[nxt] = True
        frontier = nxt
    return np.nonzero(seen)[0].astype(np.int64)


@dataclass(frozen=True, eq=False)
class Orbit:
    """An orbit stored as a product of per-component orbits."""

    template: AttachingVector
    components: tuple[ComponentOrbit, ...]

    def __len__(self) -> int:
        size = 1
        for comp in self.components:
            size *= len(comp)
        return size

    def _split(self, v: AttachingVector) -> list[tuple[int, ...]]:
        return [tuple(x for name in comp.names for x in v[name]) for comp in self.components]

    def _assemble(self, parts) -> AttachingVector:
        blocks = {}
        for comp, state in zip(self.components, parts):
            pos = 0
            for name, m in zip(comp.names, comp.lengths):
                blocks[name] = tuple(state[pos : pos + m])
                pos += m
        return AttachingVector(
            self.template.n, tuple((k, blocks[k]) for k, _ in self.template.blocks), self.template.exponents
        )

    def __contains__(self, v: AttachingVector) -> bool:
        if v.lengths() != self.template.lengths():
            return False
        return all(p in comp for p, comp in zip(self._split(v), self.components))

    def __iter__(self) -> Iterator[AttachingVector]:
        for parts in product(*(comp.states() for comp in self.components)):
            yield self._assemble(parts)

    def canonical(self) -> AttachingVector:
        """Key-minimal element; the key is block-ordered so components minimize independently."""
        return self._assemble([comp.canonical() for comp in self.components])

    def sample(self, rng, k: int) -> list[AttachingVector]:
        """k random orbit elements (with replacement)."""
        picks = []
        for _ in range(k):
            parts = []
            for comp in self.components:
                code = int(comp.codes[rng.randrange(len(comp))])
                digits = (code // comp.weights) % np.array(comp.mods, dtype=np.int64) if comp.mods else []
                parts.append(tuple(int(x) for x in digits))
            picks.append(self._assemble(parts))
        return picks


def orbit_oracle(v: AttachingVector, n: int | None = None, max_block: int = ORACLE_MAX_BLOCK) -> Orbit:
    """Full orbit of v under ``move_set`` by breadth-first closure."""
    n = v.n if n is None else n
    if n != v.n:
        raise ValueError(f"vector has schema n={v.n}, asked for n={n}")
    lengths = v.lengths()
    too_big = [name for name, m in lengths.items() if m > max_block]
    if too_big:
        raise OracleBoundExceeded(f"orbit oracle refuses blocks longer than {max_block}: {', '.join(too_big)}")
    mods = {spec.name: spec.modulus for spec in BLOCK_SCHEMA[n]}
    comps = []
    for names in COMPONENTS[n]:
        start = tuple(x for name in names for x in v[name])
        flat_mods = tuple(mods[name] for name in names for _ in range(lengths[name]))
        moves = _component_moves(n, names, lengths, v.exponents)
        comps.append(ComponentOrbit(names, tuple(lengths[nm] for nm in names), flat_mods, _bfs(start, flat_mods, moves)))
    return Orbit(v, tuple(comps))


# ---------------------------------------------------------------------------
# wedge decompositions

_COFIBRE_NAME = {2: "C_ħ", 3: "C_φ", 4: "C_φ̃"}


@dataclass(frozen=True)
class Cofibre:
    """Mapping cone of the top cell S^(2n+2) -> ⋁ codomain."""

    top: int  # dimension of the attached cell, 2n+3
    codomain: tuple[Space, ...]
    attachment: NormalizedAttachment
    name: str

    @property
    def is_sphere(self) -> bool:
        return not self.codomain

    @property
    def splits_further(self) -> bool:
        return bool(self.codomain) and self.attachment.is_zero()

    def reduced_homology(self) -> dict[int, FgAbGroup]:
        out = _wedge_homology(self.codomain)
        out[self.top] = direct_sum(out.get(self.top, FgAbGroup()), FgAbGroup(1))
        return out

    def __str__(self) -> str:
        if self.is_sphere:
            return str(Space.sphere(self.top))
        return self.name

    def describe(self) -> str:
        if self.is_sphere:
            return f"{Space.sphere(self.top)} (empty wedge: cofibre is the top sphere)"
        base = " ∨ ".join(str(s) for s in self.codomain)
        text = f"{self.name} = cofibre of S{_sup(self.top - 1)} → {base}; attach {self.attachment.vector}"
        if self.splits_further:
            text += "; zero attach, splits further into top sphere ∨ base"
        return text

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "top": self.top,
            "codomain": [s.to_dict() for s in self.codomain],
            "attachment": self.attachment.to_dict(),
            "splits_further": self.splits_further,
        }


def _sup(k: int) -> str:
    from .abelian import superscript

    return superscript(k)


@dataclass(frozen=True)
class WedgeDecomposition:
    summands: tuple[Space, ...]
    cofibre: Cofibre
    empty_range_is_point: bool = field(default=True)

    def counts(self) -> Counter:
        return Counter(self.summands)

    def reduced_homology(self) -> dict[int, FgAbGroup]:
        out = _wedge_homology(self.summands)
        for d, g in self.cofibre.reduced_homology().items():
            out[d] = direct_sum(out.get(d, FgAbGroup()), g)
        return out

    def without(self, space: Space) -> "WedgeDecomposition":
        """Copy with one copy of ``space`` removed (fault injection in tests)."""
        s = list(self.summands)
        s.remove(space)
        return WedgeDecomposition(tuple(s), self.cofibre, self.empty_range_is_point)

    def render(self) -> str:
        parts = []
        for space, m in sorted(self.counts().items(), key=lambda kv: (kv[0].dim, kv[0].kind, kv[0].order)):
            parts.append(str(space) if m == 1 else f"⋁{m} {space}")
        parts.append(str(self.cofibre))
        return " ∨ ".join(parts)

    def to_dict(self) -> dict:
        return {"summands": [s.to_dict() for s in self.summands], "cofibre": self.cofibre.to_dict()}


def _wedge_homology(spaces) -> dict[int, FgAbGroup]:
    out: dict[int, FgAbGroup] = {}
    for s in spaces:
        for d, g in s.reduced_homology().items():
            out[d] = direct_sum(out.get(d, FgAbGroup()), g)
    return out


def suspension_splitting(d: ManifoldDescriptor) -> WedgeDecomposition:
    """ΣM as a wedge of spheres, Moore spaces, Chang complexes and one cofibre."""
    require_valid(d)
    na = normalize(d.attaching_vector())
    n, l, k, c = d.n, d.l, d.k, d.c
    T = d.torsion
    free = l - c
    out: list[Space] = []
    cod: list[Space] = []

    def some(m: int) -> int:
        return max(0, m)

    if n == 2:
        out += [Space.sphere(3)] * some(free - 1) + [Space.sphere(5)] * some(free - 1)
        out += [Space.sphere(4)] * k
        out += moore_summands(T.without_three_factor(na.r_j0), 4)
        out += moore_summands(T.orders, 5)
        out += [Space.chang(5)] * some(c - 1)
        if free >= 1:
            cod += [Space.sphere(3), Space.sphere(5)]
        if na.r_j0:
            cod.append(Space.moore(4, 3**na.r_j0))
        if c >= 1:
            cod.append(Space.chang(5))
    elif n == 3:
        out += [Space.sphere(5)] * some(k - 1)
        out += [Space.sphere(4)] * some(free - 1)
        out += [Space.sphere(6)] * free
        out += [Space.chang(6)] * some(c - 1)
        out += moore_summands(T.without_three_factor(na.r_j0), 5)
        out += moore_summands(T.without_three_factor(na.r_j1), 6)
        if k >= 1:
            cod.append(Space.sphere(5))
        if free >= 1:
            cod.append(Space.sphere(4))
        if c >= 1:
            cod.append(Space.chang(6))
        if na.r_j0:
            cod.append(Space.moore(5, 3**na.r_j0))
        if na.r_j1:
            cod.append(Space.moore(6, 3**na.r_j1))
    else:
        out += [Space.sphere(6)] * k
        out += [Space.sphere(5)] * some(free - 1) + [Space.sphere(7)] * some(free - 1)
        out += [Space.chang(7)] * some(c - 2)
        out += moore_summands(T.orders, 6)
        out += moore_summands(T.without_three_factor(na.r_j0), 7)
        if free >= 1:
            cod += [Space.sphere(7), Space.sphere(5)]
        cod += [Space.chang(7)] * min(c, 2)
        if na.r_j0:
            cod.append(Space.moore(7, 3**na.r_j0))
    cof = Cofibre(2 * n + 3, tuple(cod), na, _COFIBRE_NAME[n])
    return WedgeDecomposition(tuple(out), cof)


@dataclass(frozen=True)
class HomologyMismatch:
    degree: int
    expected: FgAbGroup
    found: FgAbGroup

    def __str__(self) -> str:
        return f"degree {self.degree}: expected {self.expected}, wedge gives {self.found}"


def homology_check(w: WedgeDecomposition, d: ManifoldDescriptor) -> list[HomologyMismatch]:
    """Compare H̃_i(wedge) with H_(i-1)(M) for i >= 1; empty list means ok."""
    h = homology_table(d)
    found = w.reduced_homology()
    out = []
    for i in range(1, d.top + 3):
        want = h.get(i - 1, FgAbGroup()) if i >= 2 else FgAbGroup()
        got = found.get(i, FgAbGroup())
        if want != got:
            out.append(HomologyMismatch(i, want, got))
    for i in sorted(found):
        if i > d.top + 2 and not found[i].is_trivial:
            out.append(HomologyMismatch(i, FgAbGroup(), found[i]))
    return out


def block_spec(n: int, name: str) -> BlockSpec:
    return next(b for b in BLOCK_SCHEMA[n] if b.name == name)
