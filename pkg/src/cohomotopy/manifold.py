"""Input schema for (n-1)-connected (2n+2)-manifolds and their (co)homology.

A descriptor records n, the ranks l and k, the odd torsion group T, the spin
flag, the Chang count c, the attaching-map coefficients of the top cell and
optional Steenrod operation matrices.

Basis conventions.  H_m(M) is written as a list of cyclic summands, free
generators first and then T in canonical order.  H^m(M; G) is
Hom(H_m, G) ⊕ Ext(H_{m-1}, G), summand by summand in that order, with
summands that vanish dropped.  All operation matrices use these bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .abelian import (
    FgAbGroup,
    GroupHom,
    Presentation,
    direct_sum,
    ext,
    hom,
    is_prime,
    matmul,
)

N_RANGE = (2, 3, 4)


class DescriptorError(ValueError):
    """A descriptor field is missing or malformed."""

    def __init__(self, path: str, rule: str):
        super().__init__(f"{path}: {rule}")
        self.path = path
        self.rule = rule


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    severity: str = "error"

    def __str__(self) -> str:
        tag = "" if self.severity == "error" else f"[{self.severity}] "
        return f"{tag}{self.path}: {self.rule}"


# ---------------------------------------------------------------------------
# torsion


@dataclass(frozen=True)
class TorsionGroup:
    """T = ⊕ Z/p^r, stored as sorted (p, r) pairs with multiplicity."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        facs = tuple(sorted((int(p), int(r)) for p, r in self.factors))
        for p, r in facs:
            if not is_prime(p) or r < 1:
                raise DescriptorError("torsion", f"[{p}, {r}] is not a prime power p^r with r >= 1")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "TorsionGroup":
        return cls(tuple(pairs))

    @property
    def orders(self) -> list[int]:
        return [p**r for p, r in self.factors]

    def group(self) -> FgAbGroup:
        return FgAbGroup.from_orders(self.orders)

    @property
    def three_exponents(self) -> tuple[int, ...]:
        """Exponents r_1 <= ... <= r_t of the 3-primary factors."""
        return tuple(r for p, r in self.factors if p == 3)

    @property
    def t(self) -> int:
        return len(self.three_exponents)

    @property
    def has_two_torsion(self) -> bool:
        return any(p == 2 for p, _ in self.factors)

    def without_three_factor(self, r: int) -> list[int]:
        """Orders of T with one copy of Z/3^r removed (r = 0 removes nothing)."""
        out = list(self.orders)
        if r:
            out.remove(3**r)
        return out

    def __str__(self) -> str:
        return str(self.group())


# ---------------------------------------------------------------------------
# attaching vectors


@dataclass(frozen=True)
class BlockSpec:
    name: str
    modulus: int
    length: str  # "lc" (= l - c), "k", "c" or "t"
    role: str


BLOCK_SCHEMA: dict[int, tuple[BlockSpec, ...]] = {
    2: (
        BlockSpec("x", 12, "lc", "ν′ on S³"),
        BlockSpec("y", 2, "lc", "η₅ on S⁵"),
        BlockSpec("z", 3, "t", "i₃α on P⁴(3^r)"),
        BlockSpec("w", 6, "c", "i₃^ην′ on C⁵_η"),
    ),
    3: (
        BlockSpec("x", 24, "k", "ν₅ on S⁵"),
        BlockSpec("y", 2, "lc", "η₄ν₅ on S⁴"),
        BlockSpec("z", 2, "c", "i₄^ην₄η₇ on C⁶_η"),
        BlockSpec("u", 3, "t", "Σ²α̃_r on P⁵(3^r)"),
        BlockSpec("w", 3, "t", "i₅Σ²α on P⁶(3^r)"),
    ),
    4: (
        BlockSpec("x", 24, "lc", "ν₇ on S⁷"),
        BlockSpec("y", 2, "lc", "ν₅η² on S⁵"),
        BlockSpec("z1", 24, "c", "Σν̃₆ on C⁷_η"),
        BlockSpec("z2", 2, "c", "i₅^ην₅η² on C⁷_η"),
        BlockSpec("w", 3, "t", "Σ⁴α̃_r on P⁷(3^r)"),
    ),
}


def block_lengths(n: int, l: int, k: int, c: int, t: int) -> dict[str, int]:
    sizes = {"lc": l - c, "k": k, "c": c, "t": t}
    return {b.name: sizes[b.length] for b in BLOCK_SCHEMA[n]}


@dataclass(frozen=True)
class AttachingVector:
    """Per-block coefficients of the suspended top-cell attaching map.

    ``exponents`` are the 3-primary exponents r_j labelling the Moore slots.
    Entries are stored reduced into [0, modulus).
    """

    n: int
    blocks: tuple[tuple[str, tuple[int, ...]], ...]
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n not in BLOCK_SCHEMA:
            raise DescriptorError("n", f"n must be one of {N_RANGE}")
        given = dict(self.blocks)
        names = [b.name for b in BLOCK_SCHEMA[self.n]]
        extra = set(given) - set(names)
        if extra:
            raise DescriptorError(f"attach.{sorted(extra)[0]}", f"unknown block for n={self.n}")
        fixed = tuple(
            (b.name, tuple(int(v) % b.modulus for v in given.get(b.name, ()))) for b in BLOCK_SCHEMA[self.n]
        )
        object.__setattr__(self, "blocks", fixed)
        object.__setattr__(self, "exponents", tuple(int(r) for r in self.exponents))

    @classmethod
    def build(cls, n: int, exponents: Sequence[int] = (), **blocks: Sequence[int]) -> "AttachingVector":
        return cls(n, tuple((k, tuple(v)) for k, v in blocks.items()), tuple(exponents))

    @classmethod
    def zero(cls, n: int, lengths: Mapping[str, int], exponents: Sequence[int] = ()) -> "AttachingVector":
        return cls(n, tuple((name, (0,) * m) for name, m in lengths.items()), tuple(exponents))

    def __getitem__(self, name: str) -> tuple[int, ...]:
        return dict(self.blocks)[name]

    @property
    def specs(self) -> tuple[BlockSpec, ...]:
        return BLOCK_SCHEMA[self.n]

    def modulus(self, name: str) -> int:
        return next(b.modulus for b in self.specs if b.name == name)

    def lengths(self) -> dict[str, int]:
        return {name: len(v) for name, v in self.blocks}

    def with_blocks(self, **blocks: Sequence[int]) -> "AttachingVector":
        cur = dict(self.blocks)
        cur.update({k: tuple(v) for k, v in blocks.items()})
        return AttachingVector(self.n, tuple(cur.items()), self.exponents)

    def is_zero(self) -> bool:
        return not any(any(v) for _, v in self.blocks)

    def to_dict(self) -> dict[str, list[int]]:
        return {name: list(v) for name, v in self.blocks}

    def __str__(self) -> str:
        return ", ".join(f"{name}={list(v)}" for name, v in self.blocks)


# ---------------------------------------------------------------------------
# Steenrod data

MatrixLike = Sequence[Sequence[int]]


@dataclass(frozen=True, eq=False)
class SteenrodData:
    """Operation matrices keyed by source degree.

    sq2[m]: H^m(;Z/2) → H^{m+2}(;Z/2)   rho2[m]: H^m(;Z) → H^m(;Z/2)
    p1[m]:  H^m(;Z/3) → H^{m+4}(;Z/3)   rho3[m]: H^m(;Z) → H^m(;Z/3)
    cup[i][j]: coordinates of e_i ∪ e_j in H^4(M) for n = 2.
    theta: Θ₀ on H²(M;Z/2) classes, a callable or a table {bits: 0/1}.
    """

    sq2: Mapping[int, MatrixLike] = field(default_factory=dict)
    rho2: Mapping[int, MatrixLike] = field(default_factory=dict)
    p1: Mapping[int, MatrixLike] = field(default_factory=dict)
    rho3: Mapping[int, MatrixLike] = field(default_factory=dict)
    cup: Sequence[Sequence[Sequence[int]]] | None = None
    theta: Callable[[tuple[int, ...]], int | None] | Mapping[tuple[int, ...], int] | None = None

    def theta_value(self, bits: tuple[int, ...]) -> int | None:
        if self.theta is None:
            return None
        if callable(self.theta):
            return self.theta(bits)
        return self.theta.get(tuple(bits))


# ---------------------------------------------------------------------------
# descriptor


@dataclass(frozen=True, eq=False)
class ManifoldDescriptor:
    n: int
    l: int
    k: int
    torsion: TorsionGroup = TorsionGroup()
    spin: bool = True
    c: int = 0
    attach: AttachingVector | None = None
    steenrod: SteenrodData | None = None

    @property
    def eps(self) -> int:
        return 0 if self.spin else 1

    @property
    def T(self) -> FgAbGroup:
        return self.torsion.group()

    @property
    def t(self) -> int:
        return self.torsion.t

    @property
    def top(self) -> int:
        return 2 * self.n + 2

    def block_lengths(self) -> dict[str, int]:
        return block_lengths(self.n, self.l, self.k, self.c, self.t)

    def default_attach(self) -> AttachingVector:
        v = AttachingVector.zero(self.n, self.block_lengths(), self.torsion.three_exponents)
        if self.n == 2 and not self.spin and self.l - self.c >= 1:
            y = [0] * (self.l - self.c)
            y[0] = 1
            v = v.with_blocks(y=y)
        return v

    def attaching_vector(self) -> AttachingVector:
        """The supplied attaching vector labelled with T's 3-exponents, or the default."""
        if self.attach is None:
            return self.default_attach()
        return AttachingVector(self.n, self.attach.blocks, self.torsion.three_exponents)

    def with_(self, **changes) -> "ManifoldDescriptor":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "l": self.l,
            "k": self.k,
            "torsion": [list(f) for f in self.torsion.factors],
            "spin": self.spin,
            "c": self.c,
        }
        if self.attach is not None:
            out["attach"] = self.attach.to_dict()
        return out


def _int_field(data: Mapping, key: str, default=None) -> int:
    if key not in data:
        if default is not None:
            return default
        raise DescriptorError(key, "required field is missing")
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise DescriptorError(key, f"expected an integer, got {v!r}")
    return v


def _matrix(obj, path: str) -> list[list[int]]:
    if not isinstance(obj, Mapping) or "shape" not in obj or "data" not in obj:
        raise DescriptorError(path, "matrix needs 'shape' [rows, cols] and row-major 'data'")
    shape, data = obj["shape"], obj["data"]
    if not (isinstance(shape, list) and len(shape) == 2 and all(isinstance(s, int) and s >= 0 for s in shape)):
        raise DescriptorError(f"{path}.shape", "expected [rows, cols] of non-negative integers")
    rows, cols = shape
    if not isinstance(data, list) or len(data) != rows * cols or not all(isinstance(x, int) for x in data):
        raise DescriptorError(f"{path}.data", f"expected {rows * cols} integers")
    return [data[i * cols : (i + 1) * cols] for i in range(rows)]


def steenrod_from_dict(data: Mapping, path: str = "steenrod") -> SteenrodData:
    if not isinstance(data, Mapping):
        raise DescriptorError(path, "expected a mapping")
    ops = {}
    for name in ("sq2", "rho2", "p1", "rho3"):
        table = data.get(name, {}) or {}
        if not isinstance(table, Mapping):
            raise DescriptorError(f"{path}.{name}", "expected a mapping degree -> matrix")
        ops[name] = {int(deg): _matrix(m, f"{path}.{name}.{deg}") for deg, m in table.items()}
    cup = None
    if data.get("cup") is not None:
        raw = data["cup"]
        if not isinstance(raw, Mapping) or "shape" not in raw or "data" not in raw:
            raise DescriptorError(f"{path}.cup", "cup needs 'shape' [l, l, dim H⁴] and row-major 'data'")
        a, b, m = raw["shape"]
        flat = raw["data"]
        if len(flat) != a * b * m:
            raise DescriptorError(f"{path}.cup.data", f"expected {a * b * m} integers")
        cup = [[flat[(i * b + j) * m : (i * b + j + 1) * m] for j in range(b)] for i in range(a)]
    theta = None
    if data.get("theta") is not None:
        theta = {}
        for i, row in enumerate(data["theta"]):
            try:
                theta[tuple(int(x) % 2 for x in row["class"])] = int(row["value"]) % 2
            except (KeyError, TypeError) as exc:
                raise DescriptorError(f"{path}.theta[{i}]", "expected {class: [bits], value: 0|1}") from exc
    return SteenrodData(ops["sq2"], ops["rho2"], ops["p1"], ops["rho3"], cup, theta)


def descriptor_from_dict(data) -> ManifoldDescriptor:
    if not isinstance(data, Mapping):
        raise DescriptorError("<root>", "descriptor must be a mapping of fields")
    n = _int_field(data, "n")
    if n not in N_RANGE:
        raise DescriptorError("n", f"n must be one of {N_RANGE}")
    l, k = _int_field(data, "l"), _int_field(data, "k")
    c = _int_field(data, "c", 0)
    spin = data.get("spin", True)
    if not isinstance(spin, bool):
        raise DescriptorError("spin", "expected true or false")
    raw_t = data.get("torsion", []) or []
    if not isinstance(raw_t, list):
        raise DescriptorError("torsion", "expected a list of [p, r] pairs")
    pairs = []
    for i, pr in enumerate(raw_t):
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, int) for x in pr)):
            raise DescriptorError(f"torsion[{i}]", "expected a pair [p, r]")
        pairs.append(tuple(pr))
    torsion = TorsionGroup(tuple(pairs))
    attach = None
    if data.get("attach") is not None:
        raw = data["attach"]
        if not isinstance(raw, Mapping):
            raise DescriptorError("attach", "expected a mapping block -> list of integers")
        blocks = []
        for name, vals in raw.items():
            if not (isinstance(vals, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in vals)):
                raise DescriptorError(f"attach.{name}", "expected a list of integers")
            blocks.append((str(name), tuple(vals)))
        attach = AttachingVector(n, tuple(blocks), torsion.three_exponents)
    steenrod = steenrod_from_dict(data["steenrod"]) if data.get("steenrod") is not None else None
    return ManifoldDescriptor(n, l, k, torsion, spin, c, attach, steenrod)


# ---------------------------------------------------------------------------
# homology and cohomology


def homology_summands(d: ManifoldDescriptor) -> dict[int, list[int]]:
    """Cyclic summands (0 = Z) of each nonzero H_i(M)."""
    n, T = d.n, d.torsion.orders
    out = {0: [0], d.top: [0]}
    out[n] = out.get(n, []) + [0] * d.l + T
    out[n + 1] = out.get(n + 1, []) + [0] * d.k + T
    out[n + 2] = out.get(n + 2, []) + [0] * d.l
    return {i: v for i, v in sorted(out.items()) if v}


def homology_table(d: ManifoldDescriptor) -> dict[int, FgAbGroup]:
    """H_i(M) for 0 <= i <= 2n+2 (zero groups included)."""
    s = homology_summands(d)
    return {i: FgAbGroup.from_orders(s.get(i, [])) for i in range(d.top + 1)}


@dataclass(frozen=True)
class CohomologyBasis:
    """Ordered cyclic summands of H^m(M; G) with their provenance."""

    degree: int
    modulus: int  # 0 for Z coefficients
    orders: tuple[int, ...]
    origins: tuple[tuple[str, int], ...]  # ("hom", i) from H_m, ("ext", i) from H_{m-1}

    def presentation(self) -> Presentation:
        return Presentation.cyclic_sum(self.orders)

    def group(self) -> FgAbGroup:
        return FgAbGroup.from_orders(self.orders)

    def __len__(self) -> int:
        return len(self.orders)


def cohomology_basis(d: ManifoldDescriptor, degree: int, modulus: int = 0) -> CohomologyBasis:
    s = homology_summands(d)
    orders, origins = [], []
    for i, q in enumerate(s.get(degree, [])):
        if q == 0:
            o = modulus
        else:
            o = gcd(q, modulus) if modulus else 1
        if o != 1:
            orders.append(o)
            origins.append(("hom", i))
    for i, q in enumerate(s.get(degree - 1, [])):
        if q == 0:
            continue
        o = gcd(q, modulus) if modulus else q
        if o != 1:
            orders.append(o)
            origins.append(("ext", i))
    return CohomologyBasis(degree, modulus, tuple(orders), tuple(origins))


def cohomology_table(d: ManifoldDescriptor, modulus: int = 0) -> dict[int, FgAbGroup]:
    """H^m(M; Z) (modulus 0) or H^m(M; Z/modulus) via universal coefficients."""
    coeff = FgAbGroup(1) if modulus == 0 else FgAbGroup.cyclic(modulus)
    h = homology_table(d)
    out = {}
    for m in range(d.top + 1):
        below = h[m - 1] if m >= 1 else FgAbGroup()
        out[m] = direct_sum(hom(h[m], coeff), ext(below, coeff))
    return out


def reduction_matrix(d: ManifoldDescriptor, degree: int, p: int) -> list[list[int]]:
    """Canonical mod-p reduction H^m(M;Z) → H^m(M;Z/p) in the standard bases."""
    src = cohomology_basis(d, degree, 0)
    dst = cohomology_basis(d, degree, p)
    return [[int(a == b) for a in src.origins] for b in dst.origins]


def _hom(src: CohomologyBasis, dst: CohomologyBasis, m: MatrixLike, path: str) -> GroupHom:
    rows, cols = len(dst), len(src)
    if len(m) != rows or any(len(r) != cols for r in m):
        got = f"{len(m)}x{len(m[0]) if m else 0}"
        raise DescriptorError(path, f"matrix shape {got} does not match cohomology ranks {rows}x{cols}")
    return GroupHom(src.presentation(), dst.presentation(), tuple(tuple(r) for r in m))


def operation(d: ManifoldDescriptor, name: str, degree: int) -> GroupHom | None:
    """The named operation as a GroupHom between the standard cohomology bases.

    Names: sq2, rho2, p1, rho3 (as supplied, reductions default to the
    canonical ones) and the composites sq2_z = Sq²∘ρ₂, p1_z = P¹∘ρ₃.
    Returns None when the required matrix was not supplied.
    """
    s = d.steenrod or SteenrodData()
    if name in ("rho2", "rho3"):
        p = 2 if name == "rho2" else 3
        m = getattr(s, name).get(degree)
        if m is None:
            m = reduction_matrix(d, degree, p)
        return _hom(cohomology_basis(d, degree, 0), cohomology_basis(d, degree, p), m, f"steenrod.{name}.{degree}")
    if name == "sq2":
        m = s.sq2.get(degree)
        if m is None:
            return None
        return _hom(cohomology_basis(d, degree, 2), cohomology_basis(d, degree + 2, 2), m, f"steenrod.sq2.{degree}")
    if name == "p1":
        m = s.p1.get(degree)
        if m is None:
            return None
        return _hom(cohomology_basis(d, degree, 3), cohomology_basis(d, degree + 4, 3), m, f"steenrod.p1.{degree}")
    if name == "sq2_z":
        sq = operation(d, "sq2", degree)
        return None if sq is None else sq.compose(operation(d, "rho2", degree))
    if name == "p1_z":
        p1 = operation(d, "p1", degree)
        return None if p1 is None else p1.compose(operation(d, "rho3", degree))
    raise ValueError(f"unknown operation {name!r}")


def compose_steenrod(d: ManifoldDescriptor) -> dict[str, dict[int, GroupHom]]:
    """All integral composites Sq²_Z = Sq²∘ρ₂ and P¹_Z = P¹∘ρ₃ the data supports."""
    s = d.steenrod or SteenrodData()
    return {
        "sq2_z": {m: operation(d, "sq2_z", m) for m in sorted(s.sq2)},
        "p1_z": {m: operation(d, "p1_z", m) for m in sorted(s.p1)},
    }


def compose_matrices(first: MatrixLike, second: MatrixLike, modulus: int) -> list[list[int]]:
    """second ∘ first with entries reduced mod ``modulus``; shapes must chain."""
    cols_second = len(second[0]) if second else 0
    if cols_second != len(first):
        raise ValueError(f"cannot compose: {len(first)} rows feed {cols_second} columns")
    prod = matmul(second, first, inner=len(first))
    return [[x % modulus for x in row] for row in prod]


def _rank_mod_p(m: MatrixLike, p: int) -> int:
    rows = [[x % p for x in r] for r in m]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# validation


def validate(d: ManifoldDescriptor) -> list[Violation]:
    """Every broken invariant, each naming its field path. Empty list means ok.

    Entries with severity "warning" flag formal inputs that are accepted.
    """
    out: list[Violation] = []
    if d.n not in N_RANGE:
        return [Violation("n", f"n must be one of {N_RANGE}")]
    if d.l < 0:
        out.append(Violation("l", "l must be non-negative"))
    if d.k < 0:
        out.append(Violation("k", "k must be non-negative"))
    if d.c < 0:
        out.append(Violation("c", "c must be non-negative"))
    if d.c > d.l:
        out.append(Violation("c", "c exceeds l (need 0 <= c <= l)"))
    if d.n == 2 and d.k % 2:
        out.append(Violation("k", "k must be even when n = 2"))
    if d.torsion.has_two_torsion:
        out.append(Violation("torsion", "T 2-torsion-free: T contains 2-torsion"))
    if d.n == 2 and not d.spin and d.l - d.c < 1:
        out.append(Violation("spin", "a nonspin 6-manifold needs l - c >= 1 (w₂ is detected on an S⁵ summand)"))
    if d.n >= 3 and not d.spin:
        out.append(
            Violation("spin", f"an {d.n - 1}-connected manifold has w₂ = 0; the nonspin flag is formal", "warning")
        )
    if out:
        return out
    out.extend(_validate_attach(d))
    if d.steenrod is not None:
        out.extend(_validate_steenrod(d))
    return out


def _validate_attach(d: ManifoldDescriptor) -> list[Violation]:
    if d.attach is None:
        return []
    out = []
    want = d.block_lengths()
    have = d.attach.lengths()
    for name, m in want.items():
        if have.get(name, 0) != m:
            out.append(Violation(f"attach.{name}", f"block length {have.get(name, 0)} does not match expected {m}"))
    if out:
        return out
    if d.n == 2 and want["y"]:
        nonzero = any(d.attach["y"])
        if nonzero != (not d.spin):
            out.append(Violation("attach.y", "y must be nonzero exactly when M is nonspin"))
    return out


def _validate_steenrod(d: ManifoldDescriptor) -> list[Violation]:
    out = []
    s = d.steenrod
    for name in ("sq2", "rho2", "p1", "rho3"):
        for deg in getattr(s, name):
            try:
                operation(d, name, deg)
            except DescriptorError as exc:
                out.append(Violation(exc.path, exc.rule))
            except ValueError as exc:
                out.append(Violation(f"steenrod.{name}.{deg}", f"not a homomorphism: {exc}"))
    if out:
        return out
    if d.n in s.sq2:
        rank = _rank_mod_p(s.sq2[d.n], 2)
        if (d.c == 0) != (rank == 0):
            out.append(Violation(f"steenrod.sq2.{d.n}", "c = 0 exactly when Sq² vanishes on H^n(M;Z/2)"))
        elif rank != d.c:
            out.append(Violation(f"steenrod.sq2.{d.n}", f"Sq² on H^n(M;Z/2) has rank {rank}, expected c = {d.c}"))
    top = 2 * d.n
    if top in s.sq2:
        zero = _rank_mod_p(s.sq2[top], 2) == 0
        if zero != d.spin:
            out.append(Violation(f"steenrod.sq2.{top}", "Sq² into the top class vanishes exactly when M is spin"))
    if s.cup is not None:
        if d.n != 2:
            out.append(Violation("steenrod.cup", "cup-square data is only used for n = 2"))
        else:
            dim4 = len(cohomology_basis(d, 4, 0))
            ok = len(s.cup) == d.l and all(len(row) == d.l and all(len(v) == dim4 for v in row) for row in s.cup)
            if not ok:
                out.append(Violation("steenrod.cup", f"cup data must have shape [{d.l}, {d.l}, {dim4}]"))
    return out


def is_valid(d: ManifoldDescriptor) -> bool:
    return not [v for v in validate(d) if v.severity == "error"]


def require_valid(d: ManifoldDescriptor) -> None:
    errors = [v for v in validate(d) if v.severity == "error"]
    if errors:
        raise DescriptorError(errors[0].path, errors[0].rule)


def euler_characteristic(table: Mapping[int, FgAbGroup]) -> int:
    return sum((-1) ** i * g.free_rank for i, g in table.items())


def descriptors(
    n: int, ls: Iterable[int], ks: Iterable[int], torsions: Iterable[TorsionGroup]
) -> list[ManifoldDescriptor]:
    """All valid spin descriptors over a grid (c ranging over 0..l), zero attach."""
    out = []
    for l in ls:
        for k in ks:
            for T in torsions:
                for c in range(l + 1):
                    d = ManifoldDescriptor(n, l, k, T, True, c)
                    if is_valid(d):
                        out.append(d)
    return out
