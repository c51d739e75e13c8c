"""Finitely generated abelian groups, presentations and homomorphisms.

Everything is exact integer arithmetic.  A group is held in a canonical
normal form (free rank plus a sorted list of prime-power orders), so two
groups are isomorphic exactly when they compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class MalformedHomomorphism(ValueError):
    """A matrix does not respect the relations of its domain and codomain."""


class ExtensionTooLarge(ValueError):
    """Ext(quot, sub) has more classes than the enumeration budget allows."""


def superscript(k: int) -> str:
    return str(k).translate(_SUPERSCRIPT)


def factor(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factor(n) == {n: 1}


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, r) when q = p^r with r >= 1, else None."""
    if q < 2:
        return None
    f = factor(q)
    if len(f) != 1:
        return None
    ((p, r),) = f.items()
    return p, r


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# matrices


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    """Product of an (m x k) and a (k x n) matrix given as row lists.

    ``inner`` is only needed when both factors are empty along k.
    """
    m = len(a)
    k = len(b) if inner is None else inner
    n = len(b[0]) if b else 0
    out = zeros(m, n)
    for i in range(m):
        row = a[i]
        for t in range(k):
            x = row[t]
            if x:
                bt = b[t]
                for j in range(n):
                    out[i][j] += x * bt[j]
    return out


def transpose(a: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _snf(a: Sequence[Sequence[int]], rows: int, cols: int):
    d = [list(r) for r in a]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = d[i][j]
                if x and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                # a remainder survived: move the smallest one onto the pivot
                cands = [(abs(d[i][t]), i, t) for i in range(t + 1, rows) if d[i][t]]
                cands += [(abs(d[t][j]), t, j) for j in range(t + 1, cols) if d[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            negate_row(t)
    return d, u, v


def smith_normal_form(
    a: Sequence[Sequence[int]], shape: tuple[int, int] | None = None
) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U·A·V = D diagonal, d1 | d2 | ..., U and V unimodular."""
    rows, cols = shape if shape is not None else (len(a), len(a[0]) if a else 0)
    return _snf(a, rows, cols)


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# ---------------------------------------------------------------------------
# lattices in Z^dim, given by spanning column vectors


def _columns_to_matrix(cols: Sequence[Sequence[int]], dim: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(dim)]


def _rank_and_diag(cols, dim):
    d, u, _ = _snf(_columns_to_matrix(cols, dim), dim, len(cols))
    return [x for x in diagonal(d) if x], u


def in_lattice(vec: Sequence[int], cols: Sequence[Sequence[int]], dim: int) -> bool:
    """Is ``vec`` an integer combination of the columns?"""
    if not cols:
        return not any(vec)
    diag, u = _rank_and_diag(cols, dim)
    w = [sum(u[i][j] * vec[j] for j in range(dim)) for i in range(dim)]
    r = len(diag)
    return all(w[i] % diag[i] == 0 for i in range(r)) and not any(w[r:])


def integer_kernel(a: Sequence[Sequence[int]], rows: int, cols: int) -> list[list[int]]:
    """A basis (as column vectors) of {x in Z^cols : A x = 0}."""
    d, _, v = _snf(a, rows, cols)
    r = sum(1 for x in diagonal(d) if x)
    return [[v[i][j] for i in range(cols)] for j in range(r, cols)]


def _group_from_diagonal(diag: Iterable[int], dim: int) -> "FgAbGroup":
    diag = list(diag)
    nonzero = [x for x in diag if x]
    free = dim - len(nonzero)
    return FgAbGroup.from_orders([0] * free + [x for x in nonzero if x > 1])


def quotient_group(cols: Sequence[Sequence[int]], dim: int) -> "FgAbGroup":
    """Z^dim modulo the span of the columns, in normal form."""
    if not cols:
        return FgAbGroup(dim)
    d, _, _ = _snf(_columns_to_matrix(cols, dim), dim, len(cols))
    return _group_from_diagonal(diagonal(d), dim)


def subquotient(gens: Sequence[Sequence[int]], rels: Sequence[Sequence[int]], dim: int) -> "FgAbGroup":
    """span(gens ∪ rels) / span(rels) inside Z^dim."""
    span = list(gens) + list(rels)
    if not any(any(c) for c in span):
        return FgAbGroup()
    diag, u = _rank_and_diag(span, dim)
    r = len(diag)
    coords = []
    for rel in rels:
        w = [sum(u[i][j] * rel[j] for j in range(dim)) for i in range(dim)]
        coords.append([w[i] // diag[i] for i in range(r)])
    return quotient_group(coords, r)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, order=True)
class FgAbGroup:
    """Z^free_rank ⊕ (⊕ Z/q) with every q a prime power, sorted by (p, r)."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        keys = []
        for q in self.torsion:
            pr = prime_power(q)
            if pr is None:
                raise ValueError(f"torsion entry {q} is not a prime power > 1")
            keys.append(pr)
        if keys != sorted(keys):
            raise ValueError("torsion entries must be sorted by (prime, exponent)")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FgAbGroup":
        """Direct sum of cyclic groups Z/q; q = 0 means Z and q = 1 is dropped."""
        free, parts = 0, []
        for q in orders:
            q = abs(int(q))
            if q == 0:
                free += 1
            elif q > 1:
                parts.extend(p**r for p, r in factor(q).items())
        parts.sort(key=lambda q: prime_power(q))
        return cls(free, tuple(parts))

    @classmethod
    def cyclic(cls, q: int) -> "FgAbGroup":
        return cls.from_orders([q])

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank)

    # -- structure -----------------------------------------------------------

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        return reduce(lambda a, b: a * b, self.torsion, 1)

    def primary_parts(self) -> dict[int, list[int]]:
        """prime -> exponents (ascending)."""
        out: dict[int, list[int]] = {}
        for q in self.torsion:
            p, r = prime_power(q)
            out.setdefault(p, []).append(r)
        return out

    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion orders d1 | d2 | ... (ascending), all > 1."""
        parts = self.primary_parts()
        n = max((len(v) for v in parts.values()), default=0)
        out = []
        for i in range(n):
            d = 1
            for p, exps in parts.items():
                k = len(exps) - n + i
                if k >= 0:
                    d *= p ** exps[k]
            out.append(d)
        return tuple(out)

    @property
    def minimal_generators(self) -> int:
        return self.free_rank + len(self.invariant_factors())

    def p_part(self, p: int) -> "FgAbGroup":
        return FgAbGroup(0, tuple(q for q in self.torsion if q % p == 0))

    def torsion_subgroup(self) -> "FgAbGroup":
        return FgAbGroup(0, self.torsion)

    def has_torsion_prime(self, p: int) -> bool:
        return any(q % p == 0 for q in self.torsion)

    def cyclic_orders(self) -> list[int]:
        """One order per cyclic summand of the normal form (0 for Z)."""
        return [0] * self.free_rank + list(self.torsion)

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return FgAbGroup.from_orders(self.cyclic_orders() + other.cyclic_orders())

    def power(self, k: int) -> "FgAbGroup":
        if k < 0:
            raise ValueError("negative multiplicity")
        return FgAbGroup.from_orders(self.cyclic_orders() * k)

    def element_order(self, vec: Sequence[int]) -> int:
        """Order of an element given in the normal-form generators (0 = infinite)."""
        out = 1
        for q, x in zip(self.cyclic_orders(), vec):
            if q == 0:
                if x:
                    return 0
            else:
                out = lcm(out, q // gcd(q, x))
        return out

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        return self.render()

    def render(self, primary: bool = False) -> str:
        if self.is_trivial:
            return "0"
        terms = []
        if self.free_rank:
            terms.append("Z" if self.free_rank == 1 else "Z" + superscript(self.free_rank))
        orders = self.torsion if primary else self.invariant_factors()
        runs: list[list[int]] = []
        for q in orders:
            if runs and runs[-1][0] == q:
                runs[-1][1] += 1
            else:
                runs.append([q, 1])
        for q, m in runs:
            terms.append(f"Z/{q}" if m == 1 else f"(Z/{q}){superscript(m)}")
        return " ⊕ ".join(terms)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, data: dict) -> "FgAbGroup":
        return cls(int(data["free_rank"]), tuple(int(q) for q in data["torsion"]))


TRIVIAL = FgAbGroup()
Z = FgAbGroup(1)


def cyclic(q: int) -> FgAbGroup:
    return FgAbGroup.cyclic(q)


def direct_sum(*groups: FgAbGroup) -> FgAbGroup:
    return reduce(lambda a, b: a + b, groups, TRIVIAL)


def is_isomorphic(g: FgAbGroup, h: FgAbGroup) -> bool:
    return g == h


def two_power(e: int) -> FgAbGroup:
    """Z/2^e for e in {0, 1}: trivial for 0, Z/2 for 1."""
    if e not in (0, 1):
        raise ValueError("exponent must be 0 or 1")
    return cyclic(2) if e else TRIVIAL


def _partitions_below(bound: Sequence[int]) -> list[tuple[int, ...]]:
    """All partitions mu (descending, positive parts) with mu_i <= bound_i."""
    out = []

    def rec(i, prev, acc):
        out.append(tuple(acc))
        if i == len(bound):
            return
        for part in range(1, min(prev, bound[i]) + 1):
            rec(i + 1, part, acc + [part])

    rec(0, max(bound, default=0), [])
    return out


def subgroup_types(g: FgAbGroup) -> list[FgAbGroup]:
    """Isomorphism types of subgroups of a finite group (equivalently, of quotients)."""
    if not g.is_finite:
        raise ValueError("subgroup types are only enumerated for finite groups")
    per_prime = []
    for p, exps in sorted(g.primary_parts().items()):
        lam = sorted(exps, reverse=True)
        per_prime.append([[p**e for e in mu] for mu in _partitions_below(lam)])
    out = {FgAbGroup.from_orders(sum(choice, [])) for choice in product(*per_prime)}
    return sorted(out, key=lambda h: (h.order, h.invariant_factors()))


# ---------------------------------------------------------------------------
# presentations and homomorphisms


@dataclass(frozen=True)
class Presentation:
    """Z^gens modulo the span of ``relations`` (each a vector of length gens)."""

    gens: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        for r in self.relations:
            if len(r) != self.gens:
                raise ValueError("relation length does not match generator count")

    @classmethod
    def cyclic_sum(cls, orders: Sequence[int]) -> "Presentation":
        n = len(orders)
        rels = tuple(tuple(q if i == j else 0 for i in range(n)) for j, q in enumerate(orders) if q)
        return cls(n, rels)

    @classmethod
    def of(cls, g: FgAbGroup) -> "Presentation":
        return cls.cyclic_sum(g.cyclic_orders())

    def group(self) -> FgAbGroup:
        return quotient_group(self.relations, self.gens)

    def contains(self, vec: Sequence[int]) -> bool:
        """Is vec zero in the presented group?"""
        return in_lattice(vec, self.relations, self.gens)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given on generators; ``matrix`` is codomain.gens x domain.gens."""

    domain: Presentation
    codomain: Presentation
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        if len(self.matrix) != self.codomain.gens or any(len(r) != self.domain.gens for r in self.matrix):
            raise MalformedHomomorphism(
                f"matrix shape must be {self.codomain.gens}x{self.domain.gens}"
            )
        for rel in self.domain.relations:
            if not self.codomain.contains(self.apply(rel)):
                raise MalformedHomomorphism(f"relation {list(rel)} is not sent into the codomain relations")

    @classmethod
    def between(cls, src: FgAbGroup, dst: FgAbGroup, matrix: Sequence[Sequence[int]]) -> "GroupHom":
        return cls(Presentation.of(src), Presentation.of(dst), tuple(map(tuple, matrix)))

    @classmethod
    def of_cyclic(
        cls, src: Sequence[int], dst: Sequence[int], matrix: Sequence[Sequence[int]]
    ) -> "GroupHom":
        """Map between explicit cyclic sums, orders given as lists (0 = Z)."""
        return cls(Presentation.cyclic_sum(src), Presentation.cyclic_sum(dst), tuple(map(tuple, matrix)))

    @classmethod
    def scalar(cls, g: FgAbGroup, q: int) -> "GroupHom":
        n = g.free_rank + len(g.torsion)
        return cls.between(g, g, [[q if i == j else 0 for j in range(n)] for i in range(n)])

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, vec)) for row in self.matrix]

    def columns(self) -> list[list[int]]:
        return [[row[j] for row in self.matrix] for j in range(self.domain.gens)]

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self ∘ first."""
        m = matmul([list(r) for r in self.matrix], [list(r) for r in first.matrix], inner=self.domain.gens)
        return GroupHom(first.domain, self.codomain, tuple(map(tuple, m)))


def cokernel(h: GroupHom) -> FgAbGroup:
    return quotient_group(list(h.codomain.relations) + h.columns(), h.codomain.gens)


def image(h: GroupHom) -> FgAbGroup:
    return subquotient(h.columns(), h.codomain.relations, h.codomain.gens)


def kernel_lattice(h: GroupHom) -> list[list[int]]:
    """Spanning vectors (in domain coordinates) of the preimage of the codomain relations."""
    gd, gc = h.domain.gens, h.codomain.gens
    rc = list(h.codomain.relations)
    block = [list(h.matrix[i]) + [-r[i] for r in rc] for i in range(gc)]
    ker = integer_kernel(block, gc, gd + len(rc))
    return [k[:gd] for k in ker]


def kernel(h: GroupHom) -> FgAbGroup:
    return subquotient(kernel_lattice(h), h.domain.relations, h.domain.gens)


def same_image(h1: GroupHom, h2: GroupHom) -> bool:
    """Do two maps into the same presented group have the same image subgroup?"""
    if h1.codomain != h2.codomain:
        raise ValueError("maps must share a codomain")
    rels = list(h1.codomain.relations)
    dim = h1.codomain.gens

    def inside(a: GroupHom, b: GroupHom) -> bool:
        span = b.columns() + rels
        return all(in_lattice(c, span, dim) for c in a.columns())

    return inside(h1, h2) and inside(h2, h1)


def tensor(g: FgAbGroup, m: int) -> FgAbGroup:
    """g ⊗ Z/m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return FgAbGroup.from_orders([m if q == 0 else gcd(q, m) for q in g.cyclic_orders()])


def hom(c: FgAbGroup, a: FgAbGroup) -> FgAbGroup:
    """Hom(c, a)."""
    parts = [a.power(c.free_rank)]
    for q in c.torsion:
        parts.append(kernel(GroupHom.scalar(a, q)))
    return direct_sum(*parts)


def ext(c: FgAbGroup, a: FgAbGroup) -> FgAbGroup:
    """Ext¹(c, a); Ext(Z, ·) = 0 and Ext(Z/q, a) = a / q a."""
    return direct_sum(*(cokernel(GroupHom.scalar(a, q)) for q in c.torsion))


@dataclass(frozen=True)
class ExtensionProblem:
    sub: FgAbGroup
    quot: FgAbGroup


def extension_presentations(sub: FgAbGroup, quot: FgAbGroup, limit: int = 200_000):
    """Yield one presentation of a middle group per class of Ext(quot, sub).

    Generators are sub's summands followed by quot's summands.  For the i-th
    cyclic summand Z/q of quot the relation q·c_i = a_i twists the sequence,
    with a_i running over coset representatives of sub / q·sub.
    """
    a_orders = sub.cyclic_orders()
    c_orders = quot.cyclic_orders()
    na, nc = len(a_orders), len(c_orders)
    base = [tuple(q if i == j else 0 for i in range(na + nc)) for j, q in enumerate(a_orders) if q]
    torsion_slots = [j for j, q in enumerate(c_orders) if q]
    choices = []
    total = 1
    for j in torsion_slots:
        q = c_orders[j]
        ranges = [range(gcd(o, q)) for o in a_orders]
        total *= reduce(lambda x, r: x * len(r), ranges, 1)
        choices.append(list(product(*ranges)))
    if total > limit:
        raise ExtensionTooLarge(f"|Ext| = {total} exceeds the enumeration limit {limit}")
    for cocycle in product(*choices):
        rels = list(base)
        for j, a in zip(torsion_slots, cocycle):
            vec = [-x for x in a] + [0] * nc
            vec[na + j] = c_orders[j]
            rels.append(tuple(vec))
        yield Presentation(na + nc, tuple(rels))


def middle_groups(p: ExtensionProblem | FgAbGroup, quot: FgAbGroup | None = None) -> set[FgAbGroup]:
    """All isomorphism types E with 0 → sub → E → quot → 0."""
    if isinstance(p, ExtensionProblem):
        sub, quot = p.sub, p.quot
    else:
        sub = p
    return {pres.group() for pres in extension_presentations(sub, quot)}
