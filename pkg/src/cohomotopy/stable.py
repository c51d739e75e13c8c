"""Stable-range cohomotopy from the first stages of the Postnikov tower of S^n.

``StableInput`` carries the cohomology groups and operation matrices of a
complex X of dimension at most n+m.  ``taylor_pi_n`` handles dim <= n+1,
``vanishing_case`` the three vanishing-hypothesis cases up to dim n+6, and
``manifold_stable_range`` specializes to (n-1)-connected (2n+2)-manifolds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .abelian import (
    FgAbGroup,
    GroupHom,
    Presentation,
    cokernel,
    cyclic,
    direct_sum,
    kernel,
    middle_groups,
    same_image,
    subgroup_types,
    two_power,
)
from .manifold import ManifoldDescriptor, cohomology_basis, operation, require_valid
from .results import CohomotopyResult, ExactGroup, Extension, Unknown
from .splitting import normalize

MODULI = (0, 2, 3, 24)


class PreconditionError(ValueError):
    """A hypothesis of the requested case fails; the message names it."""


class InconsistentInput(ValueError):
    """The operation data contradict each other (e.g. a forced non-split with Ext = 0)."""


def _coeff(mod: int) -> str:
    return "" if mod == 0 else f";Z/{mod}"


@dataclass(frozen=True, eq=False)
class StableInput:
    """Cohomology of X in the range needed, plus operation matrices.

    ``groups[(m, q)]`` is H^m(X; Z/q) as a cyclic-sum presentation (q = 0
    means Z coefficients); degrees not listed are zero.  ``ops[(name, m)]``
    has source degree m, with names sq2 (Z/2 → Z/2, +2), rho2 (Z → Z/2),
    sq2_z (Z → Z/2, +2), p1 (Z/3 → Z/3, +4), rho3 (Z → Z/3), p1_z (Z → Z/3, +4).
    """

    n: int
    dim: int
    groups: Mapping[tuple[int, int], Presentation] = field(default_factory=dict)
    ops: Mapping[tuple[str, int], GroupHom] = field(default_factory=dict)

    _SHAPES = {
        "sq2": (2, 2, 2),
        "rho2": (0, 2, 0),
        "sq2_z": (0, 2, 2),
        "p1": (3, 3, 4),
        "rho3": (0, 3, 0),
        "p1_z": (0, 3, 4),
    }

    def __post_init__(self):
        for (name, m), h in self.ops.items():
            if name not in self._SHAPES:
                raise ValueError(f"unknown operation {name!r}")
            src, dst, shift = self._SHAPES[name]
            if h.domain.gens != self.presentation(m, src).gens:
                raise ValueError(f"{name} in degree {m}: domain does not match H^{m}(X{_coeff(src)})")
            if h.codomain.gens != self.presentation(m + shift, dst).gens:
                raise ValueError(f"{name} in degree {m}: codomain does not match H^{m + shift}(X{_coeff(dst)})")

    @classmethod
    def build(
        cls,
        n: int,
        dim: int,
        groups: Mapping[tuple[int, int], Sequence[int]],
        ops: Mapping[tuple[str, int], Sequence[Sequence[int]]] | None = None,
    ) -> "StableInput":
        """Groups as cyclic orders (0 = Z), operations as integer matrices."""
        pres = {key: Presentation.cyclic_sum(list(orders)) for key, orders in groups.items()}
        tmp = cls(n, dim, pres)
        built = {}
        for (name, m), mat in (ops or {}).items():
            src, dst, shift = cls._SHAPES[name]
            built[(name, m)] = GroupHom(tmp.presentation(m, src), tmp.presentation(m + shift, dst), tuple(map(tuple, mat)))
        return cls(n, dim, pres, built)

    @classmethod
    def from_manifold(cls, d: ManifoldDescriptor, n: int) -> "StableInput":
        groups = {}
        for m in range(d.top + 1):
            for q in MODULI:
                b = cohomology_basis(d, m, q)
                if len(b):
                    groups[(m, q)] = b.presentation()
        ops = {}
        s = d.steenrod
        if s is not None:
            for m in s.sq2:
                ops[("sq2", m)] = operation(d, "sq2", m)
                ops[("rho2", m)] = operation(d, "rho2", m)
            for m in s.p1:
                ops[("p1", m)] = operation(d, "p1", m)
                ops[("rho3", m)] = operation(d, "rho3", m)
        return cls(n, d.top, groups, ops)

    def presentation(self, m: int, q: int) -> Presentation:
        return self.groups.get((m, q), Presentation(0))

    def group(self, m: int, q: int = 0) -> FgAbGroup:
        return self.presentation(m, q).group()

    def op(self, name: str, m: int) -> GroupHom | None:
        """The operation, derived as a composite or as a forced zero map when possible."""
        if (name, m) in self.ops:
            return self.ops[(name, m)]
        src, dst, shift = self._SHAPES[name]
        a, b = self.presentation(m, src), self.presentation(m + shift, dst)
        if a.gens == 0 or b.gens == 0:
            return GroupHom(a, b, tuple(tuple(0 for _ in range(a.gens)) for _ in range(b.gens)))
        if name in ("sq2_z", "p1_z"):
            base, red = ("sq2", "rho2") if name == "sq2_z" else ("p1", "rho3")
            f, r = self.op(base, m), self.op(red, m)
            if f is not None and r is not None:
                return f.compose(r)
        return None


def _ses(
    subs: Sequence[FgAbGroup],
    quot: FgAbGroup | None,
    split: str,
    provenance: str,
    **extra,
) -> Extension:
    if quot is None:
        middle: set[FgAbGroup] = set()
    elif split == "yes":
        middle = {direct_sum(s, quot) for s in subs}
    else:
        middle = set()
        for s in subs:
            middle |= middle_groups(s, quot)
    return Extension(tuple(subs), quot, split, tuple(middle), provenance, **extra)


def taylor_pi_n(x: StableInput) -> Extension:
    """π^n(X) for dim X <= n+1 as 0 → QH^{n+1}(X, Sq²_Z) → π^n(X) → H^n(X) → 0."""
    n = x.n
    if n < 3:
        raise PreconditionError("needs n >= 3")
    if x.dim > n + 1:
        raise PreconditionError(f"needs dim X <= n+1 = {n + 1}, got {x.dim}")
    quot = x.group(n)
    sq2_z, sq2 = x.op("sq2_z", n - 1), x.op("sq2", n - 1)
    prov = "first Postnikov stage (dim <= n+1)"
    if sq2_z is None:
        subs = subgroup_types(x.group(n + 1, 2))
        return _ses(
            subs, quot, "unknown", prov, sub_label=f"QH^{n + 1}(X,Sq²_Z)", needs="Sq² matrices"
        )
    sub = cokernel(sq2_z)
    if sq2 is None:
        return _ses([sub], quot, "unknown", prov, needs="Sq² matrices")
    if same_image(sq2_z, sq2):
        return _ses([sub], quot, "yes", prov, notes=("image(Sq²_Z) = image(Sq²)",))
    nonsplit = middle_groups(sub, quot) - {direct_sum(sub, quot)}
    if not nonsplit:
        raise InconsistentInput("split criterion fails but Ext(H^n, QH^{n+1}) = 0 admits only the split extension")
    return Extension(
        (sub,), quot, "no", tuple(nonsplit), prov, notes=("image(Sq²_Z) is a proper subgroup of image(Sq²)",)
    )


def _two_torsion_free(g: FgAbGroup) -> bool:
    return not g.has_torsion_prime(2)


def _require_zero(x: StableInput, m: int, q: int, failures: list[str]) -> None:
    if not x.group(m, q).is_trivial:
        failures.append(f"H^{m}(X{_coeff(q)}) = 0")


def vanishing_case(x: StableInput, case: int) -> Extension:
    """π^n(X) in the three stable cases with vanishing hypotheses.

    1: dim <= n+2, n >= 4, H^{n+1}(X;Z/2) = 0.
    2: H^{n+1}(X;Z/2) = H^{n+2}(X;Z/2) = 0 and (dim <= n+3, n >= 5),
       (dim <= n+4, n >= 6) or (dim <= n+5, n >= 7).
    3: dim <= n+6, n >= 8, H^{n+i}(X;Z/2) = 0 for i = 1, 2, 3 and H^{n+3}(X;Z/3) = 0.
    In all cases H^n(X) must be 2-torsion-free when n >= 5.
    """
    n = x.n
    hn = x.group(n)
    failures: list[str] = []
    if n >= 5 and not _two_torsion_free(hn):
        failures.append("H^n(X) 2-torsion-free")
    if case == 1:
        if n < 4:
            failures.append("n >= 4")
        if x.dim > n + 2:
            failures.append(f"dim X <= n+2 = {n + 2}")
        _require_zero(x, n + 1, 2, failures)
    elif case == 2:
        if not any(x.dim <= n + m and n >= m + 2 for m in (3, 4, 5)):
            failures.append("one of (dim <= n+3, n >= 5), (dim <= n+4, n >= 6), (dim <= n+5, n >= 7)")
        _require_zero(x, n + 1, 2, failures)
        _require_zero(x, n + 2, 2, failures)
    elif case == 3:
        if n < 8:
            failures.append("n >= 8")
        if x.dim > n + 6:
            failures.append(f"dim X <= n+6 = {n + 6}")
        for i in (1, 2, 3):
            _require_zero(x, n + i, 2, failures)
        _require_zero(x, n + 3, 3, failures)
    else:
        raise ValueError("case must be 1, 2 or 3")
    if failures:
        raise PreconditionError("hypothesis fails: " + "; ".join(failures))

    if case == 1:
        op, label = x.op("sq2_z", n), f"ker(Sq²_Z: H^{n}(X) → H^{n + 2}(X;Z/2))"
        subs = subgroup_types(x.group(n + 2, 2))
        sub_label = f"QH^{n + 2}(X,ΩSq²̄)"
        split = "yes" if _two_torsion_free(hn) else "unknown"
    elif case == 2:
        op, label = x.op("p1_z", n), f"ker(P¹_Z: H^{n}(X) → H^{n + 4}(X;Z/3))"
        subs = subgroup_types(x.group(n + 3, 24))
        sub_label = "G₂₄"
        split = "unknown"
    else:
        op, label = x.op("p1_z", n), f"ker(P¹_Z: H^{n}(X) → H^{n + 4}(X;Z/3))"
        subs = subgroup_types(x.group(n + 6, 2))
        sub_label = f"QH^{n + 6}(X,ΩSq⁴̄)"
        split = "yes"
    prov = f"stable case {case}"
    if len(subs) == 1:
        sub_label = None
    if op is None:
        return _ses(subs, None, split, prov, quot_label=label, sub_label=sub_label, needs="operation matrices")
    return _ses(subs, kernel(op), split, prov, quot_label=label, sub_label=sub_label)


# ---------------------------------------------------------------------------
# manifold specialization

NOT_COVERED = "not covered by the stable-range classification for this n"


def ker_sq2_z_n2(d: ManifoldDescriptor) -> tuple[FgAbGroup | None, str]:
    """ker(Sq²_Z: H⁴(M) → H⁶(M;Z/2)) for n = 2, or None with its label."""
    label = "ker(Sq²_Z: H⁴(M) → H⁶(M;Z/2))"
    if not len(cohomology_basis(d, 4, 2)):
        return cohomology_basis(d, 4, 0).group(), label
    op = operation(d, "sq2_z", 4)
    return (None if op is None else kernel(op)), label


def ker_p1_z(d: ManifoldDescriptor, m: int) -> tuple[FgAbGroup | None, str]:
    """ker(P¹_Z: H^m(M) → H^{m+4}(M;Z/3)), or None with its label."""
    label = f"ker(P¹_Z: H{_sup(m)}(M) → H{_sup(m + 4)}(M;Z/3))"
    if not len(cohomology_basis(d, m, 3)) or not len(cohomology_basis(d, m + 4, 3)):
        return cohomology_basis(d, m, 0).group(), label
    op = operation(d, "p1_z", m)
    return (None if op is None else kernel(op)), label


def _sup(k: int) -> str:
    from .abelian import superscript

    return superscript(k)


def manifold_stable_range(d: ManifoldDescriptor) -> dict[int, CohomotopyResult]:
    """π^i(M) for i in {2n+1, 2n, 2n-1, 2n-2, 2n-3} on an (n-1)-connected (2n+2)-manifold."""
    require_valid(d)
    n, eps = d.n, d.eps
    out: dict[int, CohomotopyResult] = {}

    # top-but-one degree
    top_quot = two_power(1 - eps)
    if d.steenrod is not None and 2 * n in d.steenrod.sq2:
        ses = taylor_pi_n(StableInput.from_manifold(d, 2 * n + 1))
        if ses.candidates() != (top_quot,):
            raise InconsistentInput(f"Sq² data give π^{2 * n + 1} ∈ {ses.candidates()}, spin flag gives {top_quot}")
    out[2 * n + 1] = ExactGroup(top_quot, None, "QH^{2n+2}(M,Sq²) = Z/2^{1-ε}")

    if n >= 3:
        out[2 * n] = ExactGroup(cyclic(2), None, "top-cell collapse onto S^{2n+2}")
    else:
        quot, label = ker_sq2_z_n2(d)
        out[4] = _ses(
            [two_power(1 - eps)],
            quot,
            "yes",
            "second Postnikov stage",
            quot_label=label,
            needs=None if quot is not None else "steenrod.sq2.4",
        )

    if n >= 3:
        h = cohomology_basis(d, 2 * n - 1, 0).group()
        if n == 3:
            from .engine import g24_of

            subs, label = [g24_of(normalize(d.attaching_vector()))], None
        else:
            subs, label = subgroup_types(cyclic(24)), "G₂₄"
        out[2 * n - 1] = _ses(subs, h, "yes", "G₂₄ ⊆ H^{2n+2}(M;Z/24)", sub_label=label)
    else:
        out[2 * n - 1] = Unknown(NOT_COVERED)

    if n >= 4:
        quot, label = ker_p1_z(d, 2 * n - 2)
        if quot is not None:
            out[2 * n - 2] = ExactGroup(quot, None, label)
        else:
            out[2 * n - 2] = _ses(
                [FgAbGroup()], None, "yes", "third Postnikov stage", quot_label=label, needs=f"steenrod.p1.{2 * n - 2}"
            )
    else:
        out[2 * n - 2] = Unknown(NOT_COVERED)
    out[2 * n - 3] = Unknown(NOT_COVERED)
    return out

