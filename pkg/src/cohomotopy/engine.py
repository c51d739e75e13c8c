"""Degree-by-degree cohomotopy π^i(M) for (n-1)-connected (2n+2)-manifolds, n = 2, 3, 4."""

from __future__ import annotations

from math import gcd

from .abelian import (
    FgAbGroup,
    Presentation,
    cyclic,
    direct_sum,
    middle_groups,
    subgroup_types,
    superscript,
    tensor,
    two_power,
)
from .manifold import ManifoldDescriptor, cohomology_basis, require_valid
from .results import (
    CohomotopyResult,
    ExactGroup,
    Extension,
    StructuralStatement,
    TorsorOver,
    Unknown,
    trivial,
)
from .splitting import NormalizedAttachment, normalize

PI4_REASON = "no effective way known for π⁴, n=3,4"


class UnsupportedDegree(ValueError):
    pass


def H(d: ManifoldDescriptor, m: int) -> FgAbGroup:
    return cohomology_basis(d, m, 0).group()


# ---------------------------------------------------------------------------
# n = 3 coefficient formulas


def g24(x: int, u: int, w: int) -> FgAbGroup:
    """Z/gcd(24, x + 8u + 8w)."""
    return cyclic(gcd(24, x + 8 * u + 8 * w))


def _support_value(vals: tuple[int, ...]) -> int:
    return next((v for v in vals if v), 0)


def g24_of(na: NormalizedAttachment) -> FgAbGroup:
    if na.n != 3:
        raise UnsupportedDegree("the G₂₄ coefficient formula is for n = 3")
    return g24(_support_value(na["x"]), _support_value(na["u"]), _support_value(na["w"]))


def g_extension_n3(k: int, x: int) -> tuple[FgAbGroup, FgAbGroup]:
    """(sub, quot) of 0 → Z/2 → G → (Z/2)^{k-1} ⊕ Z/2^{1-δ} → 0, δ = parity of x."""
    if k == 0:
        return cyclic(2), FgAbGroup()
    delta = x % 2
    return cyclic(2), two_power(1).power(k - 1) + two_power(1 - delta)


def example_g(x: int) -> FgAbGroup:
    """π³ of the 2-connected 8-manifold with one 4-cell, by the parity of x mod 4."""
    if x % 2:
        return cyclic(2)
    if x % 4 == 0:
        return cyclic(2).power(2)
    return cyclic(4)


def pi3_n3(d: ManifoldDescriptor, na: NormalizedAttachment) -> CohomotopyResult:
    complement = H(d, 3) + cyclic(2).power(d.l - d.c)
    x = _support_value(na["x"])
    sub, quot = g_extension_n3(d.k, x)
    middles = middle_groups(sub, quot)
    prov = "Z/2 ⊕ (Z/2)^{k-1} ⊕ Z/2^{1-δ} extension, δ = parity of x"
    if d.k == 1 and d.l == 0 and d.torsion.t == 0 and not d.torsion.factors:
        g = example_g(x)
        assert g in middles
        return ExactGroup(g, None, "single 4-cell: Z/2, (Z/2)² or Z/4 by x mod 4")
    if len(middles) == 1:
        return ExactGroup(direct_sum(complement, next(iter(middles))), None, prov)
    return Extension((sub,), quot, "unknown", tuple(middles), prov, complement, notes=("δ read off the normalized x",))


# ---------------------------------------------------------------------------
# n = 2


def pi3_n2_extension(d: ManifoldDescriptor) -> Extension:
    """General-path candidates for π³ with n = 2, including the case k = l = 0."""
    T = d.T
    subs = [g + T for g in subgroup_types(cyclic(12))]
    quot = FgAbGroup(d.k) + cyclic(2).power(d.l - d.c - d.eps)
    return Extension(
        tuple(subs),
        quot,
        "yes",
        tuple(s + quot for s in subs),
        "0 → G₁₂ ⊕ T → π³ → Z^k ⊕ (Z/2)^{l-c-ε} → 0",
        sub_label="G₁₂ ⊕ T",
        notes=(
            "section on the (Z/2) part; Z^k is free",
            "abelian candidates only",
            "G₁₂ ⊆ Z/12 has no coefficient formula",
        ),
    )


def pi4_n2(d: ManifoldDescriptor) -> Extension:
    from .stable import _ses, ker_sq2_z_n2

    quot, label = ker_sq2_z_n2(d)
    return _ses(
        [two_power(1 - d.eps)],
        quot,
        "yes",
        "second Postnikov stage",
        quot_label=label,
        needs=None if quot is not None else "steenrod.sq2.4",
    )


def pi2_liftable(d: ManifoldDescriptor, u, theta=None) -> str:
    """Does u ∈ H²(M) lift to π²(M)?  Returns "yes", "no" or "needs-oracle".

    ``theta`` overrides the Θ₀ oracle stored with the Steenrod data; it maps
    the mod 2 reduction of u (a tuple of bits) to 0 or 1.
    """
    if d.n != 2:
        raise UnsupportedDegree("the π² lift test is for n = 2")
    require_valid(d)
    u = tuple(int(a) for a in u)
    if len(u) != d.l:
        raise ValueError(f"u must have {d.l} coordinates in H²(M) = Z^{d.l}")
    if not any(u):
        return "yes"
    s = d.steenrod
    if s is None or s.cup is None:
        raise ValueError("needs cup-square data (steenrod.cup)")
    h4 = cohomology_basis(d, 4, 0)
    sq = [0] * len(h4)
    for i in range(d.l):
        for j in range(d.l):
            for m in range(len(h4)):
                sq[m] += u[i] * u[j] * s.cup[i][j][m]
    if not h4.presentation().contains(sq):
        return "no"
    if d.eps == 1:
        return "yes"
    bits = tuple(a % 2 for a in u)
    if theta is not None:
        value = theta(bits) if callable(theta) else theta.get(bits)
    else:
        value = s.theta_value(bits)
    if value is None:
        return "needs-oracle"
    return "yes" if value % 2 == 0 else "no"


# ---------------------------------------------------------------------------
# n = 4


def pi3_n4(d: ManifoldDescriptor) -> ExactGroup:
    a, b, c = d.k + d.l - d.c, d.l - d.c, d.c
    t3 = tensor(d.T, 3)
    g = direct_sum(cyclic(2).power(a), cyclic(12).power(b), cyclic(6).power(c), t3)
    terms = []
    for q, e in ((2, a), (12, b), (6, c), (3, len(t3.torsion))):
        if e == 1:
            terms.append(f"Z/{q}")
        elif e > 1:
            terms.append(f"(Z/{q}){superscript(e)}")
    return ExactGroup(g, " ⊕ ".join(terms) or "0", "(Z/2)^{k+l-c} ⊕ (Z/12)^{l-c} ⊕ (Z/6)^c ⊕ T⊗Z/3")


def pi5_fiber_report(d: ManifoldDescriptor) -> StructuralStatement:
    if d.n != 4:
        raise UnsupportedDegree("the π⁵ fibre description is for n = 4")
    pi9 = two_power(1 - d.eps)
    size = pi9.order
    return StructuralStatement(
        "pi5-fiber",
        f"each fibre of the suspension map π⁵(M) → π⁶(ΣM) is in bijection with π⁹(M) ≅ {pi9} ({size} elements)",
        (("fiber_size", size), ("pi9", str(pi9))),
    )


# ---------------------------------------------------------------------------
# dispatch


def compute(d: ManifoldDescriptor, i: int, na: NormalizedAttachment | None = None) -> CohomotopyResult:
    if i <= 0:
        raise UnsupportedDegree("degrees i <= 0 are rejected")
    require_valid(d)
    n, eps = d.n, d.eps
    na = na or normalize(d.attaching_vector())
    top = 2 * n + 2
    if i == 1 or i > top:
        return trivial("below connectivity or above dimension")
    if i == top:
        return ExactGroup(FgAbGroup(1), None, "Hopf degree")
    if i == top - 1:
        return ExactGroup(two_power(1 - eps), None, "Z/2^{1-ε}")
    if n == 2:
        if i == 4:
            return pi4_n2(d)
        if i == 3:
            if d.k == 0 and d.l == 0:
                return ExactGroup(d.T + cyclic(12), None, "T ⊕ Z/12")
            return pi3_n2_extension(d)
        return TorsorOver(3, compute(d, 3, na), "π³ acts freely and transitively")
    if i == top - 2:
        return ExactGroup(cyclic(2), None, "top-cell collapse")
    if i == 4:
        return Unknown(PI4_REASON)
    if i == 2:
        return StructuralStatement(
            "eta-bijection", "η♯: π³(M) → π²(M) is a bijection", (("pi3", compute(d, 3, na).render()),)
        )
    if n == 3:
        if i == 5:
            return ExactGroup(H(d, 5) + g24_of(na), None, "H⁵(M) ⊕ G₂₄, G₂₄ = Z/gcd(24, x+8u+8w)")
        return pi3_n3(d, na)
    # n == 4
    if i == 7:
        subs = subgroup_types(cyclic(24))
        return Extension(tuple(subs), H(d, 7), "yes", tuple(s + H(d, 7) for s in subs), "G₂₄ ⊆ Z/24", sub_label="G₂₄")
    if i == 6:
        from .stable import ker_p1_z

        quot, label = ker_p1_z(d, 6)
        if quot is not None:
            return ExactGroup(quot, None, label)
        return Extension((FgAbGroup(),), None, "yes", (), "third Postnikov stage", quot_label=label, needs="steenrod.p1.6")
    if i == 5:
        return pi5_fiber_report(d)
    return pi3_n4(d)


def compute_all(d: ManifoldDescriptor) -> dict[int, CohomotopyResult]:
    """π^i(M) for 1 <= i <= 2n+3."""
    require_valid(d)
    na = normalize(d.attaching_vector())
    return {i: compute(d, i, na) for i in range(1, 2 * d.n + 4)}


def cross_check(d: ManifoldDescriptor) -> list[str]:
    """Degrees where compute_all and the stable-range results disagree."""
    from .results import agree
    from .stable import manifold_stable_range

    ours = compute_all(d)
    out = []
    for i, theirs in manifold_stable_range(d).items():
        if isinstance(theirs, Unknown) or i not in ours or i < 1:
            continue
        if not agree(ours[i], theirs):
            out.append(f"π^{i}: engine {ours[i].render()} vs stable range {theirs.render()}")
    return out


def presentation_of(g: FgAbGroup) -> Presentation:
    return Presentation.of(g)
