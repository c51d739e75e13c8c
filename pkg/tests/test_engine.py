import random

import pytest
from hypothesis import given, settings

from cohomotopy.abelian import FgAbGroup, cyclic, direct_sum, subgroup_types, tensor
from cohomotopy.engine import (
    PI4_REASON,
    UnsupportedDegree,
    compute,
    compute_all,
    cross_check,
    example_g,
    g24,
    g_extension_n3,
    pi2_liftable,
    pi3_n2_extension,
    pi5_fiber_report,
)
from cohomotopy.manifold import AttachingVector, DescriptorError, ManifoldDescriptor, SteenrodData, TorsionGroup
from cohomotopy.results import Extension, StructuralStatement, TorsorOver, Unknown
from strategies import descriptors

A = AttachingVector.build
Z = FgAbGroup(1)


def test_pi3_eight_connected_example():
    d = ManifoldDescriptor(4, 2, 1, TorsionGroup.of((3, 2)), True, 1)
    r = compute(d, 3)
    assert r.render() == "(Z/2)² ⊕ Z/12 ⊕ Z/6 ⊕ Z/3"
    want = direct_sum(cyclic(2).power(2), cyclic(12), cyclic(6), cyclic(3))
    assert r.possible_groups() == (want,)


def test_pi3_six_manifold_without_free_part():
    d = ManifoldDescriptor(2, 0, 0, TorsionGroup.of((5, 1)))
    assert compute(d, 3).possible_groups() == (cyclic(5) + cyclic(12),)


def test_single_four_cell_example():
    d = ManifoldDescriptor(3, 0, 1, attach=A(3, (), x=[2]))
    assert compute(d, 3).possible_groups() == (cyclic(4),)
    assert compute(d, 5).possible_groups() == (cyclic(2),)


def test_g24_formula():
    assert g24(2, 0, 0) == cyclic(2)
    assert g24(0, 1, 1) == cyclic(8)
    assert g24(1, 0, 0).is_trivial
    assert g24(0, 0, 0) == cyclic(24)


def test_g_extension_quotient():
    assert g_extension_n3(0, 5) == (cyclic(2), FgAbGroup())
    assert g_extension_n3(3, 1) == (cyclic(2), cyclic(2).power(2))
    assert g_extension_n3(3, 2) == (cyclic(2), cyclic(2).power(3))


def test_example_table_is_among_extension_candidates():
    from cohomotopy.abelian import middle_groups

    for x in range(24):
        sub, quot = g_extension_n3(1, x)
        assert example_g(x) in middle_groups(sub, quot)


def test_six_manifold_general_path_candidates():
    d = ManifoldDescriptor(2, 2, 2, TorsionGroup.of((3, 1)), True, 1)
    r = pi3_n2_extension(d)
    assert r.quot == Z.power(2) + cyclic(2)
    assert set(r.sub) == {g + cyclic(3) for g in subgroup_types(cyclic(12))}
    for s in r.sub:
        assert s + r.quot in r.candidates()


def test_low_and_high_degrees_are_trivial():
    for n in (2, 3, 4):
        d = ManifoldDescriptor(n, 1, 0 if n == 2 else 1)
        assert compute(d, 1).possible_groups() == (FgAbGroup(),)
        assert compute(d, 2 * n + 3).possible_groups() == (FgAbGroup(),)
        assert compute(d, 2 * n + 2).possible_groups() == (Z,)
        with pytest.raises(UnsupportedDegree):
            compute(d, 0)


def test_pi4_unknown_reason_is_verbatim():
    for n in (3, 4):
        r = compute(ManifoldDescriptor(n, 1, 1), 4)
        assert isinstance(r, Unknown) and r.reason == PI4_REASON
        assert r.render() == "unknown: no effective way known for π⁴, n=3,4"


def test_invalid_descriptor_propagates():
    with pytest.raises(DescriptorError):
        compute_all(ManifoldDescriptor(3, 1, 0, c=2))


def test_pi2_lifting():
    nonspin = ManifoldDescriptor(
        2, 1, 0, spin=False, attach=A(2, (), x=[0], y=[1]), steenrod=SteenrodData(cup=[[[1]]])
    )
    assert pi2_liftable(nonspin, (0,)) == "yes"
    assert pi2_liftable(nonspin, (1,)) == "no"
    spin = ManifoldDescriptor(2, 1, 0, steenrod=SteenrodData(cup=[[[0]]]))
    assert pi2_liftable(spin, (1,)) == "needs-oracle"
    assert pi2_liftable(spin, (1,), theta={(1,): 0}) == "yes"
    assert pi2_liftable(spin, (1,), theta=lambda bits: 1) == "no"
    with pytest.raises(UnsupportedDegree):
        pi2_liftable(ManifoldDescriptor(3, 1, 0), (1,))


def test_pi5_fibre_statement():
    r = pi5_fiber_report(ManifoldDescriptor(4, 1, 1))
    assert r.get("fiber_size") == 2
    assert "π⁹(M) ≅ Z/2" in r.render()
    with pytest.raises(UnsupportedDegree):
        pi5_fiber_report(ManifoldDescriptor(3, 1, 1))


def test_pi3_of_eight_connected_matches_closed_form_on_random_data():
    rng = random.Random(5)
    for _ in range(50):
        l, k = rng.randint(0, 4), rng.randint(0, 4)
        c = rng.randint(0, l)
        T = TorsionGroup(rng.choice([(), ((3, 1),), ((3, 2), (5, 1))]))
        d = ManifoldDescriptor(4, l, k, T, True, c)
        want = direct_sum(cyclic(2).power(k + l - c), cyclic(12).power(l - c), cyclic(6).power(c), tensor(T.group(), 3))
        assert compute(d, 3).possible_groups() == (want,)


@given(descriptors())
@settings(max_examples=120, deadline=None)
def test_engine_properties(d):
    results = compute_all(d)
    assert sorted(results) == list(range(1, 2 * d.n + 4))
    assert cross_check(d) == []
    for r in results.values():
        if isinstance(r, Extension) and r.quot is not None:
            for s in r.sub:
                assert direct_sum(r.complement, s, r.quot) in r.candidates()
        if isinstance(r, TorsorOver):
            pi3 = results[3].possible_groups()
            if pi3 is not None and len(pi3) == 1 and pi3[0].is_finite:
                assert r.cardinalities() == {pi3[0].order}
    if d.n in (3, 4):
        assert isinstance(results[2], StructuralStatement)


def test_nonspin_formal_flag_for_n3():
    d = ManifoldDescriptor(3, 1, 1, spin=False)
    assert compute(d, 7).possible_groups() == (FgAbGroup(),)
