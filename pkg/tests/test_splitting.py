import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohomotopy.manifold import BLOCK_SCHEMA, AttachingVector, ManifoldDescriptor, TorsionGroup
from cohomotopy.splitting import (
    MOORE_DIRECTION,
    OracleBoundExceeded,
    WedgeDecomposition,
    canonical_key,
    homology_check,
    move_set,
    normalize,
    orbit_oracle,
    suspension_splitting,
)
from cohomotopy.tables import Space
from strategies import descriptors, random_vector

A = AttachingVector.build


def _mod(n, name):
    return next(s.modulus for s in BLOCK_SCHEMA[n] if s.name == name)


def random_move(rng: random.Random, v: AttachingVector) -> AttachingVector:
    """Apply one randomly chosen licensed move, written out from the rules."""
    n, exps = v.n, v.exponents
    blocks = {name: list(vals) for name, vals in v.blocks}
    name = rng.choice([s.name for s in BLOCK_SCHEMA[n]])
    vals = blocks[name]
    if not vals:
        return v
    i, j = rng.randrange(len(vals)), rng.randrange(len(vals))
    coupled = n == 4 and name in ("z1", "z2")
    if rng.random() < 0.3:
        if not (coupled and name == "z2"):
            vals[i] = -vals[i]
    elif n == 4 and name == "z2" and blocks["y"] and rng.random() < 0.5:
        vals[i] += blocks["y"][rng.randrange(len(blocks["y"]))]
    elif i != j:
        direction = MOORE_DIRECTION.get((n, name))
        if direction == "min" and exps[i] > exps[j]:
            return v
        if direction == "max" and exps[i] < exps[j]:
            return v
        if coupled:
            blocks["z1"][j] += blocks["z1"][i]
            blocks["z2"][j] += blocks["z2"][i]
        else:
            vals[j] += vals[i]
    return A(n, exps, **blocks)


def test_move_set_contents():
    kinds = {(r.kind, r.blocks) for r in move_set(3)}
    assert ("transvect", ("y",)) in kinds
    assert ("transfer", ("u",)) in kinds and ("transfer", ("w",)) in kinds
    assert ("transfer", ("z",)) in {(r.kind, r.blocks) for r in move_set(2)}
    four = {(r.kind, r.blocks) for r in move_set(4)}
    assert ("transvect", ("x",)) in four and ("pair-transvect", ("z1", "z2")) in four
    with pytest.raises(ValueError):
        move_set(5)


def test_normalize_examples():
    assert normalize(A(3, (), y=[1, 1, 0]))["y"] == (1, 0, 0)
    assert normalize(A(2, (), x=[3, 6]))["x"] == (3, 0)
    na = normalize(A(2, (1, 1), z=[1, 1]))
    assert na["z"] == (1, 0) and na.r_j0 == 1


def test_six_manifold_moore_block_keeps_largest_exponent():
    # Transfers run from larger to smaller exponent, so the support ends on the largest one.
    na = normalize(A(2, (1, 2), z=[1, 1]))
    assert na["z"] == (0, 1) and na.r_j0 == 2


def test_x_block_lands_in_zero_to_six():
    seen = {normalize(A(2, (), x=[a]))["x"][0] for a in range(12)}
    assert seen == set(range(7))


def test_delta_is_parity_of_x():
    for x in range(24):
        assert normalize(A(3, (), x=[x])).delta == x % 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_normalize_idempotent(n):
    rng = random.Random(n)
    for _ in range(300):
        v = random_vector(rng, n, max_len=5)
        once = normalize(v).vector
        assert normalize(once).vector == once


@pytest.mark.parametrize("n", [2, 3, 4])
def test_normalize_invariant_under_random_moves(n):
    rng = random.Random(100 + n)
    for _ in range(150):
        v = random_vector(rng, n, max_len=5)
        w = v
        for _ in range(40):
            w = random_move(rng, w)
        assert normalize(w).vector == normalize(v).vector


@pytest.mark.parametrize("n", [2, 3, 4])
def test_normalize_is_orbit_minimum(n):
    rng = random.Random(200 + n)
    for _ in range(40):
        v = random_vector(rng, n, max_len=2)
        orb = orbit_oracle(v)
        nv = normalize(v).vector
        assert nv in orb
        assert nv == orb.canonical()
        if len(orb) <= 5000:
            assert canonical_key(nv) == min(canonical_key(w) for w in orb)


def test_oracle_examples():
    assert len(orbit_oracle(A(3, ()))) == 1
    assert {w["x"] for w in orbit_oracle(A(3, (), x=[1]))} == {(1,), (23,)}
    assert {w["y"] for w in orbit_oracle(A(2, (), y=[1, 0]))} == {(1, 0), (0, 1), (1, 1)}


def test_oracle_refuses_large_blocks():
    with pytest.raises(OracleBoundExceeded):
        orbit_oracle(A(3, (), y=[1, 0, 0, 0]))


def test_oracle_sample_stays_in_orbit():
    v = A(4, (1,), x=[3], y=[1], z1=[5], z2=[0], w=[1])
    orb = orbit_oracle(v)
    for w in orb.sample(random.Random(0), 20):
        assert w in orb and normalize(w).vector == normalize(v).vector


def _counts(w: WedgeDecomposition):
    return Counter(str(s) for s in w.summands)


def test_top_sphere_only():
    w = suspension_splitting(ManifoldDescriptor(3, 0, 0))
    assert w.summands == () and w.cofibre.is_sphere
    assert w.render() == "S⁹"


def test_six_manifold_single_sphere_pair():
    d = ManifoldDescriptor(2, 1, 0, attach=A(2, (), x=[1], y=[0]))
    w = suspension_splitting(d)
    assert w.summands == ()
    assert [str(s) for s in w.cofibre.codomain] == ["S³", "S⁵"]
    assert w.cofibre.name == "C_ħ" and not w.cofibre.splits_further


def test_eight_cell_example_with_zero_attach():
    d = ManifoldDescriptor(4, 2, 1, TorsionGroup.of((3, 2)), True, 1)
    w = suspension_splitting(d)
    assert _counts(w) == Counter({"S⁶": 1, "P⁶(9)": 1, "P⁷(9)": 1})
    assert sorted(map(str, w.cofibre.codomain)) == sorted(["S⁷", "S⁵", "C⁷_η"])
    assert w.cofibre.splits_further
    assert "splits further into top sphere ∨ base" in w.cofibre.describe()
    assert homology_check(w, d) == []


def test_removed_sphere_is_caught():
    d = ManifoldDescriptor(3, 3, 1, c=1)
    w = suspension_splitting(d)
    assert homology_check(w, d) == []
    broken = w.without(Space.sphere(4))
    mism = homology_check(broken, d)
    assert [m.degree for m in mism] == [4]


def test_chang_absorbed_into_cofibre():
    d = ManifoldDescriptor(2, 1, 0, c=1)
    w = suspension_splitting(d)
    assert not any(s.kind == "chang" for s in w.summands)
    assert any(s.kind == "chang" for s in w.cofibre.codomain)
    assert homology_check(w, d) == []


def _expected_counts(d, na):
    """Summand counts outside the cofibre, from the printed index ranges."""
    n, l, k, c, free = d.n, d.l, d.k, d.c, d.l - d.c
    pos = lambda m: max(0, m)  # noqa: E731
    if n == 2:
        return {"S³": pos(free - 1), "S⁵": pos(free - 1), "S⁴": k, "C⁵_η": pos(c - 1)}
    if n == 3:
        return {"S⁵": pos(k - 1), "S⁴": pos(free - 1), "S⁶": free, "C⁶_η": pos(c - 1)}
    return {"S⁶": k, "S⁵": pos(free - 1), "S⁷": pos(free - 1), "C⁷_η": pos(c - 2)}


@given(descriptors())
@settings(max_examples=150, deadline=None)
def test_splitting_counts_and_homology(d):
    w = suspension_splitting(d)
    assert homology_check(w, d) == []
    got = _counts(w)
    for name, count in _expected_counts(d, w.cofibre.attachment).items():
        assert got.get(name, 0) == count, name
    changs = sum(1 for s in w.summands + w.cofibre.codomain if s.kind == "chang")
    assert changs == d.c


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_wedge_serialization(l, k, c):
    d = ManifoldDescriptor(3, l + c, k, c=c)
    data = suspension_splitting(d).to_dict()
    assert data["cofibre"]["top"] == 9
    assert all("kind" in s for s in data["summands"])
