"""Acceptance criteria 1-11.

Run with pytest (one PASS/FAIL line per criterion is printed even without
``-s``) or directly: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from strategies import random_descriptor, random_vector  # noqa: E402

from cohomotopy.abelian import (  # noqa: E402
    FgAbGroup,
    GroupHom,
    cokernel,
    cyclic,
    determinant,
    diagonal,
    direct_sum,
    matmul,
    middle_groups,
    smith_normal_form,
    tensor,
)
from cohomotopy.engine import H, compute, cross_check, g24, g24_of, pi3_n2_extension  # noqa: E402
from cohomotopy.manifold import AttachingVector, ManifoldDescriptor, TorsionGroup, is_valid  # noqa: E402
from cohomotopy.results import Extension  # noqa: E402
from cohomotopy.splitting import homology_check, normalize, orbit_oracle, suspension_splitting  # noqa: E402
from cohomotopy.stable import StableInput, manifold_stable_range, taylor_pi_n  # noqa: E402

GRID_TORSION = [
    TorsionGroup(),
    TorsionGroup.of((3, 1)),
    TorsionGroup.of((3, 2)),
    TorsionGroup.of((5, 1)),
    TorsionGroup.of((3, 1), (7, 1)),
]


def _grid(n: int) -> list[ManifoldDescriptor]:
    out = []
    for l, k, T in itertools.product(range(5), range(5), GRID_TORSION):
        for c in range(l + 1):
            d = ManifoldDescriptor(n, l, k, T, True, c)
            if is_valid(d):
                out.append(d)
    return out


def criterion_1():
    descs = random.Random(1).sample(_grid(4), 50)
    start = time.perf_counter()
    bad = []
    for d in descs:
        k, l, c = d.k, d.l, d.c
        want = direct_sum(cyclic(2).power(k + l - c), cyclic(12).power(l - c), cyclic(6).power(c), tensor(d.T, 3))
        if compute(d, 3).possible_groups() != (want,):
            bad.append(d.to_dict())
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    return ok, f"50 descriptors, {len(bad)} mismatches, {elapsed:.2f}s"


def criterion_2():
    bad = []
    for x in range(24):
        d = ManifoldDescriptor(3, 0, 1, attach=AttachingVector.build(3, (), x=[x]))
        want = cyclic(2) if x % 2 else (cyclic(2).power(2) if x % 4 == 0 else cyclic(4))
        if compute(d, 3).possible_groups() != (want,):
            bad.append(x)
    return not bad, f"24 cases, mismatches at x = {bad}"


def _eps_descriptor(n: int, eps: int) -> ManifoldDescriptor:
    if n == 2:
        attach = AttachingVector.build(2, (), x=[0], y=[eps])
        return ManifoldDescriptor(2, 1, 2, spin=not eps, attach=attach)
    return ManifoldDescriptor(n, 2, 1, TorsionGroup.of((3, 1)), spin=not eps, c=1)


def criterion_3():
    bad = []
    checked = 0
    for n, eps in itertools.product((2, 3, 4), (0, 1)):
        d = _eps_descriptor(n, eps)
        want = cyclic(2) if eps == 0 else FgAbGroup()
        stable = manifold_stable_range(d)
        for r in (compute(d, 2 * n + 1), stable[2 * n + 1]):
            checked += 1
            if r.possible_groups() != (want,):
                bad.append(f"π^{2 * n + 1} n={n} ε={eps}")
        if n >= 3:
            for r in (compute(d, 2 * n), stable[2 * n]):
                checked += 1
                if r.possible_groups() != (cyclic(2),):
                    bad.append(f"π^{2 * n} n={n}")
            ses = stable[2 * n - 1]
            checked += 1
            if not (isinstance(ses, Extension) and ses.split == "yes" and ses.quot == H(d, 2 * n - 1)):
                bad.append(f"π^{2 * n - 1} n={n}")
            checked += 1
            if not set(compute(d, 2 * n - 1).possible_groups()) <= set(ses.candidates()):
                bad.append(f"π^{2 * n - 1} engine n={n}")
    return not bad, f"{checked} checks, failures: {bad}"


def criterion_4():
    start = time.perf_counter()
    bad = []
    for x, u, w in itertools.product(range(24), range(3), range(3)):
        a = x + 8 * u + 8 * w
        formula = FgAbGroup.from_orders([math.gcd(24, a)])
        core = cokernel(GroupHom.of_cyclic([0], [24], [[a]]))
        if not (g24(x, u, w) == formula == core):
            bad.append((x, u, w))
    # and through the engine, on descriptors whose coefficients are already normal
    for x in range(24):
        for u, w in ((0, 0), (1, 0), (0, 1), (1, 1)):
            v = AttachingVector.build(3, (1,), x=[x], u=[u], w=[w])
            d = ManifoldDescriptor(3, 0, 1, TorsionGroup.of((3, 1)), attach=v)
            na = normalize(v)
            if compute(d, 5).possible_groups() != (H(d, 5) + g24_of(na),):
                bad.append(("engine", x, u, w))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 1.0, f"216 triples, {len(bad)} mismatches, {elapsed:.2f}s"


def criterion_5():
    rng = random.Random(5)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        d, u, v = smith_normal_form(a)
        diag = diagonal(d)
        ok = matmul(matmul(u, a), v) == d
        ok &= all(d[i][j] == 0 for i in range(r) for j in range(c) if i != j)
        ok &= all(x >= 0 for x in diag)
        ok &= all((diag[i + 1] % diag[i] == 0) if diag[i] else diag[i + 1] == 0 for i in range(len(diag) - 1))
        ok &= abs(determinant(u)) == 1 and abs(determinant(v)) == 1
        bad += not ok
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 5.0, f"500 matrices, {bad} failures, {elapsed:.2f}s"


def criterion_6():
    start = time.perf_counter()
    groups = [g for size in range(1, 65) for g in oracles.abelian_groups_of_order(size)]
    pairs = bad = 0
    for a, c in itertools.product(groups, repeat=2):
        size = 1
        for q in a + c:
            size *= q
        if size > 64:
            continue
        pairs += 1
        ours = middle_groups(FgAbGroup.from_orders(a), FgAbGroup.from_orders(c))
        ours = {oracles.prime_power_orders(g.cyclic_orders()) for g in ours}
        if ours != oracles.extension_middles(a, c):
            bad += 1
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 60.0, f"{pairs} (sub, quot) pairs, {bad} mismatches, {elapsed:.1f}s"


def criterion_7():
    start = time.perf_counter()
    rng = random.Random(7)
    idem_bad = orbit_bad = certified = 0
    for n in (2, 3, 4):
        for _ in range(1000):
            v = random_vector(rng, n, max_len=6)
            once = normalize(v).vector
            idem_bad += normalize(once).vector != once
        for _ in range(120):
            v = random_vector(rng, n, max_len=3)
            orb = orbit_oracle(v)
            nv = normalize(v).vector
            ok = nv in orb and nv == orb.canonical()
            for w in orb.sample(rng, 15):
                ok &= normalize(w).vector == nv
            orbit_bad += not ok
            certified += 1
    elapsed = time.perf_counter() - start
    ok = idem_bad == 0 and orbit_bad == 0 and elapsed < 120.0
    return ok, f"3000 idempotence checks ({idem_bad} bad), {certified} orbits certified ({orbit_bad} bad), {elapsed:.1f}s"


def criterion_8():
    rng = random.Random(8)
    bad = 0
    for n in (2, 3, 4):
        for _ in range(100):
            d = random_descriptor(rng, n)
            bad += bool(homology_check(suspension_splitting(d), d))
    return bad == 0, f"300 descriptors, {bad} homology mismatches"


def criterion_9():
    total = 0
    bad = []
    for n in (2, 3, 4):
        grid = _grid(n)
        if n == 2:
            for d in list(grid):
                if d.l - d.c >= 1:
                    attach = d.default_attach().with_blocks(y=[1] + [0] * (d.l - d.c - 1))
                    grid.append(d.with_(spin=False, attach=attach))
        for d in grid:
            total += 1
            problems = cross_check(d)
            if problems:
                bad.append((d.to_dict(), problems))
    return not bad, f"{total} descriptors, {len(bad)} disagreements"


def criterion_10():
    same = StableInput.build(
        4, 5, {(3, 0): [0], (3, 2): [2], (4, 0): [0], (5, 2): [2]}, {("sq2", 3): [[1]], ("rho2", 3): [[1]]}
    )
    proper = StableInput.build(4, 5, {(4, 0): [2], (3, 2): [2], (4, 2): [2], (5, 2): [2]}, {("sq2", 3): [[1]]})
    zero = StableInput.build(4, 5, {(4, 0): [0], (5, 2): [2]})
    a, b, c = taylor_pi_n(same), taylor_pi_n(proper), taylor_pi_n(zero)
    ok = a.split == "yes" and b.split == "no" and c.split == "yes"
    ok &= b.candidates() == (cyclic(4),) and c.candidates() == (FgAbGroup(1) + cyclic(2),)
    return ok, f"equal images -> {a.split}, proper subset -> {b.split}, zero maps -> {c.split}"


def criterion_11():
    bad = []
    for T in (TorsionGroup.of((3, 1)), TorsionGroup.of((5, 1)), TorsionGroup.of((3, 2), (7, 1))):
        d = ManifoldDescriptor(2, 0, 0, T)
        want = T.group() + cyclic(12)
        exact = compute(d, 3).possible_groups() == (want,)
        general = want in pi3_n2_extension(d).candidates()
        if not (exact and general):
            bad.append(str(T))
    return not bad, f"3 torsion groups, failures: {bad}"


CRITERIA = {
    1: ("closed form for π³ with n = 4", criterion_1),
    2: ("single 4-cell table", criterion_2),
    3: ("top stable-range values", criterion_3),
    4: ("G₂₄ coefficient formula", criterion_4),
    5: ("Smith normal form properties", criterion_5),
    6: ("extension enumeration oracle", criterion_6),
    7: ("canonicalizer", criterion_7),
    8: ("homology consistency", criterion_8),
    9: ("cross-engine consistency", criterion_9),
    10: ("split criterion", criterion_10),
    11: ("special-case collapse", criterion_11),
}


def _line(num: int, ok: bool, detail: str) -> str:
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {CRITERIA[num][0]} ({detail})"


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, capsys):
    ok, detail = CRITERIA[num][1]()
    with capsys.disabled():
        print("\n" + _line(num, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num in sorted(CRITERIA):
        ok, detail = CRITERIA[num][1]()
        results.append(ok)
        print(_line(num, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
