"""The structural acceptance suite.

Fourteen criteria, each checked exactly (no tolerances: everything in
this domain is integer arithmetic).  One line per criterion is printed
on success; a pytest failure is the fail line.  The desk-scale grid is
(2,2,1), (2,3,1), (2,3,2), (3,2,1), (2,4,2).
"""

import pytest

from glsemi.errors import InfeasibleError
from glsemi.gf_linalg import (
    enumerate_complements,
    gl_order,
    identity_mat,
    image,
    is_complement,
    kernel,
    mat_inverse,
    mat_mul,
)
from glsemi.gl_restriction import (
    FIX_U,
    FIX_W,
    G_W,
    N_W,
    _profiles,
    codim,
    dclass_witness,
    decompose_fix_u,
    decompose_unit,
    enumerate_semigroup,
    factor_through,
    generating_set,
    green_char_partitions,
    j_class,
    j_class_count_report,
    make_instance,
    minimal_idempotents,
    nonnormality_example,
    predicted_order,
    q_ideal,
    raise_factor,
    rank_value,
    regular_witness,
    sandwich_factor,
    special_subgroup,
    subgroup_iso_check,
    unit_group_subtable,
)
from glsemi.isomorphism import decide_isomorphic
from glsemi.semigroup_core import (
    closure_indices,
    minimal_idempotents_oracle,
    principal_ideal,
    rank_search,
    verify_ideal,
)

from helpers import brute_members, naive_span

GRID = ((2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 2))
EXPECTED_ORDERS = {(2, 2, 1): 4, (2, 3, 1): 64, (2, 3, 2): 48, (3, 2, 1): 18, (2, 4, 2): 1536}
INSTANCES = {args: make_instance(*args) for args in GRID}


def _ok(label, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {label}: PASS{suffix}")


def _q_index_set(inst, table, k):
    profs = _profiles(inst)
    return frozenset(i for i in range(len(table)) if profs[i][2] < k)


def test_c01_order_law():
    for args, inst in INSTANCES.items():
        p, n, r = args
        table = enumerate_semigroup(inst)
        formula = gl_order(p, r) * p ** (n * (n - r))
        assert len(table) == EXPECTED_ORDERS[args] == formula == predicted_order(inst)
        filtered = brute_members(p, n, naive_span(p, n, inst.u.basis))
        assert sorted(filtered) == sorted(table.elements)
    _ok("1 order law", "orders 4/64/48/18/1536, brute filter agrees")


def test_c02_complement_count():
    expected = {(2, 2, 1): 2, (2, 3, 1): 4, (2, 3, 2): 4, (3, 2, 1): 3, (2, 4, 2): 16}
    for args, inst in INSTANCES.items():
        p, n, r = args
        comps = enumerate_complements(inst.u)
        assert len(comps) == expected[args] == p ** (r * (n - r))
        assert len(set(comps)) == len(comps)
        for w in comps:
            assert is_complement(w, inst.u)
    _ok("2 complement count", "p^(r(n-r)) on all five instances")


def test_c03_green_agreement():
    for args, inst in INSTANCES.items():
        table = enumerate_semigroup(inst)
        oracle = table.green()
        char = green_char_partitions(inst)
        for relation in ("l", "r", "h", "d", "j"):
            assert getattr(oracle, relation) == getattr(char, relation), (args, relation)
        assert oracle.d == oracle.j
    _ok("3 Green agreement", "all five relations, all five instances; D = J")


def test_c04_ideal_structure():
    for args, inst in INSTANCES.items():
        table = enumerate_semigroup(inst)
        profs = _profiles(inst)
        top = inst.n - inst.r
        for k in range(1, top + 1):
            assert verify_ideal(table, _q_index_set(inst, table, k)), (args, k)
        if len(table) <= 100:
            reps = range(len(table))
        else:
            by_image = {}
            for i, prof in enumerate(profs):
                by_image.setdefault(prof[0], i)
            reps = sorted(by_image.values())
        for i in reps:
            cd = profs[i][2]
            if cd == top:
                assert principal_ideal(table, i) == frozenset(range(len(table)))
            else:
                assert principal_ideal(table, i) == _q_index_set(inst, table, cd + 1), (args, i)
        minimal = _q_index_set(inst, table, 1)
        assert minimal == {table.index_of(m) for m in j_class(inst, 0)}
        assert j_class(inst, 0) == q_ideal(inst, 1)
        for i in minimal:
            img, ker, _ = profs[i]
            assert img == inst.u
            assert is_complement(ker, inst.u)
    _ok("4 ideal structure", "Q(k) chain, principal ideals, minimal ideal split")


def test_c05_minimal_idempotents():
    for args, inst in INSTANCES.items():
        p, n, r = args
        table = enumerate_semigroup(inst)
        char = minimal_idempotents(inst)
        oracle = frozenset(table.elements[i] for i in minimal_idempotents_oracle(table))
        assert char == oracle, args
        assert len(char) == p ** (r * (n - r)), args
    _ok("5 minimal idempotents", "characterization = oracle, count = p^(r(n-r))")


def test_c06_regularity():
    total = 0
    for args, inst in INSTANCES.items():
        p = inst.p
        for m in enumerate_semigroup(inst).elements:
            witness = regular_witness(inst, m)
            assert mat_mul(p, mat_mul(p, m, witness), m) == m
            total += 1
    assert total == sum(EXPECTED_ORDERS.values())
    _ok("6 regularity", f"{total} members, 100% recomposed exactly")


def test_c07_constructive_factorizations():
    counts = {"factor": 0, "witness": 0, "raise": 0, "sandwich": 0}
    for args in ((2, 3, 1), (2, 3, 2)):
        inst = INSTANCES[args]
        p = inst.p
        table = enumerate_semigroup(inst)
        elems = table.elements
        cd = {m: codim(inst, m) for m in elems}
        top = inst.n - inst.r
        for a in elems:
            for b in elems:
                if cd[a] <= cd[b]:
                    lam, mu = factor_through(inst, a, b)
                    assert mat_mul(p, mat_mul(p, lam, b), mu) == a
                    counts["factor"] += 1
                else:
                    with pytest.raises(InfeasibleError):
                        factor_through(inst, a, b)
                if cd[a] == cd[b]:
                    gamma = dclass_witness(inst, a, b)
                    assert image(p, gamma) == image(p, a)
                    assert kernel(p, gamma) == kernel(p, b)
                    counts["witness"] += 1
        for a in elems:
            if cd[a] <= top - 2:
                lam, mu = raise_factor(inst, a)
                assert mat_mul(p, lam, mu) == a
                assert cd.get(lam, codim(inst, lam)) == cd[a] + 1
                assert codim(inst, mu) == cd[a] + 1
                counts["raise"] += 1
        mid = [m for m in elems if cd[m] == top - 1]
        for a in mid:
            for b in mid:
                lam, mu = sandwich_factor(inst, b, a)
                assert mat_mul(p, mat_mul(p, lam, a), mu) == b
                assert cd.get(lam, codim(inst, lam)) == top
                assert codim(inst, mu) == top
                counts["sandwich"] += 1
    _ok("7 constructive factorizations", str(counts))


def test_c08_generation():
    for args in ((2, 3, 1), (2, 3, 2), (3, 2, 1)):
        inst = INSTANCES[args]
        table = enumerate_semigroup(inst)
        top = inst.n - inst.r
        gens = [table.index_of(m) for m in generating_set(inst)]
        assert closure_indices(table, gens) == frozenset(range(len(table))), args
        for k in range(1, top):
            grade = [table.index_of(m) for m in j_class(inst, k)]
            expected = {table.index_of(m) for m in q_ideal(inst, k + 1)}
            assert closure_indices(table, grade) == expected, (args, k)
    _ok("8 generation", "units + one lower element generate; each grade covers its ideal")


def test_c09_rank_identity():
    for args, expected in (((2, 2, 1), 2), ((3, 2, 1), None)):
        inst = INSTANCES[args]
        table = enumerate_semigroup(inst)
        units = unit_group_subtable(inst)
        group_rank = rank_search(units, range(len(units)), 4)
        assert group_rank is not None
        via_units = group_rank[0] + 1
        exhaustive = rank_search(table, range(len(table)), 4)
        assert exhaustive is not None
        assert exhaustive[0] == via_units == rank_value(inst), args
        if expected is not None:
            assert via_units == expected
    _ok("9 rank identity", "exhaustive sweep equals unit-group rank + 1; (2,2,1) -> 2")


def test_c10_unit_group_decomposition():
    for args in ((2, 3, 1), (2, 3, 2)):
        inst = INSTANCES[args]
        p = inst.p
        ident = identity_mat(inst.n)
        units = sorted(j_class(inst, inst.n - inst.r))
        fix_u = sorted(special_subgroup(inst, FIX_U))
        for g in units:
            g_inv = mat_inverse(p, g)
            for h in fix_u:
                assert mat_mul(p, mat_mul(p, g, h), g_inv) in set(fix_u), args
        for w in enumerate_complements(inst.u):
            fix_w = sorted(special_subgroup(inst, FIX_W, w))
            assert len(units) == len(fix_w) * len(fix_u), args
            assert set(fix_w) & set(fix_u) == {ident}
            for a in units:
                first, second = decompose_unit(inst, a, w)
                assert mat_mul(p, first, second) == a
                assert first in set(fix_w) and second in set(fix_u)
                matches = sum(
                    1 for x in fix_w for y in fix_u if mat_mul(p, x, y) == a
                )
                assert matches == 1, "decomposition must be unique"
            n_w = set(special_subgroup(inst, N_W, w))
            g_w = set(special_subgroup(inst, G_W, w))
            assert g_w & n_w == {ident}
            for a in fix_u:
                stab, trans = decompose_fix_u(inst, a, w)
                assert mat_mul(p, stab, trans) == a
                assert stab in g_w and trans in n_w
                matches = sum(1 for x in g_w for y in n_w if mat_mul(p, x, y) == a)
                assert matches == 1
    _ok("10 unit-group decomposition", "orders split, factors unique, Fix(U) conjugation-closed")


def test_c11_subgroup_isomorphisms():
    checked = 0
    for args in ((2, 3, 1), (2, 3, 2), (3, 2, 1)):
        inst = INSTANCES[args]
        for w in enumerate_complements(inst.u):
            for kind in (FIX_W, G_W, N_W):
                assert subgroup_iso_check(inst, kind, w), (args, kind)
                checked += 1
    _ok("11 subgroup isomorphisms", f"{checked} full multiplication-table checks")


def test_c12_nonnormality_reproduction():
    from glsemi.gf_linalg import vec_mat

    rep = nonnormality_example(3, "fix_w_in_units")
    assert rep.escaped
    assert vec_mat(3, (0, 0, 1), rep.conjugate) == (2, 1, 1)  # w - u1 + u2
    assert rep.conjugated_complement != rep.complement
    rep = nonnormality_example(3, "g_w_in_fix_u")
    assert rep.escaped
    assert vec_mat(3, (0, 1, 0), rep.conjugate) == (1, 0, 1)  # w1 + u after swap
    assert vec_mat(3, (0, 0, 1), rep.conjugate) == (2, 1, 0)  # w2 - u after swap
    assert rep.conjugated_complement != rep.complement
    for p in (2, 3):
        for case in ("fix_w_in_units", "g_w_in_fix_u"):
            assert nonnormality_example(p, case).escaped
    _ok("12 nonnormality witnesses", "conjugates leave Fix(W) and G(W); GF(3) vectors match")


def test_c13_isomorphism_theorem():
    i1 = INSTANCES[(2, 3, 1)]
    i2 = make_instance(2, 3, 1, [(1, 1, 0)])
    witness = decide_isomorphic(i1, i2)
    assert witness is not None and witness.psi is not None
    t1, t2 = enumerate_semigroup(i1), enumerate_semigroup(i2)
    psi = witness.psi
    pairs = 0
    for a in range(len(t1)):
        for b in range(len(t1)):
            assert psi[t1.mul[a][b]] == t2.mul[psi[a]][psi[b]]
            pairs += 1
    assert pairs == 64 * 64
    assert decide_isomorphic(i1, INSTANCES[(2, 3, 2)]) is None
    _ok("13 isomorphism theorem", "4096 product pairs verified; (2,3,1) vs (2,3,2) refused")


def test_c14_j_class_count_flag():
    for args in ((2, 2, 1), (2, 3, 1)):
        inst = INSTANCES[args]
        report = j_class_count_report(inst)
        observed = len(enumerate_semigroup(inst).green().j)
        assert report["observed"] == observed == inst.n - inst.r + 1
        assert report["flagged"] == (report["observed"] != report["quotient_dim"])
        assert report["flagged"]
    _ok("14 J-class count flag", "observed n-r+1 classes; discrepancy flag fires")
