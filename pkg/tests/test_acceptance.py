"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import time
from collections import Counter
from itertools import product


import oracles as O
from acceptance_log import report
from spindual.blocks import (
    BlockError,
    build_block,
    dual_block_of,
    fixture_table_matches,
    klv_matrices,
    load_golden,
    verify_duality,
    verify_intertwining,
)
from spindual.gradings import ImGrading, RealForm, dual_group, parse_grading
from spindual.korbits import enumerate_fiber, fiber_order
from spindual.mlattice import count_genuine_exts
from spindual.params import (
    canonical_rep,
    dual_form_of,
    enumerate_params,
    param_count,
    param_count_chi,
    params_over,
    principal_class,
)
from spindual.weylb import (
    InfChar,
    Involution,
    class_size,
    conjugacy_invariants,
    dualize_involution,
    identity,
    list_involutions,
    num_conjugacy_classes,
    stats,
)

LAM = InfChar.parse("3/2,1")


def oracle_theta(th):
    return tuple(((-1) ** th.bits[th.perm[i]], th.perm[i]) for i in range(th.n))


def gradings(th):
    imag = th.imaginary_coords
    for mask in range(1 << len(imag)):
        yield ImGrading(th, frozenset(imag[i] for i in range(len(imag)) if mask >> i & 1))


def lambdas(n):
    return [canonical_rep(p) for p in product((0, 1), repeat=n)]


def forms(n):
    return [RealForm(p, 2 * n + 1 - p) for p in range(n + 1, 2 * n + 1)]


def gate(number, title, budget, fn):
    """Run ``fn`` (returning a list of failure messages), report and assert."""
    t0 = time.perf_counter()
    failures = fn()
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        failures = failures + [f"took {dt:.2f}s, budget {budget}s"]
    report(number, title, not failures, dt, "; ".join(failures[:3]))
    assert not failures, failures[:10]


def test_criterion_1_block_reproduction():
    def run():
        bad = []
        ps = enumerate_params(3, 2, LAM, 1)
        if len(ps) != 9:
            bad.append(f"{len(ps)} parameters")
        if sorted(g.length for g in ps) != [0, 0, 1, 1, 1, 2, 2, 3, 3]:
            bad.append("length multiset")
        if {(dual_group(g.bigrading).p, dual_group(g.bigrading).q) for g in ps} != {(3, 2)}:
            bad.append("dual group")
        return bad

    gate(1, "Spin(3,2) block reproduction", 1.0, run)


def test_criterion_2_structure_tables():
    def run():
        fx = load_golden("spin32_block")
        block = build_block(3, 2, LAM, 1)
        dual = dual_block_of(block)
        bad = []
        for b, side in ((block, "block"), (dual, "dual_block")):
            rep = fixture_table_matches(b, fx.data[side], fx.data["columns"])
            bad += rep.violations
            if rep.checks != 36:
                bad.append(f"{side}: {rep.checks} checks")
        return bad

    gate(2, "structure tables of B and B'", 1.0, run)


def test_criterion_3_duality_identity():
    def run():
        block = build_block(3, 2, LAM, 1)
        dual = dual_block_of(block)
        # each block carries an inverse pair built from one golden matrix; check() tests m M = I
        mats, dmats = klv_matrices(block), klv_matrices(dual)
        bad = mats.check(block.lengths) + dmats.check(dual.lengths)
        bad += verify_duality(block, dual, mats, dmats).violations
        return bad

    gate(3, "m M = I and signed antitranspose identity", None, run)


def test_criterion_4_spin54_fiber():
    def run():
        fib = load_golden("spin54_fiber")
        th = Involution.of(identity(4))
        table = enumerate_fiber(th, parse_grading(th, "+ + ⊕ ⊕"))
        bad = []
        if len(table) != 12:
            bad.append(f"{len(table)} orbits")
        counts = Counter(r.grading for r in table.rows)
        if len(counts) != 6 or set(counts.values()) != {2}:
            bad.append("grading multiplicities")
        pos = [table.index_of(tuple(r[0])) for r in fib.rows]
        if sorted(pos) != list(range(12)):
            bad.append("row matching")
        for k, (_, grading, imgs) in enumerate(fib.rows):
            row = table.rows[pos[k]]
            if row.grading != parse_grading(th, grading):
                bad.append(f"row {k} grading")
            if list(row.images) != [pos[i] for i in imgs]:
                bad.append(f"row {k} images")
        return bad

    gate(4, "Spin(5,4) fiber over the identity", 1.0, run)


def test_criterion_5_counting_oracles():
    def run():
        bad = []
        for n in (2, 4):
            invs = list_involutions(n)
            oracle_invs = set(O.involutions(n))
            if {oracle_theta(t) for t in invs} != oracle_invs:
                bad.append(f"n={n}: involution set")
            classes = Counter(conjugacy_invariants(t) for t in invs)
            if sum(class_size(n, *k) for k in classes) != len(invs):
                bad.append(f"n={n}: total vs class sizes")
            if any(class_size(n, *k) != v for k, v in classes.items()):
                bad.append(f"n={n}: class sizes")
            if num_conjugacy_classes(n) != len(O.conjugacy_classes(n)):
                bad.append(f"n={n}: class count")
            for th in invs:
                ot = oracle_theta(th)
                if count_genuine_exts(th) != O.genuine_ext_count(ot):
                    bad.append(f"genuine exts {th}")
                for eps in gradings(th):
                    size = O.fiber_size(ot, eps.noncompact)
                    if not size == len(enumerate_fiber(th, eps)) == fiber_order(th, eps):
                        bad.append(f"fiber {th} {eps.render()}")
            for lam in lambdas(n):
                for th in invs:
                    for form in forms(n):
                        total = params_over(th, form, lam)
                        if total and len(total) != param_count(th, lam):
                            bad.append(f"|P_theta| {th} {form} {lam}")
                        for chi in (1, -1):
                            k = len(params_over(th, form, lam, chi))
                            if k not in (0, param_count_chi(th)):
                                bad.append(f"|P_theta,chi| {th} {form} {lam} {chi}")
        return bad

    gate(5, "counting formulas vs brute-force oracles (n=2,4)", 10.0, run)


def test_criterion_6_numerical_duality():
    def run():
        bad = []
        for n in (2, 4):
            for lam in lambdas(n):
                for th in list_involutions(n):
                    for form in forms(n):
                        for chi in (1, -1):
                            ps = params_over(th, form, lam, chi)
                            if not ps:
                                continue
                            dual = params_over(dualize_involution(th), dual_form_of(ps[0]), lam, -chi)
                            if len(dual) != len(ps):
                                bad.append(f"{th} {form} {lam} chi={chi}: {len(ps)} vs {len(dual)}")
        return bad

    gate(6, "numerical duality of slices (n=2,4)", 10.0, run)


N4_SAMPLES = ["5/2,2,3/2,1", "7/2,5/2,3/2,1/2", "4,3,2,1", "3,5/2,2,1/2", "7/2,3,3/2,1", "5/2,2,1,1/2"]


def test_criterion_7_intertwining():
    def run():
        bad = []
        checks = 0
        block = build_block(3, 2, LAM, 1)
        dual = dual_block_of(block)
        for a, b in ((block, dual), (dual, block)):
            rep = verify_intertwining(a, b)
            bad += rep.violations
            checks += rep.checks
        for text in N4_SAMPLES:
            lam = InfChar.parse(text)
            for form in forms(4):
                for chi in (1, -1):
                    try:
                        blk = build_block(form.p, form.q, lam, chi)
                    except BlockError:
                        continue
                    rep = verify_intertwining(blk, dual_block_of(blk))
                    bad += rep.violations
                    checks += rep.checks
        if checks < 1000:
            bad.append(f"only {checks} checks")
        return bad

    gate(7, "psi intertwines cross, extended cross and Cayley", 60.0, run)


def test_criterion_8_principal_class_bijectivity():
    def run():
        bad = []
        slices = 0
        for n in (2, 4):
            for lam in lambdas(n):
                for th in list_involutions(n):
                    if not stats(th).even_parity:
                        continue
                    for form in forms(n):
                        for chi in (1, -1):
                            ps = params_over(th, form, lam, chi)
                            if not ps:
                                continue
                            slices += 1
                            labels = [principal_class(g) for g in ps]
                            if len(set(labels)) != len(labels) or len(ps) > 2:
                                bad.append(f"{th} {form} {lam} chi={chi}")
        if not slices:
            bad.append("no even-parity slices")
        return bad

    gate(8, "principal class map injective on even-parity slices", None, run)
