"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Everything is exact; there are no tolerances anywhere.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import dim_equal_search, leibniz_det  # noqa: E402
from sftkit import (DimElement, IntMatrix, SeCertificate, SearchLimits, apply_outsplit,  # noqa: E402
                    balanced_to_unital_se, bowen_franks, boyle_pse_identity, char_poly,
                    check_commuting_square, conjugate_higher_powers, dim_elem_equal,
                    one_sided_conjugate, permutation_equivalent, search_balanced_path,
                    smith_normal_form, total_amalgamation, unital_condition, verify_move_sequence,
                    verify_se)
from sftkit.cli import run_command  # noqa: E402
from sftkit.corpus import (ak_bk, ashley_gates, ashley_matrix, build_corpus, kim_roush,  # noqa: E402
                           rourke, rourke_chain)
from sftkit.equivalence import sequence_certificate  # noqa: E402

M = IntMatrix
A1 = M([[2, 0, 4], [1, 2, 0], [1, 2, 0]])
CASES = 200
SEARCH_BUDGET = 1.0  # seconds per short search


# -- criteria ----------------------------------------------------------------

def criterion_1():
    code, report = run_command(["corpus", "--verify"])
    assert code == 0, report["failures"]
    return f"{report['checked']} corpus checks"


def criterion_2():
    a = ashley_matrix()
    gates = ashley_gates(a)
    assert all(gates.values()), gates
    cert = SeCertificate(a, M([[2]]), M.ones(8, 1) * 16, M.ones(1, 8), 7)
    assert verify_se(cert)
    verdict = unital_condition(cert).to_json()
    assert verdict == {"outcome": "yes", "m": 0, "k": 7}, verdict
    return "gates ok, lag-7 certificate unital Yes(0,7)"


def criterion_3():
    bad = []
    for k in (3, 4, 5):
        a, b, p, cert = ak_bk(k, 3)
        assert cert.lag == 7, f"k={k}: lag {cert.lag}"
        chk = verify_se(cert)
        if not chk:
            bad.append(f"k={k}: {'; '.join(chk.failures)} (R={cert.r.tolist()})")
            continue
        verdict = unital_condition(cert).to_json()
        if verdict != {"outcome": "yes", "m": 0, "k": 2}:
            bad.append(f"k={k}: unital {verdict}")
    _, _, _, c3 = ak_bk(3, 3)
    # hand computation: P3^-1 = [[-1,3],[1,-2]], B3^3 = [[19,54],[9,19]]
    assert M([[-1, 3], [1, -2]]) @ M([[19, 54], [9, 19]]) == M([[8, 3], [1, 16]])
    assert c3.r == M([[8, 3], [1, 16]]), f"k=3 R = {c3.r.tolist()}"
    assert c3.s == M([[314, 387], [129, 157]]), f"k=3 S = {c3.s.tolist()}"
    assert not bad, bad
    return "k=3,4,5 verified at j=3"


def criterion_4():
    ok, rep = conjugate_higher_powers(A1, M([[4]]))
    assert ok
    for m in (3, 4):
        assert total_amalgamation(A1 ** m)[0] == M([[4 ** m]])
    bc = build_corpus()["brix_carlsen"].matrices
    assert conjugate_higher_powers(bc["A"], bc["B"])[0] is False
    assert one_sided_conjugate(A1, M([[4]]))[0] is False
    return "A1 ~ (4) on higher powers only; Brix-Carlsen pair separated"


def criterion_5():
    r = rourke()
    assert r["S0"] @ r["R0"] == r["B"] and r["R0"] @ r["S0"] == r["B'"]
    chain = rourke_chain()
    assert verify_move_sequence(chain) and chain.start == r["B"] and chain.end == r["A"]
    for n in range(2, 8):
        total = total_amalgamation(r["B"] ** n)[0]
        w = permutation_equivalent(total, r["A"] ** n)
        assert w is not None and w.apply(total) == r["A"] ** n, n
    assert conjugate_higher_powers(r["A"], r["B"])[0]
    cert = balanced_to_unital_se(r["B'"], r["B''"], r["S1'"], r["R1'"], r["R1''"])
    assert cert.lag == 2 and verify_se(cert)
    assert unital_condition(cert).to_json() == {"outcome": "yes", "m": 0, "k": 1}
    return f"chain of {len(chain)} moves replays; totals match for n=2..7"


def criterion_6():
    entry = build_corpus()["zhalf"]
    cert = entry.certificates["A->C"]
    assert (cert.r, cert.s, cert.lag) == (M([[1, 1, 2]]), M([[1], [1], [1]]), 2)
    assert cert.a == M([[2]]) and cert.b == M([[1, 0, 1], [1, 0, 1], [0, 1, 1]])
    assert verify_se(cert)
    verdict = unital_condition(cert)
    assert verdict.outcome == "no" and verdict.reason
    return f"No: {verdict.reason}"


def criterion_7():
    a, b = kim_roush()
    bfs = {}
    for name, m in (("A", a), ("B", b)):
        pair = [bowen_franks(m, pivot) for pivot in ("smallest", "first")]
        # the two pivot orders must agree before anything is compared across matrices
        assert pair[0].invariant_factors == pair[1].invariant_factors, name
        assert pair[0].sign == pair[1].sign, name
        bfs[name] = pair[0]
    fa, fb = bfs["A"].invariant_factors, bfs["B"].invariant_factors
    sa, sb = bfs["A"].sign, bfs["B"].sign
    pa, pb = char_poly(a).strip_x(), char_poly(b).strip_x()
    problems = []
    if fa != fb:
        problems.append(f"factors {fa} vs {fb}")
    if sa != sb:
        problems.append(f"sign {sa} vs {sb}")
    if pa != pb:
        problems.append(f"char polys mod x: {pa} vs {pb}")
    assert not problems, problems
    return f"factors {fa}, sign {sa}"


def criterion_8():
    one = M([[1]])
    rep = boyle_pse_identity(one, one, SeCertificate(one, one, one, one, 1))
    # diag(I - A'^t, I) = diag(0, 1) is carried to diag(I, I - B'^t) = diag(1, 0)
    assert rep.holds and rep.product_ok
    assert rep.u_prime @ M([[0, 0], [0, 1]]) @ rep.v_prime == M([[1, 0], [0, 0]])
    ash = SeCertificate(ashley_matrix(), M([[2]]), M.ones(8, 1) * 16, M.ones(1, 8), 7)
    for label, cert in (("A3/B3", ak_bk(3, 3)[3]), ("Ashley", ash)):
        rep = boyle_pse_identity(cert.a, cert.b, cert)
        assert rep.holds, label
        assert rep.decomposition_ok and rep.swap_decomposition_ok, label
    return "1x1, A3/B3 and Ashley"


# -- criterion 9: seeded property loops --------------------------------------

def _rand_matrix(rng, n, cols=None, lo=0, hi=4, no_zero_rows=False):
    cols = n if cols is None else cols
    while True:
        m = M([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(n)])
        if not no_zero_rows or all(any(r) for r in m.iter_rows()):
            return m


def _rand_outsplit(rng, a, max_size=5):
    """Split random rows of ``a`` into two nonzero parts, staying within ``max_size``."""
    spec, size = [], a.rows
    for row in a.iter_rows():
        if size < max_size and sum(row) >= 2 and rng.random() < 0.5:
            while True:
                first = tuple(rng.randint(0, x) for x in row)
                second = tuple(x - y for x, y in zip(row, first))
                if any(first) and any(second):
                    break
            spec.append([first, second])
            size += 1
        else:
            spec.append([tuple(row)])
    return apply_outsplit(a, spec)


def _outsplit_cert(rng, max_base=3):
    a = _rand_matrix(rng, rng.randint(1, max_base), no_zero_rows=True)
    b, d, e = _rand_outsplit(rng, a)
    return SeCertificate(a, b, d, e, 1)


def _prop_snf(rng):
    for _ in range(CASES):
        m = _rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), lo=-4, hi=4)
        for pivot in ("smallest", "first"):
            snf = smith_normal_form(m, pivot)
            assert snf.left @ m @ snf.right == snf.diagonal_matrix()
            assert abs(leibniz_det(snf.left)) == 1 and abs(leibniz_det(snf.right)) == 1


def _prop_cayley_hamilton(rng):
    for _ in range(CASES):
        a = _rand_matrix(rng, rng.randint(1, 5), lo=-4, hi=4)
        assert char_poly(a).evaluate_matrix(a).is_zero()


def _prop_dim_equal(rng):
    for _ in range(CASES):
        a = _rand_matrix(rng, rng.randint(1, 5))
        n = a.rows
        xs = []
        for _ in range(3):
            if xs and rng.random() < 0.5:
                prev, j = xs[-1], rng.randint(0, 3)
                vec = list(prev.vec)
                for _ in range(j):
                    vec = [sum(a[r, c] * vec[r] for r in range(n)) for c in range(n)]
                xs.append(DimElement(a, tuple(vec), prev.stage + j))
            else:
                xs.append(DimElement(a, tuple(rng.randint(-3, 3) for _ in range(n)),
                                     rng.randint(0, 4)))
        x, y, z = xs
        assert dim_elem_equal(x, x)
        assert dim_elem_equal(x, y) == dim_elem_equal(y, x)
        if dim_elem_equal(x, y) and dim_elem_equal(y, z):
            assert dim_elem_equal(x, z)
        for p, q in ((x, y), (y, z), (x, z)):
            assert dim_elem_equal(p, q) == dim_equal_search(a, p.vec, p.stage, q.vec, q.stage, 2 * n)


def _prop_outsplit_unital(rng):
    for _ in range(CASES):
        cert = _outsplit_cert(rng)
        assert verify_se(cert)
        assert unital_condition(cert).to_json() == {"outcome": "yes", "m": 0, "k": 0}


def _prop_composition(rng):
    for _ in range(CASES):
        first = _outsplit_cert(rng, max_base=2)
        c, d, e = _rand_outsplit(rng, first.b)
        both = first.then(SeCertificate(first.b, c, d, e, 1))
        assert both.lag == 2 and verify_se(both)
        assert verify_se(both.reversed())


def _prop_commuting_square(rng):
    for _ in range(CASES):
        cert = _outsplit_cert(rng)
        if rng.random() < 0.5:
            cert = cert.then(SeCertificate(cert.b, *_rand_outsplit(rng, cert.b), 1))
        assert check_commuting_square(cert.r, cert.a, cert.b)[0]
        assert check_commuting_square(cert.s, cert.b, cert.a)[0]


PROPERTIES = {
    "SNF reconstruction/unimodularity": _prop_snf,
    "Cayley-Hamilton": _prop_cayley_hamilton,
    "dim equality vs l-search": _prop_dim_equal,
    "outsplits unital Yes(0,0)": _prop_outsplit_unital,
    "composition closes": _prop_composition,
    "commuting square": _prop_commuting_square,
}


def criterion_9():
    for seed, (name, prop) in enumerate(PROPERTIES.items()):
        try:
            prop(random.Random(seed))
        except AssertionError as exc:
            raise AssertionError(f"{name}: {exc}") from exc
    return f"{len(PROPERTIES)} suites x {CASES} cases"


# -- criterion 10 ------------------------------------------------------------

def _timed_search(a, b, limits=None):
    t0 = time.perf_counter()
    res = search_balanced_path(a, b, limits)
    return res, time.perf_counter() - t0


def criterion_10():
    r = rourke()
    cases = [("J -> (2)", M([[1, 1], [1, 1]]), M([[2]]), None),
             ("B'' -> A", r["B''"], r["A"], SearchLimits.for_pair(r["B''"], r["A"], max_depth=4))]
    notes = []
    for label, a, b, limits in cases:
        res, dt = _timed_search(a, b, limits)
        assert res, label
        assert dt < SEARCH_BUDGET, f"{label} took {dt:.2f}s"
        assert verify_move_sequence(res.path), label
        cert = sequence_certificate(res.path)
        assert verify_se(cert), label
        verdict = unital_condition(cert)
        assert verdict.outcome == "yes" and verdict.m == 0, (label, verdict)
        if label == "J -> (2)":
            assert len(res.path) == 1, "expected a single out-amalgamation"
        notes.append(f"{label}: {len(res.path)} step(s) in {dt:.3f}s")
    # not required: the full A <-> B rediscovery
    res, dt = _timed_search(r["A"], r["B"])
    notes.append(f"A <-> B: {res.status} after {res.nodes} nodes in {dt:.2f}s")
    return "; ".join(notes)


CRITERIA = {
    1: ("corpus verification", criterion_1),
    2: ("Ashley gates and unital lag 7", criterion_2),
    3: ("A_k/B_k family at j=3", criterion_3),
    4: ("higher powers vs one-sided conjugacy", criterion_4),
    5: ("Rourke chain and totals", criterion_5),
    6: ("Z[1/2] chain not unital", criterion_6),
    7: ("Kim-Roush invariants agree", criterion_7),
    8: ("Boyle identity", criterion_8),
    9: ("property suites", criterion_9),
    10: ("search", criterion_10),
}


def run_criterion(n):
    """Run criterion ``n``; return (passed, line)."""
    title, fn = CRITERIA[n]
    try:
        detail = fn()
    except AssertionError as exc:
        return False, f"FAIL criterion {n}: {title} -- {exc}"
    return True, f"PASS criterion {n}: {title} -- {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
