"""Worked examples with their expected verdicts.

Each entry stores matrices, shift equivalence certificates, move sequences
and a table of named probes with the value each must produce. Run
``verify_corpus()`` (or ``sft corpus --verify``) to replay all of them.

Notes
-----
* Ashley's graph has eight vertices, each with two outgoing and two
  incoming edges, and loops at two vertices. The edge list is only accepted
  if it passes the three gates in ``ashley_gates``.
* Rourke's chain: the first move is the outsplit B = S0 R0 -> B' = R0 S0,
  which reproduces B' entry for entry. The last leg is the total
  amalgamation of B'', relabelled onto A.
* Kim-Roush: no lag-13 R and S are stored, so that entry only records
  invariants. The stored pair has different invariants, so at least one
  of the two matrices is not the intended one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .conjugacy import conjugate_higher_powers, one_sided_conjugate, permutation_equivalent
from .dimension import bowen_franks
from .equivalence import SeCertificate, balanced_to_unital_se, unital_condition, verify_se
from .matrix import IntMatrix
from .moves import (MoveSequence, balanced_move, outsplit_move, permutation_move,
                    total_amalgamation, verify_move_sequence)
from .poly import IntPolynomial, char_poly

M = IntMatrix


@dataclass
class CorpusEntry:
    name: str
    matrices: dict[str, IntMatrix]
    certificates: dict[str, SeCertificate] = field(default_factory=dict)
    sequences: dict[str, MoveSequence] = field(default_factory=dict)
    expected: dict[str, object] = field(default_factory=dict)
    probes: dict[str, Callable[[], object]] = field(default_factory=dict, repr=False)
    notes: str = ""

    def expect(self, label: str, probe: Callable[[], object], value: object) -> None:
        self.probes[label] = probe
        self.expected[label] = value


def _yes(m: int, k: int) -> dict:
    return {"outcome": "yes", "m": m, "k": k}


# -- the Z[1/2] chain --------------------------------------------------------

def _zhalf() -> CorpusEntry:
    two = M([[2]])
    b = M([[1, 1], [1, 1]])
    c = M([[1, 0, 1], [1, 0, 1], [0, 1, 1]])
    ab = SeCertificate(two, b, M([[1, 1]]), M([[1], [1]]), 1)
    bc = SeCertificate(b, c, M([[1, 0, 1], [0, 1, 1]]), M([[1, 0], [1, 0], [0, 1]]), 1)
    e = CorpusEntry("zhalf", {"A": two, "B": b, "C": c},
                    {"A->B": ab, "B->C": bc, "A->C": ab.then(bc)},
                    notes="(2), its outsplit [[1,1],[1,1]] and the insplit C")
    e.expect("unital A->B", lambda: unital_condition(ab).to_json(), _yes(0, 0))
    e.expect("unital B->C", lambda: unital_condition(bc).outcome, "no")
    e.expect("unital A->C", lambda: unital_condition(e.certificates["A->C"]).outcome, "no")
    e.expect("A->C composed", lambda: (e.certificates["A->C"].r, e.certificates["A->C"].s),
             (M([[1, 1, 2]]), M([[1], [1], [1]])))
    e.expect("one-sided A~B", lambda: one_sided_conjugate(two, b)[0], True)
    return e


# -- A_k / B_k family --------------------------------------------------------

def ak_bk(k: int, j: int = 3) -> tuple[IntMatrix, IntMatrix, IntMatrix, SeCertificate]:
    """(A_k, B_k, P_k, certificate) with R = P^-1 B^j, S = B P A^j, lag 2j + 1."""
    a = M([[1, k], [k - 1, 1]])
    b = M([[1, (k - 1) * k], [1, 1]])
    p = M([[k - 1, k], [1, 1]])
    p_inv = M([[-1, k], [1, 1 - k]])  # det P = -1
    assert p @ p_inv == M.identity(2)
    cert = SeCertificate(a, b, p_inv @ b ** j, b @ p @ a ** j, 2 * j + 1)
    return a, b, p, cert


def min_nonnegative_j(k: int, start: int = 2, stop: int = 64) -> int:
    """Smallest j >= start for which the A_k/B_k certificate is nonnegative."""
    for j in range(start, stop):
        cert = ak_bk(k, j)[3]
        if cert.r.is_nonnegative() and cert.s.is_nonnegative():
            return j
    raise ValueError(f"no nonnegative certificate for k={k} below j={stop}")


def _akbk() -> CorpusEntry:
    # j = 3 gives negative entries in R for k = 4, 5; store the least j that works
    mats, certs, js = {}, {}, {}
    for k in (3, 4, 5):
        j = js[k] = min_nonnegative_j(k)
        a, b, p, cert = ak_bk(k, j)
        mats.update({f"A{k}": a, f"B{k}": b, f"P{k}": p})
        certs[f"k={k}"] = cert
    e = CorpusEntry("akbk", mats, certs, notes="A_k, B_k similar via P_k; j = 3, 5, 7")
    for k in (3, 4, 5):
        e.expect(f"unital k={k}", lambda k=k: unital_condition(certs[f"k={k}"]).to_json(),
                 _yes(0, js[k] - 1))
    e.expect("least j", lambda: js, {3: 3, 4: 5, 5: 7})
    e.expect("k=3 R", lambda: certs["k=3"].r, M([[8, 3], [1, 16]]))
    e.expect("k=3 S", lambda: certs["k=3"].s, M([[314, 387], [129, 157]]))
    return e


# -- Boyle-Fiebig-Fiebig -----------------------------------------------------

def _bff() -> CorpusEntry:
    a1 = M([[2, 0, 4], [1, 2, 0], [1, 2, 0]])
    four = M([[4]])
    e = CorpusEntry("bff", {"A1": a1, "B1": four}, notes="conjugate higher powers, not conjugate")
    e.expect("higher powers", lambda: conjugate_higher_powers(a1, four)[0], True)
    e.expect("one-sided", lambda: one_sided_conjugate(a1, four)[0], False)
    for m in (2, 3, 4):
        e.expect(f"total A1^{m}", lambda m=m: total_amalgamation(a1 ** m)[0], M([[4 ** m]]))
    return e


def _brix_carlsen() -> CorpusEntry:
    a = M([[0, 2, 2], [1, 0, 0], [1, 0, 0]])
    b = M([[0, 3, 1], [1, 0, 0], [1, 0, 0]])
    e = CorpusEntry("brix_carlsen", {"A": a, "B": b},
                    notes="Matsumoto eventually conjugate, no conjugate higher powers")
    e.expect("higher powers", lambda: conjugate_higher_powers(a, b)[0], False)
    return e


# -- Ashley ------------------------------------------------------------------

ASHLEY_EDGES = {
    0: (0, 2), 1: (1, 0), 2: (4, 5), 3: (1, 7),
    4: (6, 3), 5: (3, 4), 6: (7, 2), 7: (5, 6),
}


def ashley_matrix() -> IntMatrix:
    rows = [[0] * 8 for _ in range(8)]
    for i, targets in ASHLEY_EDGES.items():
        for j in targets:
            rows[i][j] += 1
    return M(rows)


def ashley_gates(a: IntMatrix) -> dict[str, bool]:
    ones = M.ones(8, 1)
    return {
        "0/1 entries, row and column sums 2": (set(a.entries) <= {0, 1}
                                               and a.row_sums() == (2,) * 8
                                               and a.col_sums() == (2,) * 8),
        "char poly x^7 (x - 2)": char_poly(a) == IntPolynomial([0] * 7 + [-2, 1]),
        "A^7 = 16 * 1 1^t": a ** 7 == (ones @ ones.T) * 16,
    }


def _ashley() -> CorpusEntry:
    a = ashley_matrix()
    failed = [g for g, ok in ashley_gates(a).items() if not ok]
    if failed:
        raise ValueError(f"Ashley matrix rejected: {failed}")
    cert = SeCertificate(a, M([[2]]), M.ones(8, 1) * 16, M.ones(1, 8), 7)
    e = CorpusEntry("ashley", {"A": a, "B": M([[2]])}, {"A->(2)": cert},
                    notes="Ashley's eight-vertex graph against the full 2-shift")
    e.expect("gates", lambda: all(ashley_gates(a).values()), True)
    e.expect("unital", lambda: unital_condition(cert).to_json(), _yes(0, 7))
    e.expect("higher powers", lambda: conjugate_higher_powers(a, M([[2]]))[0], True)
    return e


# -- Kim-Roush ---------------------------------------------------------------

def kim_roush() -> tuple[IntMatrix, IntMatrix]:
    a = M([[0, 0, 1, 1, 3, 0, 0],
           [1, 0, 0, 0, 3, 0, 0],
           [0, 1, 0, 0, 3, 0, 0],
           [0, 0, 1, 0, 3, 0, 0],
           [0, 0, 0, 0, 0, 0, 1],
           [1, 1, 1, 1, 10, 0, 0],
           [1, 1, 1, 1, 0, 1, 0]])
    b = M([[0, 0, 1, 1, 3, 0, 0],
           [0, 0, 1, 1, 0, 0, 0],
           [0, 0, 1, 1, 0, 0, 0],
           [0, 0, 1, 1, 0, 0, 0],
           [0, 0, 0, 0, 0, 0, 1],
           [4, 5, 6, 3, 10, 0, 0],
           [4, 5, 6, 3, 0, 1, 0]])
    return a, b


def _kim_roush() -> CorpusEntry:
    # The stored pair does not share its invariants (B has three equal rows,
    # so it is singular while det A = -1). The entry records what these
    # matrices give; the acceptance check for equality stays red.
    a, b = kim_roush()
    e = CorpusEntry("kim_roush", {"A": a, "B": b},
                    notes="invariants only; lag-13 R, S not stored; stored pair disagrees")
    e.expect("BF A", lambda: bowen_franks(a).invariant_factors, (1,) * 6 + (99,))
    e.expect("BF B", lambda: bowen_franks(b).invariant_factors, (1,) * 6 + (33,))
    e.expect("signs", lambda: (bowen_franks(a).sign, bowen_franks(b).sign), (-1, 1))
    e.expect("char poly up to x", lambda: char_poly(a).strip_x() == char_poly(b).strip_x(), False)
    return e


# -- Rourke ------------------------------------------------------------------

def rourke() -> dict[str, IntMatrix]:
    return {
        "A": M([[1, 2, 1], [1, 1, 0], [1, 0, 1]]),
        "B": M([[1, 0, 1, 0, 1], [0, 1, 1, 1, 0], [1, 1, 1, 0, 0], [1, 0, 0, 0, 1], [0, 1, 0, 1, 0]]),
        "R0": M([[1, 0, 1, 0, 1], [0, 1, 0, 1, 0], [1, 1, 1, 0, 0],
                 [1, 0, 0, 0, 1], [0, 1, 0, 1, 0], [0, 0, 1, 0, 0]]),
        "S0": M([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0],
                 [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]),
        "B'": M([[1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1], [1, 1, 1, 0, 0, 1],
                 [1, 0, 0, 0, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 0, 0]]),
        "R1'": M([[1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1], [1, 1, 1, 0, 0, 1],
                  [1, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0]]),
        "R1''": M([[1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1], [1, 0, 1, 0, 1, 1],
                   [1, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 0]]),
        "S1'": M([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0],
                  [0, 0, 0, 1, 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 1]]),
        "B''": M([[1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1], [1, 0, 1, 0, 1, 1],
                  [1, 0, 0, 0, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 0, 0]]),
    }


def rourke_chain() -> MoveSequence:
    """B -> B' -> B'' -> ... -> A, every step certified."""
    r = rourke()
    split = outsplit_move(r["S0"], r["R0"])
    insplit = balanced_move(r["S1'"], r["R1'"], r["R1''"])
    total, amalg = total_amalgamation(r["B''"])
    steps = [split, insplit, *amalg.steps]
    if total != r["A"]:
        w = permutation_equivalent(total, r["A"])
        if w is None:
            raise ValueError("total amalgamation of B'' is not a relabelling of A")
        steps.append(permutation_move(total, w.mapping))
    return MoveSequence(r["B"], tuple(steps))


def _rourke() -> CorpusEntry:
    r = rourke()
    chain = rourke_chain()
    bal = balanced_to_unital_se(r["B'"], r["B''"], r["S1'"], r["R1'"], r["R1''"])
    e = CorpusEntry("rourke", r, {"B'->B'' lag 2": bal}, {"B->A": chain},
                    notes="first move is the outsplit B' = R0 S0")
    e.expect("B = S0 R0", lambda: r["S0"] @ r["R0"] == r["B"], True)
    e.expect("B' = R0 S0", lambda: r["R0"] @ r["S0"] == r["B'"], True)
    e.expect("chain", lambda: bool(verify_move_sequence(chain)), True)
    e.expect("unital B'->B''", lambda: unital_condition(bal).to_json(), _yes(0, 1))
    for n in range(2, 8):
        e.expect(f"total B^{n} ~ A^{n}",
                 lambda n=n: permutation_equivalent(total_amalgamation(r["B"] ** n)[0], r["A"] ** n) is not None,
                 True)
    e.expect("higher powers", lambda: conjugate_higher_powers(r["A"], r["B"])[0], True)
    return e


@lru_cache(maxsize=1)
def build_corpus() -> dict[str, CorpusEntry]:
    entries = [_zhalf(), _akbk(), _bff(), _brix_carlsen(), _ashley(), _kim_roush(), _rourke()]
    return {e.name: e for e in entries}


@dataclass
class CorpusResult:
    entry: str
    label: str
    ok: bool
    detail: str = ""


def verify_corpus(names=None) -> list[CorpusResult]:
    corpus = build_corpus()
    out = []
    for name, entry in corpus.items():
        if names and name not in names:
            continue
        for label, cert in entry.certificates.items():
            chk = verify_se(cert)
            out.append(CorpusResult(name, f"certificate {label}", chk.ok, "; ".join(chk.failures)))
        for label, seq in entry.sequences.items():
            chk = verify_move_sequence(seq)
            out.append(CorpusResult(name, f"sequence {label}", chk.ok,
                                    "" if chk else f"step {chk.index}: {'; '.join(chk.failures)}"))
        for label, probe in entry.probes.items():
            got = probe()
            want = entry.expected[label]
            out.append(CorpusResult(name, label, got == want, "" if got == want else f"got {got!r}, want {want!r}"))
    return out
