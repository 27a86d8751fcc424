"""``sft``: one decision per invocation, reported as a single JSON document.

Exit codes: 0 yes/valid, 1 no/invalid, 2 inconclusive, 64 usage error,
65 data format error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .conjugacy import canonical_form, conjugate_higher_powers, one_sided_conjugate
from .corpus import build_corpus, verify_corpus
from .dimension import bowen_franks
from .equivalence import (SeCertificate, UnverifiedCertificate, boyle_pse_identity,
                          sequence_certificate, unital_condition, unital_diagnostics, verify_se,
                          verify_sl, verify_sl_plus)
from .graph import is_canonical_form
from .matrix import DimensionError, IntMatrix
from .moves import total_amalgamation, verify_balanced_elementary
from .poly import char_poly
from .search import SearchLimits, search_balanced_path
from .textio import (MatrixFormatError, certificate_from_json, load_json, matrix_from_json,
                     parse_matrix, sequence_to_json)

YES, NO, INCONCLUSIVE, USAGE, DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def read_matrix_arg(path: str) -> IntMatrix:
    """Matrix file in the text format, or a JSON list of rows."""
    text = _read_text(path)
    if text.lstrip().startswith("["):
        try:
            return matrix_from_json(json.loads(text), path)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return parse_matrix(text)


def read_json_arg(path: str) -> dict:
    if path != "-" and not Path(path).exists():
        raise UsageError(f"cannot read {path}: no such file")
    obj = json.loads(_read_text(path)) if path == "-" else load_json(path)
    if not isinstance(obj, dict):
        raise MatrixFormatError("expected a JSON object")
    return obj


def _mat(m: IntMatrix) -> list:
    return m.tolist()


# -- subcommands -------------------------------------------------------------

def cmd_amalg(args):
    m = read_matrix_arg(args.matrix)
    if args.power is not None:
        m = m ** args.power
    total, seq = total_amalgamation(m)
    return YES, {"input": _mat(m), "total": _mat(total), "sequence": sequence_to_json(seq)}


def cmd_conjugate(args):
    a, b = read_matrix_arg(args.a), read_matrix_arg(args.b)
    ok, cert = one_sided_conjugate(a, b)
    report = {"conjugate": ok, "total_a": _mat(cert.total_a), "total_b": _mat(cert.total_b),
              "relabelling": list(cert.witness.mapping) if cert.witness else None}
    return (YES if ok else NO), report


def cmd_higher_powers(args):
    a, b = read_matrix_arg(args.a), read_matrix_arg(args.b)
    ok, rep = conjugate_higher_powers(a, b, args.power)
    w = rep.joint_witness
    report = {"conjugate_higher_powers": ok, "n": rep.n, "interpretation": rep.interpretation,
              "totals": {k: _mat(v) for k, v in rep.totals.items()},
              "relabelling": list(w.mapping) if w else None,
              "reason": rep.reason, "notes": rep.notes}
    return (YES if ok else NO), report


def cmd_bf(args):
    a = read_matrix_arg(args.matrix)
    return YES, bowen_franks(a).to_json()


def cmd_charpoly(args):
    p = char_poly(read_matrix_arg(args.matrix))
    return YES, {"coefficients": list(p.coeffs), "polynomial": str(p)}


def _cert(args) -> SeCertificate:
    return certificate_from_json(read_json_arg(args.certificate), args.lag)


def cmd_verify_se(args):
    chk = verify_se(_cert(args))
    return (YES if chk else NO), {"valid": chk.ok, "failures": list(chk.failures)}


def cmd_unital_se(args):
    cert = _cert(args)
    chk = verify_se(cert)
    if not chk:
        return NO, {"valid": False, "failures": list(chk.failures)}
    verdict = unital_condition(cert, args.k_max)
    report = verdict.to_json()
    if args.diagnostics:
        report["diagnostics"] = unital_diagnostics(cert, args.k_max)
    return {"yes": YES, "no": NO}.get(verdict.outcome, INCONCLUSIVE), report


def cmd_balanced(args):
    obj = read_json_arg(args.data)
    try:
        a, b, s, r_a, r_b = (matrix_from_json(obj[k], k) for k in ("A", "B", "S", "R_A", "R_B"))
    except KeyError as exc:
        raise MatrixFormatError(f"missing {exc.args[0]!r}") from None
    valid, division = verify_balanced_elementary(a, b, s, r_a, r_b)
    report = {"valid": valid, "s_is_division_transpose": division}
    if valid:
        cert = SeCertificate(a, b, b, a, 2)
        report["certificate"] = cert.to_json()
        report["unital"] = unital_condition(cert, args.k_max).to_json()
    return (YES if valid else NO), report


def cmd_boyle_pse(args):
    cert = _cert(args)
    rep = boyle_pse_identity(cert.a, cert.b, cert)
    report = {"holds": rep.holds, "product_ok": rep.product_ok,
              "decomposition_ok": rep.decomposition_ok,
              "swap_decomposition_ok": rep.swap_decomposition_ok, "bf_agree": rep.bf_agree,
              "det_u": rep.det_u, "det_v": rep.det_v,
              "u_prime": _mat(rep.u_prime), "v_prime": _mat(rep.v_prime), "notes": rep.notes}
    return (YES if rep.holds else NO), report


def cmd_sl_plus(args):
    obj = read_json_arg(args.data)
    try:
        u, v, m_a, m_b = (matrix_from_json(obj[k], k) for k in ("U", "V", "M_A", "M_B"))
    except KeyError as exc:
        raise MatrixFormatError(f"missing {exc.args[0]!r}") from None
    blocks = obj.get("blocks", [m_a.rows])
    if "v_A" in obj or "v_B" in obj:
        n = m_b.rows
        ok = verify_sl_plus(u, v, m_a, m_b, obj.get("v_A", [0] * n), obj.get("v_B", [0] * n), blocks)
        kind = "sl_plus"
    else:
        ok = verify_sl(u, v, m_a, m_b, blocks)
        kind = "sl"
    return (YES if ok else NO), {"kind": kind, "valid": ok, "blocks": list(blocks)}


def cmd_canonical_form(args):
    a = read_matrix_arg(args.matrix)
    ok, violations = is_canonical_form(a)
    canon, witness = canonical_form(a)
    report = {"is_canonical_form": ok, "violations": violations,
              "relabelled": _mat(canon), "relabelling": list(witness.mapping)}
    return (YES if ok else NO), report


def cmd_search_path(args):
    a, b = read_matrix_arg(args.a), read_matrix_arg(args.b)
    limits = SearchLimits.for_pair(a, b, max_matrix_size=args.max_size, max_depth=args.max_depth,
                                   max_nodes=args.max_nodes, max_entry=args.max_entry)
    res = search_balanced_path(a, b, limits)
    report = {"status": res.status, "nodes": res.nodes, "depth": res.depth,
              "limits": vars(limits)}
    if not res:
        # exhausting bounded limits is never a proof of non-equivalence
        return INCONCLUSIVE, report
    cert = sequence_certificate(res.path)
    report["path"] = sequence_to_json(res.path)
    report["certificate"] = cert.to_json()
    report["unital"] = unital_condition(cert, args.k_max).to_json()
    return YES, report


def cmd_corpus(args):
    corpus = build_corpus()
    unknown = set(args.names) - set(corpus)
    if unknown:
        raise UsageError(f"unknown corpus entries: {sorted(unknown)}")
    if not args.verify:
        return YES, {name: {"matrices": {k: _mat(m) for k, m in e.matrices.items()},
                            "certificates": {k: c.to_json() for k, c in e.certificates.items()},
                            "notes": e.notes}
                     for name, e in corpus.items() if not args.names or name in args.names}
    results = verify_corpus(args.names or None)
    failed = [r for r in results if not r.ok]
    report = {"checked": len(results), "failed": len(failed),
              "failures": [{"entry": r.entry, "check": r.label, "detail": r.detail} for r in failed]}
    return (YES if not failed else NO), report


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="compact single-line JSON output")
    p = _Parser(prog="sft", description="Exact tools for one-sided shifts of finite type.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("amalg", cmd_amalg, "total out-amalgamation with its move sequence")
    sp.add_argument("matrix")
    sp.add_argument("--power", type=int, help="amalgamate M^N instead of M")

    for name, func, help_ in (("conjugate", cmd_conjugate, "one-sided conjugacy"),
                              ("higher-powers", cmd_higher_powers, "conjugate higher powers")):
        sp = add(name, func, help_)
        sp.add_argument("a")
        sp.add_argument("b")
        if name == "higher-powers":
            sp.add_argument("--power", type=int, help="n >= max(|A|, |B|)")

    add("bf", cmd_bf, "Bowen-Franks group, unit class and sign").add_argument("matrix")
    add("charpoly", cmd_charpoly, "characteristic polynomial").add_argument("matrix")

    for name, func, help_ in (("verify-se", cmd_verify_se, "verify a shift equivalence"),
                              ("unital-se", cmd_unital_se, "decide the unit condition"),
                              ("boyle-pse", cmd_boyle_pse, "check the polynomial SE identity")):
        sp = add(name, func, help_)
        sp.add_argument("certificate", help="JSON {A, B, R, S, lag}")
        sp.add_argument("--lag", type=int, help="override the certificate's lag")
        if name == "unital-se":
            sp.add_argument("--k-max", type=int)
            sp.add_argument("--diagnostics", action="store_true",
                            help="also report the verdict for the reversed certificate")

    sp = add("balanced", cmd_balanced, "balanced elementary equivalence to lag-2 certificate")
    sp.add_argument("data", help="JSON {A, B, S, R_A, R_B}")
    sp.add_argument("--k-max", type=int)

    sp = add("sl-plus", cmd_sl_plus, "SL / SL+ equivalence check")
    sp.add_argument("data", help="JSON {U, V, M_A, M_B, blocks, v_A, v_B}")

    add("canonical-form", cmd_canonical_form, "canonical form predicate and relabelling"
        ).add_argument("matrix")

    sp = add("search-path", cmd_search_path, "bounded balanced SSE path search")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--max-depth", type=int)
    sp.add_argument("--max-nodes", type=int)
    sp.add_argument("--max-entry", type=int)
    sp.add_argument("--k-max", type=int)

    sp = add("corpus", cmd_corpus, "list or verify the example corpus")
    sp.add_argument("names", nargs="*")
    sp.add_argument("--verify", action="store_true")
    return p


def run_command(argv=None) -> tuple[int, dict]:
    return _dispatch(build_parser().parse_args(argv))


def _dispatch(args) -> tuple[int, dict]:
    try:
        return args.func(args)
    except UsageError as exc:
        return USAGE, {"error": str(exc)}
    except (MatrixFormatError, DimensionError, UnverifiedCertificate, ValueError) as exc:
        return DATA, {"error": str(exc), "type": type(exc).__name__}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = _dispatch(args)
    print(json.dumps(report) if args.json else json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
