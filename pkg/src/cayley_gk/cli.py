"""``cayley-gk`` command line: inspect groups, spectra, symbols and G_k verdicts.

Every invocation prints one JSON document on stdout.  Exit codes:
0 success or member, 1 nonmember or non-integral, 2 usage error,
3 internal invariant violation or a failed verification.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Any, Sequence

import numpy as np

from . import report
from .errors import CayleyGkError, InvariantViolation, UnknownLabel
from .group import Group, generated_subgroup
from .spec_grammar import SpecSyntaxError, build, format_spec, parse_spec

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print text and exit 2
        raise UsageError(message)


def _labels(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _group(spec: str) -> tuple[Group, str]:
    canonical = format_spec(parse_spec(spec))
    return build(spec), canonical


def _set_record(S) -> dict[str, Any]:
    return {"labels": S.labels, "size": len(S)}


# -- commands -----------------------------------------------------------------------


def cmd_info(args) -> tuple[int, dict, dict]:
    from .classifier import count_connection_sets, g2_criterion, g2_order_test
    from .spectral import atoms

    G, spec = _group(args.spec)
    ats = atoms(G)
    result = {
        "generators": {k: G.labels[v] for k, v in G.gens.items()},
        "labels": list(G.labels),
        "atoms": {"involutions": sum(a.kind == "involution" for a in ats),
                  "pairs": sum(a.kind == "pair" for a in ats)},
        "g2OrderTest": g2_order_test(G),
        "g2Criterion": g2_criterion(G),
        "connectionSetsUpTo": {str(k): count_connection_sets(G, k) for k in range(1, 7)},
    }
    return EXIT_OK, report.group_record(G, spec), result


def cmd_spectrum(args):
    from .spectral import ConnectionSet, cayley_adjacency, spectrum_report

    G, spec = _group(args.spec)
    S = ConnectionSet.from_labels(G, _labels(args.set))
    rep = spectrum_report(cayley_adjacency(G, S), len(S))
    result = {
        "connectionSet": _set_record(S),
        "integral": rep.integral,
        "integerSpectrum": None if rep.integer_spectrum is None
        else [{"eigenvalue": l, "multiplicity": m} for l, m in rep.integer_spectrum],
        "floatSpectrum": report.fspectrum(rep.float_spectrum),
        "evidence": None if rep.evidence is None else report.fnum(rep.evidence),
        "charPoly": str(rep.char_poly),
    }
    return (EXIT_OK if rep.integral else EXIT_NEGATIVE), report.group_record(G, spec), result


def cmd_gk(args):
    from .classifier import gk_membership

    G, spec = _group(args.spec)
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    v = gk_membership(G, args.k, full=args.full, jobs=args.jobs, cross_check=args.cross_check)
    result = {
        "k": v.k,
        "verdict": v.decision,
        "setsExamined": v.sets_examined,
        "failures": v.failures,
        "exhaustive": bool(v.member or args.full),
        "witness": None,
    }
    if v.witness is not None:
        result["witness"] = {
            **_set_record(v.witness),
            "annihilationFailed": v.annihilation_failed,
            "evidence": None if v.evidence is None else report.fnum(v.evidence),
            "floatSpectrum": report.fspectrum(v.witness_spectrum),
        }
    return (EXIT_OK if v.member else EXIT_NEGATIVE), report.group_record(G, spec), result


def cmd_symbol(args):
    from .kmmm import abelian_characters, chi_eigenvalues, chi_matrix, left_transversal, symbol_matrix
    from .spectral import ConnectionSet, cayley_adjacency, integrality_test, float_spectrum

    G, spec = _group(args.spec)
    S = ConnectionSet.from_labels(G, _labels(args.set))
    H = generated_subgroup(G, G.elements(_labels(args.subgroup)))
    T = left_transversal(G, H, G.elements(_labels(args.pin)) if args.pin else ())
    M = symbol_matrix(G, S, T)
    blocks, spectrum = [], []
    for chi in abelian_characters(G, H):
        C = chi_matrix(chi, M)
        ev = chi_eigenvalues(C)
        spectrum.extend(ev.tolist())
        blocks.append({
            "exponents": list(chi.exponents),
            "rootOrder": chi.root_order,
            "matrix": [[report.fcomplex(z) for z in row] for row in C.values],
            "eigenvalues": report.fspectrum(ev),
        })
    A = cayley_adjacency(G, S)
    full = float_spectrum(A)
    err = float(np.max(np.abs(np.sort(spectrum) - full))) if len(full) else 0.0
    integral = integrality_test(A, len(S))
    result = {
        "connectionSet": _set_record(S),
        "subgroup": [G.labels[h] for h in H.elements],
        "transversal": [G.labels[t] for t in T.reps],
        "cells": M.cell_labels(),
        "characters": blocks,
        "spectrum": report.fspectrum(spectrum),
        "maxDeviation": report.fnum(err),
        "integral": integral,
    }
    if err > 1e-6:
        raise InvariantViolation(f"symbol spectrum deviates from the adjacency spectrum by {err:.3g}")
    return (EXIT_OK if integral else EXIT_NEGATIVE), report.group_record(G, spec), result


def _verify_witnesses(args):
    from .classifier import witness_suite

    rows = []
    for w in witness_suite():
        rows.append({
            "key": w.key,
            "connectionSet": w.connection_set.labels,
            "expected": report.fspectrum(w.expected),
            "chiEigenvalues": report.fspectrum(w.chi_eigenvalues),
            "integral": w.integral,
            "closedFormError": report.fnum(w.closed_form_error),
            "spectrumError": report.fnum(w.spectrum_error),
            "confirmed": w.confirmed,
        })
    return all(r["confirmed"] for r in rows), {"witnesses": rows}


def _verify_classification(args):
    from .catalog import K_RANGE, classify_catalog
    from .classifier import gk_membership

    res = classify_catalog(K_RANGE)
    rows = [{"spec": r.spec, "k": r.k, "expected": "member" if r.expected else "nonmember",
             "computed": "member" if r.computed else "nonmember", "setsExamined": r.sets_examined, "ok": r.ok}
            for r in res.rows]
    g45 = res.members(4) == res.members(5)
    out = {"rows": rows, "fingerprintMismatches": res.fingerprint_mismatches, "g4EqualsG5": g45}
    ok = res.ok and g45
    if args.stretch:
        v = gk_membership(build("Dic(E(9) x C(6))"), 5, jobs=args.jobs)
        out["stretch"] = {"spec": "Dic(E(9) x C(6))", "k": 5, "verdict": v.decision, "setsExamined": v.sets_examined}
        ok = ok and v.member
    return ok, out


def _verify_hereditary(args):
    from .catalog import CATALOG
    from .classifier import verify_hereditary_properties, z4_z4_quotient_example

    groups = []
    for e in CATALOG:
        if not e.expected(4):
            continue
        rep = verify_hereditary_properties(e.build(), 4)
        groups.append({"spec": e.spec, "k": 4, "checks": len(rep.checks), "passed": rep.passed,
                       "failed": [c.subject for c in rep.checks if not c.passed],
                       "quotientDrops": [c.subject for c in rep.quotient_drops]})
    ex = z4_z4_quotient_example()
    example = {"group": ex.group, "k": ex.k, "normalSubgroup": list(ex.normal_subgroup),
               "groupInGk": ex.group_in_gk, "quotientInG2": ex.quotient_in_g2, "quotientIsD8": ex.quotient_is_d8,
               "reproduced": ex.reproduced}
    return all(g["passed"] for g in groups) and ex.reproduced, {"groups": groups, "quotientExample": example}


def _verify_kmmm(args):
    from .catalog import CATALOG
    from .classifier import kmmm_property_suite

    trials = kmmm_property_suite([e.build() for e in CATALOG], trials=args.trials, seed=args.seed)
    worst = max(t.max_error for t in trials)
    return worst <= 1e-6, {"trials": len(trials), "seed": args.seed, "maxError": report.fnum(worst),
                           "integralGraphs": sum(t.integral for t in trials)}


VERIFIERS = {
    "witnesses": _verify_witnesses,
    "classification": _verify_classification,
    "hereditary": _verify_hereditary,
    "kmmm": _verify_kmmm,
}


def cmd_verify(args):
    ok, result = VERIFIERS[args.suite](args)
    result = {"suite": args.suite, "passed": ok, **result}
    return (EXIT_OK if ok else EXIT_INTERNAL), None, result


# -- driver -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cayley-gk", description=__doc__.splitlines()[0])
    p.add_argument("--deterministic", action="store_true", help="omit timing so output is byte-stable")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("info", help="group fingerprint, labels and atom counts")
    q.add_argument("spec")
    q.set_defaults(func=cmd_info)

    q = sub.add_parser("spectrum", help="integrality and spectrum of one Cayley graph")
    q.add_argument("spec")
    q.add_argument("--set", required=True, help="comma-separated element labels")
    q.set_defaults(func=cmd_spectrum)

    q = sub.add_parser("gk", help="decide membership in G_k")
    q.add_argument("spec")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--full", action="store_true", help="count every failure instead of stopping at the first")
    q.add_argument("--jobs", type=int, default=None, help="worker threads (default: $CAYLEY_GK_JOBS or 1)")
    q.add_argument("--cross-check", action="store_true", help="compare all three integrality routes per graph")
    q.set_defaults(func=cmd_gk)

    q = sub.add_parser("symbol", help="symbol matrix and character blocks over an abelian subgroup")
    q.add_argument("spec")
    q.add_argument("--subgroup", required=True, help="generators of the abelian subgroup H")
    q.add_argument("--pin", default="", help="coset representatives to use first")
    q.add_argument("--set", required=True)
    q.set_defaults(func=cmd_symbol)

    q = sub.add_parser("verify", help="run a built-in verification suite")
    q.add_argument("suite", choices=sorted(VERIFIERS))
    q.add_argument("--stretch", action="store_true", help="include the order-108 dicyclic sweep")
    q.add_argument("--jobs", type=int, default=None)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_verify)
    return p


def _error(kind: str, exc: BaseException, **extra) -> dict[str, Any]:
    return {"kind": kind, "type": type(exc).__name__, "message": str(exc), **extra}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    deterministic = "--deterministic" in argv
    command = next((a for a in argv if not a.startswith("-")), None)
    t0 = time.perf_counter()
    group = result = error = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        code, group, result = args.func(args)
    except UsageError as exc:
        code, error = EXIT_USAGE, _error("usage", exc, **exc.details)
    except SpecSyntaxError as exc:
        code, error = EXIT_USAGE, _error("usage", exc, line=exc.line, column=exc.col, expected=exc.expected)
    except UnknownLabel as exc:
        code, error = EXIT_USAGE, _error("usage", exc, label=exc.text, didYouMean=exc.suggestions)
    except InvariantViolation as exc:
        code, error = EXIT_INTERNAL, _error("invariant", exc)
    except CayleyGkError as exc:
        code, error = EXIT_USAGE, _error("usage", exc)
    elapsed = None if deterministic else time.perf_counter() - t0
    print(report.dumps(report.document(command or "", result, group, error, elapsed)))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
