"""Command-line front end.

Every run prints one JSON report ``{command, status, payload, timing}`` on
standard output and a one-line summary on standard error. Exit codes: 0 for
ok, 2 for undecided, 1 for failures and unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from typing import Any, Sequence

from . import io
from .congruence import CongruencePresentation, quotient
from .monoid import AffineMonoid, canonical_decomposition, is_closed, is_saturated, kmin, normalize, saturate
from .outcome import Undecided
from .polynomial import parse_poly, shift_into
from .qsubring import canonical_form, parse_fraction
from .semiring import check_diagram, grothendieck, np_hom_exists, sad_by_sampling
from .verify import SUITES, run_suite, two_sided_mismatches

OK, UNDECIDED, FAILED = "ok", "undecided", "failed"
EXIT = {OK: 0, UNDECIDED: 2, FAILED: 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        raise UsageError(message)


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--height", type=int)
    common.add_argument("--max-order", type=int, default=3)
    common.add_argument("--count", type=int, default=200)
    common.add_argument("--size-cap", type=int)
    common.add_argument("--out")
    p = _Parser(prog="torsemi", description="Monoid saturations, decompositions and finite semirings.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for verb in ("saturate", "decompose"):
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("monoid")
        s.add_argument("--closure", action="store_true", help="use span ∩ N_0^n instead of cone ∩ N_0^n")
    s = sub.add_parser("classify", parents=[common])
    s.add_argument("monoid")
    s.add_argument("--point", type=_vector)
    s = sub.add_parser("kmin", parents=[common])
    s.add_argument("monoid")
    s.add_argument("--alpha", type=_vector, required=True)
    s.add_argument("--gamma", type=_vector, required=True)
    s = sub.add_parser("shift", parents=[common])
    s.add_argument("monoid")
    s.add_argument("--alpha", type=_vector, required=True)
    s.add_argument("--poly", required=True)
    s = sub.add_parser("quotient", parents=[common])
    s.add_argument("presentation")
    for verb in ("profile", "grothendieck"):
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("semiring")
    s = sub.add_parser("qsub", parents=[common])
    s.add_argument("fractions", nargs="+")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", default="all", choices=SUITES + ("all",))
    return p


# ---------------------------------------------------------------------------
# verbs: each returns (status, payload, artifact or None)


def _saturated(args):
    m = io.read_monoid(args.monoid)
    return m, (saturate(m) if args.closure else normalize(m))


def _saturate(args):
    m, s = _saturated(args)
    basis = s.hilbert_basis
    payload = {
        "kind": s.kind,
        "rank": m.ambient,
        "dim": s.dim,
        "generators": [list(g) for g in m.generators],
        "hilbert_basis": [list(h) for h in basis],
        "extreme_rays": [list(r) for r in s.cone.extreme_rays],
        "facet_normals": [list(a) for a in s.cone.facet_normals],
        "is_saturated": is_saturated(m),
        "is_closed": is_closed(m),
    }
    return OK, payload, io.monoid_text(AffineMonoid.from_generators(basis, m.ambient))


def _decompose(args):
    _, s = _saturated(args)
    doc = io.decomposition_json(canonical_decomposition(s))
    return OK, doc, doc


def _classify(args):
    m = io.read_monoid(args.monoid)
    d = canonical_decomposition(normalize(m))
    if args.point is not None:
        if len(args.point) != m.ambient:
            raise UsageError(f"point has {len(args.point)} entries, expected {m.ambient}")
        if not d.monoid.member(args.point):
            return FAILED, {"point": list(args.point), "error": "not in monoid"}, None
        p = d.classify(args.point)
        payload = {"point": list(args.point), "piece": p.id, "dim": p.dim, "support_basis": [list(b) for b in p.face.support.basis]}
        return OK, payload, None
    height = args.height if args.height is not None else 10
    pts = d.monoid.lattice_points(height)
    ids = d.classify_many(pts[pts.any(axis=1)])
    counts = {str(p.id): int((ids == p.id).sum()) for p in d.pieces}
    return OK, {"height": height, "points": int(len(ids)), "per_piece": counts}, None


def _kmin(args):
    m = io.read_monoid(args.monoid)
    d = canonical_decomposition(normalize(m))
    p = d.classify(args.alpha)
    k = kmin(p, args.alpha, args.gamma)
    return OK, {"alpha": list(args.alpha), "gamma": list(args.gamma), "piece": p.id, "k": k}, None


def _shift(args):
    m = io.read_monoid(args.monoid)
    s = normalize(m)
    d = canonical_decomposition(s)
    f = parse_poly(args.poly, m.ambient)
    p = d.classify(args.alpha)
    # the target is the saturated monoid, presented by its Hilbert basis
    sh = shift_into(f, args.alpha, p, s.generated())
    payload = {
        "alpha": list(args.alpha),
        "piece": p.id,
        "k": sh.k,
        "certified_bound": sh.certified_bound,
        "shifted": sh.shifted.to_text(),
        "splits": [[list(b), list(g)] for b, g in sh.decompositions],
    }
    return OK, payload, None


def _quotient(args):
    pres = io.read_presentation(args.presentation)
    if args.size_cap is not None:
        pres = CongruencePresentation(pres.monoid, pres.relations, args.size_cap)
    q = quotient(pres)
    if isinstance(q, Undecided):
        return UNDECIDED, {"reason": q.reason, "size_cap": pres.size_cap}, None
    doc = io.semiring_json(q)
    payload = {"semiring": doc, "generator_map": [[list(e), c] for e, c in q.generators]}
    return OK, payload, doc


def _profile(args):
    s = io.read_semiring(args.semiring)
    sampled = sad_by_sampling(s)
    elements = []
    for p in s.profiles:
        entry = asdict(p)
        entry["sad_sampling"] = bool(sampled[p.element])
        elements.append(entry)
    diagram = check_diagram(s)
    payload: dict[str, Any] = {
        "order": s.order,
        "unity": s.unity,
        "elements": elements,
        "diagram": {"checked": diagram.checked, "violations": list(diagram.violations)},
        "sampling_agrees": all(e["sad_sampling"] == e["strongly_almost_divisible"] for e in elements),
    }
    if s.unity is not None:
        payload["np_hom_exists"] = np_hom_exists(s)
    status = OK if diagram.ok and payload["sampling_agrees"] else FAILED
    return status, payload, None


def _grothendieck(args):
    s = io.read_semiring(args.semiring)
    g = grothendieck(s)
    doc = io.semiring_json(g.carrier)
    payload = {"order": g.order, "zero": g.zero, "neg": list(g.neg), "sigma": list(g.sigma), "ring": doc}
    return OK, payload, doc


def _qsub(args):
    try:
        gens = [parse_fraction(t) for t in args.fractions]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"fractions must look like num/den: {' '.join(args.fractions)}") from None
    d = canonical_form(gens)
    cert = d.certificate
    payload: dict[str, Any] = {
        "generators": [f"{g.numerator}/{g.denominator}" for g in gens],
        "descriptor": d.to_json(),
        "finitely_generated": d.primes.is_finite,
        "additively_almost_divisible": not d.primes.is_finite,
        "certificate": {"coefficients": list(cert.coeffs), "steps": [asdict(st) for st in cert.steps]},
    }
    status = OK
    if args.height is not None:
        mism = two_sided_mismatches(d, gens, args.height)
        payload["oracle"] = {"height": args.height, "mismatches": mism}
        status = OK if not mism else FAILED
    return status, payload, d.to_json()


def _verify(args):
    results = run_suite(args.suite, seed=args.seed, height=args.height, max_order=args.max_order, count=args.count)
    payload = {"suites": [r.to_json() for r in results]}
    return (OK if all(r.ok for r in results) else FAILED), payload, None


HANDLERS = {
    "saturate": _saturate,
    "decompose": _decompose,
    "classify": _classify,
    "kmin": _kmin,
    "shift": _shift,
    "quotient": _quotient,
    "profile": _profile,
    "grothendieck": _grothendieck,
    "qsub": _qsub,
    "verify": _verify,
}


def _echo(argv: Sequence[str], args: argparse.Namespace | None) -> dict:
    out: dict[str, Any] = {"argv": list(argv)}
    if args is not None:
        out["verb"] = args.verb
    return out


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    """Execute a command line; returns the exit code and the report."""
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    args = None
    artifact = None
    try:
        args = build_parser().parse_args(argv)
        status, payload, artifact = HANDLERS[args.verb](args)
    except UsageError as exc:
        status, payload = FAILED, {"error": f"usage: {exc}"}
    except io.ParseError as exc:
        status, payload = FAILED, {"error": str(exc), "file": exc.path, "line": exc.line}
    except (ValueError, RuntimeError, ZeroDivisionError) as exc:
        status, payload = FAILED, {"error": str(exc)}
    report = {
        "command": _echo(argv, args),
        "status": status,
        "payload": payload,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    if args is not None and args.out:
        target = artifact if artifact is not None else report
        with open(args.out, "w") as fh:
            fh.write(target if isinstance(target, str) else json.dumps(target, indent=2, sort_keys=True) + "\n")
    return EXIT[status], report


def _summary(report: dict) -> str:
    verb = report["command"].get("verb", "?")
    line = f"{verb}: {report['status']} in {report['timing']['seconds']:.3f}s"
    err = report["payload"].get("error") if isinstance(report["payload"], dict) else None
    return f"{line} ({err})" if err else line


def main(argv: Sequence[str] | None = None) -> int:
    code, report = run(argv)
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    sys.stderr.write(_summary(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
