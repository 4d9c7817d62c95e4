"""Command-line entry point.

Each command runs one sweep or computation against a bracket definition
file (the bundled quadratic-bracket file by default), prints a human
report, and optionally writes JSON (`--json`) and figures (`--plot`).
Exit status is 0 iff every falsifiable check in the run passed;
investigative comparisons (the lattice genus proxy, the stated-vs-flipped
pairing symmetry) never affect it.  Parse and I/O failures exit 2 with a
machine-readable error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dbracket, integrable, polyvec, repalg, repn
from .deffile import DefinitionError, bundled_path, load_definition_file
from .exprs import ExprSyntaxError, parse_element
from .ncalg import NonInvertibleError, render_word
from .reports import SCHEMA_VERSION, report_emit


def _add_common(p, bracket=True):
    if bracket:
        p.add_argument("--bracket", default=None, help="definition file (default: bundled kontsevich.ncb)")
        p.add_argument("--name", default=None, help="bracket section name within the file")
    p.add_argument("--json", dest="json_out", default=None, help="write the JSON report here")
    p.add_argument("--deterministic", action="store_true", help="zero timing fields for byte-stable output")


def _load(args):
    path = args.bracket if args.bracket else bundled_path("kontsevich.ncb")
    return load_definition_file(path)


def _element(df, name, sig):
    if name in df.elements:
        return df.elements[name]
    return parse_element(name, sig)


def _emit(args, report, extra_exit_ok=True):
    sys.stdout.write(report.to_text(deterministic=args.deterministic))
    if args.json_out:
        with open(args.json_out, "wb") as fh:
            fh.write(report_emit(report, "json", deterministic=args.deterministic))
    return 0 if (report.passed and extra_exit_ok) else 1


def _default_len(sig):
    # inverses quadruple the alphabet; keep default sweeps at minutes scale
    return 4 if any(sig.invertible) else 5


def cmd_verify(args):
    df = _load(args)
    db = df.bracket(args.name)
    skew = args.skew_len if args.skew_len is not None else _default_len(db.sig)
    ja = args.jacobi_len_a or args.jacobi_len or _default_len(db.sig)
    jb = args.jacobi_len_b or args.jacobi_len or ja
    report = dbracket.verify_axioms(
        db,
        skew_max_len=skew,
        jacobi_len_a=ja,
        jacobi_len_b=jb,
        jacobi_c_mode=args.jacobi_c_mode,
        jacobi_c_len=args.jacobi_c_len,
        threads=args.threads,
    )
    return _emit(args, report)


def cmd_casimir(args):
    df = _load(args)
    db = df.bracket(args.name)
    c = _element(df, args.element, db.sig)
    report = dbracket.casimir_check(db, c, max_len=args.max_len, side=args.side)
    return _emit(args, report)


def cmd_defect(args):
    df = _load(args)
    db = df.bracket(args.name)

    def word_of(src):
        p = parse_element(src, db.sig)
        if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
            raise DefinitionError(f"{src!r} must be a single word")
        return next(iter(p.terms))

    a1, a2, b, c = (word_of(s) for s in (args.a1, args.a2, args.b, args.c))
    defect = dbracket.jacobiator_defect(db, a1, a2, b, c)
    closed = dbracket.jacobiator_defect_closed_form(db, a1, a2, b, c)
    agree = defect == closed
    print(f"defect = {defect}")
    print(f"closed form {'agrees' if agree else 'DISAGREES'}")
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "inputs": [args.a1, args.a2, args.b, args.c],
            "defect": str(defect),
            "closed_form_agrees": agree,
        }
        with open(args.json_out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if agree else 1


def cmd_bivector_check(args):
    report = polyvec.verify_kontsevich_bivector(max_word_len=args.max_word_len)
    return _emit(args, report)


def cmd_moduli(args):
    df = _load(args)
    db = df.bracket(args.name)
    casimir = None
    if args.casimir_element:
        casimir = _element(df, args.casimir_element, db.sig)
    elif "c" in df.elements:
        casimir = df.elements["c"]
    report = repn.moduli_dims(
        db,
        args.dim,
        max_word_len=args.max_word_len,
        samples=args.samples,
        seed=args.seed,
        casimir=casimir,
    )
    sys.stdout.write(report.to_text(deterministic=args.deterministic))
    if not report.stabilized:
        print("warning: ranks still growing at the word-length bound", file=sys.stderr)
    if args.json_out:
        with open(args.json_out, "wb") as fh:
            fh.write(report_emit(report, "json", deterministic=args.deterministic))
    if args.plot:
        from .plots import plot_moduli_trace

        plot_moduli_trace(report, args.plot)
    return 0


def cmd_rep_bracket(args):
    df = _load(args)
    db = df.bracket(args.name)

    def word_of(src):
        p = parse_element(src, db.sig)
        if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
            raise DefinitionError(f"{src!r} must be a single word")
        return next(iter(p.terms))

    x, y = word_of(args.x), word_of(args.y)
    rep = repn.random_rep(db.sig, args.dim, seed=args.seed)
    value = repn.induced_bracket_point(
        db, rep, x, args.i - 1, args.j - 1, y, args.k - 1, args.l - 1
    )
    print(
        f"{{phi({render_word(x, db.sig)})_{args.i}{args.j}, "
        f"phi({render_word(y, db.sig)})_{args.k}{args.l}}} = {value}"
    )
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "n": args.dim,
            "seed": args.seed,
            "value": str(value),
        }
        with open(args.json_out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_t_table(args):
    report = repn.t_table_check()
    return _emit(args, report)


def cmd_coalgebra_check(args):
    if args.comatrix:
        coal = repalg.comatrix_coalgebra(args.comatrix)
    else:
        df = _load(args)
        if args.coalgebra:
            coal = df.coalgebras[args.coalgebra]
        elif df.coalgebras:
            coal = next(iter(df.coalgebras.values()))
        else:
            raise DefinitionError("no coalgebra given; use --comatrix N or a file section")
    report = repalg.check_coalgebra(coal)
    return _emit(args, report)


def cmd_crosscheck_repalg(args):
    df = _load(args)
    db = df.bracket(args.name)
    rep = repn.random_rep(db.sig, args.dim, seed=args.seed)
    report = repalg.crosscheck_rep(db, args.dim, args.max_len, rep)
    return _emit(args, report)


def cmd_flow_check(args):
    report = integrable.hamiltonian_flow_check(
        n_random=args.random_words, max_len=args.max_len, seed=args.seed
    )
    return _emit(args, report)


def cmd_lax(args):
    report = integrable.lax_residual(negate_m=args.negative_control)
    if args.negative_control:
        ok = not report.passed
        sys.stdout.write(report.to_text(deterministic=args.deterministic))
        print("negative control: residual is nonzero as expected" if ok else "negative control FAILED to produce a residual")
        return 0 if ok else 1
    return _emit(args, report)


def cmd_commute(args):
    report = integrable.commutation_check(k_max=args.k_max, flow_orders=args.flow_orders)
    return _emit(args, report)


def cmd_spectral(args):
    curve = integrable.spectral_curve(args.dim, seed=args.seed)
    reference = args.dim * args.dim
    print(f"spectral curve at N = {curve.n}, seed {curve.seed}")
    print(f"  cleared by lam^{curve.clearing_exp}; total degree {curve.degree}")
    print(f"  Newton polygon: {curve.polygon.json_vertices()}")
    print(
        f"  interior lattice points: {curve.interior} "
        f"(reference genus {reference}: "
        f"{'matches' if curve.interior == reference else 'differs — investigative'})"
    )
    if args.emit_curve:
        with open(args.emit_curve, "w") as fh:
            fh.write(curve.curve.render(names=["lam", "nu"]) + "\n")
    if args.emit_polygon:
        with open(args.emit_polygon, "w") as fh:
            json.dump(curve.polygon.json_vertices(), fh)
            fh.write("\n")
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "n": curve.n,
            "seed": curve.seed,
            "clearing_exp": curve.clearing_exp,
            "degree": curve.degree,
            "polygon": curve.polygon.json_vertices(),
            "interior_lattice_points": curve.interior,
            "boundary_lattice_points": curve.boundary,
            "reference_genus": reference,
            "proxy_matches_reference": curve.interior == reference,
        }
        with open(args.json_out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if args.plot:
        from .plots import plot_polygon

        plot_polygon(
            curve.polygon,
            args.plot,
            title=f"Newton polygon, N = {curve.n} (degree {curve.degree})",
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncpoisson",
        description="Exact checks for double brackets and their representation-scheme geometry",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="weak skew-symmetry and Jacobi sweeps")
    _add_common(p)
    p.add_argument("--skew-len", type=int, default=None)
    p.add_argument("--jacobi-len", type=int, default=None, help="sets both argument bounds")
    p.add_argument("--jacobi-len-a", type=int, default=None)
    p.add_argument("--jacobi-len-b", type=int, default=None)
    p.add_argument("--jacobi-c-mode", choices=("generators", "words"), default="generators")
    p.add_argument("--jacobi-c-len", type=int, default=None)
    p.add_argument("--threads", type=int, default=dbracket.default_threads(),
                   help="worker processes (default: NCPOISSON_THREADS or 1)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("casimir", help="bracket with a candidate Casimir element")
    _add_common(p)
    p.add_argument("--element", default="c", help="named element or inline expression")
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.set_defaults(fn=cmd_casimir)

    p = sub.add_parser("defect", help="derivation defect of the Jacobi operator D1")
    _add_common(p)
    p.add_argument("--a1", required=True)
    p.add_argument("--a2", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(fn=cmd_defect)

    p = sub.add_parser("bivector-check", help="trace bivector vs the quadratic bracket")
    _add_common(p, bracket=False)
    p.add_argument("--max-word-len", type=int, default=3)
    p.set_defaults(fn=cmd_bivector_check)

    p = sub.add_parser("moduli", help="generic invariant/leaf dimensions")
    _add_common(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-word-len", type=int, default=None)
    p.add_argument("--samples", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--casimir-element", default=None)
    p.add_argument("--plot", default=None, help="render the stabilization trace here")
    p.set_defaults(fn=cmd_moduli)

    p = sub.add_parser("rep-bracket", help="one induced matrix-entry bracket value")
    _add_common(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_rep_bracket)

    p = sub.add_parser("t-table", help="N=2 invariant bracket table in trace coordinates")
    _add_common(p, bracket=False)
    p.set_defaults(fn=cmd_t_table)

    p = sub.add_parser("coalgebra-check", help="coalgebra axioms and pairing symmetry")
    _add_common(p)
    p.add_argument("--coalgebra", default=None, help="coalgebra section name")
    p.add_argument("--comatrix", type=int, default=None, help="use the comatrix coalgebra of this size")
    p.set_defaults(fn=cmd_coalgebra_check)

    p = sub.add_parser("crosscheck-repalg", help="representation-algebra bracket vs matrix entries")
    _add_common(p)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--max-len", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_crosscheck_repalg)

    p = sub.add_parser("flow-check", help="flow derivative vs Hamiltonian bracket")
    _add_common(p, bracket=False)
    p.add_argument("--random-words", type=int, default=50)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_flow_check)

    p = sub.add_parser("lax", help="Lax identity dL/dt = [L,M]")
    _add_common(p, bracket=False)
    p.add_argument("--negative-control", action="store_true")
    p.set_defaults(fn=cmd_lax)

    p = sub.add_parser("commute", help="involutivity of the trace integrals")
    _add_common(p, bracket=False)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--flow-orders", type=int, default=2)
    p.set_defaults(fn=cmd_commute)

    p = sub.add_parser("spectral", help="spectral curve, Newton polygon, genus proxy")
    _add_common(p, bracket=False)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-polygon", default=None)
    p.add_argument("--emit-curve", default=None)
    p.add_argument("--plot", default=None, help="render the Newton polygon here")
    p.set_defaults(fn=cmd_spectral)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (DefinitionError, ExprSyntaxError, NonInvertibleError, OSError) as e:
        json.dump({"error": {"type": type(e).__name__, "message": str(e)}}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
