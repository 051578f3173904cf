"""Command-line interface.

One command per invocation; exit codes are 0 (success), 1 (usage),
2 (input validation), 3 (budget exceeded), 4 (certificate or
verification failure).  ``--machine`` switches every command to stable
line-oriented ``key: value`` output whose polynomial values round-trip
through the parsers in this package.

Input paths are used as given when the file exists; otherwise the name
is looked up among the bundled data files, so ``diskfill alexander
w22.pres`` works from anywhere.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import data_path
from .errors import BudgetError, CertificateError, DiskfillError, InputError
from .front import (
    check_certificate,
    classical_invariants,
    compose_certificates,
    connected_sum,
    orient,
    parse_certificate,
    parse_front,
    render_certificate,
    render_front,
    validate,
)
from .fox import alexander_matrix, alexander_polynomial
from .groups import (
    check_finite_hom,
    exponent_matrix,
    h1,
    is_image_abelian,
    iter_homs,
    parse_presentation,
    parse_weights,
    perm_from_cycles,
    smith_normal_form,
    validate_abelianization,
    z_surjection,
)
from .kauffman import kauffman_F, parse_pd, tb_upper_bound
from .laurent import min_deg_a, unit_equivalent

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve(path):
    p = Path(path)
    if p.is_file():
        return p
    try:
        return data_path(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None


def _read(path):
    return _resolve(path).read_text()


class _Out:
    """Uniform printer for the two output modes."""

    def __init__(self, machine):
        self.machine = machine

    def field(self, key, value, label=None):
        if self.machine:
            print(f"{key}: {value}")
        else:
            print(f"{label or key}: {value}")

    def note(self, text):
        if not self.machine:
            print(text)


def _load_presentation(path):
    pf = parse_presentation(_read(path))
    return pf


def _weights_for(pf, map_spec):
    if map_spec:
        weights = parse_weights(map_spec, pf.presentation.gens)
        if not validate_abelianization(pf.presentation, weights):
            raise InputError("the given map does not kill every relator")
        return weights
    if pf.maps:
        return pf.maps[0]
    return z_surjection(pf.presentation)


def _render_weights(gens, weights):
    return " ".join(f"{g}={w}" for g, w in zip(gens, weights))


# -- commands -----------------------------------------------------------------

def cmd_alexander(args):
    out = _Out(args.machine)
    pf = _load_presentation(args.presentation)
    weights = _weights_for(pf, args.map)
    pres = pf.presentation
    out.field("h1", h1(pres))
    out.field("map", _render_weights(pres.gens, weights))
    matrix = alexander_matrix(pres, weights)
    for i, row in enumerate(matrix.entries, start=1):
        out.field(f"matrix_row_{i}", "[" + ", ".join(str(e) for e in row) + "]")
    out.field("polynomial", alexander_polynomial(pres, weights), "alexander polynomial")
    return 0


def cmd_compare(args):
    out = _Out(args.machine)
    polys = []
    for path in (args.presentation_a, args.presentation_b):
        pf = _load_presentation(path)
        if h1(pf.presentation).free_rank != 1:
            raise InputError(
                f"{path}: H1 free rank is {h1(pf.presentation).free_rank}, need 1"
            )
        polys.append(alexander_polynomial(pf.presentation, _weights_for(pf, None)))
    out.field("polynomial_a", polys[0])
    out.field("polynomial_b", polys[1])
    allow = not args.units_only
    out.field("equivalence", "units and inversion" if allow else "units only")
    distinct = not unit_equivalent(polys[0], polys[1], allow_inversion=allow)
    out.field("verdict", "DISTINCT" if distinct else "INDISTINGUISHABLE")
    if distinct:
        out.note("the groups (and the disk exteriors) are not isomorphic")
    return 0


def cmd_tb(args):
    out = _Out(args.machine)
    front = parse_front(_read(args.front))
    validate(front)
    invariants = classical_invariants(orient(front))
    out.field("components", len(invariants))
    for i, (tb, rot) in enumerate(invariants, start=1):
        out.field(f"tb_{i}", tb, f"tb (component {i})")
        out.field(f"rot_{i}", rot, f"rot (component {i})")
    return 0


def cmd_check_filling(args):
    out = _Out(args.machine)
    front = parse_front(_read(args.front))
    cert = parse_certificate(_read(args.certificate))
    report = check_certificate(front, cert)
    out.field("result", "ACCEPT")
    out.field("pinches", report.pinches)
    out.field("deaths", report.deaths)
    out.field("euler", report.euler, "euler characteristic")
    out.field("genus", report.genus if report.genus is not None else "undefined")
    out.field("tb", report.tb)
    out.field("tb_check", "ok" if report.tb_matches else "MISMATCH")
    if not report.tb_matches:
        raise CertificateError(
            f"tb {report.tb} != -euler {-report.euler}: front and surface disagree"
        )
    return 0


def cmd_connect(args):
    out = _Out(args.machine)
    if len(args.fronts) < 2:
        raise UsageError("connect needs at least two fronts")
    if len(args.certs or ()) != len(args.fronts):
        raise UsageError("need exactly one certificate per front (--certs)")
    fronts = [parse_front(_read(p)) for p in args.fronts]
    certs = [parse_certificate(_read(p)) for p in args.certs]
    total = fronts[0]
    cert = certs[0]
    for f, c in zip(fronts[1:], certs[1:]):
        cert = compose_certificates(total, cert, c)
        total = connected_sum(total, f)
    report = check_certificate(total, cert)
    front_path = Path(args.out_front)
    cert_path = Path(args.out_cert)
    front_path.write_text(render_front(total, header="connected sum front"))
    cert_path.write_text(render_certificate(cert, header="composed filling certificate"))
    out.field("front", front_path)
    out.field("certificate", cert_path)
    out.field("tb", classical_invariants(orient(total))[0][0])
    out.field("euler", report.euler)
    out.field("result", "ACCEPT")
    return 0


def cmd_kauffman(args):
    out = _Out(args.machine)
    diagram = parse_pd(_read(args.pd))
    value = kauffman_F(diagram, budget=args.budget_crossings)
    out.field("polynomial", value, "kauffman polynomial F")
    if value:
        out.field("min_deg_a", min_deg_a(value))
    return 0


def cmd_tb_bound(args):
    out = _Out(args.machine)
    diagram = parse_pd(_read(args.pd))
    out.field("bound", tb_upper_bound(diagram, budget=args.budget_crossings), "tb upper bound")
    return 0


def _parse_witness(text, gens, n):
    images = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, cycles = line.partition(" ")
        if name not in gens:
            raise InputError(f"witness line {lineno}: unknown generator {name!r}")
        images[name] = perm_from_cycles(cycles, n)
    missing = [g for g in gens if g not in images]
    if missing:
        raise InputError(f"witness missing generators: {' '.join(missing)}")
    return tuple(images[g] for g in gens)


def cmd_homs(args):
    out = _Out(args.machine)
    pf = _load_presentation(args.presentation)
    pres = pf.presentation
    if args.witness:
        images = _parse_witness(_read(args.witness), pres.gens, args.symbols)
        ok = check_finite_hom(pres, images)
        out.field("witness_valid", "yes" if ok else "no")
        if ok:
            out.field("image_abelian", "yes" if is_image_abelian(images) else "no")
        return 0 if ok else EXIT_VERIFY
    if args.symbols > 5:
        raise BudgetError(
            "exhaustive enumeration is limited to 5 symbols; "
            "validate an explicit assignment with --witness instead"
        )
    count = 0
    witness = None
    for images in iter_homs(pres, args.symbols, budget=args.budget_homs):
        count += 1
        if witness is None and not is_image_abelian(images):
            witness = images
    out.field("count", count)
    if witness is None:
        out.field("nonabelian_witness", "none")
    else:
        rendered = " ".join(
            f"{g}={_cycles(p)}" for g, p in zip(pres.gens, witness)
        )
        out.field("nonabelian_witness", rendered)
    return 0


def _cycles(perm):
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        cycle = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cycle.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(k + 1) for k in cycle) + ")")
    return "".join(parts) if parts else "()"


def cmd_snf(args):
    out = _Out(args.machine)
    pf = _load_presentation(args.presentation)
    matrix = exponent_matrix(pf.presentation)
    if not matrix:
        out.field("matrix", "empty")
        return 0
    d, u, v = smith_normal_form(matrix)
    for name, rows in (("matrix", matrix), ("d", d), ("u", u), ("v", v)):
        for i, row in enumerate(rows, start=1):
            out.field(f"{name}_row_{i}", "[" + ", ".join(str(x) for x in row) + "]")
    return 0


# -- wiring ---------------------------------------------------------------------

def _build_parser():
    parser = _Parser(prog="diskfill", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--machine", action="store_true", help="key: value output")
        return p

    p = add("alexander", cmd_alexander, help="Alexander polynomial of a presentation")
    p.add_argument("presentation")
    p.add_argument("--map", help="weight map, e.g. x1=1,x2=-1,x3=1")

    p = add("compare", cmd_compare, help="compare two presentations' Alexander polynomials")
    p.add_argument("presentation_a")
    p.add_argument("presentation_b")
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--allow-inversion", action="store_true", default=True,
        help="quotient by t -> t^-1 as well as units (the default)",
    )
    group.add_argument(
        "--units-only", action="store_true",
        help="compare up to units +-t^k only",
    )

    p = add("tb", cmd_tb, help="Thurston-Bennequin and rotation numbers of a front")
    p.add_argument("front")

    p = add("check-filling", cmd_check_filling, help="replay a filling certificate")
    p.add_argument("front")
    p.add_argument("certificate")

    p = add("connect", cmd_connect, help="connected sum of fronts with composed certificate")
    p.add_argument("fronts", nargs="+")
    p.add_argument("--certs", nargs="+", required=True)
    p.add_argument("--out-front", default="connected.front")
    p.add_argument("--out-cert", default="connected.cert")

    p = add("kauffman", cmd_kauffman, help="Kauffman polynomial of a PD diagram")
    p.add_argument("pd")
    p.add_argument("--budget-crossings", type=int, default=16, metavar="N")

    p = add("tb-bound", cmd_tb_bound, help="Kauffman upper bound for tb")
    p.add_argument("pd")
    p.add_argument("--budget-crossings", type=int, default=16, metavar="N")

    p = add("homs", cmd_homs, help="count homomorphisms into a symmetric group")
    p.add_argument("presentation")
    p.add_argument("symbols", type=int)
    p.add_argument("--budget-homs", type=int, default=1_000_000, metavar="N")
    p.add_argument("--witness", help="file with one 'gen (cycles)' line per generator")

    p = add("snf", cmd_snf, help="Smith normal form of the exponent matrix")
    p.add_argument("presentation")

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DiskfillError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
