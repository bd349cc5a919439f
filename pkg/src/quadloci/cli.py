"""Command-line front end.

Subcommands cover every computation; all output is JSON (rationals are
serialized as strings "p/q" or "p", never as floats), deterministic for a
fixed input regardless of the worker count.

    class sigma --e E --f F --r R [--method M] [--basis roots|chern]
    class pencil --e E [--presentation sub|quot]
    class projectivize --class EXPR --weights FILE [--fixed-point J]
    moduli petri --g G
    moduli slope --series {1,2} --ell L [--form closed|deficit]
    moduli slope --custom --r R --s S --a A
    moduli dp12
    k3 rank4 [--g G]
    k3 kosz --i I
    hurwitz [--k K]
    verify all [--max-e N] [--jobs J] [--thorough]

Exit codes: 0 on success, 1 on verification failure, 2 on usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb

from .algebra import (
    ALPHA,
    BETA,
    Polynomial,
    QQ,
    alpha,
    gamma_var,
    param,
    sym,
    var_name,
    xi,
)
from . import loci, moduli, verify
from .symfunc import a_const


class ClassSyntaxError(Exception):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class UnknownSymbol(Exception):
    pass


# ---------------------------------------------------------------------------
# expression parser for classes
# ---------------------------------------------------------------------------

_TOKEN_NUM = "num"
_TOKEN_NAME = "name"
_TOKEN_OP = "op"
_TOKEN_END = "end"


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            # rational literal p/q (no spaces around the slash)
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append((_TOKEN_NUM, QQ(int(text[i:j]), int(text[j + 1:k])), i))
                i = k
            else:
                tokens.append((_TOKEN_NUM, QQ(int(text[i:j])), i))
                i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_TOKEN_NAME, text[i:j], i))
            i = j
            continue
        if c in "+-*^()":
            tokens.append((_TOKEN_OP, c, i))
            i += 1
            continue
        raise ClassSyntaxError("unexpected character %r" % c, i)
    tokens.append((_TOKEN_END, None, n))
    return tokens


class ClassExpr:
    """Tiny AST for class expressions: tuples tagged num/sym/add/sub/mul/
    pow/neg."""

    def __init__(self, node):
        self.node = node

    def __eq__(self, other):
        return isinstance(other, ClassExpr) and self.node == other.node

    def to_text(self) -> str:
        return _print_node(self.node)

    def evaluate(self, resolver=None, assignments=None) -> Polynomial:
        """Evaluate to a Polynomial; `assignments` maps symbol names to
        rational values substituted before resolution."""
        return _eval_node(self.node, resolver or resolve_symbol, assignments)


def parse_class(text: str) -> ClassExpr:
    """Parse an infix class expression with one-token lookahead.  The
    grammar has +, -, *, ^ and parentheses; no implicit multiplication;
    exponents are non-negative integer literals."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]]

    def advance():
        tok = tokens[pos[0]]
        pos[0] += 1
        return tok

    def expect_op(op):
        kind, val, at = advance()
        if kind != _TOKEN_OP or val != op:
            raise ClassSyntaxError("expected %r" % op, at)

    def parse_expr():
        node = parse_term()
        while True:
            kind, val, _ = peek()
            if kind == _TOKEN_OP and val in "+-":
                advance()
                rhs = parse_term()
                node = ("add" if val == "+" else "sub", node, rhs)
            else:
                return node

    def parse_term():
        node = parse_factor()
        while True:
            kind, val, _ = peek()
            if kind == _TOKEN_OP and val == "*":
                advance()
                node = ("mul", node, parse_factor())
            else:
                return node

    def parse_factor():
        node = parse_atom()
        kind, val, at = peek()
        if kind == _TOKEN_OP and val == "^":
            advance()
            kind, val, at = advance()
            if kind != _TOKEN_NUM or val.denominator != 1 or val < 0:
                raise ClassSyntaxError(
                    "exponent must be a non-negative integer literal", at
                )
            return ("pow", node, int(val))
        return node

    def parse_atom():
        kind, val, at = advance()
        if kind == _TOKEN_NUM:
            return ("num", val)
        if kind == _TOKEN_NAME:
            return ("sym", val)
        if kind == _TOKEN_OP and val == "(":
            node = parse_expr()
            expect_op(")")
            return node
        if kind == _TOKEN_OP and val == "-":
            return ("neg", parse_atom())
        raise ClassSyntaxError("unexpected token %r" % (val,), at)

    node = parse_expr()
    kind, val, at = peek()
    if kind != _TOKEN_END:
        raise ClassSyntaxError("trailing input %r" % (val,), at)
    return ClassExpr(node)


def _print_node(node) -> str:
    tag = node[0]
    if tag == "num":
        v = node[1]
        return str(v)
    if tag == "sym":
        return node[1]
    if tag == "neg":
        return "-%s" % _wrap(node[1])
    if tag == "pow":
        return "%s^%d" % (_wrap(node[1]), node[2])
    op = {"add": " + ", "sub": " - ", "mul": "*"}[tag]
    lhs, rhs = _print_node(node[1]), _print_node(node[2])
    if tag == "mul":
        lhs, rhs = _wrap(node[1]), _wrap(node[2])
    return "%s%s%s" % (lhs, op, rhs)


def _wrap(node) -> str:
    if node[0] in ("num", "sym", "pow"):
        return _print_node(node)
    return "(%s)" % _print_node(node)


def resolve_symbol(name: str):
    """Map a CLI symbol name to a polynomial variable."""
    if len(name) >= 2 and name[0] in "ab" and name[1:].isdigit():
        idx = int(name[1:])
        return (ALPHA, idx) if name[0] == "a" else (BETA, idx)
    if name in ("g1", "g2"):
        return gamma_var(int(name[1]))
    if name == "xi":
        return xi()
    if name in ("g", "k", "ell", "n", "i", "r", "s", "d", "N", "beta"):
        return param(name)
    if name in ("lambda", "kappa30", "kappa11", "gamma", "kappa1",
                "D0", "D2", "D3", "D11") or name.startswith("delta"):
        return sym(name)
    if name.startswith("c") and len(name) >= 3 and name[-1] in "EF":
        return sym(name)
    raise UnknownSymbol(name)


def _eval_node(node, resolver, assignments=None) -> Polynomial:
    tag = node[0]
    if tag == "num":
        return Polynomial.const(node[1])
    if tag == "sym":
        if assignments and node[1] in assignments:
            return Polynomial.const(QQ(assignments[node[1]]))
        return Polynomial.variable(resolver(node[1]))
    if tag == "neg":
        return -_eval_node(node[1], resolver, assignments)
    if tag == "pow":
        return _eval_node(node[1], resolver, assignments) ** node[2]
    a = _eval_node(node[1], resolver, assignments)
    b = _eval_node(node[2], resolver, assignments)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    return a * b


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------

def q_str(x) -> str:
    if isinstance(x, Polynomial):
        x = x.constant_value()
    if hasattr(x, "num") and hasattr(x, "den"):  # RationalFunction
        x = x.num.constant_value() / x.den.constant_value()
    q = QQ(x)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def parse_q(s: str):
    if "/" in s:
        a, b = s.split("/")
        return QQ(int(a), int(b))
    return QQ(int(s))


def poly_document(p: Polynomial, command: str, parameters: dict, notes=()) -> dict:
    coeffs = {}
    for mono, c in p.terms.items():
        key = "*".join(
            "%s^%d" % (var_name(v), e) if e > 1 else var_name(v) for v, e in mono
        ) or "1"
        coeffs[key] = q_str(c)
    basis = sorted(coeffs)
    return {
        "basis": basis,
        "coefficients": {k: coeffs[k] for k in basis},
        "metadata": {"command": command, "parameters": parameters,
                     "notes": list(notes)},
    }


def taut_document(cls, command: str, parameters: dict, notes=()) -> dict:
    coeffs = {}
    for s, c in cls.coeffs.items():
        c = c.reduce()
        if c.is_polynomial() and c.as_polynomial().is_constant():
            coeffs[s] = q_str(c)
        else:
            coeffs[s] = str(c)
    basis = sorted(coeffs)
    return {
        "basis": basis,
        "coefficients": {k: coeffs[k] for k in basis},
        "metadata": {"command": command, "parameters": parameters,
                     "notes": list(notes)},
    }


def _emit(doc, args) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _default_jobs() -> int:
    env = os.environ.get("QUADLOCI_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_class_sigma(args) -> int:
    e, f, r = args.e, args.f, args.r
    notes = []
    if args.method in ("closed", "residue"):
        if comb(e + 1, 2) - f != comb(r + 1, 2):
            raise loci.NotDivisorial(
                "closed/residue methods need the divisorial f = C(e+1,2)-C(r+1,2)"
            )
        cls = (
            loci.closed_divisor_class(e, r)
            if args.method == "closed"
            else loci.residue_divisor_class(e, r)
        )
        if args.basis == "roots":
            from .algebra import expand_symmetric

            cls = expand_symmetric(
                expand_symmetric(cls, ALPHA, e, symbol=lambda i: sym("c%dE" % i)),
                BETA, f, symbol=lambda j: sym("c%dF" % j),
            )
    else:
        cls = loci.localization_class(e, f, r, jobs=args.jobs)
        if args.basis == "chern":
            cls = loci.to_chern_symbols(cls, e, f)
    doc = poly_document(
        cls,
        "class sigma",
        {"e": e, "f": f, "r": r, "method": args.method, "basis": args.basis},
        notes,
    )
    _emit(doc, args)
    return 0


def cmd_class_pencil(args) -> int:
    if args.presentation == "sub":
        cls = loci.pencil_class_sub(args.e)
    else:
        cls = loci.pencil_class_quot(args.e)
    doc = poly_document(
        cls, "class pencil", {"e": args.e, "presentation": args.presentation}
    )
    _emit(doc, args)
    return 0


def cmd_class_projectivize(args) -> int:
    with open(args.weights) as fh:
        data = json.load(fh)
    smatrix = data["s"]
    rvec = tuple(int(x) for x in data["r"])
    rtot = int(data["r_total"] if "r_total" in data else data["rt"])
    forms = []
    for row in smatrix:
        form = Polynomial.zero()
        for i, coeff in enumerate(row, start=1):
            form = form + int(coeff) * Polynomial.variable(alpha(i))
        forms.append(form)
    weights = loci.WeightSet(tuple(forms))
    scal = loci.ScalarData(rvec, rtot)
    cls = parse_class(getattr(args, "cls")).evaluate()
    if args.fixed_point is None:
        out = loci.projectivize(cls, scal, weights)
    else:
        out = loci.fixed_point_restriction(cls, weights, args.fixed_point, scal)
    doc = poly_document(
        out,
        "class projectivize",
        {
            "class": getattr(args, "cls"),
            "weights": args.weights,
            "fixed_point": args.fixed_point,
        },
    )
    _emit(doc, args)
    return 0


def cmd_moduli_petri(args) -> int:
    cls = moduli.petri_class(args.g)
    coeffs = {"lambda": q_str(cls.lam)}
    for i, b in sorted(cls.deltas.items()):
        coeffs["delta%d" % i] = q_str(-_qq(b))
    doc = {
        "basis": sorted(coeffs),
        "coefficients": {k: coeffs[k] for k in sorted(coeffs)},
        "metadata": {
            "command": "moduli petri",
            "parameters": {"g": args.g},
            "slope": _rf_str(cls.slope()),
            "notes": [cls.note] if cls.note else [],
        },
    }
    _emit(doc, args)
    return 0


def _qq(x):
    if isinstance(x, Polynomial):
        return x.constant_value()
    if hasattr(x, "num"):
        return x.num.constant_value() / x.den.constant_value()
    return QQ(x)


def _rf_str(x):
    try:
        return q_str(x)
    except Exception:
        return str(x)


def cmd_moduli_slope(args) -> int:
    if args.custom:
        if args.r is None or args.s is None or args.a is None:
            raise SystemExit(2)
        p = moduli.SeriesParams(
            r=args.r, s=args.s, a=args.a,
            g=args.r * args.s + args.s, d=args.r * args.s + args.r,
        )
        rep = moduli.fit_calibration()
        res = moduli.virtual_slope_from_pushforward(p, rep.fitted)
        doc = {
            "slope": _rf_str(res.slope),
            "metadata": {
                "command": "moduli slope --custom",
                "parameters": {"r": args.r, "s": args.s, "a": args.a},
                "calibration_notes": list(rep.notes),
                "boundary_effective": res.boundary_effective,
            },
        }
        _emit(doc, args)
        return 0
    value = moduli.pelda_slope(args.series, args.ell, args.form)
    doc = {
        "slope": _rf_str(value),
        "metadata": {
            "command": "moduli slope",
            "parameters": {"series": args.series, "ell": args.ell,
                           "form": args.form},
            "genus": (4 * args.ell - 1) * (9 * args.ell - 1)
            if args.series == 1
            else 4 * (3 * args.ell + 1) * (2 * args.ell + 1),
        },
    }
    _emit(doc, args)
    return 0


def cmd_moduli_dp12(args) -> int:
    d = moduli.dp12_slope()
    doc = {
        "slope": q_str(d.slope),
        "metadata": {
            "command": "moduli dp12",
            "below_bound": d.below_bound,
            "pencil_coefficients": list(d.pencil_coefficients),
            "notes": [
                "prefactor %d from the pencil formula vs %d in the "
                "application; overall scale only"
                % (d.prefactor_from_formula, d.prefactor_in_application)
            ],
        },
    }
    _emit(doc, args)
    return 0


def cmd_k3_rank4(args) -> int:
    cls = moduli.k3_rank4_class(args.g if args.g is not None else "g")
    params = {"g": args.g if args.g is not None else "symbolic"}
    notes = ["coefficients are in units of the prefactor A_(g+1)^(g-3)"]
    if args.g is not None:
        notes.append("prefactor value %s" % q_str(a_const(args.g + 1, args.g - 3)))
    doc = taut_document(cls, "k3 rank4", params, notes)
    _emit(doc, args)
    return 0


def cmd_k3_kosz(args) -> int:
    i = args.i if args.i is not None else "i"
    cls = moduli.kosz_class(i)
    rg, rh, closed = moduli.kosz_rank(i if isinstance(i, int) else "i")
    doc = {
        "basis": ["gamma", "lambda"],
        "coefficients": {
            "lambda": _rf_str(cls.lam),
            "gamma": _rf_str(cls.gamma),
        },
        "metadata": {
            "command": "k3 kosz",
            "parameters": {"i": args.i if args.i is not None else "symbolic"},
            "units": cls.prefactor_units,
            "unknown_term": "alpha * D11 with alpha undetermined",
            "ranks": {
                "syzygy_side": _rf_str(rg),
                "polynomial_side": _rf_str(rh),
                "closed_count": _rf_str(closed),
            },
        },
    }
    _emit(doc, args)
    return 0


def cmd_hurwitz(args) -> int:
    rep = moduli.hurwitz_report()
    doc = {
        "canonical_class": {
            s: str(c.reduce()) for s, c in rep.canonical_in_gamma.coeffs.items()
        },
        "rank4_class_units_A": {
            s: str(c.reduce()) for s, c in rep.rank4_class.coeffs.items()
        },
        "structural_identity": {
            "lhs": str(rep.structural_lhs),
            "rhs": str(rep.structural_rhs),
            "holds": rep.structural_identity_holds,
        },
        "hodge_boundary_coefficients": {
            "D0": str(rep.hodge_d0),
            "D2_derived": str(rep.hodge_d2_derived),
            "D2_published": str(rep.hodge_d2_published),
            "D2_factor_two": rep.hodge_d2_factor_two,
            "D3": str(rep.hodge_d3),
        },
        "rank4_coefficient": {
            "derived": "k / A_k^(k-4)",
            "published": q_str(rep.hrk4_published_coeff),
            "samples": {
                str(kv): q_str(v[0]) for kv, v in rep.hrk4_coeff_samples.items()
            },
        },
        "alpha_solved": str(rep.alpha_solved),
        "metadata": {"command": "hurwitz",
                     "parameters": {"k": args.k if args.k else "symbolic"}},
    }
    if args.k:
        doc["rank4_prefactor"] = q_str(a_const(args.k, args.k - 4))
    _emit(doc, args)
    return 0


def cmd_verify(args) -> int:
    results = verify.run_all(max_e=args.max_e, jobs=args.jobs,
                             thorough=args.thorough)
    table = verify.render_table(results)
    fails = verify.failures(results)
    if getattr(args, "out", None):
        doc = {
            "results": [
                {
                    "group": group,
                    "tag": row.tag,
                    "computed": row.computed,
                    "expected": row.expected,
                    "status": row.status,
                    "note": row.note,
                }
                for group, row in results
            ],
            "failures": [row.tag for row in fails],
        }
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(table)
    return 0 if not fails else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="quadloci",
        description="exact divisor classes of quadric degeneracy loci and "
        "their moduli-space applications",
    )
    top.add_argument("--out", help="write the JSON document to a file")
    top.add_argument("--jobs", type=int, default=_default_jobs(),
                     help="worker processes (default: QUADLOCI_JOBS or 1)")
    sub = top.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("class", help="equivariant classes")
    pcs = pc.add_subparsers(dest="subcommand", required=True)
    sigma = pcs.add_parser("sigma", help="corank-r locus of Sym^2 E -> F")
    sigma.add_argument("--e", type=int, required=True)
    sigma.add_argument("--f", type=int, required=True)
    sigma.add_argument("--r", type=int, required=True)
    sigma.add_argument("--method", default="localization",
                       choices=["localization", "closed", "residue"])
    sigma.add_argument("--basis", default="chern", choices=["roots", "chern"])
    sigma.set_defaults(fn=cmd_class_sigma)
    pencil = pcs.add_parser("pencil", help="degenerate-pencil divisor")
    pencil.add_argument("--e", type=int, required=True)
    pencil.add_argument("--presentation", default="quot", choices=["sub", "quot"])
    pencil.set_defaults(fn=cmd_class_pencil)
    proj = pcs.add_parser("projectivize", help="projectivized cone class")
    proj.add_argument("--class", dest="cls", required=True,
                      help="class expression in a1, a2, ...")
    proj.add_argument("--weights", required=True,
                      help="JSON file with s (matrix), r (vector), r_total")
    proj.add_argument("--fixed-point", type=int, default=None,
                      help="restrict to the j-th coordinate fixed point "
                      "(0-based)")
    proj.set_defaults(fn=cmd_class_projectivize)

    pm = sub.add_parser("moduli", help="divisors on moduli of curves")
    pms = pm.add_subparsers(dest="subcommand", required=True)
    petri = pms.add_parser("petri", help="rank-3 quadric divisor class")
    petri.add_argument("--g", type=int, required=True)
    petri.set_defaults(fn=cmd_moduli_petri)
    slope = pms.add_parser("slope", help="slopes of quadric-rank divisors")
    slope.add_argument("--series", type=int, choices=[1, 2])
    slope.add_argument("--ell", type=int)
    slope.add_argument("--form", default="closed", choices=["closed", "deficit"])
    slope.add_argument("--custom", action="store_true")
    slope.add_argument("--r", type=int)
    slope.add_argument("--s", type=int)
    slope.add_argument("--a", type=int)
    slope.set_defaults(fn=cmd_moduli_slope)
    dp12 = pms.add_parser("dp12", help="degenerate-pencil slope in genus 12")
    dp12.set_defaults(fn=cmd_moduli_dp12)

    pk = sub.add_parser("k3", help="divisors on moduli of polarized surfaces")
    pks = pk.add_subparsers(dest="subcommand", required=True)
    rank4 = pks.add_parser("rank4", help="rank-4 quadric divisor")
    rank4.add_argument("--g", type=int, default=None)
    rank4.set_defaults(fn=cmd_k3_rank4)
    kosz = pks.add_parser("kosz", help="middle-syzygy divisor")
    kosz.add_argument("--i", type=int, default=None)
    kosz.set_defaults(fn=cmd_k3_kosz)

    hur = sub.add_parser("hurwitz", help="cover-space divisor identities")
    hur.add_argument("--k", type=int, default=None)
    hur.set_defaults(fn=cmd_hurwitz)

    ver = sub.add_parser("verify", help="run the verification suite")
    vers = ver.add_subparsers(dest="subcommand", required=True)
    verall = vers.add_parser("all")
    verall.add_argument("--max-e", type=int, default=5)
    verall.add_argument("--jobs", type=int, default=_default_jobs())
    verall.add_argument("--thorough", action="store_true",
                        help="include the slow high-corank agreement checks")
    verall.set_defaults(fn=cmd_verify)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "jobs"):
        args.jobs = _default_jobs()
    try:
        return args.fn(args)
    except (
        ClassSyntaxError,
        UnknownSymbol,
        loci.PreconditionViolated,
        loci.NotDivisorial,
        loci.ScalarConditionViolated,
        moduli.UnsupportedParam,
        moduli.InvariantViolated,
        FileNotFoundError,
        KeyError,
    ) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
