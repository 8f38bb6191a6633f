"""Batch front end.

    cohinv <command> input.json [--assert] [--oracle-bound N] [--json | --text]

The input is one JSON document or a JSON array of documents.  Each document
has a "field", an optional "algebra" (default split), a "form" and, for the
two-form commands, an "other" form.  The output is one report per document
with the keys input_canonical, results, errors and version.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from . import algebras as alg
from . import hermitian as herm
from . import oracle
from . import pairs as pr
from . import quadforms as qf
from .cohomology import CohClass
from .errors import CohinvError, InvariantViolation, SchemaError
from .hermitian import HermForm
from .pairs import HermPair
from .quadforms import QuadForm
from .scalars import GF, QQ, sorted_places

COMMANDS = (
    "invariants",
    "is-hyperbolic",
    "is-isotropic",
    "witt-decompose",
    "trace-form",
    "equivalent",
    "relative-e3",
    "oracle-check",
)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _need(doc, key, path):
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected an object")
    if key not in doc:
        raise SchemaError(f"{path}: missing key {key!r}")
    return doc[key]


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: expected an integer")
    return value


def parse_field(doc, path="$.field"):
    kind = _need(doc, "kind", path)
    if kind == "Q":
        return QQ
    if kind == "GF":
        p = _int(_need(doc, "p", path), path + ".p")
        k = _int(doc.get("k", 1), path + ".k")
        modulus = doc.get("modulus")
        if modulus is not None:
            if not isinstance(modulus, list):
                raise SchemaError(f"{path}.modulus: expected a list of coefficients")
            modulus = [_int(c, f"{path}.modulus[{i}]") for i, c in enumerate(modulus)]
        try:
            return GF(p, k, modulus)
        except CohinvError as exc:
            raise InvariantViolation(f"{path}: {exc}") from None
    raise SchemaError(f"{path}.kind: unknown field kind {kind!r}")


def parse_scalar(F, value, path):
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{path}: expected an exact scalar (integer or 'p/q' string)")
    try:
        if F.kind == "Q":
            if isinstance(value, (int, str)):
                return F(value)
        else:
            if isinstance(value, int):
                return F(value)
            if isinstance(value, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in value):
                return F(value)
            if isinstance(value, str):
                return F(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{path}: {exc}") from None
    raise SchemaError(f"{path}: cannot read {value!r} as an element of {F!r}")


def parse_algebra(F, doc, path="$.algebra"):
    if doc is None:
        return alg.split_algebra(F)
    kind = _need(doc, "kind", path)
    try:
        if kind == "split":
            return alg.split_algebra(F)
        if kind == "quad_etale":
            return alg.quad_etale(F, parse_scalar(F, _need(doc, "c", path), path + ".c"))
        if kind == "quaternion":
            a = parse_scalar(F, _need(doc, "a", path), path + ".a")
            b = parse_scalar(F, _need(doc, "b", path), path + ".b")
            return alg.quaternion(F, a, b)
    except SchemaError:
        raise
    except CohinvError as exc:
        raise InvariantViolation(f"{path}: {exc}") from None
    raise SchemaError(f"{path}.kind: unknown algebra kind {kind!r}")


def parse_element(A, value, path):
    F = A.field
    if A.kind == alg.SPLIT:
        return A(parse_scalar(F, value, path))
    if not isinstance(value, list) or len(value) != A.dim:
        raise SchemaError(f"{path}: expected a {A.dim}-array of coordinates")
    return A.make([parse_scalar(F, c, f"{path}[{i}]") for i, c in enumerate(value)])


def _matrix(value, path, parse):
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SchemaError(f"{path}: expected a list of rows")
    n = len(value)
    for i, row in enumerate(value):
        if len(row) != n:
            raise SchemaError(f"{path}[{i}]: expected {n} entries")
    return [[parse(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(value)]


def parse_form(F, A, doc, path="$.form"):
    ftype = _need(doc, "type", path)
    try:
        if ftype == "quadratic":
            diag = _need(doc, "diag", path)
            if not isinstance(diag, list):
                raise SchemaError(f"{path}.diag: expected a list")
            return QuadForm.diagonal(F, [parse_scalar(F, x, f"{path}.diag[{i}]") for i, x in enumerate(diag)])
        if ftype == "quadratic2":
            C = _matrix(_need(doc, "upper", path), path + ".upper", lambda x, p: parse_scalar(F, x, p))
            return QuadForm.from_upper(F, C)
        if ftype in ("hermitian", "skew_hermitian", "pair"):
            default = -1 if ftype == "skew_hermitian" or (ftype == "pair" and A.kind == alg.QUATERNION) else 1
            eps = _int(doc.get("epsilon", default), path + ".epsilon")
            if ftype == "skew_hermitian" and eps != -1:
                raise SchemaError(f"{path}.epsilon: skew_hermitian forms have epsilon -1")
            if ftype == "hermitian" and eps != 1:
                raise SchemaError(f"{path}.epsilon: hermitian forms have epsilon 1")
            G = _matrix(_need(doc, "gram", path), path + ".gram", lambda x, p: parse_element(A, x, p))
            h = HermForm(A, G, eps)
            if ftype != "pair":
                return h
            l = doc.get("l")
            if l is not None:
                l = _matrix(l, path + ".l", lambda x, p: parse_element(A, x, p))
            return HermPair(h, l)
    except SchemaError:
        raise
    except CohinvError as exc:
        suffix = "" if exc.code == InvariantViolation.code else f" [{exc.code}]"
        raise InvariantViolation(f"{path}: {exc}{suffix}") from None
    raise SchemaError(f"{path}.type: unknown form type {ftype!r}")


def parse_input(doc):
    """(field, algebra, form, other form or None) from a JSON document."""
    if not isinstance(doc, dict):
        raise SchemaError("$: expected an object")
    F = parse_field(_need(doc, "field", "$"))
    A = parse_algebra(F, doc.get("algebra"))
    form = parse_form(F, A, doc["form"]) if "form" in doc else None
    other = parse_form(F, A, doc["other"], "$.other") if "other" in doc else None
    return F, A, form, other


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def emit_scalar(x):
    F = x.field
    if F.kind == "Q":
        v = x.value
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if F.k == 1:
        return x.value
    return x.coeffs


def emit_field(F):
    if F.kind == "Q":
        return {"kind": "Q"}
    out = {"kind": "GF", "p": F.p, "k": F.k}
    if F.k > 1:
        out["modulus"] = list(F.modulus)
    return out


def emit_algebra(A):
    if A.kind == alg.SPLIT:
        return {"kind": "split"}
    if A.kind == alg.QUAD_ETALE:
        return {"kind": "quad_etale", "c": emit_scalar(A.params[0])}
    return {"kind": "quaternion", "a": emit_scalar(A.params[0]), "b": emit_scalar(A.params[1])}


def emit_element(x):
    if x.algebra.kind == alg.SPLIT:
        return emit_scalar(x.coords[0])
    return [emit_scalar(c) for c in x.coords]


def emit_form(form):
    if isinstance(form, QuadForm):
        if form.char2:
            return {"type": "quadratic2", "upper": [[emit_scalar(c) for c in row] for row in form.upper]}
        return {"type": "quadratic", "diag": [emit_scalar(a) for a in form.diag]}
    if isinstance(form, HermForm):
        return {
            "type": "hermitian" if form.epsilon == 1 else "skew_hermitian",
            "epsilon": form.epsilon,
            "gram": [[emit_element(x) for x in row] for row in form.gram],
        }
    if isinstance(form, HermPair):
        return {
            "type": "pair",
            "epsilon": form.h.epsilon,
            "gram": [[emit_element(x) for x in row] for row in form.h.gram],
            "l": [[emit_element(x) for x in row] for row in form.l],
        }
    raise TypeError(f"cannot emit {form!r}")


def emit_input(F, A, form, other=None, extra=None):
    doc = {"field": emit_field(F), "algebra": emit_algebra(A)}
    if form is not None:
        doc["form"] = emit_form(form)
    if other is not None:
        doc["other"] = emit_form(other)
    if extra:
        doc.update(extra)
    return doc


def emit_class(c: CohClass):
    out = {"degree": c.degree, "zero": c.is_zero}
    if c.field.kind == "Q" and c.degree == 1:
        out["square_class"] = c.payload
    elif c.field.kind == "Q" and c.degree == 2:
        out["places"] = sorted_places(c.payload)
    else:
        out["bit"] = int(c.payload)
    return out


def _emit_chain(chain):
    return {f"e{n}": emit_class(c) for n, c in enumerate(chain, start=1)}


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _quadratic_view(form, check):
    """The quadratic form whose invariants represent the given object."""
    if isinstance(form, QuadForm):
        return form
    if isinstance(form, HermForm):
        return herm.jacobson_trace(form)
    if isinstance(form, HermPair):
        return pr.associated_quadratic_form(pr.split_model(form))
    raise SchemaError("$.form: missing")


def _invariants(form, check):
    if isinstance(form, QuadForm):
        return qf.invariant_chain(form)
    if isinstance(form, HermForm):
        return herm.invariants(form, check=check)
    return pr.pair_invariants(form, check=check)


def _hyperbolic(form, check):
    q = _quadratic_view(form, check)
    by_index = 2 * qf.witt_index(q) == q.dim if q.dim % 2 == 0 else False
    by_invariants = q.dim % 2 == 0 and all(c.is_zero for c in qf.invariant_chain(q, qf.invariant_bound(q.dim)))
    out = {"hyperbolic": by_index, "routes_agree": by_index == by_invariants}
    if check:
        out["routes"] = {"witt_index": by_index, "invariants": by_invariants}
    return out


def _witt(q):
    index, wc = qf.witt_decompose(q)
    rep = wc.representative
    return {
        "witt_index": index,
        "anisotropic": {
            "dimension": wc.aniso_dim,
            "representative": None if rep is None else emit_form(rep),
        },
    }


def _oracle_check(F, A, form, doc, bound):
    if form is None:
        max_dim = _int(doc.get("max_dim", 3), "$.max_dim")
        return oracle.classifier_mismatches(F, max_dim)
    if F.kind == "Q":
        q = _quadratic_view(form, False)
        witness = oracle.bounded_height_isotropy(q, bound)
        decided = qf.is_isotropic(q)
        ok = witness is None or decided
        return {"checked": 1, "mismatches": 0 if ok else 1, "isotropic": decided, "witness": witness}
    if isinstance(form, HermPair):
        found, witness = oracle.exhaustive_pair_isotropy(form)
        decided = pr.is_isotropic_pair(form)
        return {
            "checked": 1,
            "mismatches": int(found != decided),
            "isotropic": decided,
            "witness": None if witness is None else [emit_scalar(x) for x in witness],
        }
    q = _quadratic_view(form, False)
    found, witness = oracle.exhaustive_isotropy(q)
    same = found == qf.is_isotropic(q) and oracle.exhaustive_witt_index(q) == qf.witt_index(q)
    return {
        "checked": 1,
        "mismatches": 0 if same else 1,
        "isotropic": found,
        "witness": None if witness is None else [emit_scalar(x) for x in witness],
    }


def run_command(cmd, doc, check=False, oracle_bound=3):
    """Report for one document."""
    report = {"version": __version__, "input_canonical": None, "results": {}, "errors": []}
    try:
        F, A, form, other = parse_input(doc)
        extra = {"max_dim": doc["max_dim"]} if "max_dim" in doc else None
        report["input_canonical"] = emit_input(F, A, form, other, extra)
        if form is None and cmd != "oracle-check":
            raise SchemaError("$: missing key 'form'")
        res = report["results"]
        if cmd == "invariants":
            res["invariants"] = _emit_chain(_invariants(form, check))
        elif cmd == "is-hyperbolic":
            res.update(_hyperbolic(form, check))
        elif cmd == "is-isotropic":
            if isinstance(form, HermPair):
                res["isotropic"] = pr.is_isotropic_pair(form)
            else:
                res["isotropic"] = qf.is_isotropic(_quadratic_view(form, check))
        elif cmd == "witt-decompose":
            res.update(_witt(_quadratic_view(form, check)))
        elif cmd == "trace-form":
            if isinstance(form, QuadForm):
                raise SchemaError("$.form: trace-form needs a hermitian form or a pair")
            res["trace_form"] = emit_form(_quadratic_view(form, check))
        elif cmd == "equivalent":
            if other is None:
                raise SchemaError("$: missing key 'other'")
            if isinstance(form, QuadForm) and isinstance(other, QuadForm):
                res["equivalent"] = qf.equivalent(form, other, check=check)
            elif isinstance(form, HermForm) and isinstance(other, HermForm):
                res["equivalent"] = herm.equivalent_hermitian(form, other)
            else:
                raise SchemaError("$.other: equivalent compares two quadratic or two hermitian forms")
        elif cmd == "relative-e3":
            if not (isinstance(form, HermForm) and isinstance(other, HermForm)):
                raise SchemaError("$: relative-e3 needs hermitian 'form' and 'other'")
            res["relative_e3"] = emit_class(herm.relative_e3(form, other, check=check))
        elif cmd == "oracle-check":
            res.update(_oracle_check(F, A, form, doc, oracle_bound))
        else:
            raise SchemaError(f"unknown command {cmd!r}")
    except CohinvError as exc:
        report["errors"].append({"code": exc.code, "message": str(exc)})
    except AssertionError as exc:
        report["errors"].append({"code": "route_mismatch", "message": str(exc) or "internal consistency check failed"})
    return report


def report_ok(report) -> bool:
    if report["errors"]:
        return False
    res = report["results"]
    if res.get("routes_agree") is False:
        return False
    if res.get("mismatches", 0):
        return False
    return True


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _text(report) -> str:
    lines = []
    for key, value in sorted(report["results"].items()):
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    for err in report["errors"]:
        lines.append(f"error [{err['code']}]: {err['message']}")
    return "\n".join(lines) + "\n"


def build_parser():
    ap = argparse.ArgumentParser(prog="cohinv", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help="JSON document or array of documents ('-' for stdin)")
    ap.add_argument("--assert", dest="check", action="store_true", help="run the dual-route consistency checks")
    ap.add_argument("--oracle-bound", type=int, default=3, help="height bound for searches over Q")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        err = {"code": SchemaError.code, "message": f"line {exc.lineno}, column {exc.colno}: {exc.msg}"}
        sys.stdout.write(dumps({"version": __version__, "input_canonical": None, "results": {}, "errors": [err]}))
        return 1
    except OSError as exc:
        sys.stderr.write(f"cohinv: {exc}\n")
        return 2
    docs = data if isinstance(data, list) else [data]
    reports = [run_command(args.command, d, args.check, args.oracle_bound) for d in docs]
    if args.fmt == "text":
        sys.stdout.write("".join(_text(r) for r in reports))
    else:
        sys.stdout.write(dumps(reports if isinstance(data, list) else reports[0]))
    return 0 if all(report_ok(r) for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
