"""JSON command-line front end.

Every subcommand reads one JSON document (stdin or ``--in``) and writes one
JSON document (stdout or ``--out``).  Outputs nest their results under the
keys later subcommands look for, so they chain through pipes::

    leonard generate < spec.json | leonard aw | leonard normalize | leonard classify

Exit status: 0 on success, 1 when the mathematics says no (invalid array,
nonzero residual, no unique solution), 2 on bad input.  Errors are reported
as ``{"error": {"code", "message", "detail"}}``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .aw_relations import AffineMap, AwCoefficients, classify, normalize_translation, transform
from .errors import LeonardError, ParseError
from .families import FamilySpec, expected_aw, generate, relative_spec
from .linalg import Matrix, aw_residuals, solve_aw_coefficients
from .parameter_array import (
    ParameterArray,
    RelationOp,
    affine_apply,
    aw_coefficients,
    relation,
    split1,
    split2,
    validate,
)
from .exact_field import FIELDS, format_scalar, parse_scalar

MATH_FAILURES = frozenset({"underdetermined", "inconsistent", "inconsistent_formulas"})


class Failure(Exception):
    """A computed negative answer: print ``payload`` and exit 1."""

    def __init__(self, payload: dict):
        super().__init__()
        self.payload = payload


# -- reading documents ------------------------------------------------------

def _nested(doc, keys, marker):
    if not isinstance(doc, dict):
        raise ParseError("input must be a JSON object")
    for key in keys:
        if isinstance(doc.get(key), dict):
            return doc[key]
    if marker in doc:
        return doc
    return None


def read_array(doc, field: str) -> ParameterArray:
    obj = _nested(doc, ("parameter_array",), "theta")
    if obj is None:
        if isinstance(doc, dict) and "family" in doc:
            return generate(FamilySpec.from_json(doc, field))
        raise ParseError("no parameter array in input")
    return ParameterArray.from_json(obj, field)


def read_aw(doc, field: str) -> AwCoefficients:
    obj = _nested(doc, ("aw", "coefficients", "expected_aw"), "beta")
    if obj is None:
        if isinstance(doc, dict) and ("parameter_array" in doc or "theta" in doc):
            return aw_coefficients(read_array(doc, field))
        raise ParseError("no Askey-Wilson coefficients in input")
    return AwCoefficients.from_json(obj, field)


def read_pair(doc, field: str, form: str = "split1") -> tuple[Matrix, Matrix]:
    if isinstance(doc, dict) and "a" in doc and "a_star" in doc:
        return Matrix.from_json(doc["a"], field), Matrix.from_json(doc["a_star"], field)
    pa = read_array(doc, field)
    return split2(pa) if form == "split2" else split1(pa)


def read_map(doc, text: str | None, field: str) -> AffineMap:
    if text is not None:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--map is not valid JSON: {exc.msg}", exc.pos, text) from None
    elif isinstance(doc, dict) and "map" in doc:
        obj = doc["map"]
    else:
        raise ParseError("transform needs an affine map (--map or a 'map' key)")
    return AffineMap.from_json(obj, field)


def _pair_json(a: Matrix, b: Matrix) -> dict:
    return {"a": a.to_json(), "a_star": b.to_json()}


def _residual_json(name: str, m: Matrix) -> dict:
    hit = m.first_nonzero()
    if hit is None:
        return {"relation": name, "zero": True}
    i, j, value = hit
    return {"relation": name, "zero": False, "row": i, "col": j, "value": format_scalar(value)}


# -- subcommands --------------------------------------------------------------

def cmd_generate(doc, args):
    spec = FamilySpec.from_json(doc, args.field)
    pa = generate(spec)
    return {"spec": spec.to_json(), "parameter_array": pa.to_json(), "expected_aw": expected_aw(spec).to_json()}


def cmd_check(doc, args):
    pa = read_array(doc, args.field)
    violations = validate(pa)
    out = {"parameter_array": pa.to_json(), "valid": not violations,
           "violations": [v.to_json() for v in violations]}
    if violations:
        raise Failure(out)
    return out


def cmd_aw(doc, args):
    pa = read_array(doc, args.field)
    return {"parameter_array": pa.to_json(), "aw": aw_coefficients(pa).to_json()}


def cmd_solve(doc, args):
    a, b = read_pair(doc, args.field, args.form)
    beta = parse_scalar(args.beta, args.field) if args.beta is not None else None
    return {"aw": solve_aw_coefficients(a, b, beta).to_json()}


def cmd_verify(doc, args):
    a, b = read_pair(doc, args.field, args.form)
    k = read_aw(doc, args.field) if _has_aw(doc) else None
    if k is None:
        raise ParseError("verify needs Askey-Wilson coefficients ('aw')")
    first, second = aw_residuals(a, b, k)
    report = [_residual_json("first", first), _residual_json("second", second)]
    out = {"aw": k.to_json(), "ok": all(r["zero"] for r in report), "residuals": report}
    if not out["ok"]:
        raise Failure(out)
    return out


def _has_aw(doc) -> bool:
    return isinstance(doc, dict) and any(key in doc for key in ("aw", "coefficients", "expected_aw", "beta"))


def cmd_transform(doc, args):
    m = read_map(doc, args.map, args.field)
    out = {"map": m.to_json()}
    has_array = isinstance(doc, dict) and ("parameter_array" in doc or "theta" in doc)
    if has_array:
        out["parameter_array"] = affine_apply(read_array(doc, args.field), m).to_json()
    if _has_aw(doc):
        out["aw"] = transform(read_aw(doc, args.field), m).to_json()
    if len(out) == 1:
        raise ParseError("transform needs a parameter array or Askey-Wilson coefficients")
    return out


def cmd_normalize(doc, args):
    k = read_aw(doc, args.field)
    return {"aw": k.to_json(), **normalize_translation(k).to_json()}


def cmd_classify(doc, args):
    k = read_aw(doc, args.field)
    kind, norm = classify(k)
    return {"type": kind.to_json(), "normalization": norm.to_json()}


def cmd_relatives(doc, args):
    ops = [RelationOp(args.op)] if args.op else list(RelationOp)
    out = {}
    if isinstance(doc, dict) and "family" in doc:
        spec = FamilySpec.from_json(doc, args.field)
        pa = generate(spec)
        for op in ops:
            try:
                rel = relative_spec(spec, op).to_json()
            except LeonardError as exc:
                if exc.code != "not_covered":
                    raise
                rel = None
            out[op.value] = {"spec": rel, "parameter_array": relation(pa, op).to_json()}
    else:
        pa = read_array(doc, args.field)
        for op in ops:
            out[op.value] = {"parameter_array": relation(pa, op).to_json()}
    return {"relatives": out}


def cmd_split(doc, args):
    pa = read_array(doc, args.field)
    a, b = split2(pa) if args.form == "split2" else split1(pa)
    return {"form": args.form, **_pair_json(a, b)}


def cmd_roundtrip(doc, args):
    pa = read_array(doc, args.field)
    k = aw_coefficients(pa)
    kind, norm = classify(k)
    rederived = transform(norm.coefficients, norm.translation.inverse())
    out = {
        "aw": k.to_json(),
        "type": kind.to_json(),
        "translation": norm.translation.to_json(),
        "normalized": norm.coefficients.to_json(),
        "case": norm.case_id,
        "rederived": rederived.to_json(),
        "ok": rederived == k,
    }
    if not out["ok"]:
        raise Failure(out)
    return out


COMMANDS = {
    "generate": (cmd_generate, "parameter array and expected coefficients of a family spec"),
    "check": (cmd_check, "validate a parameter array"),
    "aw": (cmd_aw, "Askey-Wilson coefficients of a parameter array"),
    "solve": (cmd_solve, "solve for the coefficients of a matrix pair"),
    "verify": (cmd_verify, "evaluate the relation residuals"),
    "transform": (cmd_transform, "apply an affine map to an array or coefficient tuple"),
    "normalize": (cmd_normalize, "normalizing affine translation"),
    "classify": (cmd_classify, "Askey-Wilson type of a coefficient tuple"),
    "relatives": (cmd_relatives, "relative arrays (and specs) under the relation operators"),
    "split": (cmd_split, "split-form matrices of a parameter array"),
    "roundtrip": (cmd_roundtrip, "aw, normalize, classify, then undo the translation"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", help="read JSON from this file instead of stdin")
    common.add_argument("--out", dest="outfile", help="write JSON to this file instead of stdout")
    common.add_argument("--field", choices=FIELDS, default="rational")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    parser = argparse.ArgumentParser(prog="leonard", description="Exact Askey-Wilson relations of Leonard pairs.")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=text) for name, (_, text) in COMMANDS.items()}
    for name in ("solve", "verify", "split"):
        subs[name].add_argument("--form", choices=("split1", "split2"), default="split1",
                                help="split form used when the input is a parameter array")
    subs["solve"].add_argument("--beta", help="pin beta (needed at order 3)")
    subs["transform"].add_argument("--map", help='affine map as JSON, e.g. \'{"t": "2", "c": "1"}\'')
    subs["relatives"].add_argument("--op", choices=[op.value for op in RelationOp])
    return parser


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2 if pretty else None, ensure_ascii=False) + "\n"


def _error(code: str, message: str, detail=None) -> dict:
    return {"error": {"code": code, "message": message, "detail": detail}}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status = 0
    try:
        if args.infile:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg}", exc.pos) from None
        result = COMMANDS[args.command][0](doc, args)
    except Failure as fail:
        result, status = fail.payload, 1
    except LeonardError as exc:
        result = _error(exc.code, exc.message, exc.detail)
        status = 1 if exc.code in MATH_FAILURES else 2
    except OSError as exc:
        result, status = _error("io_error", str(exc)), 2
    text = _dump(result, args.pretty)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
