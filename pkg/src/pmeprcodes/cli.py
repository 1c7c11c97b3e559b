"""Command-line front end.

Exit codes: 0 ok, 2 usage error, 3 parameter or hypothesis violation,
4 verification failure.  Payloads are JSON on stdout, diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import codec, codes, construction, correlation
from .errors import BudgetError, HypothesisError, ParameterError
from .gbf import GeneralizedBooleanFunction, ZqWord, polyphase

EXIT_OK, EXIT_USAGE, EXIT_PARAM, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: dict | list | None = None
    diagnostics: str = ""
    exit_code: int = EXIT_OK


# --- parsing helpers ------------------------------------------------------------


def parse_residues(text: str, q: int) -> ZqWord:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"malformed residue list {text!r}") from exc
    if any(not 0 <= v < q for v in vals):
        raise ParameterError(f"residues must lie in [0, {q})")
    n = len(vals)
    if n & (n - 1):
        # PMEPR and correlations do not need power-of-two lengths
        return np.array(vals)
    return ZqWord(q, vals)


def parse_complex(text: str) -> np.ndarray:
    out = []
    for item in text.split(","):
        try:
            re, im = item.split(":")
            out.append(complex(float(re), float(im)))
        except ValueError as exc:
            raise UsageError(f"malformed complex sample {item!r}, expected re:im") from exc
    return np.array(out)


def load_json(text: str):
    """Inline JSON or a path to a JSON file."""
    try:
        if not text.lstrip().startswith(("{", "[")) and Path(text).exists():
            text = Path(text).read_text()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def parse_index_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"malformed index list {text!r}") from exc


def _symbols(word, q):
    if isinstance(word, ZqWord):
        return polyphase(word.entries, q)
    return polyphase(word, q)


# --- code documents ------------------------------------------------------------


@dataclass
class CodeDocument:
    """A code read back from JSON: generator rows plus coset representatives."""

    q: int
    rows: np.ndarray
    row_bits: list
    reps: np.ndarray
    t: int = field(init=False)

    def __post_init__(self):
        self.t = len(self.reps).bit_length() - 1
        if len(self.reps) != 1 << self.t:
            raise ParameterError("number of representatives must be a power of two")

    @property
    def n(self):
        return self.rows.shape[1]

    @property
    def s(self):
        return sum(self.row_bits)

    @classmethod
    def from_json(cls, doc) -> CodeDocument:
        try:
            q = int(doc["q"])
            rows = np.array(doc["rows"], dtype=np.int64)
            row_bits = [int(b) for b in doc["row_bits"]]
            reps = np.array(doc.get("reps") or [[0] * rows.shape[1]], dtype=np.int64)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed code document: {exc}") from exc
        if rows.ndim != 2 or len(row_bits) != len(rows) or reps.shape[1:] != rows.shape[1:]:
            raise UsageError("code document shapes are inconsistent")
        return cls(q, rows % q, row_bits, reps % q)

    def encode(self, value: int) -> np.ndarray:
        if not 0 <= value < 1 << (self.s + self.t):
            raise ParameterError(f"message does not fit in {self.s + self.t} bits")
        ci = value & ((1 << self.t) - 1)
        value >>= self.t
        coeffs = []
        for b in self.row_bits:
            coeffs.append(value & ((1 << b) - 1))
            value >>= b
        return (self.reps[ci] + np.array(coeffs, dtype=np.int64) @ self.rows) % self.q


def build_code(args):
    fam = args.family
    if args.construction:
        k, r, m, h = args.k, args.r, args.m, args.h
        if args.construction == 2:
            return codes.construction2(k, r, m, h)
        if args.perms:
            spec = construction.CosetRepSpec.from_json(load_json(args.perms))
        else:
            ident = tuple(range(m - k))
            spec = construction.CosetRepSpec(m, k, h, {d: ident for d in itertools.product((0, 1), repeat=k)})
        return codes.construction1(k, r, m, h, spec)
    if fam == "erm":
        return codes.erm_code(args.r, args.m, args.h)
    if fam == "rm":
        return codes.rm_code(args.r, args.m, args.h)
    if fam == "zrm":
        return codes.zrm_code(args.r, args.m, args.h)
    if fam == "a":
        if args.k is None:
            raise UsageError("--family a needs --k")
        return codes.a_code(args.k, args.r, args.m, args.h)
    raise UsageError("give --family or --construction")


# --- subcommands ---------------------------------------------------------------


def cmd_pmepr(args):
    word = parse_residues(args.seq, args.q)
    cfg = correlation.EnvelopeConfig(zeta=args.zeta, oversampling=args.L)
    return correlation.pmepr_report(_symbols(word, args.q), cfg).to_json()


def cmd_verify_set(args):
    if args.complex:
        members = [parse_complex(s) for s in args.seq]
    else:
        members = [_symbols(parse_residues(s, args.q), args.q) for s in args.seq]
    if len({len(s) for s in members}) != 1:
        raise ParameterError("set members must have equal length")
    report = correlation.is_complementary_set(members, args.tol)
    payload = {"complementary": report.complementary, "size": report.size,
               "max_residual": report.max_residual, "tol": report.tol}
    if not report.complementary:
        raise VerificationFailure(json.dumps(payload))
    return payload


def cmd_construct_set(args):
    f = GeneralizedBooleanFunction.from_json(load_json(args.function))
    variables = parse_index_list(args.vars)
    ends = None
    if args.ends:
        ends = {tuple(int(c) for c in key): int(a) for key, a in load_json(args.ends).items()}
    witness = construction.build_complementary_set(f, variables, ends)
    report = construction.verify_witness(witness, args.tol)
    if not report.complementary:
        raise VerificationFailure(f"constructed set failed verification: residual {report.max_residual}")
    doc = witness.to_json()
    doc["max_residual"] = report.max_residual
    return doc


def cmd_code(args):
    return build_code(args).to_json()


def cmd_tables(args):
    rows = codes.table_rows(args.pmepr)
    for name in ("m", "h", "r"):
        val = getattr(args, name)
        if val is not None:
            rows = [row for row in rows if getattr(row, name) == val]
    if args.json:
        return [row.to_json() for row in rows]
    return [row.rendered() for row in rows]


def render_table(rows: list[dict]) -> str:
    cols = ["m", "h", "r", "s", "t", "R1", "R2", "dL", "dE2"]
    cells = [[("---" if row[c] is None else str(row[c])) for c in cols] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    return "\n".join(lines)


def cmd_mindist(args):
    code = build_code(args)
    if args.method == "sampled" and args.seed is None:
        raise UsageError("--method sampled requires --seed")
    res = codes.min_distance(code, args.method, samples=args.samples, seed=args.seed or 0)
    return {"lee": res.lee, "euclid_sq": res.euclid_sq, "exact": res.exact, "method": res.method,
            "lee_lower_bound": res.lee_lower_bound, "euclid_sq_lower_bound": res.euclid_sq_lower_bound,
            "samples": res.samples}


def cmd_encode(args):
    doc = CodeDocument.from_json(load_json(args.code))
    try:
        value = int(args.bits, 16)
    except ValueError as exc:
        raise UsageError(f"malformed hex message {args.bits!r}") from exc
    word = doc.encode(value)
    return {"word": ",".join(str(int(v)) for v in word)}


def cmd_decode(args):
    doc = CodeDocument.from_json(load_json(args.code))
    h = doc.q.bit_length() - 1
    base = _document_code(doc, h)
    reps = [ZqWord(doc.q, r) for r in doc.reps]
    coset_code = codes.CosetCode(base, reps, 0, 0, 0, base.m, h, 1 if len(reps) == 1 else 2)
    res = codec.decode(coset_code, parse_complex(args.rx))
    return {"bits": res.message.to_hex(), "metric": res.metric}


def _document_code(doc: CodeDocument, h: int) -> codes.LinearCode:
    from .gbf import from_truth_table

    m = doc.n.bit_length() - 1
    labels = tuple(from_truth_table(doc.q, row) for row in doc.rows)
    return codes.LinearCode("custom", 0, m, h, labels)


def cmd_golay_enumerate(args):
    census = construction.golay_census(args.m, args.q, args.L)
    if not census.all_complementary or census.max_pmepr > 2 + 1e-6:
        raise VerificationFailure(json.dumps(census.to_json()))
    return census.to_json()


# --- entry point ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_code_args(p):
    p.add_argument("--family", choices=["erm", "rm", "zrm", "a"])
    p.add_argument("--construction", type=int, choices=[1, 2])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--perms", help="CosetRepSpec JSON for construction 1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmeprcodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pmepr", help="oversampled PMEPR of a residue sequence")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--L", type=int, default=correlation.DEFAULT_OVERSAMPLING)
    p.add_argument("--zeta", type=float, default=0.0)
    p.set_defaults(func=cmd_pmepr)

    p = sub.add_parser("verify-set", help="check a complementary set")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--seq", action="append", required=True)
    p.add_argument("--complex", action="store_true", help="members given as re:im CSV")
    p.add_argument("--tol", type=float, default=correlation.DEFAULT_SET_TOL)
    p.set_defaults(func=cmd_verify_set)

    p = sub.add_parser("construct-set", help="complementary set containing a function's sequence")
    p.add_argument("--function", required=True)
    p.add_argument("--vars", default="")
    p.add_argument("--ends", help='JSON {"<d bits>": end vertex}')
    p.add_argument("--tol", type=float, default=correlation.DEFAULT_SET_TOL)
    p.set_defaults(func=cmd_construct_set)

    p = sub.add_parser("code", help="generator matrix (and representatives) as JSON")
    _add_code_args(p)
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("tables", help="coding-option tables")
    p.add_argument("--pmepr", type=int, choices=[4, 8], required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--json", action="store_true", help="full-precision JSON instead of the rendered table")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("mindist", help="minimum Lee and squared Euclidean distance")
    _add_code_args(p)
    p.add_argument("--method", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=codes.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("encode", help="encode a hex message")
    p.add_argument("--code", required=True)
    p.add_argument("--bits", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="supercode decoding of complex samples")
    p.add_argument("--code", required=True)
    p.add_argument("--rx", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("golay-enumerate", help="census of path-form Golay sequences")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--L", type=int, default=correlation.DEFAULT_OVERSAMPLING)
    p.set_defaults(func=cmd_golay_enumerate)
    return parser


def run(argv: list[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        payload = args.func(args)
    except UsageError as exc:
        return CommandResult("error", None, str(exc), EXIT_USAGE)
    except (ParameterError, HypothesisError, BudgetError) as exc:
        return CommandResult("error", None, str(exc), EXIT_PARAM)
    except VerificationFailure as exc:
        return CommandResult("error", None, str(exc), EXIT_VERIFY)
    return CommandResult("ok", payload)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv in ([], ["-h"], ["--help"]):
        build_parser().print_help()
        return EXIT_OK if argv else EXIT_USAGE
    result = run(argv)
    if result.status == "ok":
        if argv[0] == "tables" and "--json" not in argv:
            print(render_table(result.payload))
        else:
            print(json.dumps(result.payload))
    else:
        print(result.diagnostics, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
