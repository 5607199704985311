"""gridkit command line: JSON in, JSON out.

Exit codes: 0 success (decide: PWO), 1 NOT_PWO or a failed check,
2 UNKNOWN, 64 usage error, 65 bad input data, 70 a cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .classes import CapExceeded
from .decision import decide_pwo, verdict_to_json
from .gridding import (
    MAX_LENGTH,
    GriddedPermutation,
    enumerate_griddings,
    gridded,
    gridded_from_json,
    gridded_to_json,
    gridding_to_json,
    is_gridded_by,
    matrix_from_json,
    matrix_to_json,
)
from .gridmaps import (
    MAX_MAPPINGS,
    apply,
    canonicalize,
    check_path_conditions,
    mapping_from_json,
    mapping_to_json,
)
from .minflate import RootedTreeMatrix, m_decompose, m_inflate
from .perm import SYMMETRIES, find_embedding, inflate, perm, substitution_decompose
from .pins import (
    antichain_element,
    antichain_pin_count,
    generate_pin_sequence,
    min_antichain_length,
    mk_matrix,
    pins_from_json,
    pins_to_gridded,
    pins_to_json,
    validate_pin_sequence,
    verify_antichain,
    verify_strongly_unique,
)

EX_OK, EX_FAIL, EX_UNKNOWN = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: Any = None
    timing: dict[str, float] = field(default_factory=dict)
    version: str = __version__
    exit_code: int = EX_OK

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out.pop("exit_code")
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EX_USAGE)


# ---------------------------------------------------------------- helpers


def _perm_arg(text: str):
    try:
        return perm(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{path} is not JSON: {exc}") from None


def _load(path: str, parse):
    try:
        return parse(_load_json(path))
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def _cuts(text: Optional[str]) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad cut list {text!r}") from None


def _cell(text: str) -> tuple[int, int]:
    try:
        s, t = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"cells are written col,row; got {text!r}") from None
    return s, t


def _range(text: str) -> list[int]:
    """'5', '5..7' or '5,6,7'."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad index range {text!r}") from None


# ---------------------------------------------------------------- commands


def cmd_perm(args) -> RunReport:
    if args.action == "contains":
        pattern, text = _perm_arg(args.pattern), _perm_arg(args.text)
        witness = find_embedding(pattern, text)
        results = {
            "contains": witness is not None,
            "witness": list(witness) if witness else None,
            "subsequence": [text[i - 1] for i in witness] if witness else None,
        }
        return RunReport("perm contains", {"pattern": list(pattern), "text": list(text)}, results)
    if args.action == "decompose":
        p = _perm_arg(args.perm)
        if len(p) < 2:
            raise UsageError("decomposition needs length >= 2")
        skeleton, blocks = substitution_decompose(p)
        assert inflate(skeleton, blocks) == p
        results = {"skeleton": list(skeleton), "blocks": [list(b) for b in blocks]}
        return RunReport("perm decompose", {"perm": list(p)}, results)
    p = _perm_arg(args.perm)
    names = [args.op] if args.op else list(SYMMETRIES)
    results = {name: list(SYMMETRIES[name](p)) for name in names}
    return RunReport("perm symmetry", {"perm": list(p), "op": args.op}, results)


def _gridded_input(args, M) -> Optional[GriddedPermutation]:
    if getattr(args, "gridded", None):
        return _load(args.gridded, gridded_from_json)
    return None


def cmd_grid(args) -> RunReport:
    M = _load(args.matrix, matrix_from_json)
    p = _perm_arg(args.perm)
    found = enumerate_griddings(p, M, max_length=args.max_length)
    inputs = {"matrix": matrix_to_json(M), "perm": list(p)}
    if args.action == "enumerate":
        results = {"count": len(found), "griddings": [gridding_to_json(g) for g in found]}
        return RunReport("grid enumerate", inputs, results)
    unique = len(found) == 1
    results = {"unique": unique, "count": len(found)}
    if unique:
        results["gridding"] = gridding_to_json(found[0])
    return RunReport("grid unique", inputs, results, exit_code=EX_OK if unique else EX_FAIL)


def cmd_decide(args) -> RunReport:
    M = _load(args.matrix, matrix_from_json)
    v = decide_pwo(M)
    return RunReport("decide", {"matrix": matrix_to_json(M)}, verdict_to_json(v), exit_code=v.exit_code)


def cmd_antichain(args) -> RunReport:
    k = args.k
    if k < 1:
        raise UsageError("--k must be >= 1")
    indices = _range(args.i)
    if not indices or min(indices) < 1:
        raise UsageError("indices start at 1")
    elements = [antichain_element(k, i) for i in indices]
    inputs = {"k": k, "i": indices}
    if args.action == "generate":
        results = []
        for i, e in zip(indices, elements):
            entry = {"i": i, "length": len(e), **gridded_to_json(e)}
            if args.trace:
                entry["pins"] = pins_to_json(generate_pin_sequence(k, antichain_pin_count(k, i)))
            results.append(entry)
        return RunReport("antichain generate", inputs, results)
    M, _, _ = mk_matrix(k)
    anti = verify_antichain([e.perm for e in elements])
    checks = []
    for i, e in zip(indices, elements):
        su = verify_strongly_unique(e, M, max_mappings=args.max_mappings)
        checks.append(
            {
                "i": i,
                "length": len(e),
                "gridded_by_mk": is_gridded_by(e, M),
                "strongly_unique": su.ok,
                "mappings": su.mappings,
                "distinct_images": su.distinct_images,
                "counterexample": mapping_to_json(su.counterexample) if su.counterexample else None,
            }
        )
    ok = anti.ok and all(c["strongly_unique"] and c["gridded_by_mk"] for c in checks)
    results = {
        "certificate": ok,
        "antichain": anti.ok,
        "comparable_pair": [list(x) for x in anti.comparable] if anti.comparable else None,
        "min_length": min_antichain_length(k),
        "elements": checks,
    }
    return RunReport("antichain verify", inputs, results, exit_code=EX_OK if ok else EX_FAIL)


def cmd_pins(args) -> RunReport:
    if args.action == "validate":
        ps = _load(args.file, pins_from_json)
        v = validate_pin_sequence(ps, include_first_pair=not args.literal)
        results = {"ok": v.ok, "index": v.index, "condition": v.condition, "detail": v.detail}
        return RunReport("pins validate", {"file": args.file}, results, exit_code=EX_OK if v.ok else EX_FAIL)
    if args.k is None or args.len is None:
        raise UsageError("pins trace needs --k and --len")
    if args.k < 1 or args.len < 1:
        raise UsageError("--k and --len must be positive")
    ps = generate_pin_sequence(args.k, args.len)
    results = {"sequence": pins_to_json(ps), "perm": list(pins_to_gridded(ps).perm)}
    return RunReport("pins trace", {"k": args.k, "len": args.len}, results)


def cmd_map(args) -> RunReport:
    M = _load(args.matrix, matrix_from_json)
    if args.action == "canonicalize":
        cond = check_path_conditions(M)
        if not cond.ok:
            raise DataError("matrix fails the path conditions: " + "; ".join(cond.failed))
        k, f = canonicalize(M)
        return RunReport("map canonicalize", {"matrix": matrix_to_json(M)}, {"k": k, "mapping": mapping_to_json(f)})
    if not args.mapping:
        raise UsageError("map apply needs --mapping")
    f = _load(args.mapping, mapping_from_json)
    try:
        results: dict[str, Any] = {"matrix": matrix_to_json(apply(f, M))}
        gp = _gridded_input(args, M)
        if gp is not None:
            results["gridded"] = gridded_to_json(apply(f, gp))
    except ValueError as exc:
        raise DataError(str(exc)) from None
    return RunReport("map apply", {"matrix": matrix_to_json(M), "mapping": mapping_to_json(f)}, results)


def cmd_minflate(args) -> RunReport:
    M = _load(args.matrix, matrix_from_json)
    try:
        T = RootedTreeMatrix(M, _cell(args.root))
    except ValueError as exc:
        raise DataError(str(exc)) from None
    p = _perm_arg(args.perm)
    if args.x is not None or args.y is not None:
        try:
            targets = [gridded(p, _cuts(args.x), _cuts(args.y))]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        targets = [GriddedPermutation(p, g, M.dims) for g in enumerate_griddings(p, M)]
    results = []
    for gp in targets:
        if not is_gridded_by(gp, M):
            raise DataError("the given gridding is not an M-gridding")
        d = m_decompose(T, gp)
        back = m_inflate(T, d.sigma, d.taus, lenient=d.lenient, root=d.root, slots=d.slots)
        results.append(
            {
                "gridding": gridding_to_json(gp.gridding),
                "case": d.case,
                "sigma": list(d.sigma),
                "lenient": d.lenient,
                "root": list(d.root),
                "taus": [gridded_to_json(t) for t in d.taus],
                "roundtrip": back == gp,
            }
        )
    ok = all(r["roundtrip"] for r in results)
    return RunReport(
        "minflate roundtrip",
        {"matrix": matrix_to_json(M), "root": list(T.root), "perm": list(p)},
        results,
        exit_code=EX_OK if ok else EX_FAIL,
    )


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gridkit", description="Grid classes of permutations.")
    ap.add_argument("--version", action="version", version=f"gridkit {__version__}")
    ap.add_argument("--indent", type=int, default=2, help="JSON indent (0 for one line)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("perm", help="containment, decomposition, symmetries")
    psub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = psub.add_parser("contains")
    c.add_argument("--pattern", required=True)
    c.add_argument("--text", required=True)
    d = psub.add_parser("decompose")
    d.add_argument("perm")
    s = psub.add_parser("symmetry")
    s.add_argument("perm")
    s.add_argument("--op", choices=sorted(SYMMETRIES))
    p.set_defaults(func=cmd_perm)

    g = sub.add_parser("grid", help="griddings of a permutation by a matrix")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("enumerate", "unique"):
        q = gsub.add_parser(name)
        q.add_argument("matrix", help="matrix JSON file")
        q.add_argument("perm")
        q.add_argument("--max-length", type=int, default=MAX_LENGTH)
    g.set_defaults(func=cmd_grid)

    dc = sub.add_parser("decide", help="partial well-order verdict")
    dc.add_argument("matrix", help="matrix JSON file")
    dc.set_defaults(func=cmd_decide)

    a = sub.add_parser("antichain", help="elements of the antichain family on M^k")
    asub = a.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("generate", "verify"):
        q = asub.add_parser(name)
        q.add_argument("--k", type=int, required=True)
        q.add_argument("--i", required=True, help="index, list a,b,c or range a..b")
        if name == "generate":
            q.add_argument("--trace", action="store_true", help="include the pin coordinates")
        else:
            q.add_argument("--max-mappings", type=int, default=MAX_MAPPINGS)
    a.set_defaults(func=cmd_antichain)

    pn = sub.add_parser("pins", help="grid pin sequences")
    pnsub = pn.add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = pnsub.add_parser("validate")
    v.add_argument("file", help="pin sequence JSON file")
    v.add_argument(
        "--literal", action="store_true", help="skip the (p0, p1) pair in the non-interaction test"
    )
    t = pnsub.add_parser("trace")
    t.add_argument("--k", type=int)
    t.add_argument("--len", type=int)
    pn.set_defaults(func=cmd_pins)

    mp = sub.add_parser("map", help="grid mappings")
    mpsub = mp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cz = mpsub.add_parser("canonicalize")
    cz.add_argument("matrix")
    ay = mpsub.add_parser("apply")
    ay.add_argument("matrix")
    ay.add_argument("--mapping", required=True, help="mapping JSON file")
    ay.add_argument("--gridded", help="gridded permutation JSON file")
    mp.set_defaults(func=cmd_map)

    mi = sub.add_parser("minflate", help="M-inflation diagnostics")
    misub = mi.add_subparsers(dest="action", required=True, parser_class=_Parser)
    r = misub.add_parser("roundtrip")
    r.add_argument("matrix")
    r.add_argument("--root", required=True, help="root cell as col,row")
    r.add_argument("--perm", required=True)
    r.add_argument("--x", help="column cuts, e.g. '2,4'; all griddings when omitted")
    r.add_argument("--y", help="row cuts")
    mi.set_defaults(func=cmd_minflate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"gridkit: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except CapExceeded as exc:
        print(f"gridkit: cap exceeded: {exc}", file=sys.stderr)
        return EX_SOFTWARE
    except (DataError, ValueError) as exc:
        print(f"gridkit: bad input: {exc}", file=sys.stderr)
        return EX_DATAERR
    report.timing = {"seconds": round(time.perf_counter() - start, 6)}
    print(json.dumps(report.to_json(), indent=args.indent or None, ensure_ascii=False))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
