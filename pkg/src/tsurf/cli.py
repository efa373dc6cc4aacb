"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a check failed, 3 internal
inconsistency. Errors print one line "error: <kind>: <reason>" on stderr.
"""

import argparse
import dataclasses
import json
import re
import sys
from fractions import Fraction
from itertools import islice

from . import appendix, corpus, quotient, smallsurf
from .cf_core import dual, evaluate, hj_expand
from .errors import InconsistencyError, StructuralError, ValidationError
from .pres import enumerate_p_resolutions, compute_p_resolution, render_parts, verify_p_resolution
from .tsing import TType, discrepancies, enumerate_t_chains, t_children, t_recognize
from .zcf import enumerate_zcf, k_cross_set, k_set


class CheckFailed(Exception):
    """A verification ran and reported a failure (exit code 2)."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


# ---------------------------------------------------------------- serialization


def to_data(obj):
    """Plain JSON-ready data; rationals become "p/q" strings."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, TType):
        return {"d": obj.d, "n": obj.n, "a": obj.a}
    if isinstance(obj, smallsurf.FiberType):
        return str(obj)
    if isinstance(obj, smallsurf.HorikawaFamily):
        return {
            "pg": obj.pg,
            "label": obj.label,
            "blockTag": obj.blockTag,
            "params": list(obj.params),
            "chainSpec": [
                {"chain": list(c), "count": k, "plus": p, "d": d} for c, k, p, d in obj.chainSpec
            ],
            "paramBounds": obj.paramBounds,
            "computedBounds": obj.computedBounds,
            "smoothabilityNote": obj.smoothabilityNote,
        }
    if isinstance(obj, smallsurf.BlockInstance):
        return {
            "id": obj.id,
            "params": to_data(obj.params),
            "chains": [list(c.chain) for c in obj.chains],
            "singularities": [to_data(c.ttype) for c in obj.chains],
            "localK2": obj.localK2,
            "sectionDiscrepancy": to_data(obj.sectionDiscrepancy),
            "eulerCost": obj.eulerCost,
            "completeFibers": obj.completeFibers,
            "jClass": obj.jClass,
            "blowups": obj.blowups,
        }
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        data = {f.name: to_data(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.name != "builder"}
        for extra in ("passed", "euler_ok", "nef_ok"):
            if hasattr(type(obj), extra):
                data[extra] = getattr(obj, extra)
        return data
    if isinstance(obj, dict):
        return {str(k): to_data(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_data(v) for v in obj]
    return obj


def canonical(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def chain_text(chain):
    return "[" + ",".join(str(e) for e in chain) + "]"


def pres_record(p):
    return {
        "source": {"delta": p.delta, "omega": p.omega},
        "zcf": list(p.zcf),
        "nodes": [{"d": n.d, "n": n.n, "a": n.a} for n in p.nodes],
        "links": list(p.links),
        "notation": render_parts(p.nodes, p.links),
    }


# ---------------------------------------------------------------- parsing helpers


def parse_ints(tokens):
    """Integers from tokens like '3 5 2', '3,5,2' or '[3,5,2]'."""
    text = " ".join(tokens)
    parts = [p for p in re.split(r"[\s,\[\]]+", text) if p]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValidationError(f"expected integers, got {text!r}") from None


def parse_ttype(text):
    values = parse_ints([text])
    if len(values) != 3:
        raise ValidationError(f"a T-type is d,n,a; got {text!r}")
    return TType(*values)


def parse_assignments(tokens):
    """key=value pairs; integer values where possible, fibres for F/F2."""
    out = {}
    for token in tokens:
        if "=" not in token:
            raise ValidationError(f"expected key=value, got {token!r}")
        key, value = token.split("=", 1)
        if key in ("F", "F2"):
            out[key] = smallsurf.parse_fiber(value)
        else:
            try:
                out[key] = int(value)
            except ValueError:
                raise ValidationError(f"{key} must be an integer") from None
    return out


# ---------------------------------------------------------------- commands


def cmd_hj(args):
    if args.action == "expand":
        delta, omega = parse_pair(args.values)
        chain = hj_expand(delta, omega)
        return chain, chain_text(chain)
    if args.action == "dual":
        delta, omega = parse_pair(args.values)
        chain = dual(delta, omega)
        return chain, chain_text(chain)
    chain = parse_ints(args.values)
    if not chain or any(e < 2 for e in chain):
        raise ValidationError("evaluation needs entries >= 2")
    p, q = evaluate(chain)
    return {"delta": p, "omega": q}, f"{p}/{q}"


def parse_pair(tokens):
    values = parse_ints(tokens)
    if len(values) != 2:
        raise ValidationError("expected two integers DELTA OMEGA")
    return values


def cmd_tchain(args):
    if args.action == "enum":
        max_len = args.max_len
        max_delta = args.max_delta
        items = enumerate_t_chains(max_len, max_delta, args.d)
        items = list(islice(items, args.limit)) if args.limit is not None else items
        data = [{"chain": c, "ttype": to_data(t)} for t, c in items]
        text = "\n".join(f"{chain_text(c)} T({t.d},{t.n},{t.a})" for t, c in items)
        return data, text
    chain = parse_ints(args.values)
    if args.action == "check":
        t = t_recognize(chain)
        if t is None:
            raise CheckFailed(f"not a T-chain: {chain_text(chain)}", {"chain": chain, "ttype": None})
        return {"chain": chain, "ttype": to_data(t)}, f"T({t.d},{t.n},{t.a})"
    if args.action == "disc":
        vec = discrepancies(chain)
        data = {"deltas": to_data(list(vec.deltas)), "t_first": vec.t_first, "t_last": vec.t_last}
        return data, " ".join(to_data(x) for x in vec.deltas)
    left, right = t_children(chain)
    return [left, right], f"{chain_text(left)}\n{chain_text(right)}"


def cmd_zcf(args):
    if args.action == "enum":
        values = parse_ints(args.values)
        if len(values) != 1:
            raise ValidationError("zcf enum takes one length")
        chains = enumerate_zcf(values[0])
    else:
        delta, omega = parse_pair(args.values)
        chains = k_set(delta, omega) if args.action == "kset" else k_cross_set(delta, omega)
    if args.limit is not None:
        chains = chains[: args.limit]
    return chains, "\n".join(chain_text(c) for c in chains)


def cmd_pres(args):
    if args.action == "appendix":
        params = parse_assignments(args.values[1:]) if args.values else {}
        if not args.values:
            raise ValidationError("pres appendix FAMILY key=value ...")
        report = appendix.appendix_check(args.values[0], params, corrected=args.corrected)
        data = {
            "family": report.family,
            "params": report.params,
            "chain": report.chain,
            "exact": report.exact,
            "actual": [{"zcf": z, "notation": t} for z, t in report.actual],
            "mismatched": report.mismatched,
            "missing": report.missing,
            "extra": report.extra,
            "malformed": report.malformed,
        }
        lines = [f"{chain_text(z)} {t}" for z, t in report.actual]
        lines += [f"mismatch ({m[0]}): tabulated {m[2]} computed {m[3]}" for m in report.mismatched]
        lines += [f"missing ({m[0]}): {chain_text(m[1])}" for m in report.missing]
        lines += [f"extra: {chain_text(z)} {t}" for z, t in report.extra]
        if not report.exact:
            raise CheckFailed("appendix rows disagree", data)
        return data, "\n".join(lines)
    values = parse_ints(args.values)
    if args.action == "all":
        if len(values) != 2:
            raise ValidationError("pres all DELTA OMEGA")
        items = enumerate_p_resolutions(values[0], values[1], cross_only=args.cross)
        if args.limit is not None:
            items = items[: args.limit]
        data = [pres_record(p) for p in items]
        if args.render:
            text = "\n".join(r["notation"] for r in data)
        else:
            text = "\n".join(f"{chain_text(r['zcf'])} {r['notation']}" for r in data)
        return data, text
    if len(values) < 3:
        raise ValidationError(f"pres {args.action} DELTA OMEGA ZCF")
    p = compute_p_resolution(values[0], values[1], values[2:])
    if args.action == "render":
        record = pres_record(p)
        return record, record["notation"]
    report = verify_p_resolution(p)
    data = dict(pres_record(p), report=to_data(report), passed=report.passed)
    text = (
        f"zero_reduction={report.zero_reduction} node_validity={report.node_validity} "
        f"ampleness={report.ampleness} roundtrip={report.roundtrip}"
    )
    if not report.passed:
        raise CheckFailed("verification failed: " + "; ".join(report.details), data)
    return data, text


def _fibers(tokens):
    return [smallsurf.parse_fiber(t) for t in tokens or []]


def cmd_small(args):
    action = args.action
    if action == "block":
        values = ([args.main] if args.main else []) + list(args.values)
        if not values:
            raise ValidationError("small block ID key=value ...")
        block = smallsurf.instantiate_block(values[0], parse_assignments(values[1:]))
        text = "\n".join(f"{chain_text(c.chain)} T({c.ttype.d},{c.ttype.n},{c.ttype.a})" for c in block.chains)
        text += f"\nK2={block.localK2} d(section)={to_data(block.sectionDiscrepancy)} euler={block.eulerCost}"
        return to_data(block), text
    if action == "assemble":
        pg = need(args.pg, "--pg")
        if args.main is None:
            raise ValidationError("--main is required")
        fibres = {}
        if args.F:
            fibres["F"] = smallsurf.parse_fiber(args.F)
        if args.F2:
            fibres["F2"] = smallsurf.parse_fiber(args.F2)
        config = smallsurf.configuration(pg, args.main, _fibers(args.fib), **fibres)
        report = smallsurf.assemble(config)
        data = to_data(report)
        text = "\n".join(chain_text(c) for c in report.chains)
        text += (
            f"\nK2={report.K2} N={report.N} l={report.l} euler={report.eulerUsed}/{report.eulerBudget}"
            f" nef={report.nef_ok} homeo={report.invariants.homeoType}"
        )
        if not report.passed:
            raise CheckFailed("assembled surface fails a check", data)
        return data, text
    if action == "horikawa":
        families = smallsurf.horikawa_families(need(args.pg, "--pg"))
        data = [to_data(f) for f in families]
        text = "\n".join(
            f"{f.label} {f.blockTag} stated<={f.paramBounds} computed={f.computedBounds}" for f in families
        )
        return data, text
    if action == "geography":
        g = smallsurf.geography(need(args.pg, "--pg"))
        data = {
            "pg": g.pg,
            "minK2": g.minK2,
            "maxK2": g.maxK2,
            "maxWitnesses": g.max_witnesses,
            "realizable": g.realizable,
            "blockMaxima": {k: {"s": v[0], "K2": v[1]} for k, v in g.blockMaxima.items()},
        }
        text = f"min={g.minK2} max={g.maxK2} attained by {', '.join(g.max_witnesses)}"
        return data, text
    if action == "invariants":
        record = smallsurf.blowdown_invariants(need(args.pg, "--pg"), need(args.N, "--N"))
        text = f"K2={record.K2} b+={record.bPlus} b-={record.bMinus} sigma={record.sigma} {record.homeoType}"
        return to_data(record), text
    if action == "leepark":
        record = smallsurf.lee_park(need(args.pg, "--pg"))
        text = "\n".join(chain_text(c) for c in record.chains) + f"\nK2={record.K2}"
        return to_data(record), text
    sings = [parse_ttype(t) for t in args.values]
    value = smallsurf.bmy_bound(need(args.pg, "--pg"), sings)
    return to_data(value), to_data(value)


def need(value, flag):
    if value is None:
        raise ValidationError(f"{flag} is required")
    return value


def cmd_quot(args):
    values = parse_ints(args.values)
    if args.action == "cases":
        if len(values) != 2:
            raise ValidationError("quot cases M Q")
        outcomes = quotient.quotient_candidates(*values)
        lines = []
        for o in outcomes:
            result = "smooth" if o.normalized == quotient.SMOOTH else (
                f"({o.normalized.m},{o.normalized.q})" if o.normalized else "-")
            t = f" T({o.isT.d},{o.isT.n},{o.isT.a})" if o.isT else ""
            lines.append(f"({o.caseTag}) applicable={o.applicable} raw={o.result} -> {result}{t} {o.reason}".rstrip())
        return [outcome_data(o) for o in outcomes], "\n".join(lines)
    if args.action == "leepark":
        if len(values) != 1:
            raise ValidationError("quot leepark N")
        case, cqs = quotient.lee_park_quotient(values[0])
        found = [o for o in quotient.quotient_candidates(values[0] ** 2, values[0] - 1)
                 if o.applicable and isinstance(o.normalized, quotient.CQS) and o.normalized.same_as(cqs)]
        data = {"case": case, "m": cqs.m, "q": cqs.q, "cases": sorted({o.caseTag for o in found})}
        if case not in data["cases"]:
            raise CheckFailed("predicted quotient not produced by its case", data)
        return data, f"({case}) ({cqs.m},{cqs.q})"
    if len(values) != 1:
        raise ValidationError(f"quot {args.action} BOUND")
    scan = quotient.wahl_quotient_scan if args.action == "scan-wahl" else quotient.duval_quotient_scan
    report = scan(values[0])
    data = {
        "checked": report.checked,
        "violations": [{"singularity": to_data(t), "outcome": outcome_data(o)} for t, o in report.violations],
    }
    if args.limit is not None:
        data["violations"] = data["violations"][: args.limit]
    text = f"checked={report.checked} violations={len(report.violations)}"
    if report.violations:
        raise CheckFailed(text, data)
    return data, text


def outcome_data(o):
    normalized = o.normalized
    if isinstance(normalized, quotient.CQS):
        normalized = {"m": normalized.m, "q": normalized.q}
    return {
        "case": o.caseTag,
        "result": list(o.result) if isinstance(o.result, tuple) else o.result,
        "normalized": normalized,
        "applicable": o.applicable,
        "reason": o.reason,
        "isT": to_data(o.isT) if o.isT else None,
    }


def cmd_corpus(args):
    path = args.path or corpus.DEFAULT_DIR
    if args.action == "regen":
        written = corpus.regen(path)
        return [str(p) for p in written], "\n".join(str(p) for p in written)
    diffs = corpus.check(path)
    data = [{"family": f, "line": n, "stored": old, "regenerated": new} for f, n, old, new in diffs]
    if diffs:
        text = "\n".join(f"{f}:{n}: stored {old} regenerated {new}" for f, n, old, new in diffs)
        raise CheckFailed(f"{len(diffs)} corpus lines differ\n{text}", data)
    return data, "corpus matches"


def selftest_checks():
    """Quick end-to-end checks on known values: (name, thunk returning bool)."""
    return [
        ("hj expand 25/9", lambda: hj_expand(25, 9) == [3, 5, 2]),
        ("T-chain [2,4,3,3]", lambda: t_recognize([2, 4, 3, 3]) == TType(2, 5, 3)),
        ("zero chains of length 6", lambda: len(enumerate_zcf(6)) == 42),
        ("P-resolutions of 19/7", lambda: [render_parts(p.nodes, p.links)
                                           for p in enumerate_p_resolutions(19, 7)][-1].endswith("[(2,1)]-(1)-[(3,1)]")),
        ("every P-resolution of 19/7 verifies",
         lambda: all(verify_p_resolution(p).passed for p in enumerate_p_resolutions(19, 7))),
        ("small surface S0F + FIB", lambda: smallsurf.assemble(
            smallsurf.configuration(3, "S0F", [smallsurf.I(2)])).K2 == 2),
        ("geography pg=5", lambda: (smallsurf.geography(5).minK2, smallsurf.geography(5).maxK2) == (3, 27)),
        ("Horikawa count pg=4", lambda: len(smallsurf.horikawa_families(4)) == 10),
        ("Lee-Park quotient n=3", lambda: any(
            o.isT == TType(2, 3, 2) for o in quotient.quotient_candidates(9, 2) if o.applicable)),
        ("Wahl quotients up to n=10", lambda: quotient.wahl_quotient_scan(10).passed),
        ("corpus", lambda: corpus.check() == []),
    ]


def cmd_selftest(args):
    results = []
    for name, check in selftest_checks():
        results.append((name, bool(check())))
    data = [{"check": n, "passed": ok} for n, ok in results]
    text = "\n".join(f"{'PASS' if ok else 'FAIL'} {n}" for n, ok in results)
    failed = sum(not ok for _, ok in results)
    if failed:
        raise CheckFailed(f"{failed} selftest checks failed\n{text}", data)
    return data, text


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"usage: {message}")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
    common.add_argument("--limit", type=int, default=argparse.SUPPRESS, help="cap the number of results")

    parser = _Parser(prog="tsurf", parents=[common], description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, actions, handler, help_text):
        sub = verbs.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("action", choices=actions)
        sub.add_argument("values", nargs="*")
        sub.set_defaults(handler=handler)
        return sub

    verb("hj", ["expand", "eval", "dual"], cmd_hj, "continued fractions")
    tchain = verb("tchain", ["check", "disc", "children", "enum"], cmd_tchain, "T-chains")
    tchain.add_argument("--max-len", type=int, default=8)
    tchain.add_argument("--max-delta", type=int, default=200)
    tchain.add_argument("--d", type=int, default=None)
    verb("zcf", ["enum", "kset", "kcross"], cmd_zcf, "zero continued fractions")
    pres = verb("pres", ["all", "verify", "render", "appendix"], cmd_pres, "P-resolutions")
    pres.add_argument("--render", action="store_true")
    pres.add_argument("--cross", action="store_true")
    pres.add_argument("--corrected", action="store_true")
    small = verb("small", ["block", "assemble", "horikawa", "geography", "invariants", "leepark", "bmy"],
                 cmd_small, "small surfaces")
    small.add_argument("--pg", type=int)
    small.add_argument("--N", type=int)
    small.add_argument("--main")
    small.add_argument("--F")
    small.add_argument("--F2")
    small.add_argument("--fib", action="append")
    verb("quot", ["cases", "scan-wahl", "scan-duval", "leepark"], cmd_quot, "involution quotients")
    sub = verbs.add_parser("selftest", parents=[common], help="quick end-to-end checks")
    sub.set_defaults(handler=cmd_selftest, action=None, values=[])
    corpus_parser = verb("corpus", ["check", "regen"], cmd_corpus, "golden corpus")
    corpus_parser.add_argument("--path")
    return parser


def emit(data, text, as_json, status="ok", stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(canonical({"status": status, "payload": to_data(data)}) + "\n")
    elif text:
        stream.write(text + "\n")


def run(argv=None):
    """Parse argv, dispatch and return the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args, extra = build_parser().parse_known_args(argv)
        unknown = [t for t in extra if t.startswith("-") and not re.fullmatch(r"-\d+", t)]
        if unknown:
            raise ValidationError(f"usage: unrecognized arguments: {' '.join(unknown)}")
        args.values = list(getattr(args, "values", [])) + extra
        args.json = getattr(args, "json", False)
        args.limit = getattr(args, "limit", None)
        if args.limit is not None and args.limit < 0:
            raise ValidationError("--limit must be >= 0")
        data, text = args.handler(args)
        emit(data, text, args.json)
        return 0
    except CheckFailed as exc:
        if as_json:
            emit(exc.payload, None, True, status="check-failed")
        first = str(exc).splitlines()
        if not as_json and len(first) > 1:
            sys.stdout.write("\n".join(first[1:]) + "\n")
        sys.stderr.write(f"error: check: {first[0] if first else ''}\n")
        return 2
    except ValidationError as exc:
        sys.stderr.write(f"error: validation: {one_line(exc)}\n")
        return 1
    except (InconsistencyError, StructuralError) as exc:
        sys.stderr.write(f"error: inconsistency: {one_line(exc)}\n")
        return 3


def one_line(exc):
    return " ".join(str(exc).split())


def main():
    sys.exit(run())
