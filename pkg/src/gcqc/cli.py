"""Command-line interface.

Subcommands: construct, verify, bounds, family, reproduce. Exit status is 0
on success or PASS, 2 on a verification FAIL and 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds
from .classical_code import (
    DEFAULT_MAX_ENUM,
    ClassicalCode,
    CodeParams,
    EnumerationError,
    hamming_code,
    round3,
    subcode_over_subalphabet,
)
from .concatenation import (
    GcqcCode,
    build_pentagon_partition,
    build_ring10_partition,
    concatenate,
    outer_repetition,
)
from .cws import CwsCode, Graph, cws_distance_verify
from .finite_field import make_field, parse_vector

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    timing: dict = field(default_factory=dict)

    def say(self, line: str) -> None:
        self.lines.append(line)

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "outputs": self.outputs}
        if self.timing:
            out["timing"] = self.timing
        return out


def power_form(x: int, q: int) -> str:
    """``q^k`` when ``x`` is an exact power of ``q``, else the decimal."""
    k, y = 0, x
    while y > 1 and y % q == 0:
        y //= q
        k += 1
    return f"{q}^{k}" if y == 1 else str(x)


def label(p: CodeParams, exact: bool = False) -> str:
    d = f"{p.d}" if exact else f"{p.d} (lower bound, formula)"
    return f"(({p.n}, {p.q}^{p.log_size_str}, {d}))_{p.q}"


# ---------------------------------------------------------------------------
# file formats


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def load_graph(path: str) -> Graph:
    return Graph.from_json(load_json(path))


def load_code(path: str) -> ClassicalCode:
    data = load_json(path)
    if "words" in data and data["words"] and isinstance(data["words"][0], str):
        data = dict(data, words=[parse_vector(w, int(data["q"])) for w in data["words"]])
    return ClassicalCode.from_json(data)


def write_json(path: Path, data: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_verify(graph_file: str, code_file: str, d: int, *, max_enum: int, threads: int) -> RunReport:
    rep = RunReport("verify", {"graph": graph_file, "code": code_file, "d": d})
    graph, code = load_graph(graph_file), load_code(code_file)
    res = cws_distance_verify(CwsCode(graph, code), d, max_enum=max_enum, threads=threads)
    rep.outputs = res.to_json()
    rep.outputs["d_is_exact"] = False
    rep.say(res.summary())
    rep.exit_code = EXIT_OK if res.passed else EXIT_FAIL
    return rep


def _pentagon15() -> GcqcCode:
    return concatenate(build_pentagon_partition(), outer_repetition(16, 3))


def cmd_construct(what: str, out: str | None) -> RunReport:
    rep = RunReport("construct", {"what": what, "out": out})
    if what == "pentagon15":
        gc = _pentagon15()
        graph, code = gc.graph, gc.word_code
        rep.outputs = gc.summary()
        rep.say(f"constructed {label(gc.params)} with {code.size} codewords")
        files = {"graph.json": graph.to_json(), "code.json": code.to_json()}
    elif what in ("pentagon", "ring10"):
        part = build_pentagon_partition() if what == "pentagon" else build_ring10_partition()
        rep.outputs = {
            "r": part.r,
            "subcode_sizes": sorted(set(part.sizes)),
            "subcode_distances": sorted(set(part.subcode_distances)),
            "union_distance": part.union_distance,
            "graph_distance": part.graph_distance,
        }
        rep.say(
            f"{what} partition: {part.r} subcodes of size {part.equal_size}, "
            f"d_i = {min(part.subcode_distances)}, union distance {part.union_distance}, "
            f"d_G = {part.graph_distance}"
        )
        files = {
            "graph.json": part.graph.to_json(),
            "partition.json": part.to_json(),
            "code.json": part.subcodes[0].to_json(),
        }
    else:
        raise ValueError(f"unknown construction {what!r}")
    if out:
        for name, data in files.items():
            write_json(Path(out) / name, data)
            rep.say(f"wrote {Path(out) / name}")
    return rep


def cmd_bounds(n: int, q: int, t: int) -> RunReport:
    hb = bounds.quantum_hamming_bound(n, q, t)
    rep = RunReport("bounds", {"n": n, "q": q, "t": t})
    rep.outputs = {
        "hamming_cap": str(hb.cap),
        "log_hamming_cap": hb.log_str,
        "stabilizer_exponent_cap": bounds.stabilizer_dimension_cap(n, q) if t == 1 else None,
    }
    rep.say(f"quantum Hamming bound: K <= {q}^{hb.log_str}")
    lp = bounds.LP_BOUND_QUOTED.get((n, q))
    if lp is not None and t == 1:
        rep.outputs["lp_bound_quoted"] = lp
        rep.say(f"linear programming bound (quoted, not computed): K < {q}^{lp}")
    return rep


def parse_range(text: str) -> list[int]:
    """``2..6``, ``2-6``, ``3`` or empty."""
    text = text.strip()
    if not text:
        return []
    for sep in ("..", "-"):
        if sep in text:
            lo, hi = text.split(sep)
            return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_table(q: int, s_range: list[int], i: int) -> RunReport:
    rep = RunReport("family", {"q": q, "s": s_range, "i": i})
    rows = bounds.asymptotic_table(q, s_range, i)
    rep.outputs = {"rows": [r.to_json() for r in rows]}
    rep.outputs["csv"] = bounds.table_csv(rows) if rows else ""
    return rep


def _example1(rep: RunReport) -> None:
    part = build_pentagon_partition()
    outer = hamming_code(make_field(2, 4), 2)
    gc = concatenate(part, outer, mode="params")
    K = gc.params.size
    rep.outputs["example1"] = dict(gc.summary(), size_power=power_form(K, 2))
    rep.say(f"Example 1: outer {outer.params()} -> {label(gc.params)}")
    rep.say(f"  K = 2^17 * 16^15 = {K} = {power_form(K, 2)}")
    rep.say(
        f"  components: 16 subcodes with d_i = {min(part.subcode_distances)}, "
        f"d_G = {part.graph_distance}, union d = {part.union_distance}, d_c = 3"
    )


def _example2(rep: RunReport) -> None:
    part = build_pentagon_partition()
    h17 = hamming_code(make_field(17), 2)
    outer = subcode_over_subalphabet(h17, 16, mode="bound")
    gc = concatenate(part, outer, mode="params")
    hb = bounds.quantum_hamming_bound(90, 2)
    stab = bounds.stabilizer_dimension_cap(90, 2)
    rep.outputs["example2"] = dict(
        gc.summary(),
        outer_size=str(outer.size),
        hamming_log=hb.log_str,
        lp_bound_quoted=bounds.LP_BOUND_QUOTED[(90, 2)],
        stabilizer_cap=f"2^{stab}",
        beats_stabilizer=gc.params.size > 2**stab,
    )
    rep.say(f"Example 2: outer (18, ceil(16^18/17^2), 3)_16 -> {label(gc.params)}")
    rep.say(
        f"  Hamming bound 2^{hb.log_str}, LP bound 2^{bounds.LP_BOUND_QUOTED[(90, 2)]} (quoted), "
        f"best stabilizer 2^{stab}; beats stabilizer: {gc.params.size > 2**stab}"
    )


def _example3(rep: RunReport) -> None:
    part = build_ring10_partition()
    h83 = hamming_code(make_field(83), 2)
    outer = subcode_over_subalphabet(h83, 81, mode="bound")
    gc = concatenate(part, outer, mode="params")
    hb = bounds.quantum_hamming_bound(840, 3)
    stab = bounds.stabilizer_dimension_cap(840, 3)
    rep.outputs["example3"] = dict(
        gc.summary(),
        hamming_log=hb.log_str,
        lp_bound_quoted=bounds.LP_BOUND_QUOTED[(840, 3)],
        stabilizer_cap=f"3^{stab}",
        beats_stabilizer=gc.params.size > 3**stab,
    )
    rep.say(
        f"Example 3: ring-10 inner, {part.r} subcodes of size {part.equal_size} "
        f"(d_i = {min(part.subcode_distances)}, d_G = {part.graph_distance})"
    )
    rep.say(f"  outer (84, ceil(81^84/83^2), 3)_81 -> {label(gc.params)}")
    rep.say(
        f"  Hamming bound 3^{hb.log_str}, LP bound 3^{bounds.LP_BOUND_QUOTED[(840, 3)]} (quoted), "
        f"best stabilizer 3^{stab}"
    )


def _pentagon15_report(rep: RunReport, max_enum: int, threads: int) -> None:
    gc = _pentagon15()
    lo, hi = gc.certify(max_enum=max_enum, threads=threads)
    rep.outputs["pentagon15"] = dict(
        gc.summary(), verify_d3=lo.to_json(), verify_d4=hi.to_json()
    )
    exact = gc.exact_distance is not None
    rep.say(f"pentagon15: {gc.word_code.size} codewords of length {gc.params.n}")
    rep.say(f"  d=3: {lo.summary()}")
    rep.say(f"  d=4: {hi.summary()}")
    rep.say(f"  result {label(gc.params, exact)}")
    if not lo.passed:
        rep.exit_code = EXIT_FAIL


def _family_report(rep: RunReport) -> None:
    rows = bounds.asymptotic_table(2, range(2, 5), 2)
    rep.outputs["family"] = [r.to_json() for r in rows]
    for r in rows:
        rep.say(
            f"family q=2 s={r.s} i=2: N={r.N_si} log2 M >= {round3(r.log_M)}, "
            f"Hamming {round3(r.log_cap)}, stabilizer <= 2^{r.N_si - 4 * r.s - 1}, "
            f"beats stabilizer: {r.beats_stabilizer}"
        )


def cmd_reproduce(example: str, *, max_enum: int, threads: int) -> RunReport:
    rep = RunReport("reproduce", {"example": example})
    steps = {
        "1": _example1,
        "2": _example2,
        "3": _example3,
        "pentagon15": lambda r: _pentagon15_report(r, max_enum, threads),
        "family": _family_report,
    }
    chosen = list(steps) if example == "all" else [example]
    for key in chosen:
        if key not in steps:
            raise ValueError(f"unknown example {example!r}")
        steps[key](rep)
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcqc", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM, help="enumeration budget")
    p.add_argument("--threads", type=int, default=1, help="worker threads for verification")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a partition or the length-15 code")
    c.add_argument("what", choices=["pentagon", "ring10", "pentagon15"])
    c.add_argument("--out", help="directory for graph/code JSON files")

    v = sub.add_parser("verify", help="check a graph + word code against distance d")
    v.add_argument("graph")
    v.add_argument("code")
    v.add_argument("-d", type=int, required=True)

    b = sub.add_parser("bounds", help="quantum Hamming bound")
    b.add_argument("-n", type=int, required=True)
    b.add_argument("-q", type=int, default=2)
    b.add_argument("-t", type=int, default=1)

    f = sub.add_parser("family", help="parameter table of the distance-3 family")
    f.add_argument("-q", type=int, default=2)
    f.add_argument("-s", default="2..4", help="range such as 2..6")
    f.add_argument("-i", type=int, default=2)
    f.add_argument("--csv", help="write CSV here instead of stdout")

    r = sub.add_parser("reproduce", help="recompute a worked example")
    r.add_argument("example", choices=["1", "2", "3", "pentagon15", "family", "all"])
    return p


def run(argv: list[str] | None = None) -> tuple[RunReport, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    kw = dict(max_enum=args.max_enum, threads=args.threads)
    t0 = time.perf_counter()
    if args.command == "verify":
        rep = cmd_verify(args.graph, args.code, args.d, **kw)
    elif args.command == "construct":
        rep = cmd_construct(args.what, args.out)
    elif args.command == "bounds":
        rep = cmd_bounds(args.n, args.q, args.t)
    elif args.command == "family":
        rep = cmd_table(args.q, parse_range(args.s), args.i)
    else:
        rep = cmd_reproduce(args.example, **kw)
    if args.timing:
        rep.timing = {"seconds": round(time.perf_counter() - t0, 3)}
    return rep, args


def main(argv: list[str] | None = None) -> int:
    try:
        rep, args = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_ERROR if exc.code else EXIT_OK
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError, EnumerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.command == "family" and not args.json:
        text = rep.outputs["csv"]
        if args.csv:
            Path(args.csv).write_text(text)
        else:
            sys.stdout.write(text)
    elif args.json:
        print(json.dumps(rep.to_json(), indent=1, sort_keys=True))
    else:
        for line in rep.lines:
            print(line)
        if rep.timing:
            print(f"({rep.timing['seconds']} s)")
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
