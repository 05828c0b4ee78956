"""Command-line surface: invariant reports, certified engine runs with
traces, the open-problem counterexample search, and the property suites.

Exit-code contract for `prove`: 0 = Hamiltonian, 1 = witness or no
2-factor, 2 = stuck / rejected input.  Logs are append-only JSON lines so
sweeps can be diffed and replayed; toughness values always serialize as
exact "p/q" strings (or "inf"), never decimals.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, asdict
from fractions import Fraction

from .graph import Graph, GraphError, parse_graph, write_graph
from . import oracles
from .oracles import (
    DEFAULT_LIMITS, Limits, toughness, is_2k2_free, is_2k2_free_obs1,
    independence_number, hamiltonian_cycle_bruteforce,
)
from .graph import bits
from .two_factor import find_two_factor
from .engine import run_engine, NotTwoK2Free
from .certificates import certificate_to_json
from .generators import random_2k2_free, SplitMix64
from . import kernels


@dataclass
class RunRecord:
    graph_id: str
    n: int
    m: int
    toughness: str
    is_2k2_free: bool
    outcome: str
    omega_trajectory: list
    wall_time: float
    seed: int
    witness: dict | None = None

    def to_json(self) -> str:
        d = asdict(self)
        if d["witness"] is None:
            del d["witness"]
        return json.dumps(d, sort_keys=True)

    @staticmethod
    def from_json(line: str) -> "RunRecord":
        d = json.loads(line)
        d.setdefault("witness", None)
        return RunRecord(**d)


def _limits() -> Limits:
    return Limits.from_env()


def _tough_str(g: Graph, limits: Limits) -> str:
    return str(toughness(g, limits))


def _graph_id(g: Graph) -> str:
    """Stable id: n plus the edge mask in hex (bit v*(v-1)/2+u for u < v)."""
    mask = 0
    for u, v in g.edges():
        a, b = min(u, v), max(u, v)
        mask |= 1 << (b * (b - 1) // 2 + a)
    return f"n{g.n}-{mask:x}"


def _record(g: Graph, outcome: str, trajectory, wall: float, seed: int,
            limits: Limits, witness=None) -> RunRecord:
    return RunRecord(
        graph_id=_graph_id(g), n=g.n, m=g.m,
        toughness=_tough_str(g, limits),
        is_2k2_free=is_2k2_free(g)[0],
        outcome=outcome, omega_trajectory=list(trajectory),
        wall_time=wall, seed=seed, witness=witness)


def _load(path: str) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def cmd_invariants(args) -> int:
    limits = _limits()
    g = _load(args.file)
    print(f"n = {g.n}")
    print(f"m = {g.m}")
    rep = toughness(g, limits)
    wit = "-" if rep.witness is None else sorted(bits(rep.witness))
    print(f"toughness = {rep} (cutset {wit})")
    alpha, amask = independence_number(g, limits)
    print(f"alpha = {alpha} (set {sorted(bits(amask))})")
    free, fw = is_2k2_free(g)
    print(f"2K2-free = {free}" + ("" if free else f" (induced pair {fw})"))
    f = find_two_factor(g)
    if f is None:
        print("2-factor = none")
    else:
        print(f"2-factor = {f.omega} cycle(s)")
    return 0


def cmd_prove(args) -> int:
    limits = _limits()
    g = _load(args.file)
    if g.n < 3:
        print(f"error: need at least 3 vertices, got {g.n}", file=sys.stderr)
        return 2
    t0 = time.monotonic()
    try:
        res = run_engine(g, pretrust_2k2_free=args.pretrust_2k2free,
                         limits=limits)
    except NotTwoK2Free as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 2
    wall = time.monotonic() - t0
    witness = None
    if res.certificate is not None:
        witness = certificate_to_json(res.certificate)
    rec = _record(g, res.outcome, res.omega_trajectory, wall, args.seed,
                  limits, witness)
    trace_sink = sys.stderr
    if args.trace:
        trace_sink = open(args.trace, "w")
    try:
        for step in res.trace:
            print(json.dumps(step, sort_keys=True), file=trace_sink)
    finally:
        if args.trace:
            trace_sink.close()
    print(rec.to_json())
    if res.outcome == "hamiltonian":
        return 0
    if res.outcome in ("witness", "no_two_factor"):
        return 1
    print(f"stuck: {res.stuck_detail}", file=sys.stderr)
    return 2


def _parse_ratio(s: str) -> Fraction:
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def _search_exhaustive(n: int, lo: Fraction, log) -> dict:
    """Sweep every labeled 2K2-free graph on n vertices.  The band is
    [lo, 2); once lo reaches 2 the upper bound is dropped, turning the
    search into a check of the theorem itself."""
    hi_num, hi_den = (0, 0) if lo >= 2 else (2, 1)
    counts = kernels.sweep_2k2_free(n, lo.numerator, lo.denominator,
                                    hi_num, hi_den, False, True)
    report = {
        "mode": "exhaustive", "n": n,
        "enumerated": counts["enumerated"],
        "in_band": counts["tough_pass"],
        "hamiltonian": counts["ham_pass"],
        "non_hamiltonian": counts["non_hamiltonian"],
    }
    print(json.dumps(report, sort_keys=True), file=log)
    return report


def cmd_search(args) -> int:
    limits = _limits()
    lo = _parse_ratio(args.tough)
    hi = None if lo >= 2 else Fraction(2)
    log = sys.stdout if args.log is None else open(args.log, "a")
    hits = []
    try:
        if args.exhaustive:
            for n in range(max(3, args.n_min), args.n_max + 1):
                rep = _search_exhaustive(n, lo, log)
                hits.extend(rep["non_hamiltonian"])
            return 1 if hits else 0

        rng = SplitMix64(args.seed)
        produced = 0
        attempt = 0
        while produced < args.count:
            attempt += 1
            if attempt > args.count * 1000:
                break  # band too thin for this range; report what we have
            sub_seed = rng.u64()
            span = args.n_max - args.n_min + 1
            n = args.n_min + sub_seed % span
            p = 0.3 + (sub_seed >> 8) % 50 / 100.0
            g = random_2k2_free(n, p, sub_seed)
            rep = toughness(g, limits)
            if rep.infinite:
                in_band = hi is None
            else:
                in_band = lo <= rep.value and (hi is None or rep.value < hi)
            if not in_band:
                continue
            produced += 1
            t0 = time.monotonic()
            cyc = hamiltonian_cycle_bruteforce(g, limits)
            wall = time.monotonic() - t0
            outcome = "hamiltonian" if cyc is not None else "NON-HAMILTONIAN"
            rec = _record(g, outcome, [], wall, sub_seed, limits)
            print(rec.to_json(), file=log)
            if cyc is None:
                hits.append(sub_seed)
                print("counterexample candidate:", file=sys.stderr)
                print(write_graph(g), file=sys.stderr)
        summary = {"mode": "sampled", "requested": args.count,
                   "produced": produced, "non_hamiltonian": hits}
        print(json.dumps(summary, sort_keys=True), file=log)
    finally:
        if args.log is not None:
            log.close()
    return 1 if hits else 0


def _suite_lemmas(seed: int) -> list[tuple[str, int, int]]:
    """Recognition equivalence and absorption properties on random graphs."""
    from .two_factor import reinsert_vertex
    rng = SplitMix64(seed)
    rows = []
    agree = total = 0
    for _ in range(300):
        n = 4 + rng.below(6)
        g = _random_graph(n, rng)
        total += 1
        if is_2k2_free(g)[0] == is_2k2_free_obs1(g)[0]:
            agree += 1
    rows.append(("2k2 recognition agreement", agree, total))

    from .two_factor import TwoFactor
    from .graph import OrientedCycle
    ok = total = 0
    for _ in range(200):
        n = 5 + rng.below(5)
        g = _random_graph(n, rng)
        if not is_2k2_free(g)[0]:
            continue
        for x in bits(g.full_mask):
            fh = find_two_factor(g.delete_vertex(x))
            if fh is None:
                continue
            # lift the factor of G - x back into G's labels
            cycles = [OrientedCycle.checked(g, [v if v < x else v + 1
                                                for v in c.vertices])
                      for c in fh.cycles]
            fm = TwoFactor(g, cycles, omit=x)
            total += 1
            r = reinsert_vertex(g, x, fm)
            if r is None or r.check() is None:
                ok += 1
    rows.append(("reinsertion yields valid factor or none", ok, total))
    return rows


def _random_graph(n: int, rng: SplitMix64, p: float = 0.5) -> Graph:
    adj = [0] * n
    for u in range(n):
        for v in range(u):
            if rng.chance(p):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def _suite_claims(seed: int) -> list[tuple[str, int, int]]:
    from .oracles import independence_number
    rng = SplitMix64(seed)
    rows = []
    ok = total = 0
    for _ in range(300):
        n = 4 + rng.below(6)
        g = _random_graph(n, rng, p=0.85)
        if not is_2k2_free(g)[0]:
            continue
        rep = toughness(g)
        if rep.value is None or rep.value < 2:
            continue
        total += 1
        alpha, _ = independence_number(g)
        if 3 * alpha <= g.n:
            ok += 1
    rows.append(("2-tough implies alpha <= n/3", ok, total))
    return rows


def _suite_engine(seed: int) -> list[tuple[str, int, int]]:
    from .oracles import verify_certificate
    rng = SplitMix64(seed)
    rows = []
    sound = total = ham_ok = tough2 = 0
    for _ in range(300):
        n = 5 + rng.below(6)
        p = 0.4 + rng.below(40) / 100.0
        g = random_2k2_free(n, p, rng.u64())
        res = run_engine(g)
        total += 1
        if res.certificate is None or verify_certificate(g, res.certificate):
            sound += 1
        rep = toughness(g)
        if rep.value is not None and rep.value >= 2 or rep.infinite:
            tough2 += 1
            if res.outcome == "hamiltonian":
                ham_ok += 1
    rows.append(("emitted certificates verify", sound, total))
    rows.append(("2-tough inputs proven hamiltonian", ham_ok, tough2))
    return rows


def _suite_generators(seed: int) -> list[tuple[str, int, int]]:
    from .generators import random_split_graph, chvatal_family
    rng = SplitMix64(seed)
    rows = []
    ok = total = 0
    for _ in range(200):
        c, i = 1 + rng.below(6), rng.below(6)
        p = rng.below(100) / 100.0
        g = random_split_graph(c, i, p, rng.u64())
        total += 1
        if is_2k2_free(g)[0]:
            ok += 1
    rows.append(("split graphs are 2k2-free", ok, total))
    ok = total = 0
    for l in (1, 2):
        total += 1
        g = chvatal_family(l)
        rep = toughness(g)
        if rep.value == Fraction(3 * l, 2 * l + 1) and find_two_factor(g) is None:
            ok += 1
    rows.append(("toughness family defining properties", ok, total))
    return rows


_SUITES = {
    "lemmas": _suite_lemmas,
    "claims": _suite_claims,
    "engine": _suite_engine,
    "generators": _suite_generators,
}


def cmd_suite(args) -> int:
    if args.name not in _SUITES:
        print(f"unknown suite {args.name!r}; choose from "
              f"{sorted(_SUITES)}", file=sys.stderr)
        return 2
    rows = _SUITES[args.name](args.seed)
    failed = False
    for label, ok, total in rows:
        status = "pass" if ok == total else "FAIL"
        if ok != total:
            failed = True
        print(f"[{status}] {label}: {ok}/{total}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toughham",
        description="certified Hamiltonicity for 2-tough 2K2-free graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="run the certifying engine on a graph")
    p.add_argument("file")
    p.add_argument("--trace", default=None, metavar="OUT.JSONL")
    p.add_argument("--pretrust-2k2free", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("invariants", help="print oracle invariants of a graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("search", help="hunt for a 3/2-tough non-Hamiltonian "
                                      "2K2-free graph")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tough", default="3/2", metavar="P/Q")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--log", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("suite", help="run a named property suite")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except oracles.SizeLimit as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return 2


def script_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    script_entry()
