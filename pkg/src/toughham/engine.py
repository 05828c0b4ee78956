"""Cycle-merging engine: either Hamiltonize a 2-factor of a 2K2-free graph
or extract a verifiable witness that the graph is not 2-tough.

The engine runs on ANY 2-factor, not a minimum one.  Everywhere the
underlying argument leans on minimality, the engine instead takes the
constructive branch: the exhibited cycle either merges factor cycles
(Progress), or certifies a vertex as absorbable (a concrete 2-factor of
G - v with one cycle fewer, kept in a registry).  Two adjacent certified
vertices are converted to Progress through vertex reinsertion; when that
fails the engine stops with a full trace (Stuck) instead of guessing.

Rule order is fixed and all scans break ties by ascending vertex / cycle
index, so runs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    Certificate,
    HamiltonianCycle,
    IndependentSetWitness,
    ToughnessWitness,
)
from .graph import Graph, OrientedCycle, bits, mask_of
from .oracles import (
    DEFAULT_LIMITS,
    Limits,
    ToughnessReport,
    check_certificate,
    is_2k2_free,
    toughness,
)
from .two_factor import TwoFactor, find_two_factor, reinsert_vertex


class NotTwoK2Free(ValueError):
    def __init__(self, witness):
        super().__init__(f"input is not 2K2-free, induced pair witness {witness}")
        self.witness = witness


class _Progress(Exception):
    def __init__(self, factor: TwoFactor):
        self.factor = factor


class _Witness(Exception):
    def __init__(self, cert: Certificate):
        self.cert = cert


class _Stuck(Exception):
    def __init__(self, detail: str):
        self.detail = detail


@dataclass
class Classification:
    """Per-vertex A/B typing of a factor with >= 2 cycles.

    A vertex is A-type when some OTHER factor cycle carries two consecutive
    vertices both adjacent to it; the witnessing (cycle, first vertex) pair
    is stored.  Factor edges with two B ends are B-type, all others
    AB-type; a cycle with only AB-type edges is alternating.
    """

    a_witness: dict[int, tuple[OrientedCycle, int]]
    a_mask: int
    alternating: list[OrientedCycle]
    non_alternating: list[OrientedCycle]
    a0_mask: int  # A-vertices on alternating cycles
    b0_mask: int  # B-vertices on alternating cycles

    def is_a(self, v: int) -> bool:
        return bool(self.a_mask >> v & 1)


def classify(g: Graph, f: TwoFactor) -> Classification:
    assert f.omega >= 2
    a_witness: dict[int, tuple[OrientedCycle, int]] = {}
    for x in range(g.n):
        own = f.cycle_of(x)
        for d in f.cycles:
            if d is own:
                continue
            hit = None
            for y in d.vertices:
                if g.has_edge(x, y) and g.has_edge(x, d.succ(y)):
                    hit = y
                    break
            if hit is not None:
                a_witness[x] = (d, hit)
                break
    a_mask = mask_of(a_witness)
    alternating = []
    non_alternating = []
    for c in f.cycles:
        if all(a_mask >> v & 1 or a_mask >> c.succ(v) & 1 for v in c.vertices):
            alternating.append(c)
        else:
            non_alternating.append(c)
    a0 = b0 = 0
    for c in alternating:
        a0 |= c.vertex_mask & a_mask
        b0 |= c.vertex_mask & ~a_mask
    return Classification(a_witness, a_mask, alternating, non_alternating, a0, b0)


def direct_merge_scan(g: Graph, f: TwoFactor) -> TwoFactor | None:
    """Merge two factor cycles joined by a pair of 'parallel' cross edges.

    Scans every cross edge xy (x on C, y on D) for a second cross edge among
    {x-, x+} x {y-, y+}; the four patterns are normalized to x+y+ by
    reversing cycle orientations, and the merged cycle is
    x y <-D<- y+ x+ ->C-> x on all of V(C) u V(D).
    """
    assert f.omega >= 2
    for x in range(g.n):
        c = f.cycle_of(x)
        for y in bits(g.adj[x] & ~c.vertex_mask):
            d = f.cycle_of(y)
            for crev in (False, True):
                for drev in (False, True):
                    xp = c.pred(x) if crev else c.succ(x)
                    yp = d.pred(y) if drev else d.succ(y)
                    if not g.has_edge(xp, yp):
                        continue
                    cc = c.reversed() if crev else c
                    dd = d.reversed() if drev else d
                    seq = [x]
                    seq += dd.backward_path(y, dd.succ(y)).vertices
                    seq += cc.forward_path(cc.succ(x), x).vertices[:-1]
                    merged = OrientedCycle.checked(g, seq)
                    cycles = [k for k in f.cycles if k is not c and k is not d]
                    cycles.append(merged)
                    out = TwoFactor(g, cycles)
                    out.require_valid()
                    return out
    return None


@dataclass
class BadSets:
    """Per non-alternating cycle: its A-vertices plus the B-vertices whose
    whole neighborhood on some alternating cycle K is exactly B n V(K)."""

    bad: dict[OrientedCycle, int]  # cycle -> vertex mask
    bad_witness: dict[int, OrientedCycle]  # bad B-vertex -> its K

    def mask(self, h: OrientedCycle) -> int:
        return self.bad[h]


def compute_bad_sets(g: Graph, f: TwoFactor, cls: Classification) -> BadSets:
    bad: dict[OrientedCycle, int] = {}
    bad_witness: dict[int, OrientedCycle] = {}
    for h in cls.non_alternating:
        m = h.vertex_mask & cls.a_mask
        for x in bits(h.vertex_mask & ~cls.a_mask):
            for k in cls.alternating:
                target = k.vertex_mask & ~cls.a_mask
                if target and (g.adj[x] & k.vertex_mask) == target:
                    m |= 1 << x
                    bad_witness[x] = k
                    break
        bad[h] = m
    return BadSets(bad, bad_witness)


@dataclass
class EngineResult:
    outcome: str  # hamiltonian | witness | no_two_factor | stuck
    certificate: Certificate | None
    omega_trajectory: list[int]
    trace: list[dict]
    stuck_detail: str | None = None
    toughness_report: ToughnessReport | None = None


class _Round:
    """One pass over a fixed factor: runs until Progress, a witness, or
    Stuck.  All state (classification, certificate registry, bad sets) is
    rebuilt per round."""

    def __init__(self, run: "_EngineRun", f: TwoFactor):
        self.run = run
        self.g = run.g
        self.f = f
        self.cls: Classification = None  # type: ignore[assignment]
        self.bad: BadSets = None  # type: ignore[assignment]
        self.registry: dict[int, TwoFactor] = {}

    # -- small helpers -------------------------------------------------

    def edge(self, u: int, v: int) -> bool:
        return self.g.has_edge(u, v)

    def bug(self, detail: str):
        raise _Stuck("internal derivation mismatch: " + detail)

    def replace(self, removed: list[OrientedCycle], added: list[list[int]],
                omit: int | None) -> TwoFactor:
        # match removed cycles by vertex set: callers may pass reversed copies
        gone = 0
        for c in removed:
            gone |= c.vertex_mask
        cycles = [c for c in self.f.cycles if not (c.vertex_mask & gone)]
        for seq in added:
            cycles.append(OrientedCycle.checked(self.g, seq))
        out = TwoFactor(self.g, cycles, omit=omit)
        out.require_valid()
        return out

    def progress(self, rule: str, ref: str, removed: list[OrientedCycle],
                 added: list[list[int]]):
        out = self.replace(removed, added, omit=None)
        if out.omega >= self.f.omega:
            self.bug(f"{rule}: produced omega {out.omega} >= {self.f.omega}")
        self.run.record(rule, ref, removed, out.omega)
        raise _Progress(out)

    def emit(self, rule: str, ref: str, cert: Certificate):
        reason = check_certificate(self.g, cert, self.f)
        if reason is not None:
            self.bug(f"{rule}: witness fails verification: {reason}")
        self.run.record(rule, ref, [], self.f.omega, produced=cert.tag)
        raise _Witness(cert)

    def register(self, rule: str, ref: str, v: int,
                 removed: list[OrientedCycle], added: list[list[int]]):
        """Store an absorption certificate for v (a 2-factor of G - v with
        one cycle fewer).  If v is adjacent to an already-certified vertex,
        immediately try to convert the pair to Progress by reinsertion;
        failure of both reinsertions is Stuck."""
        if v in self.registry:
            return
        cert = self.replace(removed, added, omit=v)
        if cert.omega != self.f.omega - 1:
            self.bug(f"{rule}: certificate for {v} has omega {cert.omega}")
        self.run.record(rule, ref, removed, self.f.omega, produced=f"certificate[{v}]")
        for w in bits(self.g.adj[v] & mask_of(self.registry)):
            back = reinsert_vertex(self.g, v, cert)
            if back is not None:
                self.run.record("reinsert_certified_pair", "absorb.pair", [], back.omega)
                raise _Progress(back)
            back = reinsert_vertex(self.g, w, self.registry[w])
            if back is not None:
                self.run.record("reinsert_certified_pair", "absorb.pair", [], back.omega)
                raise _Progress(back)
            raise _Stuck(
                f"certified vertices {v} and {w} are adjacent but neither reinsertion applies"
            )
        self.registry[v] = cert

    # -- certificate constructions ------------------------------------

    def consecutive_pair_cert(self, x: int, c: OrientedCycle,
                              d: OrientedCycle, y: int):
        """x sees consecutive y, y+ on another cycle: certify x+ via the
        merged cycle on (V(C) u V(D)) \\ {x+}."""
        g = self.g
        xp, xpp = c.succ(x), c.succ(c.succ(x))
        yp = d.succ(y)
        if xpp == x or xp in (y, yp):
            self.bug("consecutive-pair construction on degenerate cycle")
        if self.edge(xp, y) or self.edge(xp, yp):
            # a cross-edge pair survived the merge scan
            self.bug(f"merge scan missed pattern at {x},{xp} vs {y},{yp}")
        if self.edge(xpp, y):
            seq = [x] + list(d.forward_path(yp, y).vertices)
        elif self.edge(xpp, yp):
            seq = [x] + list(d.backward_path(y, yp).vertices)
        else:
            self.bug(f"no induced-pair completion at {x}{xp} vs {y}{yp}")
        seq += c.forward_path(xpp, x).vertices[:-1]
        self.register("absorb_neighbor_of_pair", "absorb.pair-seen", xp,
                      [c, d], [seq])

    def certify_a_type(self, x: int):
        d, y = self.cls.a_witness[x]
        c = self.f.cycle_of(x)
        self.consecutive_pair_cert(x, c, d, y)
        crev = c.reversed()
        self.consecutive_pair_cert(x, crev, d, y)

    def certify_bad(self, x: int, h: OrientedCycle, k: OrientedCycle):
        """x (B-type on h) sees exactly the B-vertices of alternating k:
        certify x+ and x-."""
        for hh in (h, h.reversed()):
            self._certify_bad_one_side(x, hh, k)

    def _certify_bad_one_side(self, x: int, h: OrientedCycle, k: OrientedCycle):
        g = self.g
        xp, xpp = h.succ(x), h.succ(h.succ(x))
        if xp in self.registry:
            return
        ys = [v for v in k.vertices if not self.cls.is_a(v)]
        y = min(ys)
        yp = k.succ(y)
        if self.edge(xp, y) or self.edge(xp, yp):
            self.bug(f"bad-vertex certification: {xp} adjacent into {y},{yp}")
        if self.edge(xpp, yp):
            seq = [x] + list(k.backward_path(y, yp).vertices)
            seq += h.forward_path(xpp, x).vertices[:-1]
            self.register("absorb_neighbor_of_bad", "absorb.bad", xp, [h, k], [seq])
            return
        if not self.edge(xpp, y):
            self.bug(f"no completion for bad vertex {x} against {y}{yp}")
        # xpp-y present, xpp-yp absent: route through yp's own witness pair
        if not self.cls.is_a(yp):
            self.bug(f"successor {yp} on alternating cycle is not A-type")
        q, z = self.cls.a_witness[yp]
        zp = q.succ(z)
        same = q.vertex_mask == h.vertex_mask
        if same:
            # restate the witness pair in the working orientation of h
            q = h
            if h.succ(z) != zp:
                z, zp = zp, z
            if h.succ(z) != zp:
                self.bug(f"witness pair {z},{zp} not consecutive on its cycle")
        if z in (h.pred(x), x, xp, xpp) or zp == x:
            self.bug(f"witness vertex {z} collides with the local window at {x}")
        if self.edge(y, z) or self.edge(y, zp):
            self.bug(f"merge scan missed pattern at {y} vs {z},{zp}")
        ym = k.pred(y)
        if same:
            if self.edge(ym, z):
                seq = [x, y] + list(h.forward_path(xpp, z).vertices)
                seq += k.backward_path(ym, yp).vertices
                seq += h.forward_path(zp, x).vertices[:-1]
            elif self.edge(ym, zp):
                seq = [x, y] + list(h.forward_path(xpp, z).vertices)
                seq += k.forward_path(yp, ym).vertices
                seq += h.forward_path(zp, x).vertices[:-1]
            else:
                self.bug(f"no induced-pair completion at {ym}{y} vs {z}{zp}")
            self.register("absorb_neighbor_of_bad", "absorb.bad", xp, [h, k], [seq])
        else:
            seq_a = [x, y] + list(h.forward_path(xpp, x).vertices[:-1])
            if self.edge(ym, z):
                seq_b = [z] + list(k.backward_path(ym, yp).vertices)
                seq_b += q.forward_path(zp, z).vertices[:-1]
            elif self.edge(ym, zp):
                seq_b = [z] + list(k.forward_path(yp, ym).vertices)
                seq_b += q.forward_path(zp, z).vertices[:-1]
            else:
                self.bug(f"no induced-pair completion at {ym}{y} vs {z}{zp}")
            self.register("absorb_neighbor_of_bad", "absorb.bad", xp,
                          [h, k, q], [seq_a, seq_b])

    def ladder(self, x: int, y0: int, k: OrientedCycle):
        """Walk the certified every-other-vertex set of k from y0, forcing
        x adjacent to each next one; the forced-edge failure certifies the
        skipped vertex instead (which always converts or sticks, since it
        is adjacent to a certified vertex).

        Returns only when the walk completes, i.e. x's neighborhood on k
        covers the whole walked set; callers treat that as a derivation
        bug because x was computed not-bad beforehand.
        """
        g = self.g
        h = self.f.cycle_of(x)
        if self.cls.is_a(x):
            self.bug(f"ladder root {x} is A-type")
        y = y0
        for _ in range(len(k) // 2 - 1):
            yp, ypp = k.succ(y), k.succ(k.succ(y))
            if self.edge(x, yp):
                self.bug(f"B-type {x} adjacent to consecutive {y},{yp}")
            xp = h.succ(x)
            if self.edge(xp, yp):
                self.bug(f"merge scan missed pattern at {x},{xp} vs {y},{yp}")
            if self.edge(x, ypp):
                y = ypp
                continue
            if not self.edge(xp, ypp):
                self.bug(f"induced pair {x}{xp} / {yp}{ypp} in 2K2-free input")
            seq = [x] + list(k.backward_path(y, ypp).vertices)
            seq += h.forward_path(xp, x).vertices[:-1]
            self.register("absorb_skipped_on_walk", "absorb.walk", yp, [h, k], [seq])
            # yp is adjacent to certified y, so register must have converted
            self.bug(f"walk certificate for {yp} did not convert (neighbor {y})")

    # -- level construction (single non-alternating cycle) -------------

    def build_levels(self, c: OrientedCycle, roots: int):
        """Iterated successor levels with their spanning paths.

        Level 0 of root x is {x+} with the forward spanning path x+ -> x.
        A vertex u joins a later level when the successor u* of u on the
        spanning path of some already-leveled v satisfies: u* not bad, and
        u* v is an edge; the new spanning path detours u -> v backwards
        along v's path, jumps v u*, and continues to x.
        """
        bad_mask = self.bad.mask(c)
        paths: dict[int, list[int]] = {}
        member: dict[int, int] = {}  # vertex -> root
        frontier: list[int] = []
        for x in sorted(bits(roots)):
            xp = c.succ(x)
            if xp not in member:
                member[xp] = x
                paths[xp] = list(c.forward_path(xp, x).vertices)
                frontier.append(xp)
        while frontier:
            new_frontier: list[int] = []
            for v in sorted(frontier):
                p = paths[v]
                pos = {w: i for i, w in enumerate(p)}
                for ustar in sorted(bits(self.g.adj[v] & c.vertex_mask & ~bad_mask)):
                    i = pos.get(ustar)
                    if i is None or i == 0:
                        continue
                    u = p[i - 1]
                    if u in member or u == p[-1]:
                        continue
                    # detour: u back along p to v, jump to u*, on to x
                    newp = p[:i][::-1] + p[i:]
                    assert newp[0] == u and newp[-1] == p[-1]
                    member[u] = member[v]
                    paths[u] = newp
                    new_frontier.append(u)
            frontier = new_frontier
        return member, paths

    def certify_levels(self, c: OrientedCycle, member: dict[int, int],
                       paths: dict[int, list[int]]):
        """Certify every leveled vertex as absorbable (or Progress)."""
        g = self.g
        bad_mask = self.bad.mask(c)
        anchor: dict[int, tuple[OrientedCycle, int]] = {}
        for x in sorted(set(member.values())):
            if self.cls.is_a(x):
                d, y = self.cls.a_witness[x]
                u = y if not self.cls.is_a(y) else d.succ(y)
                if self.cls.is_a(u):
                    self.bug(f"witness pair on alternating cycle is all A at {x}")
            else:
                d = self.bad.bad_witness[x]
                u = min(v for v in d.vertices if not self.cls.is_a(v))
            anchor[x] = (d, u)
        for v in sorted(member):
            if v in self.registry:
                continue
            x = member[v]
            p = paths[v]
            y = p[1]
            d, u = anchor[x]
            up = d.succ(u)
            if self.edge(y, up):
                seq = p[1:] + list(d.backward_path(u, up).vertices)
                self.register("absorb_leveled_vertex", "absorb.level", v, [c, d], [seq])
                continue
            if self.edge(v, up):
                seq = [v] + list(d.forward_path(up, u).vertices) + p[::-1][:-1]
                self.progress("merge_through_level_path", "merge.level", [c, d], [seq])
            if self.edge(v, u):
                self.ladder(v, u, d)
                self.bug(f"level vertex {v} has full walk coverage on its anchor cycle")
            if self.edge(y, u):
                self.ladder(y, u, d)
                self.bug(f"path neighbor {y} has full walk coverage on its anchor cycle")
            self.bug(f"induced pair {v}{y} / {u}{up} in 2K2-free input")

    # -- case: exactly one non-alternating cycle -----------------------

    def case_single(self, c: OrientedCycle):
        g = self.g
        bad_mask = self.bad.mask(c)
        a0, b0 = self.cls.a0_mask, self.cls.b0_mask
        if bad_mask == 0:
            hit = g.restricted_neighborhood(b0, c.vertex_mask)
            if hit:
                w = next(bits(hit))
                b = next(bits(g.adj[w] & b0))
                self.ladder(w, b, self.f.cycle_of(b))
                self.bug(f"not-bad vertex {w} has full walk coverage")
            self.emit("isolate_alternating_b_side", "cut.b-isolated",
                      ToughnessWitness(a0))
        member, paths = self.build_levels(c, bad_mask)
        self.certify_levels(c, member, paths)
        level_mask = mask_of(member)
        seen_c = g.restricted_neighborhood(level_mask, c.vertex_mask)
        if level_mask & seen_c:
            self.bug("leveled set touches its own cycle neighborhood")
        w_mask = a0 | seen_c
        outside = c.vertex_mask & ~w_mask
        hit = g.restricted_neighborhood(b0, outside)
        if hit:
            w = next(bits(hit))
            b = next(bits(g.adj[w] & b0))
            self.ladder(w, b, self.f.cycle_of(b))
            self.bug(f"witness-leak vertex {w} has full walk coverage")
        self.emit("isolate_leveled_set", "cut.leveled",
                  ToughnessWitness(w_mask))

    # -- case: exactly two non-alternating cycles ----------------------

    def first_plain_edge(self, c: OrientedCycle) -> int:
        """First vertex (along c) starting an edge with two B-type ends."""
        for v in c.vertices:
            if not self.cls.is_a(v) and not self.cls.is_a(c.succ(v)):
                return v
        self.bug(f"non-alternating cycle {c.vertices} has no all-B edge")
        raise AssertionError

    def check_alternation(self, c: OrientedCycle, part: int) -> bool:
        return all((part >> v & 1) != (part >> c.succ(v) & 1) for v in c.vertices)

    def certify_half(self, h: OrientedCycle, xh: int, yh: int):
        """Certify all of the Y-side of h, rooted at a bad X-side vertex.

        Runs the two-pointer induction: maintains spanning x->y_s and
        x->y_t paths whose tips creep together; each step forces one of
        two chords and certifies the newly exposed Y-vertex.
        """
        g = self.g
        root_candidates = self.bad.mask(h) & xh
        x = next(bits(root_candidates))
        ys: list[int] = []
        v = h.succ(x)
        while v != x:
            if yh >> v & 1:
                ys.append(v)
            v = h.succ(v)
        k = len(ys)
        if k != len(h) // 2:
            self.bug("half partition is not an alternation class")
        if ys[0] != h.succ(x) or ys[-1] != h.pred(x):
            self.bug("root is not an X-side vertex")
        for tip in (ys[0], ys[-1]):
            if tip not in self.registry:
                self.bug(f"root neighbor {tip} missing from registry")
        p = list(h.backward_path(x, ys[0]).vertices)
        q = list(h.forward_path(x, ys[-1]).vertices)
        s, t = 0, k - 1  # indices into ys
        while t - s > 1:
            ysv, ytv = ys[s], ys[t]
            ysp, ytm = h.succ(ysv), h.pred(ytv)
            if self.edge(ysv, ytv):
                self.bug(f"certified vertices {ysv},{ytv} adjacent inside induction")
            if self.edge(ysp, ytm):
                self.bug(f"X-side vertices {ysp},{ytm} adjacent in 2K2-free input")
            if self.edge(ysv, ytm):
                i = p.index(ytm)
                q = p[: i + 1] + p[i + 1:][::-1]
                t -= 1
                target, path = ys[t], q
            elif self.edge(ysp, ytv):
                i = q.index(ysp)
                p = q[: i + 1] + q[i + 1:][::-1]
                s += 1
                target, path = ys[s], p
            else:
                self.bug(f"induced pair {ysv}{ysp} / {ytm}{ytv} in 2K2-free input")
                raise AssertionError
            if path[0] != x or path[-1] != target:
                self.bug("induction path surgery lost its endpoints")
            if mask_of(path) != h.vertex_mask:
                self.bug("induction path is not spanning")
            for a, b in zip(path, path[1:]):
                if not self.edge(a, b):
                    self.bug(f"induction path uses a non-edge {a}-{b}")
            self.certify_induction_target(h, x, target, path)
        # Y-side fully certified

    def certify_induction_target(self, h: OrientedCycle, x: int,
                                 target: int, path: list[int]):
        g = self.g
        if target in self.registry:
            return
        pre = path[-2]
        if self.cls.is_a(x):
            kq, z = self.cls.a_witness[x]
            zp = kq.succ(z)
            if self.edge(target, z):
                seq = path + list(kq.backward_path(z, zp).vertices)
                self.progress("merge_through_induction_path", "merge.induction",
                              [h, kq], [seq])
            if self.edge(target, zp):
                seq = path + list(kq.forward_path(zp, z).vertices)
                self.progress("merge_through_induction_path", "merge.induction",
                              [h, kq], [seq])
            if self.edge(pre, z):
                seq = path[:-1] + list(kq.backward_path(z, zp).vertices)
            elif self.edge(pre, zp):
                seq = path[:-1] + list(kq.forward_path(zp, z).vertices)
            else:
                self.bug(f"induced pair {pre}{target} / {z}{zp} in 2K2-free input")
                raise AssertionError
            self.register("absorb_induction_target", "absorb.induction",
                          target, [h, kq], [seq])
        else:
            kq = self.bad.bad_witness[x]
            z = min(v for v in kq.vertices if not self.cls.is_a(v))
            zp = kq.succ(z)
            if self.bad.mask(h) >> target & 1:
                self.bug(f"induction target {target} is bad but uncertified")
            if self.edge(target, z):
                self.ladder(target, z, kq)
                self.bug(f"induction target {target} has full walk coverage")
            if self.edge(target, zp):
                seq = path + list(kq.forward_path(zp, z).vertices)
                self.progress("merge_through_induction_path", "merge.induction",
                              [h, kq], [seq])
            if self.edge(pre, z):
                if self.bad.mask(h) >> pre & 1:
                    self.bug(f"bad vertex {pre} next to uncertified target {target}")
                self.ladder(pre, z, kq)
                self.bug(f"path vertex {pre} has full walk coverage")
            if self.edge(pre, zp):
                seq = path[:-1] + list(kq.forward_path(zp, z).vertices)
                self.register("absorb_induction_target", "absorb.induction",
                              target, [h, kq], [seq])
                return
            self.bug(f"induced pair {pre}{target} / {z}{zp} in 2K2-free input")

    def screen_cut_edges(self, src: int, b0: int):
        """Edges from src into the certified alternating B-side must not
        exist; any such edge starts a walk that converts or sticks."""
        g = self.g
        for v in sorted(bits(src)):
            hit = g.adj[v] & b0
            if hit:
                b = next(bits(hit))
                self.ladder(v, b, self.f.cycle_of(b))
                self.bug(f"vertex {v} has full walk coverage over the B-side")

    def chord_walk_to_plain_edge(self, h: OrientedCycle, start: int, mate: int,
                                 xh: int) -> int:
        """Advance start along every-other-vertex positions of h until its
        cycle-successor is B-type, forcing chords mate-start'' via the
        certified predecessor trick.  Returns the final position."""
        g = self.g
        u0 = start
        for _ in range(len(h) // 2 + 1):
            u0p = h.succ(u0)
            if not self.cls.is_a(u0p):
                return u0
            # u0 = (u0p)- is certified via u0p's witnessing pair
            if u0 not in self.registry:
                self.bug(f"predecessor {u0} of A-type {u0p} missing from registry")
            if self.edge(mate, u0p):
                self.bug(f"B-type {mate} adjacent to consecutive {u0},{u0p}")
            u0pp = h.succ(u0p)
            hm = self.f.cycle_of(mate)
            matep = hm.succ(mate)
            if self.edge(matep, u0p):
                self.bug(f"merge scan missed pattern at {mate} vs {u0},{u0p}")
            if self.edge(mate, u0pp):
                u0 = u0pp
                continue
            if not self.edge(matep, u0pp):
                self.bug(f"induced pair {mate}{matep} / {u0p}{u0pp} in 2K2-free input")
            seq = [mate] + list(h.backward_path(u0, u0pp).vertices)
            seq += hm.forward_path(matep, mate).vertices[:-1]
            self.register("absorb_skipped_on_walk", "absorb.walk", u0p, [h, hm], [seq])
            self.bug(f"walk certificate for {u0p} did not convert (neighbor {u0})")
        self.bug(f"cycle {h.vertices} has no all-B edge reachable from {start}")
        raise AssertionError

    def case_pair(self, c: OrientedCycle, d: OrientedCycle):
        g = self.g
        b0 = self.cls.b0_mask
        u = self.first_plain_edge(c)
        v = self.first_plain_edge(d)
        uu = (u, c.succ(u))
        vv = (v, d.succ(v))
        yc = g.restricted_neighborhood(mask_of(vv), c.vertex_mask)
        xc = c.vertex_mask & ~yc
        yd = g.restricted_neighborhood(mask_of(uu), d.vertex_mask)
        xd = d.vertex_mask & ~yd
        if not self.check_alternation(c, xc) or not self.check_alternation(d, xd):
            self.bug("non-alternating pair fails the opposite-edge alternation")
        self.analyze_pair(c, d, xc, yc, xd, yd, vv, uu, depth=0)

    def analyze_pair(self, c, d, xc, yc, xd, yd, vv, uu, depth):
        g = self.g
        b0 = self.cls.b0_mask
        bad_c = self.bad.mask(c) & xc
        bad_d = self.bad.mask(d) & xd
        if bad_c and bad_d:
            self.certify_half(c, xc, yc)
            self.certify_half(d, xd, yd)
            self.emit("certified_halves_witness", "set.half-half",
                      IndependentSetWitness(yc | yd | b0))
        if bad_c and not bad_d:
            # mirror so the clean side is c
            c, d, xc, yc, xd, yd, vv, uu = d, c, xd, yd, xc, yc, uu, vv
            bad_c, bad_d = bad_d, bad_c
        self.screen_cut_edges(xc, b0)
        if bad_d:
            self.certify_half(d, xd, yd)
            cross = [(a, b) for a in sorted(bits(xc))
                     for b in sorted(bits(g.adj[a] & yd))]
            if not cross:
                self.emit("clean_side_plus_certified_half", "set.x-half",
                          IndependentSetWitness(xc | yd | b0))
            a, b = cross[0]
            self.ladder(a, b, d)
            self.bug(f"vertex {a} has full walk coverage over the certified half")
        self.screen_cut_edges(xd, b0)
        cross = [(a, b) for a in sorted(bits(xc))
                 for b in sorted(bits(g.adj[a] & xd))]
        if not cross:
            self.emit("independent_thirds", "set.x-x",
                      IndependentSetWitness(xc | xd | b0))
        u0, v0 = cross[0]
        u0 = self.chord_walk_to_plain_edge(c, u0, v0, xc)
        v0 = self.chord_walk_to_plain_edge(d, v0, u0, xd)
        if not self.edge(u0, v0):
            self.bug(f"walk broke the {u0}-{v0} cross adjacency")
        # u0u0+ and v0v0+ are all-B edges; their seen-sets must align with
        # the X sides (alternation classes agree through one shared vertex)
        u0e = (u0, c.succ(u0))
        v0e = (v0, d.succ(v0))
        seen_d = g.restricted_neighborhood(mask_of(u0e), d.vertex_mask)
        seen_c = g.restricted_neighborhood(mask_of(v0e), c.vertex_mask)
        if not self.check_alternation(d, seen_d) or not self.check_alternation(c, seen_c):
            self.bug("all-B edge fails the opposite-cycle alternation")
        if seen_d != xd or seen_c != xc:
            self.bug("new all-B edges see a different alternation class")
        if depth >= 1:
            raise _Stuck(
                "pair analysis exhausted both orientations of the half partition; "
                "the terminal contradiction of the underlying argument was reached"
            )
        # exchange the roles of the halves and re-run once
        self.analyze_pair(c, d, yc, xc, yd, xd, v0e, u0e, depth=depth + 1)

    # -- case: no / many non-alternating cycles ------------------------

    def case_all_alternating(self):
        b = self.g.full_mask & ~self.cls.a_mask
        if 2 * b.bit_count() != self.g.n:
            self.bug("alternating cycles do not split the graph in half")
        self.emit("all_alternating_b_side", "set.global-b", IndependentSetWitness(b))

    def case_many(self):
        g = self.g
        for c in sorted(self.cls.non_alternating, key=len):
            x = self.first_plain_edge(c)
            y = c.succ(x)
            outside = g.full_mask & ~c.vertex_mask
            far = g.non_neighborhood(mask_of((x, y)), outside)
            ind = far | (1 << x)
            if 3 * ind.bit_count() > g.n:
                self.emit("short_cycle_far_set", "set.far", IndependentSetWitness(ind))
        self.bug("three non-alternating cycles but no far-set exceeds a third")

    # -- round driver ---------------------------------------------------

    def execute(self):
        merged = direct_merge_scan(self.g, self.f)
        if merged is not None:
            self.run.record("merge_cross_pair", "merge.cross",
                            [], merged.omega)
            raise _Progress(merged)
        self.cls = classify(self.g, self.f)
        for x in range(self.g.n):
            if self.cls.is_a(x):
                self.certify_a_type(x)
        self.bad = compute_bad_sets(self.g, self.f, self.cls)
        for h in self.cls.non_alternating:
            for x in sorted(bits(self.bad.mask(h) & ~self.cls.a_mask)):
                self.certify_bad(x, h, self.bad.bad_witness[x])
        fbar = self.cls.non_alternating
        if len(fbar) == 0:
            self.case_all_alternating()
        elif len(fbar) == 1:
            self.case_single(fbar[0])
        elif len(fbar) == 2:
            self.case_pair(fbar[0], fbar[1])
        else:
            self.case_many()
        raise _Stuck("round finished without an outcome")


class _EngineRun:
    def __init__(self, g: Graph, limits: Limits):
        self.g = g
        self.limits = limits
        self.trace: list[dict] = []
        self.step = 0
        self.omega = None

    def record(self, rule: str, ref: str, consumed, omega_after, produced=None):
        self.step += 1
        self.trace.append({
            "step": self.step,
            "rule": rule,
            "claim_ref": ref,
            "consumed_cycles": [list(c.vertices) for c in consumed],
            "produced": produced,
            "omega_before": self.omega,
            "omega_after": omega_after,
        })


def run_engine(g: Graph, pretrust_2k2_free: bool = False,
               limits: Limits = DEFAULT_LIMITS) -> EngineResult:
    """Drive a 2-factor of a 2K2-free graph to a Hamiltonian cycle or to a
    verified witness against 2-toughness."""
    if g.n < 3:
        raise ValueError("need at least three vertices")
    if not pretrust_2k2_free:
        free, witness = is_2k2_free(g)
        if not free:
            raise NotTwoK2Free(witness)

    run = _EngineRun(g, limits)
    f = find_two_factor(g)
    if f is None:
        report = None
        if g.n <= limits.toughness:
            report = toughness(g, limits)
        run.record("no_two_factor", "factor.none", [], None, produced="no_two_factor")
        cert = None
        if report is not None and not report.infinite and report.value < 2:
            cert = ToughnessWitness(report.witness)
            assert check_certificate(g, cert) is None
        return EngineResult("no_two_factor", cert, [], run.trace,
                            toughness_report=report)

    trajectory = [f.omega]
    run.omega = f.omega
    while True:
        if f.omega == 1:
            cert = HamiltonianCycle(f.cycles[0])
            reason = check_certificate(g, cert)
            assert reason is None, reason
            return EngineResult("hamiltonian", cert, trajectory, run.trace)
        try:
            _Round(run, f).execute()
            raise AssertionError("round returned without an outcome")
        except _Progress as p:
            if p.factor.omega >= f.omega:
                return EngineResult("stuck", None, trajectory, run.trace,
                                    stuck_detail="progress did not reduce omega")
            f = p.factor
            f.require_valid()
            trajectory.append(f.omega)
            run.omega = f.omega
        except _Witness as w:
            reason = check_certificate(g, w.cert, f)
            assert reason is None, reason
            return EngineResult("witness", w.cert, trajectory, run.trace)
        except _Stuck as s:
            return EngineResult("stuck", None, trajectory, run.trace,
                                stuck_detail=s.detail)
