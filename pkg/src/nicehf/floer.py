"""Generators, domains and the combinatorial differential on nice diagrams.

Generators are tuples of crossing ids, one per alpha curve (in alpha order).
Domains are integer vectors indexed by region id.  On a nice diagram the
differential counts empty embedded bigons and squares; these are found by
closing up arcs of the curves through a generator's coordinates and filling
the enclosed regions (:func:`find_empty_disks`), and independently by
exhaustive enumeration of region subsets (:func:`bruteforce_domains`).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from nicehf import f2
from nicehf.admissibility import basepoint_rows, crossing_rows
from nicehf.diagram import A_IN, A_OUT, B_IN, B_OUT, Diagram, Shape, is_nice, parse_diagram, serialize
from nicehf.intlinalg import HermiteSystem

Generator = tuple  # tuple[str, ...], one crossing id per alpha curve


class FloerError(RuntimeError):
    """An internal invariant of the chain complex failed."""


class NotNiceError(ValueError):
    pass


class GuardError(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    coeffs: tuple[int, ...]
    x: Generator
    y: Generator

    def n(self, region: int) -> int:
        return self.coeffs[region]


@dataclass(frozen=True, order=True)
class EmptyEmbeddedDisk:
    x: Generator
    y: Generator
    regions: frozenset = field(compare=False)
    shape: Shape = field(compare=False)

    def key(self):
        return (self.x, self.y, tuple(sorted(self.regions)))

    def domain(self, d: Diagram) -> Domain:
        return Domain(tuple(int(r in self.regions) for r in range(len(d.regions))), self.x, self.y)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def enumerate_generators(d: Diagram) -> list[Generator]:
    """All bijective matchings, lexicographic in (alpha index, crossing id)."""
    options = [sorted(word, key=lambda c: d.index[c]) for word in d.alpha_words]
    beta_of = d.beta_of
    out: list[Generator] = []
    used = [False] * d.num_curves
    cur: list[str] = []

    def rec(a: int) -> None:
        if a == len(options):
            out.append(tuple(cur))
            return
        for c in options[a]:
            b = beta_of[d.index[c]]
            if not used[b]:
                used[b] = True
                cur.append(c)
                rec(a + 1)
                cur.pop()
                used[b] = False

    rec(0)
    return out


# ---------------------------------------------------------------------------
# Domains and gradings
# ---------------------------------------------------------------------------


class _DomainSolver:
    """Cached exact solver for the boundary system of a diagram."""

    def __init__(self, d: Diagram, zero_w: bool):
        self.d = d
        self.rows = crossing_rows(d, "alpha")
        self.extra = len(basepoint_rows(d)) if zero_w else 0
        self.system = HermiteSystem(self.rows + (basepoint_rows(d) if zero_w else []), len(d.regions))

    def rhs(self, x: Generator, y: Generator) -> list[int]:
        b = [0] * (len(self.rows) + self.extra)
        idx = self.d.index
        for c in y:
            b[idx[c]] += 1
        for c in x:
            b[idx[c]] -= 1
        return b

    def solve(self, x: Generator, y: Generator) -> Domain | None:
        c = self.system.solve(self.rhs(x, y))
        return None if c is None else Domain(tuple(c), x, y)


def _solver(d: Diagram, zero_w: bool) -> _DomainSolver:
    cache = d.__dict__.setdefault("_floer_solvers", {})
    if zero_w not in cache:
        cache[zero_w] = _DomainSolver(d, zero_w)
    return cache[zero_w]


def connecting_domain(d: Diagram, x: Generator, y: Generator, zero_w: bool = False) -> Domain | None:
    """Some integer domain from ``x`` to ``y`` (with ``n_w = 0`` if asked), or ``None``."""
    return _solver(d, zero_w).solve(x, y)


def periodic_domains_w0(d: Diagram) -> list[list[int]]:
    """Lattice basis of domains from a generator to itself with ``n_w = 0``."""
    return _solver(d, True).system.kernel()


def check_boundary(d: Diagram, phi: Domain) -> bool:
    rows = crossing_rows(d, "alpha")
    b = _solver(d, False).rhs(phi.x, phi.y)
    return all(sum(r[k] * phi.coeffs[k] for k in range(len(r))) == b[i] for i, r in enumerate(rows))


def n_w(d: Diagram, phi: Domain) -> int:
    return sum(phi.coeffs[r] for r in d.w_regions)


def n_z(d: Diagram, phi: Domain) -> int:
    return sum(phi.coeffs[r] for r in d.z_regions)


def euler_measure(d: Diagram, coeffs: Sequence[int]) -> Fraction:
    e = Fraction(0)
    for r in d.regions:
        if coeffs[r.id]:
            e += coeffs[r.id] * (Fraction(r.euler) - Fraction(r.corner_count, 4))
    return e


def point_measure(d: Diagram, coeffs: Sequence[int], g: Generator) -> Fraction:
    total = 0
    for c in g:
        i = d.index[c]
        total += sum(coeffs[d.region_of(4 * i + k)] for k in range(4))
    return Fraction(total, 4)


def maslov_index(d: Diagram, phi: Domain) -> int:
    mu = euler_measure(d, phi.coeffs) + point_measure(d, phi.coeffs, phi.x) + point_measure(d, phi.coeffs, phi.y)
    if mu.denominator != 1:
        raise FloerError(f"malformed domain: Maslov index {mu} is not an integer")
    return int(mu)


@dataclass
class Classes:
    """Generators split by connectability, with relative gradings."""

    class_of: list[int]
    roots: list[int]
    maslov: list[int]
    alexander: list[int]
    maslov_period: list[int]
    alexander_period: list[int]


def partition_classes(d: Diagram, gens: Sequence[Generator] | None = None, knot: bool = False) -> Classes:
    """Partition generators and attach relative Maslov/Alexander labels.

    Labels come from domains with ``n_w = 0``; when periodic domains with
    ``n_w = 0`` exist, the labels are reduced modulo the gcd of their indices.
    """
    if gens is None:
        gens = enumerate_generators(d)
    sol = _solver(d, True)
    periodic = sol.system.kernel()
    class_of = [-1] * len(gens)
    roots: list[int] = []
    maslov = [0] * len(gens)
    alex = [0] * len(gens)
    mperiod: list[int] = []
    aperiod: list[int] = []
    for i, g in enumerate(gens):
        if class_of[i] >= 0:
            continue
        k = len(roots)
        roots.append(i)
        class_of[i] = k
        mp = 0
        ap = 0
        for p in periodic:
            pd = Domain(tuple(p), g, g)
            mp = math.gcd(mp, maslov_index(d, pd))
            if knot:
                ap = math.gcd(ap, n_z(d, pd))
        mperiod.append(mp)
        aperiod.append(ap)
        for j in range(i + 1, len(gens)):
            if class_of[j] >= 0:
                continue
            phi = sol.solve(g, gens[j])
            if phi is None:
                continue
            class_of[j] = k
            m = -maslov_index(d, phi)
            a = -n_z(d, phi) if knot else 0
            maslov[j] = m % mp if mp else m
            alex[j] = a % ap if ap else a
    return Classes(class_of, roots, maslov, alex, mperiod, aperiod)


# ---------------------------------------------------------------------------
# Empty embedded disks: boundary search
# ---------------------------------------------------------------------------


def _blocked(d: Diagram, knot: bool) -> set[int]:
    out = set(d.w_regions)
    if knot:
        out |= set(d.z_regions)
    return out


def _curve_cycles(d: Diagram, k_out: int) -> tuple[list[list[int]], list[int]]:
    """Out half-edges along each curve in order, and each vertex's position."""
    words = d.alpha_words if k_out == A_OUT else d.beta_words
    pos = [0] * d.num_crossings
    cycles = []
    for word in words:
        cyc = []
        for p, c in enumerate(word):
            i = d.index[c]
            pos[i] = p
            cyc.append(4 * i + k_out)
        cycles.append(cyc)
    return cycles, pos


class _DiskFiller:
    """Fills a candidate boundary with regions and checks the result."""

    def __init__(self, d: Diagram, knot: bool):
        self.d = d
        self.blocked = _blocked(d, knot)
        self.sides: dict[int, tuple[int, int]] = {}
        nbrs: list[list[tuple[int, int]]] = [[] for _ in d.regions]
        for i in range(d.num_crossings):
            for k in (A_OUT, B_OUT):
                h = 4 * i + k
                left, right = d.edge_regions(h)
                self.sides[h] = (left, right)
                nbrs[left].append((h, right))
                nbrs[right].append((h, left))
        self.nbrs = nbrs
        # In a nice diagram every non-basepoint region has Euler measure 1/2
        # (bigon) or 0 (square), so a disk with c corners holds exactly
        # (4 - c)/2 bigon regions; fills stop as soon as they exceed that.
        self.nice = is_nice(d)
        self.is_bigon = [r.shape == Shape.BIGON for r in d.regions]
        self.euler4 = [4 * r.euler - r.corner_count for r in d.regions]
        self.a_cycles, self.a_pos = _curve_cycles(d, A_OUT)
        self.b_cycles, self.b_pos = _curve_cycles(d, B_OUT)

    def walks(self, v: int, kind: str, max_bigons: int, target: int | None = None):
        """Arcs along the curve through ``v`` with the disk on a fixed side.

        Yields (end vertex, edges, first disk-side region); the edge list is
        shared between yields, so callers copy what they keep.  A walk stops
        once the region on the disk side is a basepoint region or the bigon
        budget (nice diagrams only) is spent.  With ``target`` only arcs
        ending there are reported.
        """
        d = self.d
        if kind == "alpha":
            cyc, p0 = self.a_cycles[d.alpha_of[v]], self.a_pos[v]
        else:
            cyc, p0 = self.b_cycles[d.beta_of[v]], self.b_pos[v]
        n = len(cyc)
        theta = d._tables[5]
        for step in (1, -1):
            for side in (0, 1):
                edges: list[int] = []
                bigons: set[int] = set()
                start = None
                for k in range(n):
                    # forward: edge k leaves vertex p0 + k; backward: edge enters p0 - k
                    h = cyc[(p0 + k) % n] if step > 0 else cyc[(p0 - k - 1) % n]
                    left, right = self.sides[h]
                    r = (left, right)[side] if step > 0 else (right, left)[side]
                    if r in self.blocked:
                        break
                    if self.nice and self.is_bigon[r]:
                        bigons.add(r)
                        if len(bigons) > max_bigons:
                            break
                    if start is None:
                        start = r
                    edges.append(h)
                    end = theta[h] // 4 if step > 0 else h // 4
                    if end == target:
                        yield end, edges, start
                        break
                    if end == v:
                        break
                    if target is None:
                        yield end, edges, start

    def beta_arcs(self, u: int, v: int, max_bigons: int) -> list[list[int]]:
        """Distinct beta arcs from ``u`` to ``v`` that pass the side pruning."""
        out: dict[tuple[int, ...], list[int]] = {}
        for _, edges, _ in self.walks(u, "beta", max_bigons, target=v):
            out.setdefault(tuple(sorted(edges)), list(edges))
        return list(out.values())

    def fill(self, start: int, cut: set[int], max_bigons: int | None = None) -> set[int] | None:
        if start in self.blocked:
            return None
        if not self.nice:
            max_bigons = None
        is_bigon = self.is_bigon
        bigons = is_bigon[start]
        if max_bigons is not None and bigons > max_bigons:
            return None
        seen = {start}
        stack = [start]
        while stack:
            r = stack.pop()
            for h, s in self.nbrs[r]:
                if h in cut or s in seen:
                    continue
                if s in self.blocked:
                    return None
                if is_bigon[s]:
                    bigons += 1
                    if max_bigons is not None and bigons > max_bigons:
                        return None
                seen.add(s)
                stack.append(s)
        return seen

    def check(self, S: set[int], cut: set[int], xc: Sequence[int], yc: Sequence[int],
              forbidden: set[int]) -> bool:
        d = self.d
        sides = self.sides
        for h in cut:
            left, right = sides[h]
            if (left in S) == (right in S):
                return False
        corners = set(xc) | set(yc)
        verts = {h // 4 for h in cut} | {d.theta(h) // 4 for h in cut}
        for v in verts:
            ins = [d.region_of(4 * v + k) in S for k in range(4)]
            n = sum(ins)
            if v in corners:
                if n != 1:
                    return False
            elif n != 2 or ins[0] == ins[2]:
                # two corners on a straight piece of boundary must be adjacent
                return False
            a_in = self._mult(d.theta(4 * v + A_IN), S) - self._mult(4 * v + A_OUT, S)
            want = -1 if v in xc else (1 if v in yc else 0)
            if a_in != want:
                return False
        for r in S:
            for h in d.regions[r].corners:
                v = h // 4
                if v not in verts and v in forbidden:
                    return False
        # Euler measure in quarters: 4 e(R) = 4 chi(R) - corners
        e4 = sum(self.euler4[r] for r in S)
        return e4 == 4 - len(corners)

    def _mult(self, h: int, S: set[int]) -> int:
        left, right = self.sides[h]
        return (left in S) - (right in S)


def find_empty_disks(d: Diagram, x: Generator, knot: bool = False,
                     require_nice: bool = True) -> list[tuple[Generator, EmptyEmbeddedDisk]]:
    """Every empty embedded bigon and square starting at ``x``.

    Candidate boundaries are closed up from arcs of the curves through the
    coordinates of ``x``; the enclosed regions are then forced, so each
    candidate is filled from one side and checked.
    """
    if require_nice and not is_nice(d):
        raise NotNiceError("disk search needs a nice diagram")
    filler = d.__dict__.get("_disk_filler", {}).get(knot)
    if filler is None:
        filler = _DiskFiller(d, knot)
        d.__dict__.setdefault("_disk_filler", {})[knot] = filler
    beta_of, alpha_of = d.beta_of, d.alpha_of
    xs = [d.index[c] for c in x]
    found: dict = {}

    def attempt(cut_edges: list[int], xc: list[int], yc: list[int], shape: Shape, start: int):
        cut = set(cut_edges)
        if len(cut) != len(cut_edges):
            return
        ys = [v for v in xs if v not in xc] + yc
        forbidden = set(xs) | set(ys)
        S = filler.fill(start, cut, 1 if shape == Shape.BIGON else 0)
        if S is None or not filler.check(S, cut, xc, yc, forbidden):
            return
        y = [None] * len(x)
        for v in ys:
            y[alpha_of[v]] = d.order[v]
        disk = EmptyEmbeddedDisk(x, tuple(y), frozenset(S), shape)
        found.setdefault(disk.key(), disk)

    for i, p in enumerate(xs):
        for q, a_edges, start in filler.walks(p, "alpha", 1):
            if beta_of[q] != beta_of[p]:
                continue
            for b_edges in filler.beta_arcs(q, p, 1):
                if b_edges:
                    attempt(a_edges + b_edges, [p], [q], Shape.BIGON, start)
        for j in range(i + 1, len(xs)):
            p2 = xs[j]
            walks2 = [(y2, list(a2)) for y2, a2, _ in filler.walks(p2, "alpha", 0) if beta_of[y2] == beta_of[p]]
            if not walks2:
                continue
            for y1, a1, start in filler.walks(p, "alpha", 0):
                if beta_of[y1] != beta_of[p2]:
                    continue
                b1s = filler.beta_arcs(y1, p2, 0)
                for y2, a2 in walks2:
                    b2s = filler.beta_arcs(y2, p, 0)
                    for b1 in b1s:
                        for b2 in b2s:
                            if b1 and b2:
                                attempt(a1 + b1 + a2 + b2, [p, p2], [y1, y2], Shape.SQUARE, start)
    return sorted(((disk.y, disk) for disk in found.values()), key=lambda t: t[1].key())


# ---------------------------------------------------------------------------
# Empty embedded disks: exhaustive oracle
# ---------------------------------------------------------------------------


def region_adjacency(d: Diagram) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in d.regions]
    for i in range(d.num_crossings):
        for k in (A_OUT, A_OUT + 1):
            a, b = d.edge_regions(4 * i + k)
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
    return adj


def _connected_subsets(adj: Sequence[set[int]], allowed: Sequence[int], max_size: int, accept):
    """Enumerate connected vertex subsets of the allowed vertices (each once).

    ``accept(S, new)`` may prune: returning False stops extension of ``S``.
    """
    allowed_set = set(allowed)
    for v in sorted(allowed):
        start = [v]
        if not accept(start, v):
            continue
        ext = {u for u in adj[v] if u > v and u in allowed_set}
        yield from _extend(adj, allowed_set, v, start, {v} | set(adj[v]), ext, max_size, accept)


def _extend(adj, allowed, v, S, closed, ext, max_size, accept):
    yield list(S)
    if len(S) >= max_size:
        return
    ext = set(ext)
    while ext:
        u = min(ext)
        ext.discard(u)
        S.append(u)
        if accept(S, u):
            new = {t for t in adj[u] if t > v and t in allowed and t not in closed}
            yield from _extend(adj, allowed, v, S, closed | set(adj[u]), ext | new, max_size, accept)
        S.pop()


def _classify_subset(d: Diagram, S: Sequence[int]):
    """Corner data of a 0/1 domain, or ``None`` if it is not an embedded 2n-gon."""
    inset = set(S)
    cnt: dict[int, list[int]] = {}
    for rid in S:
        for h in d.regions[rid].corners:
            cnt.setdefault(h // 4, []).append(h)
    convex = []
    interior = []
    for v, hs in cnt.items():
        if len(hs) == 1:
            convex.append(v)
        elif len(hs) == 2:
            a, b = hs
            if d.rot(a) != b and d.rot(b) != a:
                return None
        elif len(hs) == 4:
            interior.append(v)
        else:
            return None
    if len(convex) not in (2, 4):
        return None
    edges = set()
    for i in range(d.num_crossings):
        for k in (A_OUT, A_OUT + 1):
            left, right = d.edge_regions(4 * i + k)
            if left in inset or right in inset:
                edges.add(4 * i + k)
    chi = len(cnt) - len(edges) + len(S)
    if chi != 1:
        return None
    # alpha-boundary at each vertex: incoming minus outgoing multiplicity
    def mult(h_out):
        left, right = d.edge_regions(h_out)
        return (left in inset) - (right in inset)

    xs, ys = [], []
    for v in cnt:
        val = mult(d.theta(4 * v + A_IN)) - mult(4 * v + A_OUT)
        if val == -1:
            xs.append(v)
        elif val == 1:
            ys.append(v)
        elif val != 0:
            return None
    if sorted(xs + ys) != sorted(convex) or len(xs) != len(ys):
        return None
    return sorted(xs), sorted(ys), set(interior), set(cnt)


def bruteforce_domains(d: Diagram, x: Generator | None = None, y: Generator | None = None,
                       max_regions: int = 32, knot: bool = False) -> list[EmptyEmbeddedDisk]:
    """All empty embedded bigons/squares, by enumerating connected region sets.

    Independent of the boundary search: it only uses region corner lists, edge
    sides and the definition.  ``x``/``y`` filter the result when given.
    """
    nreg = len(d.regions)
    if nreg > max_regions:
        raise GuardError(f"{nreg} regions exceeds the oracle guard of {max_regions}")
    blocked = _blocked(d, knot)
    allowed = [r.id for r in d.regions if r.id not in blocked and r.is_disk]
    adj = region_adjacency(d)
    regions = d.regions
    gens = enumerate_generators(d)
    by_point: dict[int, list[Generator]] = {}
    gen_set = set(gens)
    for g in gens:
        for c in g:
            by_point.setdefault(d.index[c], []).append(g)

    def bigons(S):
        return sum(1 for r in S if regions[r].corner_count == 2)

    def accept(S, new):
        return bigons(S) <= 1 and regions[new].corner_count <= 4

    out = []
    for S in _connected_subsets(adj, allowed, nreg, accept):
        data = _classify_subset(d, S)
        if data is None:
            continue
        xc, yc, interior, touched = data
        shape = Shape.BIGON if len(xc) == 1 else Shape.SQUARE
        ynames = {d.order[v] for v in yc}
        for g in by_point.get(xc[0], []):
            gi = [d.index[c] for c in g]
            if not set(xc) <= set(gi):
                continue
            new = [v for v in gi if v not in xc] + yc
            ycand = [None] * len(g)
            for v in new:
                ycand[d.alpha_of[v]] = d.order[v]
            if None in ycand:
                continue
            ycand = tuple(ycand)
            if ycand not in gen_set:
                continue
            if (set(gi) | set(new)) & interior:
                continue
            if x is not None and g != x:
                continue
            if y is not None and ycand != y:
                continue
            assert all(c in ynames or d.index[c] in gi for c in ycand)
            out.append(EmptyEmbeddedDisk(g, ycand, frozenset(S), shape))
    out.sort(key=lambda t: t.key())
    return out


# ---------------------------------------------------------------------------
# Chain complex
# ---------------------------------------------------------------------------


@dataclass
class ChainComplex:
    generators: list[Generator]
    matrix: f2.F2Matrix  # entry (y, x) = parity of disks x -> y
    disks: list[EmptyEmbeddedDisk]
    classes: Classes
    knot: bool = False

    @property
    def num_disks(self) -> int:
        return len(self.disks)


_WORKER: dict = {}


def _worker_init(text: str, knot: bool) -> None:
    _WORKER["d"] = parse_diagram(text)
    _WORKER["knot"] = knot


def _worker_disks(gs: list[Generator]):
    d = _WORKER["d"]
    return [disk for g in gs for _, disk in find_empty_disks(d, g, knot=_WORKER["knot"])]


def all_disks(d: Diagram, gens: Sequence[Generator], knot: bool = False, jobs: int = 1) -> list[EmptyEmbeddedDisk]:
    """Disks from every generator, merged in a deterministic order."""
    if jobs <= 1 or len(gens) < 2 * jobs:
        disks = [disk for g in gens for _, disk in find_empty_disks(d, g, knot=knot)]
    else:
        if not is_nice(d):
            raise NotNiceError("disk search needs a nice diagram")
        chunks = [list(gens[k::jobs]) for k in range(jobs)]
        with ProcessPoolExecutor(jobs, initializer=_worker_init, initargs=(serialize(d), knot)) as ex:
            disks = [disk for part in ex.map(_worker_disks, chunks) for disk in part]
    disks.sort(key=lambda t: t.key())
    return disks


def differential(d: Diagram, knot: bool = False, jobs: int = 1) -> ChainComplex:
    """Assemble the complex, check d^2 = 0 and grading coherence."""
    gens = enumerate_generators(d)
    pos = {g: i for i, g in enumerate(gens)}
    disks = all_disks(d, gens, knot=knot, jobs=jobs)
    m = f2.F2Matrix.from_entries(len(gens), len(gens), ((pos[t.y], pos[t.x]) for t in disks))
    if not (m @ m).is_zero():
        raise FloerError("differential does not square to zero")
    classes = partition_classes(d, gens, knot=knot)
    for t in disks:
        i, j = pos[t.x], pos[t.y]
        k = classes.class_of[i]
        if classes.class_of[j] != k:
            raise FloerError(f"disk {t.x} -> {t.y} joins different classes")
        mp, ap = classes.maslov_period[k], classes.alexander_period[k]
        dm = classes.maslov[i] - classes.maslov[j] - 1
        da = classes.alexander[i] - classes.alexander[j]
        if (dm % mp if mp else dm) or (knot and (da % ap if ap else da)):
            raise FloerError(f"grading inconsistency on disk {t.x} -> {t.y}")
    return ChainComplex(gens, m, disks, classes, knot)


def homology_ranks(c: ChainComplex) -> dict[tuple[int, int, int], int]:
    """Rank of homology per (class, relative Maslov, relative Alexander)."""
    cl = c.classes
    pieces: dict[tuple[int, int, int], list[int]] = {}
    for i in range(len(c.generators)):
        key = (cl.class_of[i], cl.maslov[i], cl.alexander[i])
        pieces.setdefault(key, []).append(i)
    out = {}
    for key, idx in sorted(pieces.items()):
        k, m, a = key
        mp = cl.maslov_period[k]
        below = (k, (m - 1) % mp if mp else m - 1, a)
        above = (k, (m + 1) % mp if mp else m + 1, a)
        lo = pieces.get(below, [])
        hi = pieces.get(above, [])
        d_out = c.matrix.submatrix(lo, idx)
        d_in = c.matrix.submatrix(idx, hi)
        out[key] = f2.homology_rank(d_in, d_out)
    return out


def total_rank(table: dict) -> int:
    return sum(table.values())


def normalize(table: dict[tuple[int, int, int], int], knot: bool) -> tuple[dict, list[str]]:
    """Shift relative gradings into a canonical position.

    Maslov: the least grading with nonzero homology in each class becomes 0.
    Alexander (knot mode): the shift making ranks symmetric under A -> -A.
    """
    warnings = []
    out: dict[tuple[int, int, int], int] = {}
    for k in sorted({key[0] for key in table}):
        part = {(m, a): r for (kk, m, a), r in table.items() if kk == k and r}
        if not part:
            continue
        m0 = min(m for m, _ in part)
        shift = 0
        if knot:
            by_a: dict[int, int] = {}
            for (_, a), r in part.items():
                by_a[a] = by_a.get(a, 0) + r
            lo, hi = min(by_a), max(by_a)
            if (lo + hi) % 2 == 0 and all(by_a.get(a, 0) == by_a.get(lo + hi - a, 0) for a in by_a):
                shift = -(lo + hi) // 2
            else:
                warnings.append(f"class {k}: no symmetric Alexander shift; raw relative gradings")
        for (m, a), r in part.items():
            out[(k, m - m0, a + shift)] = r
    return dict(sorted(out.items())), warnings
