"""Turning a pointed diagram into a nice one by moves on the beta curves.

All moves are rewrites of the cyclic words and signs followed by a fresh
trace.  A finger is described by local data only (its base beta edge, the
side of that edge it pushes into, and the alpha edges its core crosses with
the crossing direction), so a logged move can be replayed on the diagram it
was recorded on.

Edges are named by their start crossing; a crossing-free curve is named
``@alpha3`` / ``@beta2``.  ``t = +1`` means the core crosses the alpha edge
from its right side to its left side.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from random import Random
from typing import Iterator, Sequence

from nicehf.admissibility import is_admissible
from nicehf.diagram import (
    A_IN,
    A_OUT,
    B_IN,
    B_OUT,
    QUADRANTS,
    Anchor,
    Diagram,
    DiagramError,
    Shape,
    badness,
    beta_neighbors,
    complexity,
    complexity_at,
    is_nice,
    natural_key,
    ordered_bad_regions,
    pseudo_sides,
    region_distances,
    serialize,
    trace_cycles,
    validate,
)


class NicingError(RuntimeError):
    """The nicing loop reached a state its invariants rule out."""


# compass directions, counterclockwise; the finger core points north
_E, _N, _W, _S = 0, 1, 2, 3


@dataclass(frozen=True)
class Finger:
    base: str
    side: str
    crossed: tuple[tuple[str, int], ...]

    def token(self) -> str:
        cross = ",".join(f"{e}:{'+' if t > 0 else '-'}" for e, t in self.crossed)
        return f"base={self.base} side={self.side} cross={cross}"


class Outcome(enum.Enum):
    BIGON = "bigon"
    LOWER = "lower"
    EARLIER_BAD = "earlier-bad"
    RETURNED = "returned"


@dataclass
class FingerPath:
    finger: Finger
    source: int
    b_star: int
    start_edge: int
    squares: list[int]
    outcome: Outcome
    terminal: int
    return_edge: int | None = None


@dataclass
class Move:
    kind: str  # finger | handleslide | isolation | disk
    finger: Finger
    inner: str | None = None
    before: tuple | None = None
    after: tuple | None = None
    admissible: tuple[bool, bool] | None = None

    def to_line(self) -> str:
        parts = [self.kind, self.finger.token()]
        if self.inner:
            parts.append(f"inner={self.inner}")
        if self.before is not None:
            parts.append(f"before={_fmt_cx(self.before)} after={_fmt_cx(self.after)}")
        return " ".join(parts)


def _fmt_cx(cx) -> str:
    d, tup = cx
    return f"{d}:" + ",".join(str(v) for v in tup)


def _parse_cx(s: str):
    d, tup = s.split(":")
    return int(d), tuple(int(v) for v in tup.split(","))


@dataclass
class MoveLog:
    moves: list[Move] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.moves)

    def serialize(self) -> str:
        return "".join(m.to_line() + "\n" for m in self.moves)

    @classmethod
    def parse(cls, text: str) -> "MoveLog":
        moves = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            kind, *rest = line.split()
            kv = dict(tok.split("=", 1) for tok in rest)
            crossed = tuple(
                (e, 1 if s == "+" else -1)
                for e, s in (c.rsplit(":", 1) for c in kv["cross"].split(","))
            )
            f = Finger(kv["base"], kv["side"], crossed)
            mv = Move(kind, f, kv.get("inner"))
            if "before" in kv:
                mv.before, mv.after = _parse_cx(kv["before"]), _parse_cx(kv["after"])
            moves.append(mv)
        return cls(moves)


# ---------------------------------------------------------------------------
# Low-level helpers
# ---------------------------------------------------------------------------


def side_region(d: Diagram, name: str) -> int:
    """Region containing the side ``name`` (like ``alpha2:L``) of a crossing-free curve."""
    tr = d.tracing
    return tr.region_of_cycle[len(tr.cycles) + tr.pseudo_names.index(name)]


def _curve_index(tok: str) -> tuple[str, int]:
    m = re.fullmatch(r"@(alpha|beta)(\d+)", tok)
    if not m:
        raise DiagramError(f"bad curve token {tok!r}")
    return m.group(1), int(m.group(2)) - 1


def alpha_edge_sides(d: Diagram, edge: str) -> tuple[int, int]:
    """(left, right) regions of an alpha edge token."""
    if edge.startswith("@"):
        _, i = _curve_index(edge)
        return side_region(d, f"alpha{i + 1}:L"), side_region(d, f"alpha{i + 1}:R")
    return d.edge_regions(4 * d.index[edge] + A_OUT)


def beta_edge_sides(d: Diagram, edge: str) -> tuple[int, int]:
    if edge.startswith("@"):
        _, i = _curve_index(edge)
        return side_region(d, f"beta{i + 1}:L"), side_region(d, f"beta{i + 1}:R")
    return d.edge_regions(4 * d.index[edge] + B_OUT)


class _Fresh:
    def __init__(self, d: Diagram):
        self.used = set(d.signs)
        self.n = 0

    def __call__(self) -> str:
        while True:
            self.n += 1
            name = f"x{self.n}"
            if name not in self.used:
                self.used.add(name)
                return name


def _insert_after(word: list[str], anchor: str, seq: Sequence[str]) -> None:
    pos = word.index(anchor)
    word[pos + 1:pos + 1] = list(seq)


# ---------------------------------------------------------------------------
# The rewrite
# ---------------------------------------------------------------------------


@dataclass
class _NewCrossing:
    step: int
    strand: str  # "L" or "R" relative to the core, or "C" for a slid copy
    t: int
    outgoing: bool


def _rewrite(d: Diagram, f: Finger, inner: str | None = None, forward: bool | None = None):
    """New words/signs for a finger, or with ``inner`` for a handleslide.

    A handleslide attaches the band straight across the source region, so
    only the parallel copy of the inner beta curve adds crossings.
    """
    alpha = [list(w) for w in d.alpha_words]
    beta = [list(w) for w in d.beta_words]
    signs = dict(d.signs)
    fresh = _Fresh(d)
    k = len(f.crossed)
    edges = [e for e, _ in f.crossed]
    if len(set(edges)) != k:
        raise NicingError("finger crosses the same alpha edge twice")
    info: dict[str, _NewCrossing] = {}
    if inner:
        C = [fresh() for _ in range(k)]
        X = Y = []
        if forward is None:
            forward = f.side != inner
    else:
        X = [fresh() for _ in range(k)]
        Y = [fresh() for _ in range(k)]
        C = []
    x_left = f.side == "L"
    for s, (edge, t) in enumerate(f.crossed):
        if inner:
            info[C[s]] = _NewCrossing(s, "C", t, forward)
            signs[C[s]] = t if forward else -t
            row = [C[s]]
        else:
            left, right = (X[s], Y[s]) if x_left else (Y[s], X[s])
            info[X[s]] = _NewCrossing(s, "L" if x_left else "R", t, True)
            info[Y[s]] = _NewCrossing(s, "R" if x_left else "L", t, False)
            signs[X[s]] = t
            signs[Y[s]] = -t
            row = [left, right]
            if t < 0:
                row.reverse()
        if edge.startswith("@"):
            kind, i = _curve_index(edge)
            if kind != "alpha" or alpha[i]:
                raise NicingError(f"{edge} is not a crossing-free alpha curve")
            alpha[i] = row
        else:
            _insert_after(alpha[d.alpha_of[d.index[edge]]], edge, row)
    if inner:
        seq = C if forward else C[::-1]
    else:
        seq = X + Y[::-1]
    if f.base.startswith("@"):
        kind, j = _curve_index(f.base)
        if kind != "beta" or beta[j]:
            raise NicingError(f"{f.base} is not a crossing-free beta curve")
        beta[j] = seq
    else:
        _insert_after(beta[d.beta_of[d.index[f.base]]], f.base, seq)
    nd = Diagram(
        genus=d.genus,
        alpha_words=tuple(tuple(w) for w in alpha),
        beta_words=tuple(tuple(w) for w in beta),
        signs=signs,
        w=d.w,
        z=d.z,
    )
    return nd, info


def _dirs(nc: _NewCrossing) -> dict[int, int]:
    a_out = _E if nc.t > 0 else _W
    b_out = _N if nc.outgoing else _S
    return {A_OUT: a_out, A_IN: (a_out + 2) % 4, B_OUT: b_out, B_IN: (b_out + 2) % 4}


def _corner_labels(d: Diagram, nd: Diagram, f: Finger, info: dict[str, _NewCrossing]):
    """Old region (or new strip piece) that each corner of ``nd`` lies in."""
    base_l, base_r = beta_edge_sides(d, f.base)
    r_opp = base_r if f.side == "L" else base_l
    k = len(f.crossed)
    before, after = [], []
    for edge, t in f.crossed:
        left, right = alpha_edge_sides(d, edge)
        before.append(right if t > 0 else left)
        after.append(left if t > 0 else right)

    def piece(s):
        return ("old", r_opp) if s == 0 else ("new", s)

    labels = [None] * (4 * nd.num_crossings)
    for c in nd.order:
        i = nd.index[c]
        if c in d.signs:
            for q in QUADRANTS:
                labels[nd.corner(c, q)] = ("old", d.region_of(d.corner(c, q)))
            continue
        nc = info[c]
        dirs = _dirs(nc)
        for kk in range(4):
            h = 4 * i + kk
            nxt = nd.rot(h) % 4
            if dirs[nxt] != (dirs[kk] + 1) % 4:
                raise NicingError("sign of a new crossing disagrees with its geometry")
            quad = dirs[kk]  # 0 NE, 1 NW, 2 SW, 3 SE
            north = quad in (0, 1)
            outer = quad in (1, 2) if nc.strand == "L" else quad in (0, 3)
            s = nc.step
            if outer:
                labels[h] = ("old", after[s] if north else before[s])
            else:
                labels[h] = piece(s + 1) if north else piece(s)
    return labels


def _regroup(d: Diagram, nd: Diagram, labels) -> Diagram:
    cycles, cycle_of = trace_cycles(nd)
    owner: dict[tuple, list[str]] = {}
    for ci, cyc in enumerate(cycles):
        labs = {labels[h] for h in cyc}
        if len(labs) != 1:
            raise NicingError(f"traced cycle {ci} straddles pieces {sorted(labs)}")
        owner.setdefault(labs.pop(), []).append(str(ci))
    for name in pseudo_sides(nd):
        owner.setdefault(("old", side_region(d, name)), []).append("@" + name)
    groups = []
    for lab, toks in owner.items():
        if lab[0] == "new":
            if len(toks) != 1:
                raise NicingError("finger strip piece is not a single disk")
            continue
        old = d.regions[lab[1]]
        if old.is_disk:
            continue
        if len(toks) > old.num_boundary:
            raise NicingError(f"finger splits the non-disk region {old.id}")
        if len(toks) > 1:
            groups.append(tuple(sorted(toks, key=natural_key)))
    groups.sort(key=lambda g: natural_key(g[0]))
    return nd.with_changes(groups=tuple(groups))


def _migrate_anchors(d: Diagram, nd: Diagram, labels) -> Diagram:
    """Curve-side anchors on curves that just acquired crossings move to a corner."""
    def fix(a: Anchor) -> Anchor:
        if a.curve is None:
            return a
        kind, i = _curve_index("@" + a.curve)
        words = nd.alpha_words if kind == "alpha" else nd.beta_words
        if not words[i]:
            return a
        target = ("old", side_region(d, f"{a.curve}:{a.side}"))
        for c in words[i]:
            for q in QUADRANTS:
                if labels[nd.corner(c, q)] == target:
                    return Anchor(crossing=c, quadrant=q)
        raise NicingError(f"cannot re-anchor basepoint on {a.curve}")

    return nd.with_changes(w=tuple(fix(a) for a in nd.w), z=tuple(fix(a) for a in nd.z))


def finger_regions(d: Diagram, f: Finger) -> list[int]:
    """Regions the core passes through, from the base side to the tip."""
    base_l, base_r = beta_edge_sides(d, f.base)
    seq = [base_l if f.side == "L" else base_r]
    for edge, t in f.crossed:
        left, right = alpha_edge_sides(d, edge)
        before, after = (right, left) if t > 0 else (left, right)
        if before != seq[-1]:
            raise NicingError(f"finger core cannot cross {edge} from region {seq[-1]}")
        seq.append(after)
    return seq


def apply_finger(d: Diagram, f: Finger) -> Diagram:
    """Perform a finger move given by local data and re-trace."""
    finger_regions(d, f)
    nd, info = _rewrite(d, f)
    labels = _corner_labels(d, nd, f, info)
    nd = _regroup(d, nd, labels)
    nd = _migrate_anchors(d, nd, labels)
    validate(nd)
    return nd


def apply_handleslide(d: Diagram, f: Finger, inner: str) -> Diagram:
    """Slide the base curve over the beta curve running along the corridor's inner side."""
    for r in d.regions:
        if not r.is_disk:
            raise NicingError("handleslides are only used once all regions are disks")
    _check_slide_site(d, f, inner)
    nd, _ = _rewrite(d, f, inner)
    validate(nd)
    return nd


def _inner_endpoint(d: Diagram, edge: str, t: int, inner: str) -> int:
    """Crossing index at the inner end of a crossed alpha edge."""
    i = d.index[edge]
    end = d.theta(4 * i + A_OUT) // 4
    # alpha runs core-left -> core-right iff t = +1
    left_end, right_end = (i, end) if t > 0 else (end, i)
    return left_end if inner == "L" else right_end


def _check_slide_site(d: Diagram, f: Finger, inner: str) -> int:
    if f.base.startswith("@") or any(e.startswith("@") for e, _ in f.crossed):
        raise NicingError("handleslide site must use edges with crossings")
    pts = [_inner_endpoint(d, e, t, inner) for e, t in f.crossed]
    betas = {d.beta_of[p] for p in pts}
    if len(betas) != 1:
        raise NicingError("inner side of the corridor is not a single beta curve")
    bi = betas.pop()
    if bi == d.beta_of[d.index[f.base]]:
        raise NicingError("handleslide of a beta curve over itself")
    if sorted(pts) != sorted(d.index[c] for c in d.beta_words[bi]):
        raise NicingError("corridor does not carry a full copy of the inner beta curve")
    return bi


def apply_move(d: Diagram, mv: Move) -> Diagram:
    if mv.kind == "handleslide":
        return apply_handleslide(d, mv.finger, mv.inner)
    return apply_finger(d, mv.finger)


def replay(log: MoveLog, d: Diagram) -> Diagram:
    for mv in log.moves:
        d = apply_move(d, mv)
    return d


# ---------------------------------------------------------------------------
# Random and enumerated moves (perturbations for testing)
# ---------------------------------------------------------------------------


def _alpha_steps(d: Diagram, region: int, used: set[str]):
    """Alpha edges leaving ``region``: (edge, t, region beyond)."""
    out = []
    for e in d.order:
        if e in used:
            continue
        left, right = alpha_edge_sides(d, e)
        if right == region:
            out.append((e, 1, left))
        if left == region:
            out.append((e, -1, right))
    return out


def random_finger(d: Diagram, rng: Random, max_len: int = 3) -> Finger:
    """A finger from a random beta edge crossing up to ``max_len`` alpha edges.

    May cross zero edges when the start region has no alpha edge to offer;
    callers should skip such fingers.
    """
    base = rng.choice(d.order)
    side = rng.choice("LR")
    left, right = beta_edge_sides(d, base)
    cur = left if side == "L" else right
    crossed: list[tuple[str, int]] = []
    used: set[str] = set()
    for _ in range(rng.randint(1, max_len)):
        opts = _alpha_steps(d, cur, used)
        if not opts:
            break
        e, t, cur = rng.choice(opts)
        used.add(e)
        crossed.append((e, t))
    return Finger(base, side, tuple(crossed))


def handleslide_sites(d: Diagram, limit: int = 50) -> Iterator[Move]:
    """Legal handleslides whose corridor follows a full inner beta curve."""
    if any(not r.is_disk for r in d.regions):
        return
    lengths = {len(w) for w in d.beta_words if w}
    if not lengths:
        return
    depth = max(lengths)
    found = 0

    def consecutive(f: Finger, inner: str, bi: int) -> bool:
        pts = [_inner_endpoint(d, e, t, inner) for e, t in f.crossed]
        word = d.beta_words[bi]
        pos = [word.index(d.order[p]) for p in pts]
        n = len(word)
        return all((b - a) % n == 1 for a, b in zip(pos, pos[1:])) or \
            all((a - b) % n == 1 for a, b in zip(pos, pos[1:]))

    def dfs(base, side, cur, path, used):
        nonlocal found
        # the corridor runs once around the inner curve and back into the start region
        if len(path) in lengths and cur == start_region:
            f = Finger(base, side, tuple(path))
            for inner in "LR":
                try:
                    bi = _check_slide_site(d, f, inner)
                except (NicingError, KeyError):
                    continue
                if not consecutive(f, inner, bi):
                    continue
                found += 1
                yield Move("handleslide", f, inner)
        if len(path) >= depth or found >= limit:
            return
        for e, t, nxt in _alpha_steps(d, cur, used):
            yield from dfs(base, side, nxt, path + [(e, t)], used | {e})

    for base in d.order:
        left, right = beta_edge_sides(d, base)
        for side, start_region in (("L", left), ("R", right)):
            for mv in dfs(base, side, start_region, [], frozenset()):
                yield mv
                if found >= limit:
                    return


def perturb(d: Diagram, rng: Random, moves: int, handleslides: bool = True) -> tuple[Diagram, MoveLog]:
    """Apply ``moves`` random legal finger moves or handleslides."""
    log = MoveLog()
    attempts = 0
    while len(log) < moves and attempts < 50 * moves:
        attempts += 1
        if handleslides and rng.random() < 0.3:
            sites = list(handleslide_sites(d, limit=20))
            if sites:
                mv = rng.choice(sites)
                try:
                    d = apply_move(d, mv)
                except (NicingError, DiagramError):
                    continue
                log.moves.append(mv)
                continue
        f = random_finger(d, rng)
        if not f.crossed:
            continue
        try:
            d = apply_finger(d, f)
        except (NicingError, DiagramError):
            continue
        log.moves.append(Move("finger", f))
    return d, log


# ---------------------------------------------------------------------------
# Step 1: every curve meets the other family; every region a disk
# ---------------------------------------------------------------------------


def _alpha_edges(d: Diagram) -> list[tuple[str, int, int]]:
    """(token, left, right) for every alpha edge, crossing-free curves last."""
    out = [(c, *d.edge_regions(4 * d.index[c] + A_OUT)) for c in d.order]
    for i, w in enumerate(d.alpha_words):
        if not w:
            tok = f"@alpha{i + 1}"
            out.append((tok, *alpha_edge_sides(d, tok)))
    return out


def _beta_features(d: Diagram) -> dict[int, list[tuple[str, str]]]:
    """Region -> list of (beta edge token, side) with that region on that side."""
    feats: dict[int, list[tuple[str, str]]] = {}
    toks = list(d.order) + [f"@beta{i + 1}" for i, w in enumerate(d.beta_words) if not w]
    for tok in toks:
        left, right = beta_edge_sides(d, tok)
        feats.setdefault(left, []).append((tok, "L"))
        feats.setdefault(right, []).append((tok, "R"))
    return feats


def _alpha_path(d: Diagram, sources: Sequence[int], goal):
    """Shortest chain of alpha-edge crossings from ``sources`` to a region passing ``goal``.

    Returns the crossed edges as (token, t) pairs and the goal region reached.
    """
    edges = _alpha_edges(d)
    prev: dict[int, tuple[int, str, int] | None] = {}
    queue = deque()
    for s in sorted(set(sources)):
        prev[s] = None
        queue.append(s)
    while queue:
        r = queue.popleft()
        if goal(r):
            reached = r
            path = []
            while prev[r] is not None:
                p, tok, t = prev[r]
                path.append((tok, t))
                r = p
            return path[::-1], reached
        nxt = []
        for tok, left, right in edges:
            if right == r and left not in prev:
                nxt.append((left, tok, 1))
            if left == r and right not in prev:
                nxt.append((right, tok, -1))
        for s, tok, t in sorted(nxt, key=lambda x: x[0]):
            if s not in prev:
                prev[s] = (r, tok, t)
                queue.append(s)
    return None


def _reverse_path(d: Diagram, path: list[tuple[str, int]]) -> list[tuple[str, int]]:
    return [(tok, -t) for tok, t in reversed(path)]


def ensure_intersections(d: Diagram, log: MoveLog | None = None) -> Diagram:
    """Finger moves until every alpha meets a beta and every beta meets an alpha."""
    while True:
        iso_a = [i for i, w in enumerate(d.alpha_words) if not w]
        iso_b = [i for i, w in enumerate(d.beta_words) if not w]
        if iso_b:
            j = iso_b[0]
            tok = f"@beta{j + 1}"
            # push beta_j across the nearest alpha edge
            best = None
            for side in "LR":
                r0 = side_region(d, f"beta{j + 1}:{side}")
                for atok, left, right in _alpha_edges(d):
                    for t, before in ((1, right), (-1, left)):
                        if before == r0:
                            key = (natural_key(atok), side, -t)
                            if best is None or key < best[0]:
                                best = (key, Finger(tok, side, ((atok, t),)))
            if best is None:
                raise DiagramError(f"beta{j + 1} bounds a region with no alpha arc; no finger to an alpha curve")
            f = best[1]
        elif iso_a:
            i = iso_a[0]
            feats = _beta_features(d)
            sides = {side_region(d, f"alpha{i + 1}:{s}"): s for s in "RL"}
            found = _alpha_path(d, sorted(sides), lambda r: r in feats)
            if found is None:
                raise DiagramError(f"alpha{i + 1}: no beta curve reachable")
            back, start = found
            path = _reverse_path(d, back)
            btok, bside = min(feats[start], key=lambda x: (natural_key(x[0]), x[1]))
            end_region = sides_end(d, path, start)
            s = sides[end_region]
            path.append((f"@alpha{i + 1}", 1 if s == "R" else -1))
            f = Finger(btok, bside, tuple(path))
        else:
            return d
        before = d
        d = apply_finger(d, f)
        if log is not None:
            log.moves.append(Move("isolation", f))
        if d.num_crossings != before.num_crossings + 2 * len(f.crossed):
            raise NicingError("isolation fix added an unexpected number of crossings")


def sides_end(d: Diagram, path: list[tuple[str, int]], start: int) -> int:
    cur = start
    for tok, t in path:
        left, right = alpha_edge_sides(d, tok)
        cur = left if t > 0 else right
    return cur


def _walk_edges(d: Diagram, cyc: Sequence[int]):
    """(corner, half-edge walked next, is_alpha) for a boundary cycle."""
    for h in cyc:
        e = d.rot(h)
        yield h, e, e % 4 in (A_OUT, A_IN)


def _edge_token_from_walk(d: Diagram, e: int) -> tuple[str, str]:
    """Edge token and the side of that edge on which the walked face lies."""
    k = e % 4
    if k in (A_OUT, B_OUT):
        return d.order[e // 4], "R"
    return d.order[d.theta(e) // 4], "L"


def kill_non_disk_regions(d: Diagram, log: MoveLog | None = None) -> Diagram:
    """Merge boundary components of non-disk regions by finger moves."""
    for _ in range(10_000):
        bad = [r for r in d.regions if not r.is_disk]
        if not bad:
            return d
        R = bad[0]
        if R.pseudo:
            raise NicingError("crossing-free curves remain; run ensure_intersections first")
        tr = d.tracing
        c1, c2 = R.boundary[0], R.boundary[1]
        base = None
        for h, e, is_a in _walk_edges(d, c1):
            if is_a:
                continue
            tok, side = _edge_token_from_walk(d, e)
            left, right = beta_edge_sides(d, tok)
            other = right if side == "L" else left
            key = (other == R.id, natural_key(tok))
            if base is None or key < base[0]:
                base = (key, tok, side)
        exit_ = None
        for h, e, is_a in _walk_edges(d, c2):
            if not is_a:
                continue
            tok, side = _edge_token_from_walk(d, e)
            left, right = alpha_edge_sides(d, tok)
            other = left if side == "R" else right
            key = (other == R.id, natural_key(tok))
            if exit_ is None or key < exit_[0]:
                exit_ = (key, tok, 1 if side == "R" else -1)
        f = Finger(base[1], base[2], ((exit_[1], exit_[2]),))
        before = sum(r.num_boundary for r in d.regions if not r.is_disk)
        d = apply_finger(d, f)
        after = sum(r.num_boundary for r in d.regions if not r.is_disk)
        if log is not None:
            log.moves.append(Move("disk", f))
        if after >= before:
            raise NicingError("finger move did not reduce non-disk boundary count")
    raise NicingError("non-disk elimination did not terminate")


# ---------------------------------------------------------------------------
# Step 2: distance/complexity descent
# ---------------------------------------------------------------------------


def _other_side(d: Diagram, h: int) -> int:
    """Region across the edge walked after corner ``h``."""
    return d.region_of(d.rot_inv(d.theta(d.rot(h))))


def _alpha_positions(cyc_len: int, s: int) -> list[int]:
    """Walk positions of a_1..a_n, counterclockwise from the beta edge at ``s``."""
    n = cyc_len // 2
    return [(s - 2 * l + 1) % cyc_len for l in range(1, n + 1)]


def choose_site(d: Diagram):
    """(D_m, D_*, walk position of b*) for the next Step 2 iteration."""
    dist = region_distances(d)
    top, _ = complexity(d)
    bad = ordered_bad_regions(d, top, dist)
    dm = bad[-1]
    cands = [r for r in beta_neighbors(d)[dm.id] if dist[r] == top - 1]
    if not cands:
        raise NicingError(f"bad region {dm.id} has no beta neighbour at distance {top - 1}")
    dstar = min(cands)
    cyc = dm.boundary[0]
    best = None
    for q, h in enumerate(cyc):
        e = d.rot(h)
        if e % 4 not in (B_OUT, B_IN) or _other_side(d, h) != dstar:
            continue
        tok, _ = _edge_token_from_walk(d, e)
        key = d.index[tok]
        if best is None or key < best[0]:
            best = (key, q)
    return dm.id, dstar, best[1], top, dist


def trace_finger(d: Diagram, dm: int, s: int, l: int, top: int, dist: Sequence[int]) -> FingerPath:
    """Push a finger from b* (walk position ``s`` of D_m) out through a_l until it stops."""
    region = d.regions[dm]
    cyc = region.boundary[0]
    pos = {h: q for q, h in enumerate(cyc)}
    btok, bside = _edge_token_from_walk(d, d.rot(cyc[s]))
    h = cyc[_alpha_positions(len(cyc), s)[l - 1]]
    wset = set(d.w_regions)
    crossed: list[tuple[str, int]] = []
    squares: list[int] = []
    for _ in range(len(d.regions) + 1):
        e = d.rot(h)
        tok, face = _edge_token_from_walk(d, e)
        crossed.append((tok, 1 if face == "R" else -1))
        g = d.rot_inv(d.theta(e))
        rn = d.region_of(g)
        nxt = d.regions[rn]
        finger = Finger(btok, bside, tuple(crossed))
        if rn == dm:
            v = ((s + 1 - pos[g]) % len(cyc)) // 2
            return FingerPath(finger, dm, s, l, squares, Outcome.RETURNED, rn, v if v else len(cyc) // 2)
        if dist[rn] <= top - 1:
            return FingerPath(finger, dm, s, l, squares, Outcome.LOWER, rn)
        if nxt.shape == Shape.BIGON:
            return FingerPath(finger, dm, s, l, squares, Outcome.BIGON, rn)
        if rn not in wset and nxt.is_disk and badness(nxt) > 0 and dist[rn] == top:
            return FingerPath(finger, dm, s, l, squares, Outcome.EARLIER_BAD, rn)
        if nxt.shape != Shape.SQUARE or dist[rn] < top or rn in squares:
            raise NicingError(f"finger corridor hit untraceable region {rn}")
        squares.append(rn)
        cn = nxt.boundary[0]
        h = cn[(cn.index(g) + 2) % 4]
    raise NicingError("finger corridor did not terminate")


def _descends(before, after) -> bool:
    (d0, c0), (d1, c1) = before, after
    return d1 < d0 or (d1 == d0 and c1 < c0)


def step2_move(d: Diagram) -> tuple[Diagram, Move, list[FingerPath]]:
    """One iteration of the descent: a finger move or a handleslide."""
    dm, dstar, s, top, dist = choose_site(d)
    n = d.regions[dm].corner_count // 2
    tried = []
    prev_k = n + 1
    for l in range(2, n + 1):
        path = trace_finger(d, dm, s, l, top, dist)
        tried.append(path)
        if path.outcome != Outcome.RETURNED:
            return apply_finger(d, path.finger), Move("finger", path.finger), tried
        i = path.return_edge
        if i == l + 1 or (l == 2 and i == 1):
            inner = "L" if i == l + 1 else "R"
            nd = apply_handleslide(d, path.finger, inner)
            return nd, Move("handleslide", path.finger, inner), tried
        if not (l < i < prev_k):
            raise NicingError(f"crossing fingers: finger from a_{l} returned via a_{i} (bound {prev_k})")
        prev_k = i
    raise NicingError("no finger from D_m escaped or returned adjacently")


def make_nice(d: Diagram, check_admissible: bool = True, max_moves: int = 100_000):
    """Nice diagram plus the log of moves that produced it."""
    log = MoveLog()
    adm = is_admissible(d) if check_admissible else None

    def check(before_adm, nd):
        if not check_admissible:
            return None
        after_adm = is_admissible(nd)
        if before_adm and not after_adm:
            raise NicingError("a move destroyed admissibility")
        return after_adm

    for stage in (ensure_intersections, kill_non_disk_regions):
        sub = MoveLog()
        nd = stage(d, sub)
        if sub.moves:
            # re-check move by move on a replay
            cur = d
            for mv in sub.moves:
                nxt = apply_move(cur, mv)
                a2 = check(adm, nxt)
                mv.admissible = (adm, a2)
                adm = a2
                cur = nxt
            log.moves.extend(sub.moves)
        d = nd
    cur_cx = complexity(d)
    while not is_nice(d):
        if len(log) >= max_moves:
            raise NicingError("move budget exhausted")
        nd, mv, _ = step2_move(d)
        new_cx = complexity(nd)
        if not _descends(cur_cx, new_cx):
            raise NicingError(f"complexity did not decrease: {cur_cx} -> {new_cx}")
        mv.before, mv.after = cur_cx, new_cx
        a2 = check(adm, nd)
        mv.admissible = (adm, a2)
        adm = a2
        log.moves.append(mv)
        d, cur_cx = nd, new_cx
    return d, log
