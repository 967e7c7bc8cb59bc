"""Pointed Heegaard diagrams stored as rotation systems.

A diagram is the cyclic word of crossings along every alpha and beta curve
plus a sign per crossing.  Regions are never stored; they are recovered by
face tracing (see :func:`trace_faces`).  Half-edges are small integers
``4 * i + k`` where ``i`` indexes the crossing (natural sort order of ids) and
``k`` is one of :data:`A_OUT`, :data:`B_OUT`, :data:`A_IN`, :data:`B_IN`.
A corner is named by the half-edge ``h`` that precedes it counterclockwise,
i.e. it is the angle between ``h`` and ``rot(h)``.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

A_OUT, B_OUT, A_IN, B_IN = 0, 1, 2, 3
QUADRANTS = ("++", "+-", "-+", "--")


class DiagramError(ValueError):
    """Invalid diagram input or a violated structural invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def natural_key(name: str):
    parts = re.split(r"(\d+)", name)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "") + ((2, name),)


@dataclass(frozen=True)
class Crossing:
    id: str
    alpha: int
    alpha_slot: int
    beta: int
    beta_slot: int
    sign: int


@dataclass(frozen=True)
class Anchor:
    """Location of a basepoint.

    Either a corner ``(crossing, quadrant)`` or, for a curve with no
    crossings, a side of that curve (``curve`` like ``"alpha2"``, side ``L``
    or ``R`` relative to the curve's direction).
    """

    crossing: str | None = None
    quadrant: str | None = None
    curve: str | None = None
    side: str | None = None

    def token(self) -> str:
        if self.crossing is not None:
            return f"{self.crossing} {self.quadrant}"
        return f"@{self.curve} {self.side}"


class Shape(enum.Enum):
    BIGON = "bigon"
    SQUARE = "square"
    BAD = "bad"
    NONDISK = "nondisk"


@dataclass
class Region:
    id: int
    cycles: tuple[int, ...]
    boundary: tuple[tuple[int, ...], ...]
    pseudo: tuple[str, ...]
    corner_count: int
    w: tuple[int, ...] = ()
    z: tuple[int, ...] = ()

    @property
    def num_boundary(self) -> int:
        return len(self.boundary) + len(self.pseudo)

    @property
    def euler(self) -> int:
        return 2 - self.num_boundary

    @property
    def is_disk(self) -> bool:
        return self.num_boundary == 1

    @property
    def n(self) -> int:
        return self.corner_count // 2

    @property
    def shape(self) -> Shape:
        return classify_region(self)

    @property
    def has_w(self) -> bool:
        return bool(self.w)

    @property
    def corners(self) -> tuple[int, ...]:
        return tuple(h for cyc in self.boundary for h in cyc)


@dataclass
class Tracing:
    cycles: list[tuple[int, ...]]
    pseudo_names: list[str]
    regions: list[Region]
    region_of_corner: list[int]
    region_of_cycle: list[int]
    cycle_of_corner: list[int]


@dataclass(frozen=True)
class Diagram:
    genus: int
    alpha_words: tuple[tuple[str, ...], ...]
    beta_words: tuple[tuple[str, ...], ...]
    signs: dict = field(hash=False)
    w: tuple[Anchor, ...]
    z: tuple[Anchor, ...] = ()
    groups: tuple[tuple[str, ...], ...] = ()

    # -- basic structure -------------------------------------------------

    @property
    def num_curves(self) -> int:
        return len(self.alpha_words)

    @property
    def knot_mode(self) -> bool:
        return bool(self.z)

    @cached_property
    def order(self) -> list[str]:
        return sorted(self.signs, key=natural_key)

    @cached_property
    def index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.order)}

    @property
    def num_crossings(self) -> int:
        return len(self.signs)

    @cached_property
    def _tables(self):
        n = len(self.order)
        alpha_of = [-1] * n
        alpha_pos = [-1] * n
        beta_of = [-1] * n
        beta_pos = [-1] * n
        for a, word in enumerate(self.alpha_words):
            for p, c in enumerate(word):
                i = self.index[c]
                alpha_of[i], alpha_pos[i] = a, p
        for b, word in enumerate(self.beta_words):
            for p, c in enumerate(word):
                i = self.index[c]
                beta_of[i], beta_pos[i] = b, p
        sign = [self.signs[c] for c in self.order]
        theta = [0] * (4 * n)
        for i in range(n):
            aw = self.alpha_words[alpha_of[i]]
            bw = self.beta_words[beta_of[i]]
            na = self.index[aw[(alpha_pos[i] + 1) % len(aw)]]
            pa = self.index[aw[(alpha_pos[i] - 1) % len(aw)]]
            nb = self.index[bw[(beta_pos[i] + 1) % len(bw)]]
            pb = self.index[bw[(beta_pos[i] - 1) % len(bw)]]
            theta[4 * i + A_OUT] = 4 * na + A_IN
            theta[4 * i + A_IN] = 4 * pa + A_OUT
            theta[4 * i + B_OUT] = 4 * nb + B_IN
            theta[4 * i + B_IN] = 4 * pb + B_OUT
        return alpha_of, alpha_pos, beta_of, beta_pos, sign, theta

    @property
    def alpha_of(self) -> list[int]:
        return self._tables[0]

    @property
    def beta_of(self) -> list[int]:
        return self._tables[2]

    @property
    def sign_of(self) -> list[int]:
        return self._tables[4]

    def theta(self, h: int) -> int:
        """Other end of the edge carrying half-edge ``h``."""
        return self._tables[5][h]

    def rot(self, h: int) -> int:
        """Counterclockwise successor of ``h`` around its crossing."""
        i, k = divmod(h, 4)
        return 4 * i + ((k + 1) % 4 if self.sign_of[i] > 0 else (k + 3) % 4)

    def rot_inv(self, h: int) -> int:
        i, k = divmod(h, 4)
        return 4 * i + ((k + 3) % 4 if self.sign_of[i] > 0 else (k + 1) % 4)

    def crossing_of(self, h: int) -> str:
        return self.order[h // 4]

    def quadrant(self, h: int) -> str:
        """Quadrant label of the corner between ``h`` and ``rot(h)``."""
        pair = (h % 4, self.rot(h) % 4)
        ea = "+" if A_OUT in pair else "-"
        eb = "+" if B_OUT in pair else "-"
        return ea + eb

    def corner(self, crossing: str, quadrant: str) -> int:
        i = self.index[crossing]
        for k in range(4):
            if self.quadrant(4 * i + k) == quadrant:
                return 4 * i + k
        raise DiagramError(f"bad quadrant {quadrant!r}")

    def corner_name(self, h: int) -> tuple[str, str]:
        return self.crossing_of(h), self.quadrant(h)

    def crossing(self, c: str) -> Crossing:
        i = self.index[c]
        t = self._tables
        return Crossing(c, t[0][i], t[1][i], t[2][i], t[3][i], t[4][i])

    def crossings(self) -> list[Crossing]:
        return [self.crossing(c) for c in self.order]

    # -- tracing ---------------------------------------------------------

    @cached_property
    def tracing(self) -> Tracing:
        return trace_faces(self)

    @property
    def regions(self) -> list[Region]:
        return self.tracing.regions

    def region_of(self, h: int) -> int:
        return self.tracing.region_of_corner[h]

    def edge_regions(self, h_out: int) -> tuple[int, int]:
        """(left, right) regions of the edge starting with out-half-edge ``h_out``."""
        right = self.region_of(self.rot_inv(h_out))
        left = self.region_of(self.rot_inv(self.theta(h_out)))
        return left, right

    def with_changes(self, **kw) -> "Diagram":
        data = dict(
            genus=self.genus,
            alpha_words=self.alpha_words,
            beta_words=self.beta_words,
            signs=self.signs,
            w=self.w,
            z=self.z,
            groups=self.groups,
        )
        data.update(kw)
        return Diagram(**data)

    def anchor_region(self, a: Anchor) -> int:
        return _anchor_region(self, self.tracing, a)

    @cached_property
    def w_regions(self) -> list[int]:
        return [self.anchor_region(a) for a in self.w]

    @cached_property
    def z_regions(self) -> list[int]:
        return [self.anchor_region(a) for a in self.z]

    def __str__(self) -> str:
        return serialize(self)


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

_CURVE_RE = re.compile(r"^(alpha|beta)\s+(\d+)\s*:(.*)$")
_SIGN_RE = re.compile(r"^sign\s+(\S+)\s*:\s*([+-])$")
_BP_RE = re.compile(r"^basepoint\s+([wz])(\d+)\s*:\s*(\S+)\s+(\S+)$")
_GROUP_RE = re.compile(r"^regiongroup\s*:(.*)$")
_GENUS_RE = re.compile(r"^genus\s+(\d+)$")


def _parse_anchor(tok: str, spec: str, lineno: int) -> Anchor:
    if tok.startswith("@"):
        if not re.fullmatch(r"(alpha|beta)\d+", tok[1:]) or spec not in ("L", "R"):
            raise DiagramError(f"bad curve-side anchor {tok} {spec}", lineno)
        return Anchor(curve=tok[1:], side=spec)
    if spec not in QUADRANTS:
        raise DiagramError(f"bad quadrant {spec!r}", lineno)
    return Anchor(crossing=tok, quadrant=spec)


def parse_diagram(text: str, check: bool = True) -> Diagram:
    """Parse the ``.hd`` text format.  With ``check`` all invariants are verified."""
    genus = None
    curves: dict[str, dict[int, tuple[list[str], int]]] = {"alpha": {}, "beta": {}}
    signs: dict[str, int] = {}
    bps: dict[str, dict[int, tuple[Anchor, int]]] = {"w": {}, "z": {}}
    groups: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _GENUS_RE.match(line):
            genus = int(m.group(1))
        elif m := _CURVE_RE.match(line):
            kind, idx = m.group(1), int(m.group(2))
            if idx in curves[kind]:
                raise DiagramError(f"{kind} {idx} defined twice", lineno)
            curves[kind][idx] = (m.group(3).split(), lineno)
        elif m := _SIGN_RE.match(line):
            if m.group(1) in signs:
                raise DiagramError(f"sign of {m.group(1)} given twice", lineno)
            signs[m.group(1)] = 1 if m.group(2) == "+" else -1
        elif m := _BP_RE.match(line):
            kind, idx = m.group(1), int(m.group(2))
            if idx in bps[kind]:
                raise DiagramError(f"basepoint {kind}{idx} defined twice", lineno)
            bps[kind][idx] = (_parse_anchor(m.group(3), m.group(4), lineno), lineno)
        elif m := _GROUP_RE.match(line):
            toks = tuple(m.group(1).split())
            if not toks:
                raise DiagramError("empty regiongroup", lineno)
            groups.append(toks)
        else:
            raise DiagramError(f"syntax error: {raw.strip()!r}", lineno)
    if genus is None:
        raise DiagramError("missing genus line")
    words = {}
    for kind in ("alpha", "beta"):
        idxs = sorted(curves[kind])
        if idxs != list(range(1, len(idxs) + 1)):
            raise DiagramError(f"{kind} curves must be numbered 1..n")
        words[kind] = tuple(tuple(curves[kind][i][0]) for i in idxs)
    if len(words["alpha"]) != len(words["beta"]):
        raise DiagramError("number of alpha curves differs from number of beta curves")
    for kind in ("alpha", "beta"):
        seen: dict[str, int] = {}
        for i in sorted(curves[kind]):
            ws, lineno = curves[kind][i]
            for c in ws:
                if c in seen:
                    raise DiagramError(f"crossing {c}: duplicate {kind} membership", lineno)
                if c not in signs:
                    raise DiagramError(f"crossing {c} has no sign", lineno)
                seen[c] = i
        for c in signs:
            if c not in seen:
                raise DiagramError(f"crossing {c} missing from {kind} words")
    for kind in ("w", "z"):
        idxs = sorted(bps[kind])
        if idxs != list(range(1, len(idxs) + 1)):
            raise DiagramError(f"basepoints {kind} must be numbered 1..k")
        for anchor, lineno in bps[kind].values():
            if anchor.crossing is not None and anchor.crossing not in signs:
                raise DiagramError(f"basepoint anchor references unknown crossing {anchor.crossing}", lineno)
    d = Diagram(
        genus=genus,
        alpha_words=words["alpha"],
        beta_words=words["beta"],
        signs=signs,
        w=tuple(bps["w"][i][0] for i in sorted(bps["w"])),
        z=tuple(bps["z"][i][0] for i in sorted(bps["z"])),
        groups=tuple(groups),
    )
    if check:
        validate(d)
    return d


def serialize(d: Diagram) -> str:
    out = [f"genus {d.genus}"]
    for kind, words in (("alpha", d.alpha_words), ("beta", d.beta_words)):
        for i, word in enumerate(words, 1):
            out.append(f"{kind} {i} : {' '.join(word)}".rstrip())
    for c in d.order:
        out.append(f"sign {c} : {'+' if d.signs[c] > 0 else '-'}")
    for kind, anchors in (("w", d.w), ("z", d.z)):
        for i, a in enumerate(anchors, 1):
            out.append(f"basepoint {kind}{i} : {a.token()}")
    for g in d.groups:
        out.append("regiongroup : " + " ".join(g))
    return "\n".join(out) + "\n"


def load(path) -> Diagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def save(d: Diagram, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(d))


# ---------------------------------------------------------------------------
# Face tracing
# ---------------------------------------------------------------------------


def trace_cycles(d: Diagram) -> tuple[list[tuple[int, ...]], list[int]]:
    """Boundary cycles of all faces, traced from the least unused corner."""
    n = d.num_crossings
    cycle_of = [-1] * (4 * n)
    cycles: list[tuple[int, ...]] = []
    for i in range(n):
        for q in QUADRANTS:
            h = d.corner(d.order[i], q)
            if cycle_of[h] >= 0:
                continue
            cyc = []
            g = h
            while cycle_of[g] < 0:
                cycle_of[g] = len(cycles)
                cyc.append(g)
                g = d.theta(d.rot(g))
            if g != h:
                raise DiagramError("face tracing did not close up (inconsistent rotation system)")
            cycles.append(tuple(cyc))
    return cycles, cycle_of


def pseudo_sides(d: Diagram) -> list[str]:
    out = []
    for kind, words in (("alpha", d.alpha_words), ("beta", d.beta_words)):
        for i, word in enumerate(words, 1):
            if not word:
                out += [f"{kind}{i}:L", f"{kind}{i}:R"]
    return out


def trace_faces(d: Diagram) -> Tracing:
    """Partition all corners into boundary cycles and group them into regions.

    Cycles are traced from the least unused ``(crossing, quadrant)`` corner,
    walking each face with the face on the right.  Sides of crossing-free
    curves become pseudo-cycles numbered after the traced ones.
    """
    n = d.num_crossings
    cycles, cycle_of = trace_cycles(d)
    pseudo = pseudo_sides(d)
    names = [str(k) for k in range(len(cycles))] + pseudo
    pos = {name: k for k, name in enumerate(names)}
    member = [-1] * len(names)
    raw_groups: list[list[int]] = []
    for g in d.groups:
        grp = []
        for tok in g:
            tok = tok.lstrip("@")
            if tok not in pos:
                raise DiagramError(f"regiongroup references unknown cycle {tok}")
            k = pos[tok]
            if member[k] >= 0:
                raise DiagramError(f"cycle {tok} in two region groups")
            member[k] = len(raw_groups)
            grp.append(k)
        raw_groups.append(sorted(grp))
    for k in range(len(names)):
        if member[k] < 0:
            if k >= len(cycles):
                raise DiagramError(f"side {names[k]} of a crossing-free curve must be in a regiongroup")
            member[k] = len(raw_groups)
            raw_groups.append([k])
    raw_groups.sort(key=lambda g: g[0])
    regions = []
    region_of_cycle = [-1] * len(names)
    for rid, grp in enumerate(raw_groups):
        real = tuple(k for k in grp if k < len(cycles))
        ps = tuple(names[k] for k in grp if k >= len(cycles))
        for k in grp:
            region_of_cycle[k] = rid
        regions.append(
            Region(
                id=rid,
                cycles=tuple(grp),
                boundary=tuple(cycles[k] for k in real),
                pseudo=ps,
                corner_count=sum(len(cycles[k]) for k in real),
            )
        )
    region_of_corner = [region_of_cycle[cycle_of[h]] for h in range(4 * n)]
    tr = Tracing(cycles, pseudo, regions, region_of_corner, region_of_cycle, cycle_of)
    for i, a in enumerate(d.w):
        r = regions[_anchor_region(d, tr, a)]
        r.w += (i,)
    for i, a in enumerate(d.z):
        r = regions[_anchor_region(d, tr, a)]
        r.z += (i,)
    chi = -n + sum(r.euler for r in regions)
    if chi != 2 - 2 * d.genus:
        raise DiagramError(
            f"Euler characteristic mismatch: V - E + sum chi(R) = {chi}, expected 2 - 2*genus = {2 - 2 * d.genus}"
        )
    return tr


def _anchor_region(d: Diagram, tr: Tracing, a: Anchor) -> int:
    if a.crossing is not None:
        if a.crossing not in d.signs:
            raise DiagramError(f"basepoint anchor references unknown crossing {a.crossing}")
        return tr.region_of_corner[d.corner(a.crossing, a.quadrant)]
    name = f"{a.curve}:{a.side}"
    if name not in tr.pseudo_names:
        raise DiagramError(f"curve-side anchor @{a.curve} needs a crossing-free curve")
    return tr.region_of_cycle[len(tr.cycles) + tr.pseudo_names.index(name)]


def classify_region(r: Region) -> Shape:
    if not r.is_disk:
        return Shape.NONDISK
    if r.corner_count == 2:
        return Shape.BIGON
    if r.corner_count == 4:
        return Shape.SQUARE
    return Shape.BAD


# ---------------------------------------------------------------------------
# Adjacency, validation
# ---------------------------------------------------------------------------


def _union_find(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


def curve_adjacency(d: Diagram, kind: str) -> list[tuple[int, int]]:
    """Region pairs on the two sides of each ``kind`` ('alpha'/'beta') edge."""
    k_out = A_OUT if kind == "alpha" else B_OUT
    pairs = []
    for i in range(d.num_crossings):
        pairs.append(d.edge_regions(4 * i + k_out))
    tr = d.tracing
    words = d.alpha_words if kind == "alpha" else d.beta_words
    for idx, word in enumerate(words, 1):
        if not word:
            base = len(tr.cycles)
            left = tr.region_of_cycle[base + tr.pseudo_names.index(f"{kind}{idx}:L")]
            right = tr.region_of_cycle[base + tr.pseudo_names.index(f"{kind}{idx}:R")]
            pairs.append((left, right))
    return pairs


def components(d: Diagram, cut: str) -> list[int]:
    """Component label per region of the surface cut along the ``cut`` curves."""
    other = "beta" if cut == "alpha" else "alpha"
    return _union_find(len(d.regions), curve_adjacency(d, other))


def validate(d: Diagram) -> None:
    """Check every structural invariant; raise :class:`DiagramError` on failure."""
    if d.genus < 0:
        raise DiagramError("negative genus")
    for kind, words in (("alpha", d.alpha_words), ("beta", d.beta_words)):
        seen = set()
        for word in words:
            for c in word:
                if c in seen:
                    raise DiagramError(f"crossing {c}: duplicate {kind} membership")
                seen.add(c)
        if seen != set(d.signs):
            raise DiagramError(f"{kind} words do not cover exactly the signed crossings")
    for c, s in d.signs.items():
        if s not in (1, -1):
            raise DiagramError(f"crossing {c} has sign {s}")
    if not d.w:
        raise DiagramError("component of Σ∖α without basepoint (no w basepoints given)")
    if d.z and len(d.z) != len(d.w):
        raise DiagramError("knot mode requires as many z basepoints as w basepoints")
    if d.num_curves != d.genus + len(d.w) - 1:
        raise DiagramError(
            f"{d.num_curves} curve pairs but genus + #w - 1 = {d.genus + len(d.w) - 1}"
        )
    for a in d.w + d.z:
        if a.crossing is not None and a.crossing not in d.signs:
            raise DiagramError(f"basepoint anchor references unknown crossing {a.crossing}")
        if a.curve is not None:
            kind, idx = re.fullmatch(r"(alpha|beta)(\d+)", a.curve).groups()
            words = d.alpha_words if kind == "alpha" else d.beta_words
            idx = int(idx)
            if idx > len(words) or words[idx - 1]:
                raise DiagramError(f"curve-side anchor @{a.curve} needs a crossing-free curve")
    d.tracing
    for cut, label in (("alpha", "α"), ("beta", "β")):
        comp = components(d, cut)
        count: dict[int, int] = {}
        for rid in d.w_regions:
            count[comp[rid]] = count.get(comp[rid], 0) + 1
        for c in set(comp):
            k = count.get(c, 0)
            if k == 0:
                raise DiagramError(f"component of Σ∖{label} without basepoint")
            if k > 1:
                raise DiagramError(f"component of Σ∖{label} contains {k} w basepoints")


# ---------------------------------------------------------------------------
# Distance, badness, complexity
# ---------------------------------------------------------------------------


def badness(r: Region) -> int:
    if not r.is_disk:
        raise DiagramError(f"badness of non-disk region {r.id}")
    return max(r.n - 2, 0)


def region_distances(d: Diagram) -> list[int]:
    """BFS distance from the w regions, moving only across beta arcs."""
    nreg = len(d.regions)
    adj: list[set[int]] = [set() for _ in range(nreg)]
    for a, b in curve_adjacency(d, "beta"):
        adj[a].add(b)
        adj[b].add(a)
    dist = [-1] * nreg
    queue = deque()
    for rid in d.w_regions:
        if dist[rid] < 0:
            dist[rid] = 0
            queue.append(rid)
    while queue:
        r = queue.popleft()
        for s in sorted(adj[r]):
            if dist[s] < 0:
                dist[s] = dist[r] + 1
                queue.append(s)
    if any(x < 0 for x in dist):
        bad = [i for i, x in enumerate(dist) if x < 0]
        raise DiagramError(f"regions {bad} unreachable from a basepoint region")
    return dist


def beta_neighbors(d: Diagram) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(len(d.regions))]
    for a, b in curve_adjacency(d, "beta"):
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def bad_regions(d: Diagram) -> list[Region]:
    wset = set(d.w_regions)
    return [r for r in d.regions if r.id not in wset and r.is_disk and badness(r) > 0]


def complexity_at(d: Diagram, dist: int, distances: Sequence[int] | None = None) -> tuple[int, ...]:
    """Distance-``dist`` complexity tuple (total, -b1, -b2, ...)."""
    if distances is None:
        distances = region_distances(d)
    bs = sorted(
        ((badness(r), r.id) for r in bad_regions(d) if distances[r.id] == dist),
        key=lambda t: (-t[0], t[1]),
    )
    if not bs:
        return (0,)
    return (sum(b for b, _ in bs),) + tuple(-b for b, _ in bs)


def complexity(d: Diagram) -> tuple[int, tuple[int, ...]]:
    """(max bad distance, complexity tuple at that distance)."""
    wset = set(d.w_regions)
    for r in d.regions:
        if r.id not in wset and not r.is_disk:
            raise DiagramError(f"non-disk region {r.id} present")
    distances = region_distances(d)
    bad = bad_regions(d)
    if not bad:
        return 0, (0,)
    top = max(distances[r.id] for r in bad)
    return top, complexity_at(d, top, distances)


def ordered_bad_regions(d: Diagram, dist: int, distances: Sequence[int]) -> list[Region]:
    bad = [r for r in bad_regions(d) if distances[r.id] == dist]
    return sorted(bad, key=lambda r: (-badness(r), r.id))


def is_nice(d: Diagram) -> bool:
    wset = set(d.w_regions)
    return all(
        r.shape in (Shape.BIGON, Shape.SQUARE) for r in d.regions if r.id not in wset
    )


def region_histogram(d: Diagram) -> dict[str, int]:
    hist: dict[str, int] = {}
    for r in d.regions:
        key = r.shape.value if r.shape != Shape.BAD else f"{2 * r.n}-gon"
        hist[key] = hist.get(key, 0) + 1
    return dict(sorted(hist.items()))


def stats(d: Diagram) -> dict:
    return {
        "genus": d.genus,
        "curves": d.num_curves,
        "crossings": d.num_crossings,
        "regions": len(d.regions),
        "region_classes": region_histogram(d),
        "basepoints_w": len(d.w),
        "basepoints_z": len(d.z),
    }
