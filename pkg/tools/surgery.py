"""Integer surgery on a knot given by a genus-one doubly pointed diagram.

A tube is attached at the two basepoints.  The new alpha curve runs over the
tube and returns along a path dual to the beta curve (avoiding alpha); the
new beta curve, a framed longitude, runs over the tube parallel to it, twists
``k`` times around the tube, and returns along a path avoiding beta.  The
result is emitted as crossing words and signs, which determine the surface.
"""

from __future__ import annotations

import math
from collections import deque

from nicehf.diagram import A_OUT, B_OUT, Anchor, Diagram, parse_diagram, serialize, validate


def dual_paths(d: Diagram, src: int, dst: int, kind: str, limit: int = 50):
    """Simple region paths src -> dst crossing only ``kind`` edges, shortest first."""
    k = B_OUT if kind == "beta" else A_OUT
    steps = {}
    for i in range(d.num_crossings):
        left, right = d.edge_regions(4 * i + k)
        if left != right:
            steps.setdefault(left, []).append((4 * i + k, right))
            steps.setdefault(right, []).append((4 * i + k, left))
    out = []
    queue = deque([(src, [src], [])])
    while queue and len(out) < limit:
        r, regs, edges = queue.popleft()
        if r == dst:
            out.append((regs, edges))
            continue
        for h, s in steps.get(r, []):
            if s not in regs:
                queue.append((s, regs + [s], edges + [h]))
    return out


def _slot(d: Diagram, region: int, h_edge: int, other: int) -> float:
    """Angular position of edge ``h_edge`` on the boundary walk of ``region``."""
    cyc = d.regions[region].boundary[0]
    n = len(cyc)
    for q, c in enumerate(cyc):
        e = d.rot(c)
        if e // 4 == h_edge // 4 or d.theta(e) == h_edge:
            if e == h_edge or d.theta(e) == h_edge:
                return -2 * math.pi * (q + 0.5) / n
    raise ValueError("edge not on region boundary")


def _chords(d: Diagram, regs, edges):
    """Per region: (entry point, exit point); feet sit at the centre."""
    pts = {}
    for i, r in enumerate(regs):
        a = (0.0, 0.0) if i == 0 else _point(_slot(d, r, edges[i - 1], regs[i - 1]))
        b = (0.0, 0.0) if i == len(regs) - 1 else _point(_slot(d, r, edges[i], regs[i + 1]))
        pts[r] = (a, b)
    return pts


def _point(t: float):
    return (math.cos(t), math.sin(t))


def _cross(p, q, r, s):
    """Sign of the crossing of segments p->q and r->s, or 0 if disjoint."""
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if abs(v) < 1e-12 else (1 if v > 0 else -1)
    o1, o2, o3, o4 = orient(p, q, r), orient(p, q, s), orient(r, s, p), orient(r, s, q)
    if 0 in (o1, o2, o3, o4) or o1 == o2 or o3 == o4:
        return 0
    dx = (q[0] - p[0], q[1] - p[1])
    dy = (s[0] - r[0], s[1] - r[1])
    return 1 if dx[0] * dy[1] - dx[1] * dy[0] > 0 else -1


def surgery(d: Diagram, twists: int, a_path=0, b_path=0) -> Diagram:
    (wr,), (zr,) = d.w_regions, d.z_regions
    a_regs, a_edges = dual_paths(d, zr, wr, "beta")[a_path]
    b_regs, b_edges = dual_paths(d, zr, wr, "alpha")[b_path]
    alpha1 = list(d.alpha_words[0])
    beta1 = list(d.beta_words[0])
    signs = dict(d.signs)
    n = [0]

    def fresh(p):
        n[0] += 1
        return f"{p}{n[0]}"

    tube = [fresh("t") for _ in range(abs(twists))]
    for t in tube:
        signs[t] = 1 if twists > 0 else -1
    ca, cb = _chords(d, a_regs, a_edges), _chords(d, b_regs, b_edges)
    meet = {}
    for r in set(a_regs) & set(b_regs):
        s = _cross(*ca[r], *cb[r])
        if s:
            p = fresh("p")
            signs[p] = s
            meet[r] = p
    alpha2 = list(tube)
    for i, r in enumerate(a_regs):
        if r in meet:
            alpha2.append(meet[r])
        if i < len(a_edges):
            h = a_edges[i]
            left, right = d.edge_regions(h)
            c = fresh("a")
            signs[c] = 1 if (left, right) == (r, a_regs[i + 1]) else -1
            pos = beta1.index(d.order[h // 4])
            beta1.insert(pos + 1, c)
            alpha2.append(c)
    beta2 = list(tube)
    for i, r in enumerate(b_regs):
        if r in meet:
            beta2.append(meet[r])
        if i < len(b_edges):
            h = b_edges[i]
            left, right = d.edge_regions(h)
            c = fresh("b")
            signs[c] = 1 if (right, left) == (r, b_regs[i + 1]) else -1
            pos = alpha1.index(d.order[h // 4])
            alpha1.insert(pos + 1, c)
            beta2.append(c)
    w = d.w[0]
    return Diagram(2, (tuple(alpha1), tuple(alpha2)), (tuple(beta1), tuple(beta2)), signs, (w,))
