"""Regenerate the seeded test corpus under src/nicehf/data/corpus/.

Random diagrams are drawn as crossing words with random signs and kept only
when they validate (the words then describe a surface of the stated genus
with the required complement components).  Finger-perturbed diagrams apply
random finger moves to packaged fixtures.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from nicehf.diagram import QUADRANTS, Anchor, Diagram, DiagramError, is_nice, load, serialize, validate
from nicehf.nicing import make_nice, perturb

DATA = Path(__file__).resolve().parents[1] / "src" / "nicehf" / "data"


def random_diagram(rng: random.Random, genus: int, lo: int, hi: int) -> Diagram | None:
    n = rng.randint(lo, hi)
    names = [f"c{i}" for i in range(1, n + 1)]
    ai = [i % genus for i in range(n)]
    rng.shuffle(ai)
    bi = [rng.randrange(genus) for _ in range(n)]
    if len(set(bi)) < genus:
        return None
    aw = tuple(tuple(rng.sample([c for c, a in zip(names, ai) if a == k], ai.count(k))) for k in range(genus))
    bw = tuple(tuple(rng.sample([c for c, b in zip(names, bi) if b == k], bi.count(k))) for k in range(genus))
    signs = {c: rng.choice((1, -1)) for c in names}
    d = Diagram(genus, aw, bw, signs, (Anchor(aw[0][0], rng.choice(QUADRANTS)),))
    try:
        validate(d)
    except DiagramError:
        return None
    return d


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = DATA / "corpus"
    out.mkdir(exist_ok=True)
    for p in out.glob("*.hd"):
        p.unlink()
    plan = [(1, 4, 8, 6), (2, 6, 11, 8), (3, 8, 13, 6)]
    seen: set[str] = set()
    for genus, lo, hi, count in plan:
        kept = 0
        while kept < count:
            d = random_diagram(rng, genus, lo, hi)
            if d is None or is_nice(d) or serialize(d) in seen:
                continue
            seen.add(serialize(d))
            nd, _ = make_nice(d)
            if len(nd.regions) > 32:
                continue
            kept += 1
            (out / f"random_g{genus}_{kept:02d}.hd").write_text(
                f"# seeded random genus-{genus} diagram\n" + serialize(d))
    for name in ("lens_3_1", "trefoil_nice", "s3_cancelling", "trefoil_origin"):
        base = load(DATA / f"{name}.hd")
        for k in (1, 2):
            d, _ = perturb(base, rng, k, handleslides=False)
            (out / f"{name}_finger{k}.hd").write_text(
                f"# {name}.hd after {k} random finger move(s)\n" + serialize(d))


if __name__ == "__main__":
    main()
