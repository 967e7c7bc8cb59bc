"""Acceptance criteria; each test prints one PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest.
"""

import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import CORPUS, DATA, fixture
from nicehf import floer
from nicehf.admissibility import is_admissible
from nicehf.diagram import complexity, is_nice, load
from nicehf.nicing import apply_move, make_nice, perturb

TESTS = Path(__file__).resolve().parent


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, what: str, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {what} [{detail}]")
        assert ok, f"criterion {n}: {detail}"

    return emit


def per_class(table):
    per = {}
    for (k, m, a), r in table.items():
        if r:
            per.setdefault(k, []).append((m, a, r))
    return sorted(tuple(sorted(v)) for v in per.values())


def hf_table(d, knot=False):
    c = floer.differential(d, knot=knot)
    table, _ = floer.normalize(floer.homology_ranks(c), knot)
    return c, table


def acceptance_corpus():
    paths = list(CORPUS) + [DATA / "trefoil_origin.hd", DATA / "poincare_origin.hd", DATA / "s1xs2.hd"]
    return [(p.stem, load(p)) for p in paths]


def test_1_trefoil_generators(report):
    d = fixture("trefoil_nice")
    t0 = time.perf_counter()
    n = len(floer.enumerate_generators(d))
    dt = time.perf_counter() - t0
    report(1, n == 9 and dt < 1, "trefoil nice fixture has 9 generators", f"{n} generators, {dt:.3f}s")


def test_2_poincare_original_generators(report):
    d = fixture("poincare_origin")
    t0 = time.perf_counter()
    n = len(floer.enumerate_generators(d))
    dt = time.perf_counter() - t0
    report(2, n == 21 and dt < 1, "Poincare original fixture has 21 generators", f"{n} generators, {dt:.3f}s")


def test_3_poincare_nice_complex(report):
    d = fixture("poincare_nice")
    t0 = time.perf_counter()
    c, table = hf_table(d)
    dt = time.perf_counter() - t0
    gens, disks = len(c.generators), c.num_disks
    rank = floer.total_rank(table)
    d2 = (c.matrix @ c.matrix).is_zero()
    ok = gens == 335 and disks == 505 and dt < 60 and rank == 1 and d2
    report(3, ok, "Poincare nice fixture: 335 generators, 505 disks, rank 1, d^2 = 0",
           f"{gens} generators, {disks} disks, rank {rank}, d^2=0 {d2}, {dt:.1f}s")


def test_4_nicing_corpus(report):
    corpus = acceptance_corpus()
    violations = []
    steps = 0
    for name, d in corpus:
        try:
            nd, log = make_nice(d)
        except Exception as exc:  # a violation, not a crash of the test
            violations.append(f"{name}: {type(exc).__name__}: {exc}")
            continue
        if not is_nice(nd):
            violations.append(f"{name}: output not nice")
        # replay independently: descent at every step-2 move, admissibility move by move
        cur, adm = d, is_admissible(d)
        for mv in log.moves:
            nxt = apply_move(cur, mv)
            if mv.kind in ("finger", "handleslide") and mv.before is not None:
                steps += 1
                (d0, c0), (d1, c1) = complexity(cur), complexity(nxt)
                if not (d1 < d0 or (d1 == d0 and c1 < c0)):
                    violations.append(f"{name}: no descent {(d0, c0)} -> {(d1, c1)}")
            nadm = is_admissible(nxt)
            if adm and not nadm:
                violations.append(f"{name}: {mv.kind} move destroyed admissibility")
            cur, adm = nxt, nadm
    genera = sorted({d.genus for _, d in corpus})
    ok = len(corpus) >= 20 and not violations and genera == [1, 2, 3]
    report(4, ok, "nicing terminates, descends and preserves admissibility on the corpus",
           f"{len(corpus)} diagrams, genera {genera}, {steps} step-2 moves, {len(violations)} violations"
           + ("; " + "; ".join(violations[:3]) if violations else ""))


def test_5_oracle_equivalence(report):
    t0 = time.perf_counter()
    checked = pairs = 0
    bad = []
    for name, d in acceptance_corpus():
        nd, _ = make_nice(d)
        if len(nd.regions) > 32:
            continue
        checked += 1
        # one oracle enumeration per diagram, grouped by source generator
        oracle = {}
        for disk in floer.bruteforce_domains(nd, max_regions=32):
            oracle.setdefault(disk.x, set()).add(disk.key())
        for x in floer.enumerate_generators(nd):
            got = {disk.key() for _, disk in floer.find_empty_disks(nd, x)}
            want = oracle.get(x, set())
            pairs += 1
            if got != want:
                bad.append(f"{name} from {x}: {len(got - want)} extra, {len(want - got)} missing")
    dt = time.perf_counter() - t0
    report(5, not bad and dt < 600 and checked > 0, "disk search equals brute force on corpus diagrams <= 32 regions",
           f"{checked} diagrams, {pairs} source generators, {len(bad)} discrepancies, {dt:.1f}s")


INVARIANCE = ["trefoil_nice", "lens_3_1", "s3_cancelling", "s3_two_basepoints",
              "corpus/random_g2_01", "corpus/random_g2_03", "corpus/random_g2_04", "corpus/random_g2_08",
              "corpus/random_g3_03", "corpus/random_g3_04", "corpus/random_g1_03", "corpus/random_g1_06"]


def test_6_homology_invariance(report):
    rng = random.Random(20240)
    changed = []
    trials = moves = slides = 0
    for name in INVARIANCE:
        base, _ = make_nice(fixture(name))
        _, t0 = hf_table(base)
        want = per_class(t0)
        done = tries = 0
        while done < 2 and tries < 20:
            tries += 1
            d, log = perturb(base, rng, rng.randint(1, 5))
            nd, relog = make_nice(d)
            # keep runtimes bounded: the nicing of a long finger can grow large
            if len(nd.regions) > 250:
                continue
            done += 1
            trials += 1
            moves += len(log)
            slides += sum(m.kind == "handleslide" for m in log.moves + relog.moves)
            _, t1 = hf_table(nd)
            if per_class(t1) != want:
                changed.append(f"{name}: {want} -> {per_class(t1)}")
    ok = not changed and len(INVARIANCE) >= 10
    report(6, ok, "per-class ranks unchanged under finger moves and handleslides",
           f"{len(INVARIANCE)} fixtures, {trials} trials, {moves} moves, {slides} handleslides, {len(changed)} changes")


def test_7_trefoil_hfk(report):
    c, table = hf_table(fixture("trefoil_nice"), knot=True)
    by_a = {}
    for (_, _, a), r in table.items():
        if r:
            by_a[a] = by_a.get(a, 0) + r
    total = floer.total_rank(table)
    ok = total == 3 and by_a == {-1: 1, 0: 1, 1: 1}
    report(7, ok, "trefoil knot Floer ranks 1,1,1 at Alexander -1,0,1", f"total {total}, by Alexander {by_a}")


def test_8_two_basepoints(report):
    _, table = hf_table(fixture("s3_two_basepoints"))
    total = floer.total_rank(table)
    report(8, total == 2, "two-basepoint S^3 has total rank 2", f"rank {total}")


def test_9_property_suites(report):
    t0 = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
         str(TESTS / "test_f2.py"),
         str(TESTS / "test_diagram.py") + "::test_euler_bookkeeping",
         str(TESTS / "test_diagram.py") + "::test_distance_lipschitz",
         str(TESTS / "test_floer.py") + "::test_disk_properties"],
        capture_output=True, text=True, cwd=TESTS.parent,
    )
    dt = time.perf_counter() - t0
    tail = res.stdout.strip().splitlines()[-1] if res.stdout.strip() else res.stderr[-200:]
    report(9, res.returncode == 0 and dt < 300, "property suites green when run standalone", f"{tail}, {dt:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
