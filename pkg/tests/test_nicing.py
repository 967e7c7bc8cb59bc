import random

import pytest
from hypothesis import given, settings

from conftest import CORPUS, fixture, perturbed_diagrams
from nicehf.admissibility import is_admissible
from nicehf.diagram import complexity, is_nice, load, serialize
from nicehf.floer import enumerate_generators
from nicehf.nicing import (
    Finger,
    MoveLog,
    NicingError,
    apply_finger,
    apply_move,
    handleslide_sites,
    make_nice,
    random_finger,
    replay,
)


def descends(before, after):
    return after[0] < before[0] or (after[0] == before[0] and after[1] < before[1])


def check_log(d, nd, log):
    assert serialize(replay(log, d)) == serialize(nd)
    for mv in log.moves:
        if mv.before is not None:
            assert descends(mv.before, mv.after)
        if mv.admissible is not None and mv.admissible[0]:
            assert mv.admissible[1]


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_becomes_nice(path):
    d = load(path)
    nd, log = make_nice(d)
    assert is_nice(nd)
    assert is_admissible(nd)
    check_log(d, nd, log)


def test_nice_input_untouched():
    d = fixture("trefoil_nice")
    nd, log = make_nice(d)
    assert len(log) == 0 and serialize(nd) == serialize(d)


def test_trefoil_fixture_is_the_nicing_output():
    nd, log = make_nice(fixture("trefoil_origin"))
    assert serialize(nd) == serialize(fixture("trefoil_nice"))
    assert [m.kind for m in log.moves] == ["finger", "finger"]


def test_s1xs2_needs_step_one():
    nd, log = make_nice(fixture("s1xs2"))
    kinds = [m.kind for m in log.moves]
    assert kinds[0] == "isolation" and "disk" in kinds
    assert is_nice(nd) and is_admissible(nd)


def test_log_roundtrip():
    d = load(CORPUS[0])
    nd, log = make_nice(d)
    again = MoveLog.parse(log.serialize())
    assert again.serialize() == log.serialize()
    assert serialize(replay(again, d)) == serialize(nd)


def test_finger_adds_paired_crossings():
    d = fixture("lens_3_1")
    rng = random.Random(3)
    f = random_finger(d, rng, max_len=2)
    nd = apply_finger(d, f)
    k = len(f.crossed)
    assert nd.num_crossings == d.num_crossings + 2 * k
    # genus one: every crossing is a generator
    assert len(enumerate_generators(nd)) == len(enumerate_generators(d)) + 2 * k
    new = set(nd.signs) - set(d.signs)
    assert sum(nd.signs[c] for c in new) == 0


def test_finger_must_follow_adjacency():
    d = fixture("trefoil_origin")
    with pytest.raises(NicingError):
        apply_finger(d, Finger("c1", "L", (("c1", 1), ("c1", -1))))
    bad = [Finger("c1", s, (("c2", t),)) for s in "LR" for t in (1, -1)]
    errors = 0
    for f in bad:
        try:
            apply_finger(d, f)
        except NicingError:
            errors += 1
    assert errors >= 2


def test_handleslide_sites_are_legal():
    d, _ = make_nice(load(CORPUS[0].with_name("random_g2_01.hd")))
    sites = list(handleslide_sites(d, limit=5))
    assert sites
    for mv in sites:
        nd = apply_move(d, mv)
        assert nd.genus == d.genus
        assert nd.num_crossings > d.num_crossings


def test_complexity_descends_each_step():
    d = load(CORPUS[0].with_name("random_g3_05.hd"))
    nd, log = make_nice(d)
    steps = [m for m in log.moves if m.before is not None]
    assert steps
    cur = d
    for mv in log.moves:
        nxt = apply_move(cur, mv)
        if mv.before is not None:
            assert complexity(cur) == mv.before
            assert complexity(nxt) == mv.after
        cur = nxt


@settings(max_examples=30)
@given(perturbed_diagrams())
def test_nicing_property(d):
    nd, log = make_nice(d)
    assert is_nice(nd)
    assert is_admissible(nd)
    check_log(d, nd, log)
