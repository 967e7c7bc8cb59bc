import pytest
from hypothesis import given, settings

from conftest import CORPUS, fixture, perturbed_diagrams
from nicehf import floer
from nicehf.diagram import load
from nicehf.intlinalg import HermiteSystem
from nicehf.nicing import make_nice


def hf(d, knot=False):
    c = floer.differential(d, knot=knot)
    table, _ = floer.normalize(floer.homology_ranks(c), knot)
    return c, table


def det(m):
    # exact integer determinant by fraction-free elimination
    n = len(m)
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def intersection_matrix(d):
    g = d.num_curves
    m = [[0] * g for _ in range(g)]
    for c in d.order:
        x = d.crossing(c)
        m[x.alpha][x.beta] += x.sign
    return m


@pytest.mark.parametrize(
    "name, gens, disks, rank",
    [
        ("s3_genus1", 1, 0, 1),
        ("s3_cancelling", 3, 2, 1),
        ("s3_two_basepoints", 2, 2, 2),
        ("lens_3_1", 3, 0, 3),
        ("trefoil_nice", 9, 7, 1),
    ],
)
def test_fixture_ranks(name, gens, disks, rank):
    c, table = hf(fixture(name))
    assert len(c.generators) == gens
    assert c.num_disks == disks
    assert floer.total_rank(table) == rank


def test_lens_space_has_one_class_per_spin_c():
    c, table = hf(fixture("lens_3_1"))
    assert len(set(c.classes.class_of)) == 3
    assert sorted(table.values()) == [1, 1, 1]


def test_s1xs2_after_nicing():
    nd, _ = make_nice(fixture("s1xs2"))
    c, table = hf(nd)
    assert floer.total_rank(table) == 2
    # the two survivors sit in adjacent Maslov gradings of the torsion class
    assert sorted(m for (_, m, _), r in table.items() if r) == [0, 1]


def test_trefoil_knot_floer():
    c, table = hf(fixture("trefoil_nice"), knot=True)
    assert floer.total_rank(table) == 3
    by_a = {}
    for (_, _, a), r in table.items():
        by_a[a] = by_a.get(a, 0) + r
    assert by_a == {-1: 1, 0: 1, 1: 1}


def test_generators_are_bijections():
    d = fixture("trefoil_nice")
    for g in floer.enumerate_generators(d):
        assert [d.crossing(c).alpha for c in g] == list(range(d.num_curves))
        assert sorted(d.crossing(c).beta for c in g) == list(range(d.num_curves))


def test_nonnice_input_rejected():
    d = fixture("trefoil_origin")
    x = floer.enumerate_generators(d)[0]
    with pytest.raises(floer.NotNiceError):
        floer.find_empty_disks(d, x)


def test_oracle_guard():
    with pytest.raises(floer.GuardError):
        floer.bruteforce_domains(fixture("poincare_nice"), max_regions=32)


def test_differential_is_deterministic():
    d = fixture("trefoil_nice")
    a, b = floer.differential(d), floer.differential(d)
    assert a.matrix == b.matrix and a.generators == b.generators


def test_parallel_matches_serial():
    d, _ = make_nice(load(CORPUS[0]))
    assert floer.differential(d, jobs=2).matrix == floer.differential(d).matrix


def genus_one(path):
    return load(path).genus == 1


@pytest.mark.parametrize("path", [p for p in CORPUS if genus_one(p)], ids=lambda p: p.stem)
def test_genus_one_rank(path):
    # lens space L(p, q) with p = |alpha . beta| has rank p; S^1 x S^2 has rank 2
    d = load(path)
    p = abs(sum(d.signs.values()))
    nd, _ = make_nice(d)
    _, table = hf(nd)
    assert floer.total_rank(table) == (p if p else 2)


@pytest.mark.parametrize("path", [p for p in CORPUS if not genus_one(p)], ids=lambda p: p.stem)
def test_h1_order_matches_classes(path):
    d = load(path)
    order = abs(det(intersection_matrix(d)))
    nd, _ = make_nice(d)
    c, table = hf(nd)
    total = floer.total_rank(table)
    if order:
        # one class per element of H1, each with odd rank (Euler characteristic one)
        ranks = {}
        for (k, _, _), r in table.items():
            ranks[k] = ranks.get(k, 0) + r
        assert len(set(c.classes.class_of)) == order
        assert all(r % 2 == 1 for r in ranks.values())
    else:
        assert total > 0 and total % 2 == 0


@settings(max_examples=25)
@given(perturbed_diagrams(max_moves=2))
def test_disk_properties(d):
    nd, _ = make_nice(d)
    c = floer.differential(nd)
    assert (c.matrix @ c.matrix).is_zero()
    for disk in c.disks:
        phi = disk.domain(nd)
        assert floer.maslov_index(nd, phi) == 1
        assert floer.n_w(nd, phi) == 0
        assert floer.check_boundary(nd, phi)
        assert set(phi.coeffs) <= {0, 1}
    if len(nd.regions) <= 24:
        want = {t.key() for t in floer.bruteforce_domains(nd, max_regions=24)}
        assert {t.key() for t in c.disks} == want


@settings(max_examples=15)
@given(perturbed_diagrams(max_moves=2))
def test_connecting_domains(d):
    gens = floer.enumerate_generators(d)
    x = gens[0]
    for y in gens[:6]:
        phi = floer.connecting_domain(d, x, y, zero_w=True)
        if phi is not None:
            assert floer.check_boundary(d, phi)
            assert floer.n_w(d, phi) == 0


def test_det_helper():
    assert det([[2, 1], [1, 3]]) == 5
    assert HermiteSystem([[2, 1], [1, 3]], 2).rank == 2
