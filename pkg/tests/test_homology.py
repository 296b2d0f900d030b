import random

import pytest

from helpers import (HOPF_POSITIVE, TREFOIL_RIGHT, braid_closure_pd,
                     figure_eight_pd, parse, random_braid_diagram)
from linkhom.cube import ChainComplex, TheorySpec, assemble
from linkhom.diagram import disjoint_union, mirror, parse_pd
from linkhom.homology import (gauss_eliminate, homology, khovanov,
                              universal_coefficient_check)
from linkhom.laurent import LaurentPoly
from linkhom.rings import F2, GF, QQ, ZZ

TREFOIL_Q = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}


def _two_term_complex(ring, value):
    cx = ChainComplex(ring, False, 0, 0, 0)
    cx.add_generator(0, 0, 0)
    cx.add_generator(1, 1, 0)
    cx.add_entry(0, 1, value)
    return cx


def test_eliminate_acyclic_pair():
    cx = _two_term_complex(ZZ, 1)
    reduced, trace = gauss_eliminate(cx)
    assert reduced.total_generators() == 0
    assert trace.steps == 1


def test_eliminate_keeps_nonunit_over_z():
    cx = _two_term_complex(ZZ, 2)
    reduced, trace = gauss_eliminate(cx)
    assert trace.steps == 0 and reduced.total_generators() == 2
    # over Q the same entry is invertible
    cx2 = _two_term_complex(QQ, 2)
    assert gauss_eliminate(cx2)[0].total_generators() == 0


def test_eliminate_zero_differential_unchanged():
    cx = ChainComplex(F2, False, 0, 0, 0)
    for gid in range(4):
        cx.add_generator(gid, 0, gid % 2)
    reduced, trace = gauss_eliminate(cx)
    assert trace.steps == 0
    assert reduced.total_generators() == 4


def test_trefoil_reduction_is_tight():
    cx = assemble(parse_pd(TREFOIL_RIGHT), TheorySpec.ordinary(F2))
    assert cx.total_generators() == 30
    reduced, trace = gauss_eliminate(cx)
    assert reduced.total_generators() <= 6
    assert homology(reduced) == homology(cx)


def test_homology_before_after_elimination_random():
    rng = random.Random(42)
    for _ in range(15):
        d = random_braid_diagram(rng, max_crossings=6)
        cx = assemble(d, TheorySpec.ordinary(ZZ))
        direct = homology(cx)
        slim = homology(gauss_eliminate(cx)[0])
        assert direct == slim


def test_trefoil_tables():
    d = parse_pd(TREFOIL_RIGHT)
    assert khovanov(d, "kh", QQ).free_ranks == TREFOIL_Q
    kz = khovanov(d, "kh", ZZ)
    assert kz.free_ranks == TREFOIL_Q
    assert kz.torsion == {(3, 7): ((2, 1),)}
    red = khovanov(d.with_basepoint(1), "kh", ZZ, reduced=True)
    assert red.is_torsion_free()
    assert red.free_ranks == {(0, 2): 1, (2, 6): 1, (3, 8): 1}


def test_unknot_tables():
    u = parse_pd("U(1)")
    assert khovanov(u, "kh", F2).free_ranks == {(0, 1): 1, (0, -1): 1}
    assert khovanov(u.with_basepoint(1), "kh", F2, reduced=True).free_ranks \
        == {(0, 0): 1}


def test_unlink_tensor_pattern():
    for k in (2, 3):
        g = khovanov(parse_pd(f"U({k})"), "kh", F2)
        poly = LaurentPoly({(j, 0): r for (i, j), r in g.free_ranks.items()})
        assert poly == LaurentPoly.from_q_coeffs([(1, 1), (-1, 1)]) ** k
        assert all(i == 0 for (i, _j) in g.free_ranks)


def test_disjoint_union_of_unknots_pattern():
    d = disjoint_union(parse_pd("U(1)"), parse_pd("U(1)"))
    g = khovanov(d, "kh", F2)
    assert g.free_ranks == {(0, 2): 1, (0, 0): 2, (0, -2): 1}


def test_disjoint_union_is_tensor():
    t = parse_pd(TREFOIL_RIGHT)
    u = parse_pd("U(1)")
    g = khovanov(disjoint_union(t, u), "kh", QQ)
    expect = {}
    for (i, j), r in khovanov(t, "kh", QQ).free_ranks.items():
        for dj in (1, -1):
            expect[(i, j + dj)] = expect.get((i, j + dj), 0) + r
    assert g.free_ranks == expect


def test_mirror_duality_field():
    for pd_text in (TREFOIL_RIGHT, figure_eight_pd()):
        d = parse_pd(pd_text)
        for ring in (F2, QQ, GF(3)):
            a = khovanov(d, "kh", ring)
            b = khovanov(mirror(d), "kh", ring)
            assert b.free_ranks == {(-i, -j): r for (i, j), r in a.free_ranks.items()}


def test_mirror_torsion_shifts_one_degree():
    d = parse_pd(TREFOIL_RIGHT)
    a = khovanov(d, "kh", ZZ)
    b = khovanov(mirror(d), "kh", ZZ)
    assert b.free_ranks == {(-i, -j): r for (i, j), r in a.free_ranks.items()}
    assert b.torsion == {(-i + 1, -j): t for (i, j), t in a.torsion.items()}


def test_figure_eight_thin():
    d = parse(figure_eight_pd())
    red = khovanov(d.with_basepoint(1), "kh", F2, reduced=True)
    assert red.total_rank() == 5
    assert {j - 2 * i for (i, j) in red.free_ranks} == {0}


def test_reduced_unreduced_factorization_f2():
    for pd_text in (TREFOIL_RIGHT, figure_eight_pd(), HOPF_POSITIVE):
        d = parse_pd(pd_text)
        unred = khovanov(d, "kh", F2).poincare()
        red = khovanov(d.with_basepoint(1), "kh", F2, reduced=True).poincare()
        assert unred == red * LaurentPoly.from_q_coeffs([(1, 1), (-1, 1)])


def test_parity_vanishing():
    rng = random.Random(8)
    for _ in range(10):
        d = random_braid_diagram(rng, max_crossings=6)
        comps = len(d.components)
        g = khovanov(d, "kh", F2)
        assert all((j - comps) % 2 == 0 for (_i, j) in g.support())


def test_universal_coefficients():
    assert universal_coefficient_check(parse_pd("U(1)"))
    assert universal_coefficient_check(parse_pd(TREFOIL_RIGHT))
    assert universal_coefficient_check(parse(figure_eight_pd()))


def test_diagram_invariance_small():
    # 3-crossing and 4-crossing diagrams of the right trefoil
    t3 = parse_pd(TREFOIL_RIGHT)
    t4 = parse(braid_closure_pd([1, 1, 1, 2], 3))
    for ring in (F2, QQ, ZZ):
        assert khovanov(t3, "kh", ring) == khovanov(t4, "kh", ring)
    # rational vs braid presentation of the (2,5) torus knot
    from helpers import rational_pd, torus_pd
    a = khovanov(parse(rational_pd([5])), "kh", ZZ)
    b = khovanov(parse(torus_pd(2, 5)), "kh", ZZ)
    m = khovanov(mirror(parse(torus_pd(2, 5))), "kh", ZZ)
    assert a in (b, m)


def test_khovanov_rejects_filtered_theories():
    with pytest.raises(ValueError):
        khovanov(parse_pd(TREFOIL_RIGHT), TheorySpec.lee(QQ))
    with pytest.raises(ValueError):
        khovanov(parse_pd(TREFOIL_RIGHT), "lee")


def test_streaming_matches_full_assembly():
    rng = random.Random(13)
    for _ in range(8):
        d = random_braid_diagram(rng, max_crossings=6)
        full = homology(gauss_eliminate(
            assemble(d, TheorySpec.ordinary(ZZ)), in_place=True)[0])
        assert khovanov(d, "kh", ZZ) == full
