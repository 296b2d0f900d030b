import random

import pytest

from helpers import (HOPF_POSITIVE, TREFOIL_RIGHT, figure_eight_pd, parse,
                     random_braid_diagram)
from linkhom.cube import (BasepointMissing, FrobeniusParams, TheorySpec,
                          _vertex_bidegree, assemble, edge_map, odd_edge_map,
                          odd_sign_solve, signage_from_dict, standard_signage,
                          vertex_generators)
from linkhom.diagram import parse_pd, resolve
from linkhom.homology import gauss_eliminate, homology
from linkhom.rings import F2, QQ, ZZ
from linkhom.sparse import solve_f2


def test_quantum_grading_formula():
    # five 1-smoothings, two circles: monomial degrees 7, 5, 5, 3 before shifts
    degs = sorted(
        _vertex_bidegree(0, 0, 5, 2, mask, False)[1] for mask in range(4)
    )
    assert degs == [3, 5, 5, 7]


def test_vertex_generator_counts():
    d = parse_pd(TREFOIL_RIGHT)
    for subset in ([], [1], [1, 2], [1, 2, 3]):
        r = resolve(d, subset)
        gens, _ = vertex_generators(r, reduced=False, basepoint=None)
        assert len(gens) == 2 ** r.circle_count


def test_cube_vertex_helper():
    from linkhom.cube import cube_vertex
    d = parse_pd(TREFOIL_RIGHT).with_basepoint(1)
    v = cube_vertex(d, 0b011, reduced=True)
    assert v.subset_mask == 0b011
    assert v.resolution.circle_count == 2
    assert len(v.gen_masks) == 2  # monomials containing the basepoint circle
    assert v.basepoint_bit is not None
    assert list(v.gen_masks) == sorted(v.gen_masks)


def test_reduced_needs_basepoint():
    r = resolve(parse_pd(TREFOIL_RIGHT), [])
    with pytest.raises(BasepointMissing):
        vertex_generators(r, reduced=True, basepoint=None)
    with pytest.raises(BasepointMissing):
        assemble(parse_pd(TREFOIL_RIGHT), TheorySpec.ordinary(F2), reduced=True)


def _hopf_edge(params, ring, subset, crossing):
    d = parse_pd(HOPF_POSITIVE)
    ra = resolve(d, subset)
    rb = resolve(d, sorted(set(subset) | {crossing}))
    return ra, rb, edge_map(d, ra, rb, crossing, params, ring)


def test_merge_map_ordinary():
    # two circles merge into one: 1->1, x_a -> x_b, x_a' -> x_b, x_a x_a' -> 0
    _ra, _rb, ent = _hopf_edge(FrobeniusParams(0, 0), ZZ, [], 1)
    assert sorted(ent) == [(0, 0, 1), (1, 0 | 1, 1), (2, 1, 1)]


def test_merge_map_deformed():
    # x_a x_a' -> t + h x_b
    _ra, _rb, ent = _hopf_edge(FrobeniusParams(0, 1), ZZ, [], 1)  # Lee
    assert (3, 0, 1) in ent  # t-term drops both variables
    _ra, _rb, ent = _hopf_edge(FrobeniusParams(1, 0), ZZ, [], 1)  # Bar-Natan
    assert (3, 1, 1) in ent  # h-term keeps the merged circle


def test_split_map_ordinary():
    # one circle splits: 1 -> x_b + x_b', x_a -> x_b x_b'
    _ra, _rb, ent = _hopf_edge(FrobeniusParams(0, 0), ZZ, [1], 2)
    assert sorted(ent) == [(0, 1, 1), (0, 2, 1), (1, 3, 1)]


def test_split_map_lee():
    # Lee split picks up the t-term: x_a -> x_b x_b' + 1
    _ra, _rb, ent = _hopf_edge(FrobeniusParams(0, 1), ZZ, [1], 2)
    assert sorted(ent) == [(0, 1, 1), (0, 2, 1), (1, 0, 1), (1, 3, 1)]


def test_split_map_barnatan():
    # Bar-Natan split: 1 -> x_b + x_b' - h
    _ra, _rb, ent = _hopf_edge(FrobeniusParams(1, 0), ZZ, [1], 2)
    assert sorted(ent) == [(0, 0, -1), (0, 1, 1), (0, 2, 1), (1, 3, 1)]


def test_standard_signage_single_crossing():
    eps = standard_signage(1)
    assert eps(0, 1) == 0


def test_standard_signage_square_parity():
    eps = standard_signage(2)
    total = eps(0b00, 1) + eps(0b01, 2) + eps(0b00, 2) + eps(0b10, 1)
    assert total % 2 == 1


def test_standard_signage_all_faces_n4():
    eps = standard_signage(4)
    for mask in range(16):
        for c1 in range(1, 5):
            for c2 in range(c1 + 1, 5):
                b1, b2 = 1 << (c1 - 1), 1 << (c2 - 1)
                if mask & (b1 | b2):
                    continue
                total = (eps(mask, c1) + eps(mask | b1, c2)
                         + eps(mask, c2) + eps(mask | b2, c1))
                assert total % 2 == 1


def test_assemble_unknot():
    d = parse_pd("U(1)")
    cx = assemble(d, TheorySpec.ordinary(F2))
    assert cx.group_dims() == {(0, 1): 1, (0, -1): 1}
    red = assemble(d.with_basepoint(1), TheorySpec.ordinary(F2), reduced=True)
    assert red.group_dims() == {(0, 0): 1}


def test_assemble_trefoil_chain_group_dims():
    # layer dims 4, 6, 12, 8 at homological degrees 0..3 (all-positive diagram)
    cx = assemble(parse_pd(TREFOIL_RIGHT), TheorySpec.ordinary(F2))
    per_i = {}
    for (i, _j), n in cx.group_dims().items():
        per_i[i] = per_i.get(i, 0) + n
    assert per_i == {0: 4, 1: 6, 2: 12, 3: 8}


def test_assemble_graded_and_d_squared():
    # validate() inside assemble asserts d^2 = 0 and exact grading
    for ring in (F2, QQ, ZZ):
        assemble(parse_pd(TREFOIL_RIGHT), TheorySpec.ordinary(ring))
    assemble(parse(figure_eight_pd()), TheorySpec.lee(QQ))
    assemble(parse(figure_eight_pd()), TheorySpec.barnatan(F2))


def test_odd_split_uses_arrow_sign():
    d = parse_pd(HOPF_POSITIVE)
    ra = resolve(d, [1], "odd")
    rb = resolve(d, [1, 2], "odd")
    ent = odd_edge_map(d, ra, rb, 2)
    # 1 -> x_head - x_tail and x_a -> x_head ^ x_tail
    ones = {(dm, c) for sm, dm, c in ent if sm == 0}
    assert ones == {(1, 1), (2, -1)} or ones == {(2, 1), (1, -1)}
    tail, head = rb.arrows[1]
    assert (0, 1 << head, 1) in ent and (0, 1 << tail, -1) in ent
    # x_a -> x_head ^ x_tail, reordered into the canonical circle order
    assert (1, 3, 1 if head < tail else -1) in ent


def test_odd_merge_is_unsigned_on_bystanders():
    d = parse(figure_eight_pd())
    for subset, c in (([], 1), ([2], 1)):
        ra = resolve(d, subset, "odd")
        rb = resolve(d, sorted(set(subset) | {c}), "odd")
        if ra.circle_count != rb.circle_count + 1:
            continue
        for sm, dm, coeff in odd_edge_map(d, ra, rb, c):
            if bin(sm).count("1") <= 1:
                assert coeff == 1


def test_odd_mod2_matches_even_cube():
    for pd in (TREFOIL_RIGHT, HOPF_POSITIVE, figure_eight_pd()):
        d = parse_pd(pd) if isinstance(pd, str) else pd
        even = assemble(d, TheorySpec.ordinary(F2))
        odd = assemble(d, TheorySpec.odd(F2))
        assert even.group_dims() == odd.group_dims()
        assert all(set(even.out[g]) == set(odd.out[g]) for g in even.out)


def test_odd_sign_solve_no_crossings():
    d = parse_pd("X(1,2,2,1)")
    sgn = odd_sign_solve(d)
    assert sgn(0, 1) in (0, 1)  # single edge, no face constraints
    assemble(d, TheorySpec.odd(ZZ))  # asserts d^2 = 0


def test_odd_d_squared_over_z():
    for pd_text in (TREFOIL_RIGHT, figure_eight_pd()):
        assemble(parse_pd(pd_text), TheorySpec.odd(ZZ))


def _random_even_signage(d, rng):
    n = d.n
    edges = {}
    for mask in range(1 << n):
        for c in range(1, n + 1):
            if not mask & (1 << (c - 1)):
                edges[(mask, c)] = len(edges)
    eqs = []
    for mask in range(1 << n):
        for c1 in range(1, n + 1):
            for c2 in range(c1 + 1, n + 1):
                b1, b2 = 1 << (c1 - 1), 1 << (c2 - 1)
                if mask & (b1 | b2):
                    continue
                vars_mask = ((1 << edges[(mask, c1)]) | (1 << edges[(mask | b1, c2)])
                             | (1 << edges[(mask, c2)]) | (1 << edges[(mask | b2, c1)]))
                eqs.append((vars_mask, 1))
    sol = solve_f2(eqs, len(edges), free_bits=lambda v: rng.getrandbits(1))
    return signage_from_dict({e: (sol >> i) & 1 for e, i in edges.items()})


def test_signage_independence():
    # any valid signage yields the same homology
    rng = random.Random(17)
    for pd_text in (TREFOIL_RIGHT, HOPF_POSITIVE, figure_eight_pd()):
        d = parse_pd(pd_text)
        base = homology(gauss_eliminate(
            assemble(d, TheorySpec.ordinary(QQ)), in_place=True)[0])
        for _ in range(3):
            sgn = _random_even_signage(d, rng)
            cx = assemble(d, TheorySpec.ordinary(QQ), signage=sgn)
            assert homology(gauss_eliminate(cx, in_place=True)[0]) == base
