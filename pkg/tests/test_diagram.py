import random

import pytest

from helpers import (HOPF_POSITIVE, KINK_NEGATIVE, TREFOIL_RIGHT,
                     braid_closure_pd, figure_eight_pd, parse,
                     random_braid_diagram)
from linkhom.diagram import (EdgeCountError, MalformedPd, OrientationError,
                             canonical_relabel, disjoint_union, mirror,
                             parse_pd, resolve, smooth_crossing,
                             switch_crossing)


def test_parse_trefoil():
    d = parse_pd(TREFOIL_RIGHT)
    assert d.n == 3
    assert d.edge_count == 6
    assert len(d.components) == 1
    assert d.n_plus == 3 and d.n_minus == 0


def test_parse_one_crossing_unknot():
    d = parse_pd("X(1,2,2,1)")
    assert d.n == 1
    assert len(d.components) == 1


def test_parse_unlink_form():
    d = parse_pd("U(3)")
    assert d.n == 0 and d.edge_count == 3
    assert len(d.components) == 3


def test_parse_basepoint_suffix():
    d = parse_pd("X(1,2,2,1)@1")
    assert d.basepoint == 1
    with pytest.raises(MalformedPd):
        parse_pd("X(1,2,2,1)@7")


def test_edge_count_error():
    with pytest.raises(EdgeCountError):
        parse_pd("X(1,4,2,3);X(3,6,4,5)")


def test_malformed_grammar():
    for bad in ("", "X(1,2,3)", "Y(1,2,3,4)", "X(1,2,2,1);;garbage"):
        with pytest.raises(MalformedPd):
            parse_pd(bad)


def test_orientation_error():
    # edge 1 enters two crossings as under-in: no coherent orientation
    with pytest.raises(OrientationError):
        parse_pd("X(1,3,2,4);X(1,4,2,3)")


def test_resolve_trefoil_circle_counts():
    d = parse_pd(TREFOIL_RIGHT)
    assert resolve(d, []).circle_count == 2
    assert resolve(d, [1, 2, 3]).circle_count == 3
    for c in (1, 2, 3):
        assert resolve(d, [c]).circle_count == 1


def test_resolve_deterministic():
    d = parse(figure_eight_pd())
    a = resolve(d, [1, 3], "odd")
    b = resolve(d, [1, 3], "odd")
    assert a.circles == b.circles and a.arrows == b.arrows


def test_resolve_one_crossing_unknot():
    d = parse_pd(KINK_NEGATIVE)
    c0 = resolve(d, []).circle_count
    c1 = resolve(d, [1]).circle_count
    assert abs(c0 - c1) == 1


def test_surgery_changes_circles_by_one():
    # one extra crossing always merges or splits: +-1 circles
    rng = random.Random(3)
    for _ in range(25):
        d = random_braid_diagram(rng, max_crossings=6)
        for mask in range(1 << d.n):
            a = [c + 1 for c in range(d.n) if (mask >> c) & 1]
            base = resolve(d, a).circle_count
            for c in range(1, d.n + 1):
                if c not in a:
                    assert abs(resolve(d, a + [c]).circle_count - base) == 1


def test_odd_mode_arrows():
    d = parse_pd(TREFOIL_RIGHT)
    r = resolve(d, [2], "odd")
    assert r.arrows is not None and len(r.arrows) == d.n
    for tail, head in r.arrows:
        assert 0 <= tail < r.circle_count and 0 <= head < r.circle_count
    assert resolve(d, [2]).arrows is None


def test_mirror_negates_signs():
    d = parse_pd(TREFOIL_RIGHT)
    m = mirror(d)
    assert [x.sign for x in m.crossings] == [-x.sign for x in d.crossings]
    assert m.n_plus == d.n_minus and m.n_minus == d.n_plus


def test_mirror_involution():
    for pd in (TREFOIL_RIGHT, HOPF_POSITIVE, figure_eight_pd()):
        d = parse_pd(pd)
        back = canonical_relabel(mirror(mirror(d)))
        assert back.pd_text() == canonical_relabel(d).pd_text()


def test_mirror_unknot():
    d = parse_pd("U(1)")
    assert mirror(d).pd_text() == "U(1)"


def test_switch_crossing_involution():
    d = parse_pd(TREFOIL_RIGHT)
    s = switch_crossing(switch_crossing(d, 2), 2)
    assert s.pd_text() == d.pd_text()
    assert switch_crossing(d, 2).crossings[1].sign == -d.crossings[1].sign


def test_disjoint_union_bookkeeping():
    t = parse_pd(TREFOIL_RIGHT)
    u = parse_pd("U(1)")
    both = disjoint_union(t, u)
    assert both.n == t.n
    assert len(both.components) == 2
    uu = disjoint_union(u, u)
    assert uu.n == 0 and len(uu.components) == 2
    h = parse_pd(HOPF_POSITIVE)
    th = disjoint_union(t, h)
    assert th.n == t.n + h.n
    assert th.edge_count == t.edge_count + h.edge_count


def test_components_of_multi_component_links():
    assert len(parse_pd(HOPF_POSITIVE).components) == 2
    borromean = parse(braid_closure_pd([1, -2, 1, -2, 1, -2], 3))
    assert len(borromean.components) == 3


def test_smooth_crossing_of_trefoil():
    d = parse_pd(TREFOIL_RIGHT)
    hopf = smooth_crossing(d, 1, 0)  # oriented smoothing of a + crossing
    assert hopf.n == 2 and len(hopf.components) == 2
    assert hopf.n_minus == 0  # orientation survives
    other = smooth_crossing(d, 1, 1)
    assert other.n == 2 and len(other.components) == 1


def test_smooth_kink_gives_free_loop():
    d = parse_pd(KINK_NEGATIVE)
    for which in (0, 1):
        s = smooth_crossing(d, 1, which)
        assert s.n == 0
        assert len(s.components) in (1, 2)


def test_canonical_relabel_idempotent():
    rng = random.Random(9)
    for _ in range(10):
        d = random_braid_diagram(rng, max_crossings=6)
        c1 = canonical_relabel(d)
        assert canonical_relabel(c1).pd_text() == c1.pd_text()


def test_pd_text_round_trip():
    rng = random.Random(4)
    for _ in range(15):
        d = random_braid_diagram(rng, max_crossings=7)
        again = parse_pd(d.pd_text())
        assert again.pd_text() == d.pd_text()
        assert [x.sign for x in again.crossings] == [x.sign for x in d.crossings]
