"""Independent verification layer.

The Jones oracle is a Kauffman-style state sum running over all
resolutions with its own weight bookkeeping: it shares only the circle
counting with the homology pipeline, never its algebra.  Its output
equals the graded Euler characteristic of Khovanov homology over Q,
which is the repo's master acceptance property.  The long-exact-sequence
checks verify the dimension identities the skein triangles force on the
polynomial level, and width/Thurston-Bennequin read support lines off a
homology table.
"""

from __future__ import annotations

from .diagram import Diagram, resolve, smooth_crossing
from .homology import BigradedGroup, khovanov
from .laurent import LaurentPoly
from .rings import F2


class EmptyHomology(Exception):
    """Width and tb bounds need a nonzero homology table."""


def jones_skein(d: Diagram, max_crossings: int = 20) -> LaurentPoly:
    """The graded Jones polynomial by state sum, unknot -> q + q^-1.

    P(D) = (-1)^(n-) q^(n+ - 2 n-) * sum over states (-q)^|A| (q+q^-1)^||A||,
    which satisfies the unreduced skein relation
    q^-2 P(pos) - q^2 P(neg) + (q - q^-1) P(oriented) = 0.
    """
    n = d.n
    if n > max_crossings:
        raise ValueError(f"state sum over 2^{n} resolutions refused; "
                         f"raise max_crossings to override")
    circle_poly: dict[int, LaurentPoly] = {}

    def circles_pow(k: int) -> LaurentPoly:
        if k not in circle_poly:
            circle_poly[k] = LaurentPoly({(1, 0): 1, (-1, 0): 1}) ** k
        return circle_poly[k]

    total = LaurentPoly.zero()
    subset: list[int] = []
    for mask in range(1 << n):
        a = [c + 1 for c in range(n) if (mask >> c) & 1]
        k = resolve(d, a).circle_count
        w = bin(mask).count("1")
        term = circles_pow(k).shift(dq=w)
        total = total + (term if w % 2 == 0 else -term)
    return total.shift(dq=d.n_plus - 2 * d.n_minus) * (
        -1 if d.n_minus % 2 else 1
    )


def graded_euler(g: BigradedGroup) -> LaurentPoly:
    """sum (-1)^i q^j rank(i, j); torsion does not contribute."""
    out: dict[tuple[int, int], int] = {}
    for (i, j), r in g.free_ranks.items():
        key = (j, 0)
        out[key] = out.get(key, 0) + (r if i % 2 == 0 else -r)
    return LaurentPoly(out)


def _f2_poly(d: Diagram) -> LaurentPoly:
    """P(D) = sum (-1)^i q^j dim_F2 Kh^{i,j}(D)."""
    table = khovanov(d, "kh", F2)
    out: dict[tuple[int, int], int] = {}
    for (i, j), r in table.free_ranks.items():
        key = (j, 0)
        out[key] = out.get(key, 0) + (r if i % 2 == 0 else -r)
    return LaurentPoly(out)


def les_dimension_check(d: Diagram, c: int) -> bool:
    """Dimension identity forced by the skein long exact sequence at c.

    For a negative crossing, with omega the negative-crossing count of
    the (re-oriented) 0-smoothing minus that of d:

        q^-1 P(D_1) - P(D) + (-1)^omega q^(1+3 omega) P(D_0) = 0,

    and for a positive crossing, with kappa from the 1-smoothing:

        (-1)^(kappa-1) q^(2+3 kappa) P(D_1) - P(D) + q P(D_0) = 0,

    all P computed from F2 Khovanov homology.  Returns False on
    violation: this is a bug detector, not an input validator.
    """
    if not (1 <= c <= d.n):
        raise ValueError(f"no crossing {c}")
    sign = d.crossings[c - 1].sign
    p_d = _f2_poly(d)
    d0 = smooth_crossing(d, c, 0)
    d1 = smooth_crossing(d, c, 1)
    p0 = _f2_poly(d0)
    p1 = _f2_poly(d1)
    if sign < 0:
        omega = d0.n_minus - d.n_minus
        lhs = (p1.shift(dq=-1) - p_d
               + p0.shift(dq=1 + 3 * omega) * (-1 if omega % 2 else 1))
    else:
        kappa = d1.n_minus - d.n_minus
        lhs = (p1.shift(dq=2 + 3 * kappa) * (-1 if (kappa - 1) % 2 else 1)
               - p_d + p0.shift(dq=1))
    return not lhs


def width_and_tb(g: BigradedGroup) -> tuple[int, int]:
    """Homological width and the Thurston-Bennequin upper bound.

    Width counts the occupied j - 2i diagonals (inclusive span); the tb
    bound is min { j - i } over the support.  Width is conventionally
    quoted for reduced homology and the tb bound for unreduced; the
    caller picks which table to pass.
    """
    support = [key for key in g.support()
               if g.free_ranks.get(key) or g.torsion.get(key)]
    if not support:
        raise EmptyHomology("empty homology table")
    diags = [j - 2 * i for (i, j) in support]
    anti = [j - i for (i, j) in support]
    return max(diags) - min(diags) + 1, min(anti)
