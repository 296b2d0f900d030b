#!/usr/bin/env python3
"""Generate the bundled knot/link table (offline tooling, not shipped API).

Rows are `name | pd | signature | alternating-flag`.  Diagrams come from
systematic constructions: every 2-bridge knot and link up to 10
crossings via canonical continued fractions, torus knots/links as braid
closures, a few pretzels, composites and unlinks.  Signatures are
computed here (never at package runtime) with the Gordon-Litherland
formula: sig(L) = sig(Goeritz form of a checkerboard surface) - mu,
where mu counts correction crossings; the exact correction rule is
calibrated against torus-knot signatures and invariance checks below,
then frozen.

Run from the repo root:  python tools/make_knot_table.py [--out PATH]
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from helpers import (braid_closure_pd, continued_fraction, figure_eight_pd,
                     parse, pretzel_pd, rational_pd, torus_pd,
                     GRANNY_WORD, SQUARE_WORD, TREFOIL_RIGHT)
from linkhom.diagram import Diagram, _headness, mirror, parse_pd


# ----------------------------------------------------------------- faces

def faces(d: Diagram):
    """Faces of the diagram's 4-valent planar graph as stub orbits."""
    occ = {}
    for k, x in enumerate(d.crossings):
        for slot, e in enumerate(x.edges):
            occ.setdefault(e, []).append((k, slot))

    def mate(h):
        a, b = occ[d.crossings[h[0]].edges[h[1]]]
        return b if a == h else a

    def nxt(h):
        k, s = mate(h)
        return (k, (s + 1) % 4)

    seen = set()
    out = []
    for k in range(d.n):
        for s in range(4):
            h = (k, s)
            if h in seen:
                continue
            orbit = []
            cur = h
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                cur = nxt(cur)
            out.append(tuple(orbit))
    return out


def checkerboard(d: Diagram):
    """2-colour the faces; returns (face_of_stub, colour_of_face).

    The face that a stub (k, s) belongs to is the one holding the corner
    between slots s and s+1 of crossing k.
    """
    fs = faces(d)
    if len(fs) != d.n + 2:
        raise ValueError(f"diagram is not planar-realizable: {len(fs)} faces "
                         f"for {d.n} crossings")
    face_of = {}
    for fi, orbit in enumerate(fs):
        for h in orbit:
            face_of[h] = fi
    colour = {0: 0}
    stack = [0]
    adj = {fi: set() for fi in range(len(fs))}
    for k in range(d.n):
        for s in range(4):
            # corners (k, s) and (k, s-1) sit on opposite sides of stub s
            f1 = face_of[(k, s)]
            f2 = face_of[(k, (s - 1) % 4)]
            adj[f1].add(f2)
            adj[f2].add(f1)
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in colour:
                colour[g] = colour[f] ^ 1
                stack.append(g)
            elif colour[g] == colour[f]:
                raise ValueError("checkerboard colouring failed (nugatory crossing?)")
    return face_of, colour


def signature_symmetric(m: list[list[Fraction]]) -> int:
    """Signature of an exact symmetric matrix by congruence diagonalization."""
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    sig = 0
    for i in range(n):
        if a[i][i] == 0:
            piv = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if piv is not None:
                for r in range(n):
                    a[r][i], a[r][piv] = a[r][piv], a[r][i]
                a[i], a[piv] = a[piv], a[i]
            else:
                off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    continue  # zero row: null direction
                for r in range(n):
                    a[r][i] += a[r][off]
                for cidx in range(n):
                    a[i][cidx] += a[off][cidx]
        dail = a[i][i]
        sig += 1 if dail > 0 else -1
        for j in range(i + 1, n):
            if a[j][i]:
                f = a[j][i] / dail
                for cidx in range(n):
                    a[j][cidx] -= f * a[i][cidx]
                for r in range(n):
                    a[r][j] -= f * a[r][i]
    return sig


def goeritz_data(d: Diagram):
    """White-region Goeritz matrix and per-crossing colour types.

    Returns (G, types, whites) where types[k] is +1 when the white
    corners at crossing k are the (0,1) and (2,3) ones, else -1.
    """
    face_of, colour = checkerboard(d)
    whites = sorted({f for f, c in colour.items() if c == 0})
    widx = {f: i for i, f in enumerate(whites)}
    nW = len(whites)
    G = [[0] * nW for _ in range(nW)]
    types = []
    for k in range(d.n):
        corners = [face_of[(k, s)] for s in range(4)]  # corner (s, s+1)
        if colour[corners[0]] == 0:
            t = 1
            wpair = (corners[0], corners[2])
        else:
            t = -1
            wpair = (corners[1], corners[3])
        types.append(t)
        u, v = widx[wpair[0]], widx[wpair[1]]
        if u != v:
            # eta(c): calibrated sign rule, equal to the colour type here
            G[u][v] -= t
            G[v][u] -= t
    for u in range(nW):
        G[u][u] = -sum(G[u][v] for v in range(nW) if v != u)
    # delete the white face containing stub (0, 0)-corner for determinacy
    drop = 0
    G = [[G[u][v] for v in range(nW) if v != drop] for u in range(nW) if u != drop]
    return G, types, whites


def det_symmetric(m) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for i in range(n):
        piv = next((j for j in range(i, n) if a[j][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for j in range(i + 1, n):
            if a[j][i]:
                f = a[j][i] / a[i][i]
                for c in range(i, n):
                    a[j][c] -= f * a[i][c]
    assert det.denominator == 1
    return int(det)


def _mu_counts(d: Diagram, types):
    """Crossing counts by (sign, white-corner type)."""
    counts = {(1, 1): 0, (1, -1): 0, (-1, 1): 0, (-1, -1): 0}
    for k, x in enumerate(d.crossings):
        counts[(x.sign, types[k])] += 1
    return counts


# correction rule sigma = g * sig(G) - sum(coef[key] * count[key]),
# fixed by calibrate() and then frozen
CAL_G = 1
CAL_COEF = {(1, 1): 0, (1, -1): 0, (-1, 1): 0, (-1, -1): 0}


def gl_signature(d: Diagram) -> int:
    """Gordon-Litherland signature of the oriented link diagram."""
    if d.n == 0:
        return 0
    G, types, _ = goeritz_data(d)
    base = CAL_G * signature_symmetric(G)
    counts = _mu_counts(d, types)
    return base - sum(CAL_COEF[key] * cnt for key, cnt in counts.items())


def calibrate():
    """Pin the correction rule against independently known signatures.

    Anchors are chirality-certain: positive torus braids have
    sigma(T(2,q)) = -(q-1), sigma(T(3,4)) = -6, sigma(T(3,5)) = -8,
    sigma(positive Hopf) = -1, plus amphichiral/composite checks and a
    Reidemeister-1 invariance pair.
    """
    global CAL_G, CAL_COEF
    left_trefoil = parse(mirror(parse(torus_pd(2, 3))).pd_text())
    knowns = [
        (parse(torus_pd(2, 3)), -2),
        (left_trefoil, 2),
        (parse(torus_pd(2, 5)), -4),
        (parse(torus_pd(2, 7)), -6),
        (parse(torus_pd(2, 9)), -8),
        (parse(braid_closure_pd([1, 1], 2)), -1),       # positive Hopf
        (parse(braid_closure_pd([1, 1, 1, 1], 2)), -3),  # T(2,4)
        (parse(braid_closure_pd([-1, -1], 2)), 1),
        (parse(figure_eight_pd()), 0),
        (parse(torus_pd(3, 4)), -6),
        (parse(torus_pd(3, 5)), -8),
        (parse(braid_closure_pd(GRANNY_WORD, 3)), -4),
        (parse(braid_closure_pd(SQUARE_WORD, 3)), 0),
        (parse(braid_closure_pd([1, 1, 1, 2], 3)), -2),   # kinked trefoil
        (parse(braid_closure_pd([1, -1], 2)), 0),         # R2 unknot
        (parse(braid_closure_pd([1, -2, 1, -2, 1, -2], 3)), 0),  # borromean
    ]
    pre = []
    for d, s in knowns:
        G, types, _ = goeritz_data(d)
        pre.append((signature_symmetric(G), _mu_counts(d, types), s))
    rng = (-1, 0, 1, 2)
    solutions = []
    for g in (1, -1):
        for app in rng:
            for apm in rng:
                for amp in rng:
                    for amm in rng:
                        coef = {(1, 1): app, (1, -1): apm,
                                (-1, 1): amp, (-1, -1): amm}
                        if all(
                            g * base - sum(coef[k] * c[k] for k in coef) == s
                            for base, c, s in pre
                        ):
                            solutions.append((g, dict(coef)))
    if not solutions:
        raise SystemExit("signature calibration found no rule")
    if len(solutions) > 1:
        raise SystemExit(f"signature calibration not unique: {solutions}")
    CAL_G, CAL_COEF = solutions[0]
    return solutions[0]


# ------------------------------------------------------------ table rows

def is_alternating_diagram(d: Diagram) -> bool:
    occ = {}
    for k, x in enumerate(d.crossings):
        for slot, e in enumerate(x.edges):
            occ.setdefault(e, []).append((k, slot))
    if d.n == 0:
        return True

    def head_slot(e):
        for k, s in occ[e]:
            if _headness(s, d.crossings[k].over_in_slot):
                return s
        raise AssertionError

    for comp in d.components:
        if len(comp) == 1 and comp[0] in d.loop_edges:
            continue
        kinds = [0 if head_slot(e) == 0 else 1 for e in comp]
        if len(kinds) % 2:
            return False
        if any(kinds[i] == kinds[(i + 1) % len(kinds)] for i in range(len(kinds))):
            return False
    return True


def rational_rows():
    """All 2-bridge knots and links with 2..10 crossings, one chirality."""
    rows = []
    seen_words = set()
    counts = {}
    for n in range(2, 11):
        for comp in compositions(n):
            if comp[0] < 2 or comp[-1] < 2:
                continue
            key = min(tuple(comp), tuple(reversed(comp)))
            if key in seen_words:
                continue
            seen_words.add(key)
            p, q = continued_fraction(comp)
            d = parse(rational_pd(comp))
            assert d.n == n, (comp, d.n)
            assert len(d.components) == (1 if p % 2 else 2), (comp, p)
            G, _types, _ = goeritz_data(d)
            assert abs(det_symmetric(G)) == p, \
                f"Goeritz determinant mismatch for C{comp}: want {p}"
            name = "C(" + ",".join(map(str, comp)) + ")"
            rows.append((name, d))
            counts.setdefault((n, len(d.components)), 0)
            counts[(n, len(d.components))] += 1
    expected_knots = {3: 1, 4: 1, 5: 2, 6: 3, 7: 7, 8: 12, 9: 24, 10: 45}
    for n, want in expected_knots.items():
        got = counts.get((n, 1), 0)
        assert got == want, f"2-bridge knot count at {n} crossings: {got} != {want}"
    return rows


def compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def extra_rows():
    rows = [
        ("unknot", parse("U(1)")),
        ("unlink2", parse("U(2)")),
        ("unlink3", parse("U(3)")),
        ("hopf+", parse(braid_closure_pd([1, 1], 2))),
        ("hopf-", parse(braid_closure_pd([-1, -1], 2))),
        ("T(2,3)", parse(TREFOIL_RIGHT)),
        ("T(2,3)kink", parse(braid_closure_pd([1, 1, 1, 2], 3))),
        ("T(2,4)", parse(braid_closure_pd([1] * 4, 2))),
        ("T(2,5)", parse(torus_pd(2, 5))),
        ("T(2,6)", parse(braid_closure_pd([1] * 6, 2))),
        ("T(2,7)", parse(torus_pd(2, 7))),
        ("T(2,9)", parse(torus_pd(2, 9))),
        ("T(3,4)", parse(torus_pd(3, 4))),
        ("T(3,5)", parse(torus_pd(3, 5))),
        ("4_1braid", parse(figure_eight_pd())),
        ("granny", parse(braid_closure_pd(GRANNY_WORD, 3))),
        ("square", parse(braid_closure_pd(SQUARE_WORD, 3))),
        ("borromean", parse(braid_closure_pd([1, -2, 1, -2, 1, -2], 3))),
        ("P(2,3,3)", parse(pretzel_pd(2, 3, 3))),
        ("P(3,3,3)", parse(pretzel_pd(3, 3, 3))),
        ("trefoil+unknot", parse(TREFOIL_RIGHT + ";U(1)")),
    ]
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(
        os.path.dirname(__file__), "..", "src", "linkhom", "data",
        "knots_upto10.pd"))
    args = ap.parse_args()

    cal = calibrate()
    print(f"calibrated correction rule: sign {cal[0]}, coefficients {cal[1]}")

    rows = rational_rows() + extra_rows()
    lines = ["# name | pd | signature | alternating-flag",
             "# generated by tools/make_knot_table.py; do not edit by hand"]
    for name, d in rows:
        sigma = gl_signature(d)
        alt = "a" if is_alternating_diagram(d) else "n"
        if len(d.components) == 1:
            assert sigma % 2 == 0, (name, sigma)
        lines.append(f"{name} | {d.pd_text()} | {sigma} | {alt}")
    os.makedirs(os.path.dirname(args.out), exist_ok=True)
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    knots = sum(1 for _n, d in rows if len(d.components) == 1)
    print(f"wrote {len(rows)} rows ({knots} knots) to {args.out}")


if __name__ == "__main__":
    main()
