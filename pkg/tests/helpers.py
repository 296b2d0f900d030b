"""Diagram builders for fixtures: braid closures, plat closures, pretzels.

These stay out of the installed package (braid input is not part of its
surface); tests and the offline table generator share them.  All
builders return PD text in the package grammar.
"""

from __future__ import annotations

import random

from linkhom.diagram import canonical_relabel, from_structure, parse_pd


class _Arcs:
    """Arc ids with union-find merging for closure identifications."""

    def __init__(self):
        self.parent: list[int] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _apply_braid_word(arcs: _Arcs, word, positions):
    """Run a braid word upward through `positions`; emit crossing tuples.

    Positive sigma_i takes the strand at position i over the one at
    position i+1.  Tuples follow the package convention (counterclockwise
    from the incoming under-strand).
    """
    tuples = []
    pos = list(positions)
    for g in word:
        if g == 0:
            raise ValueError("braid letters are nonzero integers")
        i = abs(g)
        if i >= len(pos) + 1 or i < 1:
            raise ValueError(f"generator {g} outside braid group on {len(pos)} strands")
        left, right = pos[i - 1], pos[i]
        new_left, new_right = arcs.new(), arcs.new()
        if g > 0:
            # left strand passes over: under right -> new_left
            tuples.append((right, new_right, new_left, left))
        else:
            tuples.append((left, right, new_right, new_left))
        pos[i - 1], pos[i] = new_left, new_right
    return tuples, pos


def _emit(arcs: _Arcs, tuples, closed_loop_classes) -> str:
    used: dict[int, int] = {}
    for tup in tuples:
        for a in tup:
            used.setdefault(arcs.find(a), None)
    label = 0
    for root in used:
        label += 1
        used[root] = label
    terms = [
        "X({},{},{},{})".format(*(used[arcs.find(a)] for a in tup))
        for tup in tuples
    ]
    n_loops = len(closed_loop_classes)
    if n_loops:
        terms.append(f"U({n_loops})")
    return ";".join(terms)


def braid_closure_pd(word, strands: int) -> str:
    """PD text of the closure of a braid word on the given strand count."""
    arcs = _Arcs()
    bottom = [arcs.new() for _ in range(strands)]
    tuples, top = _apply_braid_word(arcs, word, bottom)
    for b, t in zip(bottom, top):
        arcs.union(b, t)
    used = {arcs.find(a) for tup in tuples for a in tup}
    loops = {arcs.find(b) for b in bottom} - used
    return _emit(arcs, tuples, loops)


def plat_closure_pd(word, strands: int) -> str:
    """PD text of the plat closure (caps pairing strands 2k-1, 2k).

    Caps reverse strand directions, so the tuples go through the
    package's structural constructor, which orients them itself.
    """
    if strands % 2:
        raise ValueError("plat closure needs an even strand count")
    arcs = _Arcs()
    bottom = []
    for _ in range(strands // 2):
        a = arcs.new()
        bottom.extend([a, a])
    tuples, top = _apply_braid_word(arcs, word, bottom)
    for k in range(strands // 2):
        arcs.union(top[2 * k], top[2 * k + 1])
    raw = [tuple(arcs.find(a) for a in tup) for tup in tuples]
    used = {a for tup in raw for a in tup}
    loops = {arcs.find(b) for b in bottom} - used
    return from_structure(raw, len(loops)).pd_text()


def pretzel_pd(*twists: int) -> str:
    """PD text of the pretzel link with the given twist counts."""
    if len(twists) < 2:
        raise ValueError("a pretzel needs at least two twist regions")
    arcs = _Arcs()
    cols = []
    all_tuples = []
    for m in twists:
        tl, tr = arcs.new(), arcs.new()
        word = [1 if m > 0 else -1] * abs(m)
        tuples, (bl, br) = _apply_braid_word(arcs, word, [tl, tr])
        all_tuples.extend(tuples)
        cols.append((tl, tr, bl, br))
    k = len(cols)
    for a in range(k):
        b = (a + 1) % k
        arcs.union(cols[a][1], cols[b][0])  # top-right to next top-left
        arcs.union(cols[a][3], cols[b][2])  # bottom-right to next bottom-left
    raw = [tuple(arcs.find(a) for a in tup) for tup in all_tuples]
    used = {a for tup in raw for a in tup}
    ends = {arcs.find(c) for col in cols for c in col}
    return from_structure(raw, len(ends - used)).pd_text()


def torus_word(p: int, q: int) -> list[int]:
    """Braid word (s1 s2 ... s_{p-1})^q whose closure is T(p, q)."""
    return list(range(1, p)) * q


def torus_pd(p: int, q: int) -> str:
    return braid_closure_pd(torus_word(p, q), p)


def rational_pd(partial_quotients) -> str:
    """Alternating 4-plat diagram of the 2-bridge link C(a1, ..., ak).

    Twist regions alternate between the middle strand pair (sigma_2) and
    the left pair (sigma_1^-1), which keeps the diagram alternating.
    Even-length fractions are first rewritten [..., a] -> [..., a-1, 1]
    so both end regions sit on the middle pair; a twist region on the
    side pair would collapse against the plat caps.
    """
    quots = [int(a) for a in partial_quotients]
    if any(a < 1 for a in quots):
        raise ValueError("partial quotients must be positive")
    if len(quots) % 2 == 0:
        if quots[-1] < 2:
            raise ValueError("even-length fractions need a last quotient >= 2")
        quots = quots[:-1] + [quots[-1] - 1, 1]
    word: list[int] = []
    for k, a in enumerate(quots):
        word.extend([2 if k % 2 == 0 else -1] * a)
    return plat_closure_pd(word, 4)


def continued_fraction(partial_quotients) -> tuple[int, int]:
    """(p, q) with p/q = a_k + 1/(a_{k-1} + 1/(... + 1/a_1))."""
    p, q = 1, 0
    for a in partial_quotients:
        p, q = a * p + q, p
    return p, q


def parse(pd_text: str):
    return canonical_relabel(parse_pd(pd_text))


# hand-checked fixed diagrams
TREFOIL_RIGHT = "X(4,2,5,1);X(2,6,3,5);X(6,4,1,3)"  # closure of sigma_1^3
HOPF_POSITIVE = "X(3,2,4,1);X(2,3,1,4)"  # closure of sigma_1^2
KINK_NEGATIVE = "X(1,2,2,1)"
FIGURE_EIGHT_WORD = [1, -2, 1, -2]  # closure on 3 strands
GRANNY_WORD = [1, 1, 1, 2, 2, 2]  # T(2,3) # T(2,3) on 3 strands
SQUARE_WORD = [1, 1, 1, -2, -2, -2]  # T(2,3) # mirror


def figure_eight_pd() -> str:
    return braid_closure_pd(FIGURE_EIGHT_WORD, 3)


def random_braid_diagram(rng: random.Random, max_crossings: int = 7,
                         strands_range=(2, 4)):
    """A random braid-closure diagram with at most max_crossings crossings."""
    strands = rng.randint(*strands_range)
    length = rng.randint(1, max_crossings)
    word = []
    for _ in range(length):
        g = rng.randint(1, strands - 1)
        word.append(g if rng.random() < 0.5 else -g)
    return parse(braid_closure_pd(word, strands))
