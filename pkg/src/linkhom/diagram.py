"""Oriented link diagrams as PD codes, and their resolutions.

Grammar
-------
A diagram is a `;`-separated list of terms (whitespace ignored):

  X(a,b,c,d)   a crossing; the four edge labels are listed
               counterclockwise starting from the incoming under-strand
               (the common knot-table convention)
  U(k)         k disjoint crossing-free circles (they receive fresh edge
               labels after the largest crossing label)

with an optional trailing `@b` marking edge b as the basepoint.  Edge
labels must be 1..edge_count and every label carried by a crossing
appears exactly twice.

Orientations are implied by the labels: an edge's two occurrences are
its tail (leaving a crossing) and head (entering one).  Under-strand
slots fix half of these; the over-strand directions are inferred by
constraint propagation, falling back to label succession (an edge's
successor along a strand is label+1, wrapping inside a component) only
where the structure leaves a genuine choice.

Smoothing conventions: the 0-smoothing of X(a,b,c,d) joins a-b and c-d,
the 1-smoothing joins a-d and b-c.  With signs read off the tuples this
makes the 0-smoothing of a positive crossing the oriented one, which is
pinned repo-wide by the skein-relation calibration tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class MalformedPd(Exception):
    """The input text does not match the PD grammar."""


class EdgeCountError(Exception):
    """An edge label does not appear exactly twice across the crossings."""


class OrientationError(Exception):
    """The edge labels admit no coherent orientation."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: edges counterclockwise from the incoming under-strand.

    over_in_slot is 1 or 3, the tuple position of the incoming over
    edge; sign is +1 when the over strand enters at slot 3.
    """

    edges: tuple[int, int, int, int]
    sign: int
    over_in_slot: int

    @property
    def under_pair(self) -> tuple[int, int]:
        return (self.edges[0], self.edges[2])

    @property
    def over_pair(self) -> tuple[int, int]:
        return (self.edges[1], self.edges[3])


@dataclass(frozen=True)
class Diagram:
    """A validated oriented link diagram."""

    crossings: tuple[Crossing, ...]
    edge_count: int
    loop_edges: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    basepoint: int | None = None

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def component_of(self, edge: int) -> int:
        for k, comp in enumerate(self.components):
            if edge in comp:
                return k
        raise ValueError(f"edge {edge} not in diagram")

    def with_basepoint(self, edge: int) -> "Diagram":
        if not (1 <= edge <= self.edge_count):
            raise ValueError(f"basepoint edge {edge} does not exist")
        return Diagram(self.crossings, self.edge_count, self.loop_edges,
                       self.components, edge)

    def pd_text(self) -> str:
        terms = [f"X({x.edges[0]},{x.edges[1]},{x.edges[2]},{x.edges[3]})"
                 for x in self.crossings]
        if self.loop_edges:
            terms.append(f"U({len(self.loop_edges)})")
        s = ";".join(terms) if terms else "U(0)"
        if self.basepoint is not None:
            s += f"@{self.basepoint}"
        return s

    def __str__(self):
        return self.pd_text()


@dataclass(frozen=True)
class Resolution:
    """The circles obtained by smoothing every crossing of a diagram.

    circles are canonically numbered by minimal arc label.  In odd mode
    every crossing carries a directed surgery arrow as a
    (tail circle, head circle) pair.
    """

    source_subset: frozenset[int]
    circles: tuple[tuple[int, ...], ...]
    circle_of: dict[int, int] = field(compare=False, hash=False)
    arrows: tuple[tuple[int, int], ...] | None = None

    @property
    def circle_count(self) -> int:
        return len(self.circles)


_TERM_RE = re.compile(r"^(X\((\d+),(\d+),(\d+),(\d+)\)|U\((\d+)\))$")


def parse_pd(text: str) -> Diagram:
    """Parse and validate a PD string; see the module docstring for the grammar."""
    if not isinstance(text, str) or not text.strip():
        raise MalformedPd("empty PD string")
    body = re.sub(r"\s+", "", text)
    basepoint = None
    if "@" in body:
        body, _, bp = body.partition("@")
        if not bp.isdigit():
            raise MalformedPd(f"bad basepoint suffix @{bp!r}")
        basepoint = int(bp)
    tuples: list[tuple[int, int, int, int]] = []
    n_loops = 0
    for term in body.split(";"):
        if not term:
            continue
        m = _TERM_RE.match(term)
        if not m:
            raise MalformedPd(f"bad PD term {term!r}")
        if m.group(2) is not None:
            tup = tuple(int(g) for g in m.group(2, 3, 4, 5))
            if min(tup) < 1:
                raise MalformedPd(f"edge labels must be positive in {term!r}")
            tuples.append(tup)
        else:
            n_loops += int(m.group(6))
    if not tuples and n_loops == 0:
        raise MalformedPd("no crossings or circles in PD string")
    return _build_diagram(tuples, n_loops, basepoint)


def _build_diagram(tuples, n_loops, basepoint) -> Diagram:
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, tup in enumerate(tuples):
        for slot, e in enumerate(tup):
            occurrences.setdefault(e, []).append((ci, slot))
    for e, occ in sorted(occurrences.items()):
        if len(occ) != 2:
            raise EdgeCountError(
                f"edge {e} appears {len(occ)} time(s); every edge must appear exactly twice"
            )
    max_label = max(occurrences) if occurrences else 0
    if occurrences and set(occurrences) != set(range(1, max_label + 1)):
        missing = sorted(set(range(1, max_label + 1)) - set(occurrences))
        raise EdgeCountError(f"edge labels must be 1..{max_label}; missing {missing}")
    loop_edges = tuple(range(max_label + 1, max_label + 1 + n_loops))
    edge_count = max_label + n_loops

    over_in = _infer_over_orientations(tuples, occurrences)
    crossings = tuple(
        Crossing(edges=tup, sign=(1 if over_in[ci] == 3 else -1), over_in_slot=over_in[ci])
        for ci, tup in enumerate(tuples)
    )
    components = _trace_components(crossings, loop_edges, occurrences)
    if basepoint is not None and not (1 <= basepoint <= edge_count):
        raise MalformedPd(f"basepoint edge {basepoint} does not exist")
    return Diagram(crossings, edge_count, loop_edges, components, basepoint)


def _headness(slot: int, over_in_slot: int) -> bool:
    """Does this occurrence point into the crossing?"""
    if slot == 0:
        return True
    if slot == 2:
        return False
    return slot == over_in_slot


def _infer_over_orientations(tuples, occurrences) -> list[int]:
    """Assign each crossing's incoming over slot (1 or 3).

    Works over boolean variables o[ci] = (over enters at slot 3),
    propagating the rule that every edge has exactly one head.
    """
    n = len(tuples)
    o: list[int | None] = [None] * n
    # parity constraints between undetermined crossings: (ci, cj, parity)
    pending: dict[int, list[tuple[int, int]]] = {ci: [] for ci in range(n)}
    forced: list[tuple[int, int]] = []  # (ci, value of o[ci])

    for e, occ in occurrences.items():
        (c1, s1), (c2, s2) = occ
        f1 = s1 in (0, 2)
        f2 = s2 in (0, 2)
        if f1 and f2:
            if _headness(s1, -1) == _headness(s2, -1):
                raise OrientationError(
                    f"edge {e} has two {'heads' if s1 == 0 else 'tails'}"
                )
        elif f1 or f2:
            if f2:
                (c1, s1), (c2, s2), f1, f2 = (c2, s2), (c1, s1), f2, f1
            # occurrence 1 fixed, occurrence 2 on an over slot of c2
            need_head = not _headness(s1, -1)
            # head at slot 1 means o=false(slot1 in), head at slot 3 means o=true
            val = (s2 == 3) if need_head else (s2 == 1)
            forced.append((c2, 1 if val else 0))
        else:
            # both over: headness(s) = o if s==3 else not o
            # h1 + h2 = 1  =>  o1 ^ o2 = parity
            a = 0 if s1 == 3 else 1
            b = 0 if s2 == 3 else 1
            parity = 1 ^ a ^ b
            pending[c1].append((c2, parity))
            pending[c2].append((c1, parity))

    def assign(ci: int, val: int):
        stack = [(ci, val)]
        while stack:
            i, v = stack.pop()
            if o[i] is not None:
                if o[i] != v:
                    raise OrientationError(
                        "edge numbering admits no coherent orientation"
                    )
                continue
            o[i] = v
            for j, par in pending[i]:
                stack.append((j, v ^ par))

    for ci, val in forced:
        assign(ci, val)

    # leftover freedom: components whose strands always pass over; break
    # ties by label succession (successor = label + 1, wrapping at the top)
    for ci in range(n):
        if o[ci] is None:
            b, d = tuples[ci][1], tuples[ci][3]
            if abs(b - d) == 1:
                incoming = min(b, d)
            else:
                incoming = max(b, d)
            assign(ci, 1 if incoming == d else 0)

    return [3 if v else 1 for v in o]


def _successor(crossings, occurrences, edge: int) -> int:
    """The next edge along the strand, through this edge's head crossing."""
    for ci, slot in occurrences[edge]:
        x = crossings[ci]
        if _headness(slot, x.over_in_slot):
            if slot == 0:
                return x.edges[2]
            return x.edges[3] if slot == 1 else x.edges[1]
    raise OrientationError(f"edge {edge} has no head")


def _trace_components(crossings, loop_edges, occurrences):
    comps: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for start in sorted(occurrences):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        e = _successor(crossings, occurrences, start)
        while e != start:
            if e in seen:
                raise OrientationError("strand traversal is not a disjoint union of cycles")
            cyc.append(e)
            seen.add(e)
            e = _successor(crossings, occurrences, e)
        comps.append(tuple(cyc))
    for le in loop_edges:
        comps.append((le,))
    return tuple(comps)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size + 1))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx > ry:
                rx, ry = ry, rx
            self.parent[ry] = rx


def resolve(d: Diagram, subset, mode: str = "ordinary") -> Resolution:
    """Smooth every crossing of d; crossings in `subset` (1-based) get the
    1-smoothing, the rest the 0-smoothing.

    Circles are numbered by minimal arc label.  In odd mode each crossing
    carries its surgery arrow as a (tail circle, head circle) pair: at a
    0-smoothing the arrow runs from the circle through slots a,b to the
    one through c,d, and the 1-smoothing arrow is its quarter turn, from
    the b,c circle to the a,d circle.
    """
    A = frozenset(subset)
    if not A <= set(range(1, d.n + 1)):
        raise ValueError(f"subset {sorted(A)} not within crossings 1..{d.n}")
    uf = _UnionFind(d.edge_count)
    for ci, x in enumerate(d.crossings, start=1):
        a, b, c, dd = x.edges
        if ci in A:
            uf.union(a, dd)
            uf.union(b, c)
        else:
            uf.union(a, b)
            uf.union(c, dd)
    groups: dict[int, list[int]] = {}
    for e in range(1, d.edge_count + 1):
        groups.setdefault(uf.find(e), []).append(e)
    circles = tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))
    circle_of = {}
    for idx, circ in enumerate(circles):
        for e in circ:
            circle_of[e] = idx
    arrows = None
    if mode == "odd":
        arr = []
        for ci, x in enumerate(d.crossings, start=1):
            a, b, c, dd = x.edges
            if ci in A:
                arr.append((circle_of[b], circle_of[a]))
            else:
                arr.append((circle_of[a], circle_of[c]))
        arrows = tuple(arr)
    elif mode != "ordinary":
        raise ValueError(f"unknown resolution mode {mode!r}")
    return Resolution(A, circles, circle_of, arrows)


def mirror(d: Diagram) -> Diagram:
    """The mirror image: over and under swap at every crossing.

    Tuples are rotated so the incoming under-strand stays first; every
    sign is negated and edge labels are untouched.
    """
    new = []
    for x in d.crossings:
        a, b, c, dd = x.edges
        if x.over_in_slot == 3:
            new.append(Crossing((dd, a, b, c), -1, 1))
        else:
            new.append(Crossing((b, c, dd, a), 1, 3))
    return Diagram(tuple(new), d.edge_count, d.loop_edges, d.components, d.basepoint)


def switch_crossing(d: Diagram, ci: int) -> Diagram:
    """Exchange over and under at the single crossing ci (1-based)."""
    if not (1 <= ci <= d.n):
        raise ValueError(f"no crossing {ci}")
    new = list(d.crossings)
    x = new[ci - 1]
    a, b, c, dd = x.edges
    if x.over_in_slot == 3:
        new[ci - 1] = Crossing((dd, a, b, c), -1, 1)
    else:
        new[ci - 1] = Crossing((b, c, dd, a), 1, 3)
    return Diagram(tuple(new), d.edge_count, d.loop_edges, d.components, d.basepoint)


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Place d2 next to d1, shifting its edge labels past d1's."""
    off = d1.edge_count
    crossings = d1.crossings + tuple(
        Crossing(tuple(e + off for e in x.edges), x.sign, x.over_in_slot)
        for x in d2.crossings
    )
    loops = d1.loop_edges + tuple(e + off for e in d2.loop_edges)
    comps = d1.components + tuple(tuple(e + off for e in c) for c in d2.components)
    bp = d1.basepoint if d1.basepoint is not None else (
        d2.basepoint + off if d2.basepoint is not None else None
    )
    return Diagram(crossings, d1.edge_count + d2.edge_count, loops, comps, bp)


def canonical_relabel(d: Diagram) -> Diagram:
    """Renumber edges 1..E along each component, components ordered by
    their smallest old label; crossings sorted by their new tuples.

    The result is a parse fixpoint: feeding its pd_text back through
    parse_pd reproduces the same orientations.  (Components that pass
    over at every crossing and have only two edges are orientation-
    ambiguous in the grammar, so a single relabelling pass may disagree
    with the parser's tie-break; iterating settles it.)
    """
    cur = _relabel_once(d)
    for _ in range(3):
        again = parse_pd(cur.pd_text())
        if [x.over_in_slot for x in again.crossings] == \
                [x.over_in_slot for x in cur.crossings]:
            return cur
        cur = _relabel_once(again)
    raise AssertionError("canonical relabelling failed to stabilize")


def _relabel_once(d: Diagram) -> Diagram:
    relabel: dict[int, int] = {}
    nxt = 1
    for comp in sorted(d.components, key=min):
        k = comp.index(min(comp))
        for e in comp[k:] + comp[:k]:
            relabel[e] = nxt
            nxt += 1
    crossings = sorted(
        (
            Crossing(tuple(relabel[e] for e in x.edges), x.sign, x.over_in_slot)
            for x in d.crossings
        ),
        key=lambda x: x.edges,
    )
    loops = tuple(sorted(relabel[e] for e in d.loop_edges))
    comps = []
    for comp in sorted(d.components, key=min):
        k = comp.index(min(comp))
        comps.append(tuple(relabel[e] for e in comp[k:] + comp[:k]))
    comps.sort(key=min)
    bp = relabel[d.basepoint] if d.basepoint is not None else None
    return Diagram(tuple(crossings), d.edge_count, loops, tuple(comps), bp)


def _orient_and_relabel(raw_tuples, n_loops: int,
                        old_head: dict | None = None) -> Diagram:
    """Build a Diagram from structural crossing data.

    raw_tuples fix each crossing's rotation, with slots (0, 2) the under
    strand and (1, 3) the over strand, but say nothing about strand
    directions.  Each arc id must occur exactly twice.  Directions are
    chosen per component: coherent with `old_head` (a map
    (crossing index, slot) -> pointed-inward?) when that is possible,
    else deterministically; edges are relabelled 1.. along traversal.
    """
    occ: dict[object, list[tuple[int, int]]] = {}
    for k, tup in enumerate(raw_tuples):
        for slot, e in enumerate(tup):
            occ.setdefault(e, []).append((k, slot))
    for e, hits in occ.items():
        if len(hits) != 2:
            raise OrientationError(f"arc {e!r} occurs {len(hits)} time(s)")

    def walk_from(entry):
        """Walk the strand entered at `entry`; list of (k, in_slot, out_slot)."""
        steps = []
        cur = entry
        while True:
            k, slot = cur
            out_slot = (slot + 2) % 4
            o1, o2 = occ[raw_tuples[k][out_slot]]
            steps.append((k, slot, out_slot))
            cur = o2 if o1 == (k, out_slot) else o1
            if cur == entry:
                return steps

    def coherent(steps) -> bool:
        if old_head is None:
            return True
        return all(
            old_head[(k, s_in)] and not old_head[(k, s_out)]
            for k, s_in, s_out in steps
        )

    walks = []
    done: set[object] = set()
    for root in sorted(occ):
        if root in done:
            continue
        e1, e2 = sorted(occ[root])
        steps = walk_from(e1)
        if not coherent(steps):
            alt = walk_from(e2)
            if coherent(alt):
                steps = alt
        for k, s_in, _s_out in steps:
            done.add(raw_tuples[k][s_in])
        walks.append(steps)

    def in_classes(steps):
        return [raw_tuples[k][s_in] for k, s_in, _ in steps]

    walks.sort(key=lambda s: min(in_classes(s)))
    label = 0
    label_at: dict[tuple[int, int], int] = {}
    components: list[tuple[int, ...]] = []
    for steps in walks:
        ics = in_classes(steps)
        rot = ics.index(min(ics))
        steps = steps[rot:] + steps[:rot]
        comp = []
        for k, s_in, _s_out in steps:
            label += 1
            label_at[(k, s_in)] = label
            comp.append(label)
        m = len(steps)
        for idx, (k, _s_in, s_out) in enumerate(steps):
            nk, ns_in, _ = steps[(idx + 1) % m]
            label_at[(k, s_out)] = label_at[(nk, ns_in)]
        components.append(tuple(comp))

    entry_slots: dict[int, set[int]] = {}
    for steps in walks:
        for k, s_in, _ in steps:
            entry_slots.setdefault(k, set()).add(s_in)
    crossings = []
    for k in range(len(raw_tuples)):
        ent = entry_slots.get(k, set())
        under_entry = 0 if 0 in ent else 2
        over_entry = 1 if 1 in ent else 3
        order = (0, 1, 2, 3) if under_entry == 0 else (2, 3, 0, 1)
        tup = tuple(label_at[(k, s)] for s in order)
        new_over_slot = order.index(over_entry)
        crossings.append(Crossing(tup, 1 if new_over_slot == 3 else -1, new_over_slot))
    loop_edges = tuple(range(label + 1, label + 1 + n_loops))
    for le in loop_edges:
        components.append((le,))
    crossings.sort(key=lambda x: x.edges)
    return Diagram(
        tuple(crossings),
        label + n_loops,
        loop_edges,
        tuple(sorted(components, key=min)),
        None,
    )


def from_structure(raw_tuples, n_loops: int = 0) -> Diagram:
    """Build a diagram from crossing tuples with undetermined directions.

    Low-level entry point: each tuple fixes a crossing's rotation with
    slots (0, 2) the under strand and (1, 3) the over strand; arc ids
    are arbitrary hashables occurring exactly twice.  Orientations are
    chosen deterministically and edges relabelled canonically.
    """
    return _orient_and_relabel(list(raw_tuples), n_loops, old_head=None)


def smooth_crossing(d: Diagram, ci: int, which: int) -> Diagram:
    """Replace crossing ci (1-based) by its 0- or 1-smoothing.

    The result is relabelled canonically along fresh strand traversals.
    Orientations of the surviving strands are kept whenever they stay
    coherent (always the case for the oriented smoothing); components
    forced to reverse get a deterministic fresh orientation, as the
    skein exact sequences permit any choice.
    """
    if not (1 <= ci <= d.n):
        raise ValueError(f"no crossing {ci}")
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    a, b, c, dd = d.crossings[ci - 1].edges
    uf = _UnionFind(d.edge_count)
    if which == 0:
        uf.union(a, b)
        uf.union(c, dd)
    else:
        uf.union(a, dd)
        uf.union(b, c)
    keep = [x for k, x in enumerate(d.crossings) if k != ci - 1]
    cls = uf.find

    raw_tuples = [tuple(cls(e) for e in x.edges) for x in keep]
    old_head = {
        (k, slot): _headness(slot, x.over_in_slot)
        for k, x in enumerate(keep)
        for slot in range(4)
    }

    used = {e for tup in raw_tuples for e in tup}
    new_loops = len(d.loop_edges)
    for root in {cls(e) for e in range(1, d.edge_count + 1)
                 if e not in d.loop_edges}:
        if root not in used:
            new_loops += 1  # the smoothing pinched off a free circle
    return _orient_and_relabel(raw_tuples, new_loops, old_head)
