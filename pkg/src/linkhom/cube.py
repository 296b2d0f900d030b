"""The cube of resolutions and its flattening into a cochain complex.

Vertices of the Boolean lattice on the crossing set carry one generator
per subset of the resolution's circles (monomials of the rank-2
Frobenius algebra x^2 = t + h x, or the exterior algebra in odd mode),
encoded as bitmasks over the canonically numbered circles.  Edge maps
are the merge/split rules; a signage turns the commuting (even) or
mixed (odd) cube into a complex with d^2 = 0 over any ring.

Gradings are final here: a monomial with m variables at vertex A sits in
bidegree (|A| - n_minus, |A| + circles - 2m - 2 n_minus + n_plus), with
an extra +1 quantum shift in reduced mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, Resolution, resolve
from .rings import Ring, F2
from .sparse import SparseMatrix, solve_f2


class BasepointMissing(Exception):
    """Reduced homology was requested for a diagram without a basepoint."""


class NoSignageFound(Exception):
    """The odd cube's face classification admitted no sign assignment.

    The defining construction guarantees a solution exists, so this
    always signals a bug in the face classification.
    """


@dataclass(frozen=True)
class FrobeniusParams:
    """Deformation parameters: x^2 = t + h x.  (0,0) is the ordinary
    theory, (0,1) Lee, (1,0) Bar-Natan."""

    h: object = 0
    t: object = 0


@dataclass(frozen=True)
class TheorySpec:
    """Which local coefficient system to put on the cube."""

    kind: str  # "even" or "odd"
    ring: Ring
    params: FrobeniusParams = FrobeniusParams()

    @property
    def filtered(self) -> bool:
        return self.kind == "even" and bool(self.params.h or self.params.t)

    @property
    def qstep(self) -> int:
        """Quantum-degree step of the non-graded differential terms."""
        if not self.filtered:
            return 0
        return 2 if self.params.h else 4

    @classmethod
    def ordinary(cls, ring: Ring) -> "TheorySpec":
        return cls("even", ring)

    @classmethod
    def frobenius(cls, ring: Ring, h, t) -> "TheorySpec":
        return cls("even", ring, FrobeniusParams(h, t))

    @classmethod
    def lee(cls, ring: Ring) -> "TheorySpec":
        return cls("even", ring, FrobeniusParams(ring.zero, ring.one))

    @classmethod
    def barnatan(cls, ring: Ring) -> "TheorySpec":
        return cls("even", ring, FrobeniusParams(ring.one, ring.zero))

    @classmethod
    def odd(cls, ring: Ring) -> "TheorySpec":
        return cls("odd", ring)


class SignAssignment:
    """eps: cube edges (A, c) -> Z/2, with A a bitmask over crossings."""

    def __init__(self, fn, description=""):
        self._fn = fn
        self.description = description

    def __call__(self, a_mask: int, c: int) -> int:
        return self._fn(a_mask, c)


def standard_signage(n: int, order=None) -> SignAssignment:
    """eps(A, A+c) = #{c' in A : c' < c} mod 2, in the given crossing order
    (default 1..n).  Every square face sums to 1 mod 2."""
    if order is None:
        rank = {c: c - 1 for c in range(1, n + 1)}
    else:
        rank = {c: k for k, c in enumerate(order)}

    def eps(a_mask: int, c: int) -> int:
        below = sum(1 for c2 in range(1, n + 1) if (a_mask >> (c2 - 1)) & 1 and rank[c2] < rank[c])
        return below & 1

    return SignAssignment(eps, "standard (count of earlier crossings)")


def signage_from_dict(table: dict[tuple[int, int], int], description="solved") -> SignAssignment:
    return SignAssignment(lambda a, c: table[(a, c)], description)


@dataclass(frozen=True)
class CubeVertex:
    """One resolution with its ordered generator masks."""

    subset_mask: int
    resolution: Resolution
    gen_masks: tuple[int, ...]  # ascending bitmask order
    basepoint_bit: int | None = None


def cube_vertex(d: Diagram, mask: int, reduced: bool = False,
                mode: str = "ordinary") -> CubeVertex:
    """The decorated cube vertex for the crossing subset given as a bitmask."""
    res = resolve(d, [c + 1 for c in range(d.n) if (mask >> c) & 1], mode)
    gens, bp_bit = vertex_generators(res, reduced, d.basepoint)
    return CubeVertex(mask, res, gens, bp_bit)


def vertex_generators(res: Resolution, reduced: bool, basepoint: int | None):
    """Generator bitmasks of a vertex in canonical (ascending) order.

    In reduced mode only monomials containing the basepoint circle's
    variable survive.
    """
    k = res.circle_count
    if not reduced:
        return tuple(range(1 << k)), None
    if basepoint is None:
        raise BasepointMissing("reduced homology needs a basepoint edge")
    bp_bit = res.circle_of[basepoint]
    return tuple(m for m in range(1 << k) if (m >> bp_bit) & 1), bp_bit


def _circle_map(res_a: Resolution, res_b: Resolution) -> list[int]:
    """Index map A-circles -> B-circles via a representative arc."""
    return [res_b.circle_of[circ[0]] for circ in res_a.circles]


def _translate_table(phi: list[int], skip=()) -> list[int]:
    """mask -> OR of mapped bits, for all masks over len(phi) circles.

    Bits in `skip` translate to 0 (they are handled by the local rule).
    """
    k = len(phi)
    bit_img = [0 if i in skip else (1 << phi[i]) for i in range(k)]
    table = [0] * (1 << k)
    for m in range(1, 1 << k):
        low = (m & -m).bit_length() - 1
        table[m] = table[m & (m - 1)] | bit_img[low]
    return table


def _perm_sign_and_mask(seq: list[int]) -> tuple[int, int]:
    """Sign sorting a wedge of distinct circle indices, and its bitmask.

    Returns (0, 0) when an index repeats (the wedge vanishes).
    """
    sign = 1
    mask = 0
    for i, v in enumerate(seq):
        bit = 1 << v
        if mask & bit:
            return 0, 0
        below = bin(mask & (bit - 1)).count("1")
        # v jumps over the earlier-placed indices larger than it
        sign *= -1 if ((i - below) & 1) else 1
        mask |= bit
    return sign, mask


def edge_map(d: Diagram, res_a: Resolution, res_b: Resolution, c: int,
             params: FrobeniusParams, ring: Ring):
    """Entries of the Frobenius edge map at crossing c as
    (src_mask, dst_mask, coeff) triples over `ring`.

    Merge is the algebra map collapsing the two circles' variables with
    x^2 = t + h x; split is the module map 1 -> x + x' - h,
    x -> x x' + t, both extended by identity on bystander circles.
    """
    phi = _circle_map(res_a, res_b)
    h, t = params.h, params.t
    one = ring.one
    entries = []
    if res_a.circle_count == res_b.circle_count + 1:
        # merge: the two circles through crossing c map to the same circle
        a_stub, b_stub, c_stub, d_stub = d.crossings[c - 1].edges
        alpha1 = res_a.circle_of[a_stub]
        alpha2 = res_a.circle_of[c_stub]
        if alpha1 == alpha2:
            raise ValueError("merge edge with a single source circle")
        beta_bit = 1 << phi[alpha1]
        table = _translate_table(phi, skip=(alpha1, alpha2))
        b1, b2 = 1 << alpha1, 1 << alpha2
        for m in range(1 << res_a.circle_count):
            base = table[m]
            cnt = ((m & b1) and 1) + ((m & b2) and 1)
            if cnt == 0:
                entries.append((m, base, one))
            elif cnt == 1:
                entries.append((m, base | beta_bit, one))
            else:
                if h:
                    entries.append((m, base | beta_bit, h))
                if t:
                    entries.append((m, base, t))
    elif res_b.circle_count == res_a.circle_count + 1:
        # split: the one circle through c becomes two
        a_stub = d.crossings[c - 1].edges[0]
        b_stub = d.crossings[c - 1].edges[1]
        alpha = res_a.circle_of[a_stub]
        beta1 = 1 << res_b.circle_of[a_stub]
        beta2 = 1 << res_b.circle_of[b_stub]
        if beta1 == beta2:
            raise ValueError("split edge whose target circles coincide")
        table = _translate_table(phi, skip=(alpha,))
        ab = 1 << alpha
        neg_h = ring.neg(h) if h else None
        for m in range(1 << res_a.circle_count):
            base = table[m]
            if m & ab:
                entries.append((m, base | beta1 | beta2, one))
                if t:
                    entries.append((m, base, t))
            else:
                entries.append((m, base | beta1, one))
                entries.append((m, base | beta2, one))
                if h:
                    entries.append((m, base, neg_h))
    else:
        raise ValueError("resolutions do not differ by a single surgery")
    return entries


def odd_edge_map(d: Diagram, res_a: Resolution, res_b: Resolution, c: int):
    """Entries of the odd (exterior-algebra) edge map at crossing c as
    (src_mask, dst_mask, integer coeff) triples.

    The split uses the surgery arrow at c in the target resolution: with
    head circle beta and tail circle beta', 1 -> x_beta - x_beta' and
    x_alpha -> x_beta ^ x_beta'.  Bystander variables map by identity
    with wedge-reordering signs from the canonical circle order.
    """
    phi = _circle_map(res_a, res_b)
    k = res_a.circle_count
    entries = []
    if res_a.circle_count == res_b.circle_count + 1:
        # merge: signs come only from re-sorting the mapped variables
        for m in range(1 << k):
            seq = [phi[i] for i in range(k) if (m >> i) & 1]
            sign, mask = _perm_sign_and_mask(seq)
            if sign:
                entries.append((m, mask, sign))
    elif res_b.circle_count == res_a.circle_count + 1:
        tail, head = res_b.arrows[c - 1]
        a_stub = d.crossings[c - 1].edges[0]
        alpha = res_a.circle_of[a_stub]
        ab = 1 << alpha
        for m in range(1 << k):
            others = [i for i in range(k) if (m >> i) & 1 and i != alpha]
            mapped = [phi[i] for i in others]
            if m & ab:
                # factor x_alpha to the front, then x_alpha ^ v -> head ^ tail ^ v
                pos = bin(m & (ab - 1)).count("1")
                s_ex = -1 if (pos & 1) else 1
                sign, mask = _perm_sign_and_mask([head, tail] + mapped)
                if sign:
                    entries.append((m, mask, s_ex * sign))
            else:
                s_h, mask_h = _perm_sign_and_mask([head] + mapped)
                s_t, mask_t = _perm_sign_and_mask([tail] + mapped)
                if s_h:
                    entries.append((m, mask_h, s_h))
                if s_t:
                    entries.append((m, mask_t, -s_t))
    else:
        raise ValueError("resolutions do not differ by a single surgery")
    return entries


class ChainComplex:
    """A bigraded cochain complex with sparse differentials.

    Generators have persistent integer ids; `out` maps a generator to
    its differential as {target id: coefficient} and `inc` holds the
    reverse adjacency.  In graded mode every entry preserves the quantum
    degree; in filtered mode entries may raise it by multiples of qstep.
    """

    __slots__ = ("ring", "filtered", "qstep", "gens_at", "hdeg", "qdeg",
                 "out", "inc", "n_plus", "n_minus", "meta")

    def __init__(self, ring: Ring, filtered: bool, qstep: int,
                 n_plus: int, n_minus: int, meta=None):
        self.ring = ring
        self.filtered = filtered
        self.qstep = qstep
        self.gens_at: dict[int, list[int]] = {}
        self.hdeg: dict[int, int] = {}
        self.qdeg: dict[int, int] = {}
        self.out: dict[int, dict[int, object]] = {}
        self.inc: dict[int, set[int]] = {}
        self.n_plus = n_plus
        self.n_minus = n_minus
        self.meta = meta or {}

    # -- construction ------------------------------------------------

    def add_generator(self, gid: int, i: int, j: int):
        self.gens_at.setdefault(i, []).append(gid)
        self.hdeg[gid] = i
        self.qdeg[gid] = j
        self.out[gid] = {}
        self.inc[gid] = set()

    def add_entry(self, src: int, dst: int, coeff):
        """Accumulate coeff onto the (src, dst) differential entry."""
        if not coeff:
            return
        row = self.out[src]
        cur = row.get(dst)
        if cur is None:
            row[dst] = coeff
            self.inc[dst].add(src)
        else:
            new = self.ring.add(cur, coeff)
            if new:
                row[dst] = new
            else:
                del row[dst]
                self.inc[dst].discard(src)

    # -- views ---------------------------------------------------------

    @property
    def degrees(self) -> list[int]:
        return sorted(i for i, g in self.gens_at.items() if g)

    def total_generators(self) -> int:
        return len(self.hdeg)

    def group_dims(self) -> dict[tuple[int, int], int]:
        dims: dict[tuple[int, int], int] = {}
        for gid, i in self.hdeg.items():
            key = (i, self.qdeg[gid])
            dims[key] = dims.get(key, 0) + 1
        return dims

    def differential_matrix(self, i: int):
        """The block C^i -> C^{i+1} as (SparseMatrix, col ids, row ids)."""
        cols = sorted(self.gens_at.get(i, []))
        rows = sorted(self.gens_at.get(i + 1, []))
        rindex = {g: r for r, g in enumerate(rows)}
        ent = {}
        for ci, g in enumerate(cols):
            for t, v in self.out[g].items():
                ent[(rindex[t], ci)] = v
        return SparseMatrix(len(rows), len(cols), ent), cols, rows

    def copy(self) -> "ChainComplex":
        c = ChainComplex(self.ring, self.filtered, self.qstep,
                         self.n_plus, self.n_minus, dict(self.meta))
        c.gens_at = {i: list(g) for i, g in self.gens_at.items()}
        c.hdeg = dict(self.hdeg)
        c.qdeg = dict(self.qdeg)
        c.out = {g: dict(row) for g, row in self.out.items()}
        c.inc = {g: set(s) for g, s in self.inc.items()}
        return c

    def validate(self):
        """Assert d^2 = 0 and the grading discipline of every entry."""
        for g, row in self.out.items():
            jg = self.qdeg[g]
            for t, v in row.items():
                dj = self.qdeg[t] - jg
                if self.filtered:
                    assert dj >= 0 and (self.qstep == 0 or dj % self.qstep == 0), \
                        f"filtration step {dj} on {g}->{t}"
                else:
                    assert dj == 0, f"graded differential changes q by {dj}"
        ring = self.ring
        for g, row in self.out.items():
            acc: dict[int, object] = {}
            for mid, v1 in row.items():
                for t, v2 in self.out[mid].items():
                    key = t
                    cur = acc.get(key)
                    val = ring.mul(v1, v2)
                    if cur is None:
                        acc[key] = val
                    else:
                        s = ring.add(cur, val)
                        if s:
                            acc[key] = s
                        else:
                            del acc[key]
            assert not acc, f"d^2 != 0 out of generator {g}"

    def __repr__(self):
        dims = {i: len(g) for i, g in sorted(self.gens_at.items()) if g}
        return f"ChainComplex({self.ring.tag}, dims={dims})"


def _vertex_bidegree(n_plus: int, n_minus: int, weight: int, circles: int,
                     mask: int, reduced: bool) -> tuple[int, int]:
    m = bin(mask).count("1")
    i = weight - n_minus
    j = weight + circles - 2 * m - 2 * n_minus + n_plus + (1 if reduced else 0)
    return i, j


def assemble(d: Diagram, theory: TheorySpec, reduced: bool = False,
             signage: SignAssignment | None = None,
             validate: bool = True) -> ChainComplex:
    """Flatten the whole cube of d into a chain complex.

    Materializes all 2^n vertices; fine up to n around 14.  The
    streaming pipeline in `homology` should be preferred for plain
    homology computations.  Odd theories solve their signage here unless
    one is supplied.
    """
    if reduced and d.basepoint is None:
        raise BasepointMissing("reduced homology needs a basepoint edge")
    n = d.n
    ring = theory.ring
    mode = "odd" if theory.kind == "odd" else "ordinary"
    if signage is None:
        signage = odd_sign_solve(d) if theory.kind == "odd" else standard_signage(n)

    res: dict[int, Resolution] = {}
    gens: dict[int, dict[int, int]] = {}  # vertex mask -> {gen mask: gid}
    cx = ChainComplex(ring, theory.filtered, theory.qstep,
                      d.n_plus, d.n_minus,
                      {"theory": theory.kind, "reduced": reduced,
                       "signage": signage.description})
    gid = 0
    by_weight: dict[int, list[int]] = {}
    for mask in range(1 << n):
        by_weight.setdefault(bin(mask).count("1"), []).append(mask)
    for w in range(n + 1):
        for mask in by_weight[w]:
            v = cube_vertex(d, mask, reduced, mode)
            res[mask] = v.resolution
            table = {}
            for gm in v.gen_masks:
                i, j = _vertex_bidegree(d.n_plus, d.n_minus, w,
                                        v.resolution.circle_count, gm, reduced)
                cx.add_generator(gid, i, j)
                table[gm] = gid
                gid += 1
            gens[mask] = table
    one = ring.one
    minus_one = ring.neg(one)
    for mask in range(1 << n):
        ra = res[mask]
        src_tab = gens[mask]
        for c in range(1, n + 1):
            bit = 1 << (c - 1)
            if mask & bit:
                continue
            bmask = mask | bit
            rb = res[bmask]
            dst_tab = gens[bmask]
            if theory.kind == "odd":
                raw = odd_edge_map(d, ra, rb, c)
            else:
                raw = edge_map(d, ra, rb, c, theory.params, ring)
            sgn = signage(mask, c)
            for sm, dm, coeff in raw:
                src = src_tab.get(sm)
                dst = dst_tab.get(dm)
                if src is None or dst is None:
                    continue
                v = ring.from_int(coeff) if isinstance(coeff, int) else coeff
                if sgn:
                    v = ring.neg(v)
                cx.add_entry(src, dst, v)
    if validate:
        cx.validate()
    return cx


def _mask_to_subset(mask: int) -> frozenset[int]:
    return frozenset(c + 1 for c in range(mask.bit_length()) if (mask >> c) & 1)


def odd_sign_solve(d: Diagram) -> SignAssignment:
    """Classify every square face of the odd cube and solve for a signage.

    Faces are classified by exact integer comparison of the two
    composite matrices: equal (commuting) faces need an odd number of
    minus signs, opposite (anticommuting) faces an even number, and
    zero faces impose nothing.  The F2 linear system is solved with free
    variables set to zero; the assembled complex then satisfies d^2 = 0
    over Z, which `assemble` asserts.
    """
    n = d.n
    res: dict[int, Resolution] = {
        mask: resolve(d, _mask_to_subset(mask), "odd") for mask in range(1 << n)
    }
    edge_index: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
        for c in range(1, n + 1):
            if not mask & (1 << (c - 1)):
                edge_index[(mask, c)] = len(edge_index)

    maps: dict[tuple[int, int], dict[tuple[int, int], int]] = {}

    def edge_entries(mask: int, c: int):
        key = (mask, c)
        if key not in maps:
            raw = odd_edge_map(d, res[mask], res[mask | (1 << (c - 1))], c)
            maps[key] = {(sm, dm): v for sm, dm, v in raw}
        return maps[key]

    equations = []
    for mask in range(1 << n):
        free = [c for c in range(1, n + 1) if not mask & (1 << (c - 1))]
        for ai in range(len(free)):
            for bi in range(ai + 1, len(free)):
                c1, c2 = free[ai], free[bi]
                m1 = _compose(edge_entries(mask, c1),
                              edge_entries(mask | (1 << (c1 - 1)), c2))
                m2 = _compose(edge_entries(mask, c2),
                              edge_entries(mask | (1 << (c2 - 1)), c1))
                if not m1 and not m2:
                    continue
                if m1 == m2:
                    rhs = 1
                elif m1 == {k: -v for k, v in m2.items()}:
                    rhs = 0
                else:
                    raise NoSignageFound(
                        f"face at A={mask:b}, crossings {c1},{c2} neither "
                        "commutes nor anticommutes"
                    )
                vars_mask = (
                    (1 << edge_index[(mask, c1)])
                    | (1 << edge_index[(mask | (1 << (c1 - 1)), c2)])
                    | (1 << edge_index[(mask, c2)])
                    | (1 << edge_index[(mask | (1 << (c2 - 1)), c1)])
                )
                equations.append((vars_mask, rhs))
    sol = solve_f2(equations, len(edge_index))
    if sol is None:
        raise NoSignageFound("odd face equations are inconsistent")
    table = {edge: (sol >> idx) & 1 for edge, idx in edge_index.items()}
    return signage_from_dict(table, "solved odd signage")


def _compose(first: dict[tuple[int, int], int], second: dict[tuple[int, int], int]):
    """Integer composition second . first of edge-entry dicts."""
    out: dict[tuple[int, int], int] = {}
    by_src: dict[int, list[tuple[int, int]]] = {}
    for (sm, dm), v in second.items():
        by_src.setdefault(sm, []).append((dm, v))
    for (sm, dm), v in first.items():
        for (fm, w) in by_src.get(dm, ()):
            key = (sm, fm)
            nv = out.get(key, 0) + v * w
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out
