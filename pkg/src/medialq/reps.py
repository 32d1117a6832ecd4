"""Quiver representations attached to move-counting states.

A state (f_plus, f_minus, d) turns into a representation of the medial
quiver: the space at edge e is Q^{d(e)}, and an arrow acts by the 0/1
matrix with an identity block in the upper right — f_minus columns of
zeros on the left, f_plus rows of zeros at the bottom.  The angle relation
makes the block sizes consistent, and every such module satisfies the
cyclic-derivative relations of the canonical potential built from the
weight.

Everything here runs over exact rationals: residuals are checked to be
literally zero, ranks and kernels are exact, and decidable claims
(nilpotency, indecomposability, the shape of the subrepresentation
lattice) are verified by two independent routes wherever the theory
provides them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .bms import BMSState, plus_subobjects
from .lattice import CertificationFailed, FiniteLattice, certified_lattice, \
    verify_order_isomorphism
from .linalg import Matrix, ShapeMismatch, hstack_all
from .planar import MedialQuiver, PlanarMap, medial_quiver
from .states import NotACycle, validate_weight


class EmptySupport(ValueError):
    """The weight vanishes everywhere, so no canonical potential exists."""


class NotCharacteristicWeight(ValueError):
    """An operation needing weight values in {0, 1} got something else."""


class CandidateSpaceTooLarge(RuntimeError):
    """Subrepresentation search refused: candidate set too big, or the
    prefix-completeness premise could not be certified."""


def _characteristic(omega):
    return all(v in (0, 1) for v in dict(omega).values())


class QuiverRep:
    """A finite-dimensional representation of a quiver, matrices and all.

    `arrows` maps arrow id -> (source vertex, target vertex) and `mats`
    assigns each arrow a dims(target) x dims(source) matrix.  `cycles` is
    an optional tuple of composable arrow cycles distinguished by the
    underlying map (vertex and face cycles); the subrepresentation search
    uses them to certify its completeness premise.
    """

    __slots__ = ("vertices", "arrows", "dims", "mats", "cycles")

    def __init__(self, vertices, arrows, dims, mats, cycles=()):
        self.vertices = tuple(sorted(vertices))
        self.arrows = dict(arrows)
        self.dims = {e: int(dims.get(e, 0)) for e in self.vertices}
        self.mats = dict(mats)
        self.cycles = tuple(tuple(c) for c in cycles)
        if any(v < 0 for v in self.dims.values()):
            raise ValueError("negative dimension")
        if sorted(self.mats) != sorted(self.arrows):
            raise ValueError("arrows and matrices do not match up")
        for a, (s, t) in self.arrows.items():
            m = self.mats[a]
            if m.rows != self.dims[t] or m.cols != self.dims[s]:
                raise ShapeMismatch(
                    f"matrix of {a} is {m.rows}x{m.cols}, expected "
                    f"{self.dims[t]}x{self.dims[s]}")

    def dim(self, e):
        return self.dims[e]

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def source(self, arrow):
        return self.arrows[arrow][0]

    def target(self, arrow):
        return self.arrows[arrow][1]

    def incoming(self, e):
        return [a for a in sorted(self.arrows) if self.arrows[a][1] == e]

    def support(self):
        return frozenset(e for e in self.vertices if self.dims[e] > 0)

    def with_entry(self, arrow, i, j, value):
        """A copy with one matrix entry replaced — the mutation-testing hook."""
        mats = dict(self.mats)
        mats[arrow] = mats[arrow].with_entry(i, j, value)
        return QuiverRep(self.vertices, self.arrows, self.dims, mats,
                         self.cycles)

    def __repr__(self):
        ds = ",".join(f"{e}:{v}" for e, v in sorted(self.dims.items()) if v)
        return f"QuiverRep(dims={{{ds}}}, arrows={len(self.arrows)})"


def plus_minus_matrix(c, k, rows, cols) -> Matrix:
    """The matrix of (+)^c (-)^k as a map Q^cols -> Q^rows.

    Identity block of size r = cols - k in the upper-right corner, after k
    zero columns, above c zero rows.  When k > cols or c > rows the map is
    zero by convention; when both exponents fit but cols - k != rows - c no
    such composite exists and the shapes are rejected.
    """
    if min(c, k, rows, cols) < 0:
        raise ValueError("negative argument")
    if k > cols or c > rows:
        return Matrix.zeros(rows, cols)
    r = cols - k
    if rows - c != r:
        raise ShapeMismatch(
            f"(+)^{c}(-)^{k} cannot have shape {rows}x{cols}")
    out = [[Fraction(0)] * cols for _ in range(rows)]
    for i in range(r):
        out[i][k + i] = Fraction(1)
    return Matrix(rows, cols, out)


def state_module(pmap: PlanarMap, xi: BMSState,
                 quiver: MedialQuiver | None = None) -> QuiverRep:
    """The representation with Q^{d(e)} at edge e and (+)^{f_plus}(-)^{f_minus}
    on each arrow.

    The angle relation guarantees the identity-block shapes are consistent,
    so construction never fails on a valid state.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    dims = {e: xi.dim(e) for e in quiver.vertices}
    mats = {}
    for a, (s, t) in quiver.arrows.items():
        mats[a] = plus_minus_matrix(
            xi.f_plus[a], xi.f_minus[a], dims[t], dims[s])
    cycles = tuple(quiver.vertex_cycles[v] for v in sorted(quiver.vertex_cycles))
    cycles += tuple(quiver.face_cycles[f] for f in sorted(quiver.face_cycles))
    return QuiverRep(quiver.vertices, quiver.arrows, dims, mats, cycles)


def direct_sum(a: QuiverRep, b: QuiverRep) -> QuiverRep:
    """Block-diagonal sum of two representations of the same quiver."""
    if a.vertices != b.vertices or a.arrows != b.arrows:
        raise ValueError("direct sum needs the same quiver on both sides")
    dims = {e: a.dims[e] + b.dims[e] for e in a.vertices}
    mats = {}
    for arr, (s, t) in a.arrows.items():
        ma, mb = a.mats[arr], b.mats[arr]
        top = ma.hstack(Matrix.zeros(ma.rows, mb.cols))
        bottom = Matrix.zeros(mb.rows, ma.cols).hstack(mb)
        mats[arr] = top.vstack(bottom)
    cycles = a.cycles if a.cycles == b.cycles else ()
    return QuiverRep(a.vertices, a.arrows, dims, mats, cycles)


@dataclass(frozen=True)
class Potential:
    """A rational combination of directed cycles, each with a chosen base
    point; all rotations of a cycle give the same cyclic derivatives."""

    terms: tuple

    def __add__(self, other):
        return Potential(self.terms + other.terms)


def make_potential(quiver: MedialQuiver, terms) -> Potential:
    """Validated potential: every path must be a directed cycle in the quiver.

    Raises:
        NotACycle.
    """
    out = []
    for coeff, path in terms:
        path = tuple(path)
        if not path:
            raise NotACycle("empty path in a potential")
        for arr in path:
            if arr not in quiver.arrows:
                raise NotACycle(f"unknown arrow {arr}")
        for i, arr in enumerate(path):
            nxt = path[(i + 1) % len(path)]
            if quiver.target(arr) != quiver.source(nxt):
                raise NotACycle(f"path does not close up at {arr}")
        out.append((Fraction(coeff), path))
    return Potential(tuple(out))


def canonical_potential(pmap: PlanarMap, omega,
                        quiver: MedialQuiver | None = None) -> Potential:
    """Sum over the support of (1/p) vertex-cycle^p minus (1/p) face-cycle^p,
    where p(x) = xi/omega(x) and xi is the lcm of the weights on the support.

    Raises:
        EmptySupport: the weight is identically zero.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    if not validate_weight(pmap, omega):
        raise ValueError("invalid weight")
    cells = sorted(pmap.vertices) + sorted(pmap.faces)
    supported = [x for x in cells if omega[x] > 0]
    if not supported:
        raise EmptySupport("weight has empty support")
    xi = lcm(*(omega[x] for x in supported))
    terms = []
    for x in supported:
        p = xi // omega[x]
        if x in pmap.vertices:
            terms.append((Fraction(1, p), quiver.vertex_cycles[x] * p))
        else:
            terms.append((Fraction(-1, p), quiver.face_cycles[x] * p))
    return Potential(tuple(terms))


def cyclic_derivative(s: Potential, arrow):
    """For each occurrence of `arrow` in each cycle, the rotated remainder
    path (starting just after the occurrence) with the term's coefficient."""
    out = []
    for coeff, path in s.terms:
        for i, a in enumerate(path):
            if a == arrow:
                out.append((coeff, path[i + 1:] + path[:i]))
    return out


def evaluate_path(m: QuiverRep, path, at=None) -> Matrix:
    """The composite matrix of a path, first arrow applied first.

    An empty path needs an explicit vertex `at` and gives the identity
    there.

    Raises:
        ShapeMismatch: consecutive arrows do not compose.
    """
    path = tuple(path)
    if not path:
        if at is None:
            raise ValueError("empty path needs a base vertex")
        return Matrix.identity(m.dims[at])
    for arr in path:
        if arr not in m.arrows:
            raise ValueError(f"unknown arrow {arr}")
    acc = m.mats[path[0]]
    prev = m.target(path[0])
    for arr in path[1:]:
        s, t = m.arrows[arr]
        if s != prev:
            raise ShapeMismatch(f"path does not compose at {arr}")
        acc = m.mats[arr] @ acc
        prev = t
    return acc


@dataclass
class JacobianReport:
    """Cyclic-derivative residuals of a representation against a potential."""

    arrows_checked: int
    nonzero: tuple

    @property
    def ok(self):
        return not self.nonzero


def check_jacobian(m: QuiverRep, s: Potential) -> JacobianReport:
    """Evaluate every cyclic derivative of `s` on `m`; all must vanish.

    The derivative along arrow a is a sum of paths from target(a) back to
    source(a), so each residual is a dims(source) x dims(target) matrix.
    """
    bad = []
    checked = 0
    for arrow in sorted(m.arrows):
        terms = cyclic_derivative(s, arrow)
        src, tgt = m.arrows[arrow]
        residual = Matrix.zeros(m.dims[src], m.dims[tgt])
        for coeff, path in terms:
            residual = residual + evaluate_path(m, path, at=tgt).scale(coeff)
        checked += 1
        if not residual.is_zero:
            bad.append((arrow, residual))
    return JacobianReport(checked, tuple(bad))


def is_nilpotent(m: QuiverRep) -> bool:
    """True iff all long paths act by zero.

    Tracks, per vertex, the span of images of all length-k paths; the spans
    only shrink, so the chain stabilizes, and nilpotency means it hits zero.
    Working with subspaces (not sums of matrices) keeps the test exact:
    spans cannot cancel each other the way signed sums can.
    """
    spans = {e: Matrix.identity(m.dims[e]) for e in m.vertices}
    total = sum(m.dims.values())
    while True:
        new = {}
        for e in m.vertices:
            pieces = [m.mats[a] @ spans[m.source(a)] for a in m.incoming(e)]
            new[e] = hstack_all(pieces, m.dims[e]).column_basis()
        new_total = sum(sp.cols for sp in new.values())
        if new_total == total:
            return total == 0
        spans, total = new, new_total


@dataclass
class EndRing:
    """Basis of the endomorphism algebra plus a locality verdict.

    `basis` holds tuples of per-vertex matrices spanning all solutions of
    F_target . M_arrow = M_arrow . F_source.  Locality is decided by the
    rank of the trace form on the basis: in characteristic zero its radical
    is the radical of the algebra, so the semisimple quotient has dimension
    `gram_rank`, and the ring is local exactly when that is 1.
    """

    basis: tuple
    dimension: int
    gram_rank: int
    is_local: bool


def endomorphism_ring(m: QuiverRep) -> EndRing:
    verts = m.vertices
    offset = {}
    nvars = 0
    for e in verts:
        offset[e] = nvars
        nvars += m.dims[e] ** 2

    def var(e, i, j):
        return offset[e] + i * m.dims[e] + j

    rows = []
    for arrow in sorted(m.arrows):
        s, t = m.arrows[arrow]
        mat = m.mats[arrow]
        for i in range(m.dims[t]):
            for j in range(m.dims[s]):
                row = [Fraction(0)] * nvars
                for k in range(m.dims[t]):
                    row[var(t, i, k)] += mat.data[k][j]
                for l in range(m.dims[s]):
                    row[var(s, l, j)] -= mat.data[i][l]
                if any(x != 0 for x in row):
                    rows.append(row)
    system = Matrix(len(rows), nvars, rows)
    basis = []
    for vec in system.nullspace():
        endo = {}
        for e in verts:
            d = m.dims[e]
            endo[e] = Matrix(d, d, [
                vec[offset[e] + i * d:offset[e] + (i + 1) * d]
                for i in range(d)])
        basis.append(endo)
    dim = len(basis)

    def pairing(fi, fj):
        total = Fraction(0)
        for e in verts:
            prod = fi[e] @ fj[e]
            total += sum((prod.data[r][r] for r in range(m.dims[e])),
                         Fraction(0))
        return total

    gram = Matrix(dim, dim,
                  [[pairing(fi, fj) for fj in basis] for fi in basis])
    rank = gram.rank()
    return EndRing(tuple(basis), dim, rank, dim > 0 and rank == 1)


def support_is_connected(m: QuiverRep) -> bool:
    """Connectivity of the subquiver induced on vertices of positive
    dimension; an empty support does not count as connected."""
    supp = m.support()
    if not supp:
        return False
    adj = {e: set() for e in supp}
    for s, t in m.arrows.values():
        if s in supp and t in supp:
            adj[s].add(t)
            adj[t].add(s)
    seen = set()
    stack = [min(supp)]
    while stack:
        e = stack.pop()
        if e in seen:
            continue
        seen.add(e)
        stack.extend(adj[e] - seen)
    return seen == supp


def is_indecomposable(m: QuiverRep, omega) -> bool:
    """Two independent verdicts — support connectivity and End-ring
    locality — which must agree.

    The support criterion is only licensed for characteristic weights, so
    anything else raises NotCharacteristicWeight (with the locality verdict
    attached as `.is_local` for callers that still want it).  The zero
    module has empty support and a trivial End ring: decomposable by
    convention on both counts.

    Raises:
        NotCharacteristicWeight.
        CertificationFailed: the two methods disagree.
    """
    ring = endomorphism_ring(m)
    if not _characteristic(omega):
        err = NotCharacteristicWeight(
            "support-connectivity criterion needs weight values in {0, 1}")
        err.is_local = ring.is_local
        raise err
    by_support = support_is_connected(m)
    if by_support != ring.is_local:
        raise CertificationFailed(
            f"support connectivity says {by_support} but End-ring locality "
            f"says {ring.is_local}")
    return by_support


def simple_quotients(m: QuiverRep) -> frozenset:
    """Vertices admitting a nonzero map onto the one-dimensional simple:
    those where the incoming images do not fill the whole space."""
    out = set()
    for e in m.vertices:
        d = m.dims[e]
        if d == 0:
            continue
        stacked = hstack_all([m.mats[a] for a in m.incoming(e)], d)
        if stacked.rank() < d:
            out.add(e)
    return frozenset(out)


@dataclass(frozen=True)
class PrefixFamily:
    """A choice, per vertex, of the span of the first k_e coordinates."""

    dims: tuple

    @classmethod
    def of(cls, mapping):
        return cls(tuple(sorted(dict(mapping).items())))

    def dim(self, e):
        return dict(self.dims).get(e, 0)

    @property
    def grade(self):
        return sum(v for _, v in self.dims)

    def __repr__(self):
        ds = ",".join(f"{e}:{v}" for e, v in self.dims if v)
        return f"PrefixFamily({{{ds}}})"


def _jordan_premise(m: QuiverRep, e):
    """Certify that some distinguished cycle through e acts as the exact
    nilpotent Jordan block, which is what makes prefix families exhaust the
    subrepresentations."""
    d = m.dims[e]
    jordan = plus_minus_matrix(1, 1, d, d)
    for cyc in m.cycles:
        starts = [i for i, a in enumerate(cyc) if m.source(a) == e]
        for i in starts:
            based = cyc[i:] + cyc[:i]
            if evaluate_path(m, based, at=e) == jordan:
                return True
    return False


def enumerate_subreps(m: QuiverRep, omega, bound=100000,
                      bound_lattice=500, seed=0) -> FiniteLattice:
    """All subrepresentations spanned by coordinate prefixes, as a certified
    lattice ordered pointwise.

    At every supported vertex a distinguished cycle must act as the full
    Jordan block; its invariant subspaces are then exactly the coordinate
    prefixes, so every subrepresentation restricts to a prefix at every
    vertex and the enumeration below is complete.

    Raises:
        NotCharacteristicWeight.
        CandidateSpaceTooLarge: too many candidates, or the Jordan-block
            premise could not be certified at some supported vertex.
    """
    if not _characteristic(omega):
        raise NotCharacteristicWeight(
            "subrepresentation enumeration needs weight values in {0, 1}")
    for e in sorted(m.support()):
        if not _jordan_premise(m, e):
            raise CandidateSpaceTooLarge(
                f"no distinguished cycle acts as the Jordan block at {e}; "
                "prefix enumeration would not be provably complete")
    count = 1
    for e in m.vertices:
        count *= m.dims[e] + 1
        if count > bound:
            raise CandidateSpaceTooLarge(
                f"more than {bound} candidate prefix families")

    verts = list(m.vertices)
    kept = []
    for combo in product(*(range(m.dims[e] + 1) for e in verts)):
        k = dict(zip(verts, combo))
        if all(_prefix_closed(m, k, a) for a in m.arrows):
            kept.append(PrefixFamily.of(k))
    kept_set = set(kept)

    covers = []
    labels = {}
    for fam in kept:
        k = dict(fam.dims)
        for e in verts:
            k[e] += 1
            if k[e] <= m.dims[e]:
                up = PrefixFamily.of(k)
                if up in kept_set and _is_cover(kept_set, fam, up):
                    covers.append((fam, up))
                    labels[(fam, up)] = e
            k[e] -= 1
    grade = {fam: fam.grade for fam in kept}
    order = sorted(kept, key=lambda f: (f.grade, f.dims))
    return certified_lattice(
        order,
        sorted(covers, key=lambda c: (grade[c[0]], c[0].dims, c[1].dims)),
        grade=grade, labels=labels, bound=bound_lattice, seed=seed)


def _prefix_closed(m, k, arrow):
    """Does the arrow matrix map the source prefix into the target prefix?"""
    s, t = m.arrows[arrow]
    mat = m.mats[arrow]
    return all(mat.data[i][j] == 0
               for j in range(k[s]) for i in range(k[t], m.dims[t]))


def _leq(a: PrefixFamily, b: PrefixFamily):
    bd = dict(b.dims)
    return all(v <= bd.get(e, 0) for e, v in a.dims)


def _is_cover(fams, lo, hi):
    return not any(f != lo and f != hi and _leq(lo, f) and _leq(f, hi)
                   for f in fams)


@dataclass
class SubrepIsoCertificate:
    """Evidence that plus-subobjects and prefix subrepresentations agree."""

    bms_lattice: FiniteLattice
    subrep_lattice: FiniteLattice
    mapping: dict
    order_isomorphic: bool
    grades_match: bool

    @property
    def ok(self):
        return self.order_isomorphic and self.grades_match

    @property
    def size(self):
        return len(self.bms_lattice)


def verify_subrep_isomorphism(pmap: PlanarMap, omega, xi: BMSState,
                              quiver: MedialQuiver | None = None,
                              bound=500, seed=0,
                              bound_candidates=100000) -> SubrepIsoCertificate:
    """Check that xi' -> (k_e = d'(e)) is an order isomorphism from the
    plus-subobjects of xi onto the subrepresentation lattice of its module,
    matching the grading on both sides.

    Raises:
        NotNilpotencyZero, NotCharacteristicWeight, CandidateSpaceTooLarge,
        CertificationFailed: propagated from the two lattice constructions.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    below = plus_subobjects(pmap, omega, xi, quiver, bound=bound, seed=seed)
    module = state_module(pmap, xi, quiver)
    subreps = enumerate_subreps(module, omega, bound=bound_candidates,
                                bound_lattice=bound, seed=seed)
    mapping = {s: PrefixFamily.of({e: s.dim(e) for e in quiver.vertices})
               for s in below.elements}
    iso = verify_order_isomorphism(below.poset, subreps.poset, mapping)
    grades = all(below.grade[s] == subreps.grade[mapping[s]]
                 for s in below.elements) if iso else False
    return SubrepIsoCertificate(below, subreps, mapping, iso, grades)
