"""Move-counting states and their graded distributive lattices.

A state here is a triple (f_plus, f_minus, d): two compatible angular
functions and a dimension vector on the edges recording how many moves along
each edge lead from f_minus to f_plus.  The triple must satisfy, for every
arrow a: d(target) - d(source) = f_plus(a) - f_minus(a), and d must vanish
on edges lying on invisible cycles — that rigidity pins d down uniquely.

With nilpotency degree zero, the states reachable from (g, g, 0) form a
finite graded distributive lattice under the pointwise order on d, with
pointwise max/min as join/meet.  This module builds those lattices, finds
component minima by greedy anti-moves, enumerates subobject lattices, and
checks the forgetful projection onto plain angular functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .lattice import FiniteLattice, certified_lattice
from .planar import MedialQuiver, PlanarMap, medial_quiver
from .states import (
    AngularFunction,
    EmptyStateSet,
    NotMovable,
    NotNilpotencyZero,
    anti_mov_e,
    build_L_graph,
    delta_chi,
    enumerate_compatible,
    invisible_edge_set,
    invisible_subgraph,
    is_anti_e_movable,
    is_e_movable,
    mov_e,
    nilpotency_degree,
    validate_weight,
)


class RelationViolated(ValueError):
    """The angle relation d(target) - d(source) = f_plus - f_minus fails."""

    def __init__(self, angle, message):
        super().__init__(message)
        self.angle = angle


class InvisibleDimNonZero(ValueError):
    """The dimension vector is nonzero on an invisible-cycle edge."""

    def __init__(self, edge, message):
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True)
class BMSState:
    """(f_plus, f_minus, d); d stored as a sorted tuple for hashability."""

    f_plus: AngularFunction
    f_minus: AngularFunction
    d: tuple

    def dims(self):
        return dict(self.d)

    def dim(self, e):
        return dict(self.d).get(e, 0)

    @property
    def d_tot(self):
        return sum(v for _, v in self.d)

    def __repr__(self):
        ds = ",".join(f"{e}:{v}" for e, v in self.d)
        return f"BMSState(d={{{ds}}})"


def _d_tuple(d):
    return tuple(sorted(d.items()))


def _check_compatible(pmap, omega, quiver, g, name):
    for v, cycle in quiver.vertex_cycles.items():
        if sum(g[a] for a in cycle) != omega[v]:
            raise ValueError(f"{name} is not compatible at {v}")
    for f, cycle in quiver.face_cycles.items():
        if sum(g[a] for a in cycle) != omega[f]:
            raise ValueError(f"{name} is not compatible at {f}")
    if any(g[a] < 0 for a in quiver.arrow_ids):
        raise ValueError(f"{name} takes a negative value")


def make_bms(pmap: PlanarMap, omega, f_plus, f_minus, d,
             quiver: MedialQuiver | None = None) -> BMSState:
    """Validated state triple.

    Raises:
        RelationViolated: some arrow breaks the angle relation.
        InvisibleDimNonZero: d is nonzero on an invisible-cycle edge.
        ValueError: a function is not compatible, or d has negative entries.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    validate_weight(pmap, omega)
    _check_compatible(pmap, omega, quiver, f_plus, "f_plus")
    _check_compatible(pmap, omega, quiver, f_minus, "f_minus")
    d = {e: d.get(e, 0) for e in quiver.vertices}
    if any(not isinstance(v, int) or v < 0 for v in d.values()):
        raise ValueError("dimension vector must be non-negative integers")
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        if d[t] - d[s] != f_plus[a] - f_minus[a]:
            raise RelationViolated(
                a, f"angle relation fails at {a}: "
                   f"d({t})-d({s}) != f_plus-f_minus")
    zero = [a for a in quiver.arrow_ids if f_minus[a] == 0]
    inv_edges = _invisible_edges_from_zero_set(quiver, zero)
    for e in sorted(inv_edges):
        if d[e] != 0:
            raise InvisibleDimNonZero(
                e, f"dimension {d[e]} on invisible-cycle edge {e}")
    return BMSState(f_plus, f_minus, _d_tuple(d))


def _invisible_edges_from_zero_set(quiver, zero_arrows):
    import networkx as nx

    dg = nx.DiGraph()
    dg.add_nodes_from(quiver.vertices)
    dg.add_edges_from(
        (quiver.source(a), quiver.target(a)) for a in zero_arrows)
    comp = {}
    for i, scc in enumerate(nx.strongly_connected_components(dg)):
        for v in scc:
            comp[v] = i
    out = set()
    for a in zero_arrows:
        s, t = quiver.arrows[a]
        if comp[s] == comp[t]:
            out.add(s)
            out.add(t)
    return out


def bms_mov_e(quiver: MedialQuiver, xi: BMSState, e) -> BMSState:
    """Move along e: (mov_e(f_plus), f_minus, d + chi_e)."""
    new_plus = mov_e(quiver, xi.f_plus, e)  # NotMovable propagates
    d = xi.dims()
    d[e] = d.get(e, 0) + 1
    return BMSState(new_plus, xi.f_minus, _d_tuple(d))


def is_bms_anti_movable(quiver: MedialQuiver, xi: BMSState, e) -> bool:
    """f_plus anti-movable along e and at least one move to undo there."""
    return is_anti_e_movable(quiver, xi.f_plus, e) and xi.dim(e) >= 1


def bms_anti_mov_e(quiver: MedialQuiver, xi: BMSState, e) -> BMSState:
    if not is_bms_anti_movable(quiver, xi, e):
        raise NotMovable(f"state is not anti-movable along {e}")
    d = xi.dims()
    d[e] -= 1
    return BMSState(anti_mov_e(quiver, xi.f_plus, e), xi.f_minus, _d_tuple(d))


def bms_plus_lattice(pmap: PlanarMap, omega, g: AngularFunction,
                     quiver: MedialQuiver | None = None,
                     bound=500, seed=0) -> FiniteLattice:
    """All states reachable from (g, g, 0), certified as a lattice.

    The order is the pointwise order on d; the grading is total dimension.
    After the closure an independent check confirms the set is closed under
    pointwise max and min of dimension vectors with f_plus rebuilt from
    g + (d(target) - d(source)).

    Raises:
        NotNilpotencyZero: the closure would be infinite.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    if nilpotency_degree(pmap, omega, quiver) != 0:
        raise NotNilpotencyZero("lattice construction needs nilpotency degree 0")
    root = make_bms(pmap, omega, g, g, {}, quiver)
    frontier = [root]
    seen = {root}
    covers = []
    labels = {}
    while frontier:
        xi = frontier.pop()
        for e in quiver.vertices:
            if is_e_movable(quiver, xi.f_plus, e):
                nxt = bms_mov_e(quiver, xi, e)
                covers.append((xi, nxt))
                labels[(xi, nxt)] = e
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)

    _check_pointwise_closure(quiver, g, seen)
    grade = {xi: xi.d_tot for xi in seen}
    order = sorted(seen, key=lambda xi: (xi.d_tot, xi.d))
    return certified_lattice(
        order, sorted(set(covers), key=lambda c: (grade[c[0]], c[0].d, c[1].d)),
        grade=grade, labels=labels, bound=bound, seed=seed)


def _check_pointwise_closure(quiver, g, states):
    by_d = {xi.d: xi for xi in states}
    dicts = [dict(d) for d in by_d]
    for d1 in dicts:
        for d2 in dicts:
            for pick in (max, min):
                dm = {e: pick(d1[e], d2[e]) for e in quiver.vertices}
                if _d_tuple(dm) not in by_d:
                    raise AssertionError(
                        f"state set not closed under pointwise {pick.__name__}")


def _reconstruct_plus(quiver, f_minus, d):
    vals = {}
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        vals[a] = f_minus[a] + d[t] - d[s]
    return AngularFunction(vals)


def component_minimum(pmap: PlanarMap, omega, h: AngularFunction,
                      quiver: MedialQuiver | None = None, choose=None):
    """Greedy anti-moves from h until stuck: (terminal f_minus, accumulated d).

    The terminal function is the minimum of h's move-graph component and the
    accumulated dimension vector makes (h, f_minus, d) a valid state; the
    result does not depend on the greedy order (tested, not assumed).
    `choose` picks among the currently anti-movable edges (default: first).

    Raises:
        NotNilpotencyZero: descent is not guaranteed to terminate otherwise.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    if nilpotency_degree(pmap, omega, quiver) != 0:
        raise NotNilpotencyZero("greedy descent needs nilpotency degree 0")
    _check_compatible(pmap, omega, quiver, h, "h")
    if choose is None:
        choose = lambda options: options[0]
    current = h
    d = {e: 0 for e in quiver.vertices}
    fuel = 10 ** 6
    while True:
        options = [e for e in quiver.vertices
                   if is_anti_e_movable(quiver, current, e)]
        if not options:
            break
        e = choose(options)
        current = anti_mov_e(quiver, current, e)
        d[e] += 1
        fuel -= 1
        if fuel == 0:  # pragma: no cover - guarded by the nilpotency gate
            raise RuntimeError("greedy descent did not terminate")
    make_bms(pmap, omega, h, current, d, quiver)  # validity assertion
    return current, d


def plus_subobjects(pmap: PlanarMap, omega, xi: BMSState,
                    quiver: MedialQuiver | None = None,
                    bound=500, seed=0) -> FiniteLattice:
    """The lattice of states below xi: same f_minus, d' pointwise below d.

    A candidate d' qualifies exactly when f_minus + (d'(t) - d'(s)) stays
    non-negative; the angle sums are then automatic, so the candidate is a
    valid state.

    Raises:
        NotNilpotencyZero.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    if nilpotency_degree(pmap, omega, quiver) != 0:
        raise NotNilpotencyZero("subobject lattice needs nilpotency degree 0")
    edges = sorted(quiver.vertices)
    top = xi.dims()
    found = []
    for combo in product(*(range(top[e] + 1) for e in edges)):
        d = dict(zip(edges, combo))
        f_plus = _reconstruct_plus(quiver, xi.f_minus, d)
        if all(v >= 0 for _, v in f_plus.items()):
            found.append(make_bms(pmap, omega, f_plus, xi.f_minus, d, quiver))
    covers = []
    labels = {}
    by_d = {s.d: s for s in found}
    for s in found:
        d = s.dims()
        for e in edges:
            d[e] += 1
            key = _d_tuple(d)
            if key in by_d:
                covers.append((s, by_d[key]))
                labels[(s, by_d[key])] = e
            d[e] -= 1
    grade = {s: s.d_tot for s in found}
    order = sorted(found, key=lambda s: (s.d_tot, s.d))
    return certified_lattice(
        order, sorted(covers, key=lambda c: (grade[c[0]], c[0].d, c[1].d)),
        grade=grade, labels=labels, bound=bound, seed=seed)


@dataclass
class ProjectionReport:
    """Outcome of checking the forgetful projection onto f_plus."""

    total_states: int
    image_size: int
    injective: bool
    is_morphism: bool
    out_degrees_match: bool
    graph_size: int
    components_touched: int
    components_fully_covered: int

    @property
    def ok(self):
        return self.is_morphism and self.out_degrees_match


def forgetful_projection(pmap: PlanarMap, omega, states,
                         quiver: MedialQuiver | None = None) -> ProjectionReport:
    """Check that xi -> f_plus maps the move graph of `states` onto the move
    graph of plain angular functions: every move edge maps to a move edge and
    out-degrees agree (local bijectivity on outgoing edges)."""
    if quiver is None:
        quiver = medial_quiver(pmap)
    graph = build_L_graph(pmap, omega, quiver)
    index = {g: i for i, g in enumerate(graph.nodes)}
    out_of = {i: set() for i in range(len(graph.nodes))}
    for s, t, lab in graph.edges:
        out_of[s].add((t, lab))

    states = list(states)
    image = {xi.f_plus for xi in states}
    is_morphism = True
    degrees_match = True
    for xi in states:
        i = index[xi.f_plus]
        bms_out = []
        for e in quiver.vertices:
            if is_e_movable(quiver, xi.f_plus, e):
                nxt = bms_mov_e(quiver, xi, e)
                bms_out.append((index[nxt.f_plus], e))
                if (index[nxt.f_plus], e) not in out_of[i]:
                    is_morphism = False
        if len(bms_out) != len(out_of[i]):
            degrees_match = False

    comps = graph.undirected_components()
    image_idx = {index[g] for g in image}
    touched = [c for c in comps if image_idx & set(c)]
    full = [c for c in touched if set(c) <= image_idx]
    return ProjectionReport(
        total_states=len(states), image_size=len(image),
        injective=len(image) == len(states), is_morphism=is_morphism,
        out_degrees_match=degrees_match, graph_size=len(graph.nodes),
        components_touched=len(touched), components_fully_covered=len(full))


def solve_dimension(pmap: PlanarMap, omega, f_plus, f_minus,
                    quiver: MedialQuiver | None = None):
    """Reconstruct the unique dimension vector joining f_minus to f_plus.

    Propagates d(target) - d(source) = f_plus - f_minus along a spanning
    tree of the quiver, then shifts the global constant so invisible-cycle
    edges sit at zero (or the minimum sits at zero if there are none).

    Raises:
        RelationViolated: the differences are inconsistent around a cycle.
        InvisibleDimNonZero: invisible edges cannot all be zero.
        ValueError: inputs incompatible, or the result would be negative.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    validate_weight(pmap, omega)
    _check_compatible(pmap, omega, quiver, f_plus, "f_plus")
    _check_compatible(pmap, omega, quiver, f_minus, "f_minus")

    delta = {a: f_plus[a] - f_minus[a] for a in quiver.arrow_ids}
    start = quiver.vertices[0]
    value = {start: 0}
    stack = [start]
    adjacency = {v: [] for v in quiver.vertices}
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        adjacency[s].append((t, delta[a]))
        adjacency[t].append((s, -delta[a]))
    while stack:
        v = stack.pop()
        for w, step in adjacency[v]:
            if w not in value:
                value[w] = value[v] + step
                stack.append(w)
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        if value[t] - value[s] != delta[a]:
            raise RelationViolated(
                a, f"difference of the two functions is inconsistent at {a}")

    zero = [a for a in quiver.arrow_ids if f_minus[a] == 0]
    inv_edges = sorted(_invisible_edges_from_zero_set(quiver, zero))
    if inv_edges:
        base = value[inv_edges[0]]
        for e in inv_edges[1:]:
            if value[e] != base:
                raise InvisibleDimNonZero(
                    e, f"invisible edges {inv_edges[0]} and {e} would need "
                       f"different dimensions")
    else:
        base = min(value.values())
    d = {e: value[e] - base for e in quiver.vertices}
    if any(v < 0 for v in d.values()):
        raise ValueError("no non-negative dimension vector joins the pair")
    return d
