"""Weights, compatible angular functions, and counterclockwise moves.

A weight assigns a non-negative integer to every vertex and face of a planar
map, with equal totals.  A compatible angular function distributes those
numbers over the angles: its sum around each vertex and each face matches the
weight there.  Counterclockwise moves along an edge shift one unit between
the four angles flanking that edge; the resulting directed graph on the set
of compatible functions is the main object of study.
"""

from __future__ import annotations

from collections import Counter

import networkx as nx
import yaml

from .planar import MedialQuiver, PlanarMap, medial_quiver


class MissingValue(ValueError):
    """A weight omits some vertex or face."""


class UnknownEdge(ValueError):
    """An edge id is not a vertex of the medial quiver."""


class NotMovable(ValueError):
    """A move was requested where its preconditions fail."""


class NotACycle(ValueError):
    """An arrow sequence does not form a directed cycle in the quiver."""


class EmptyStateSet(ValueError):
    """An operation needs at least one compatible angular function."""


class NotNilpotencyZero(ValueError):
    """An operation is only defined at nilpotency degree zero."""


# ----------------------------------------------------------------------
# weights
# ----------------------------------------------------------------------

def validate_weight(pmap: PlanarMap, omega) -> bool:
    """True iff omega is non-negative everywhere and vertex and face totals agree.

    Raises:
        MissingValue: some vertex or face has no entry in omega.
    """
    for cid in list(pmap.vertices) + list(pmap.faces):
        if cid not in omega:
            raise MissingValue(f"weight has no value for {cid}")
    if any(omega[c] < 0 for c in list(pmap.vertices) + list(pmap.faces)):
        return False
    sv = sum(omega[v] for v in pmap.vertices)
    sf = sum(omega[f] for f in pmap.faces)
    return sv == sf


def is_characteristic(pmap: PlanarMap, omega) -> bool:
    return all(omega[c] in (0, 1) for c in list(pmap.vertices) + list(pmap.faces))


def parse_weight_text(text):
    """Parse a weight file: a YAML mapping from vertex/face ids to integers."""
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise MissingValue("weight file must be a mapping of cell ids to integers")
    out = {}
    for key, val in doc.items():
        if not isinstance(val, int):
            raise MissingValue(f"weight value for {key!r} is not an integer")
        out[str(key)] = val
    return out


def dump_weight_text(omega):
    keys = sorted(omega, key=lambda c: (c[0], int(c[1:])))
    return "\n".join(f"{k}: {omega[k]}" for k in keys) + "\n"


# ----------------------------------------------------------------------
# angular functions
# ----------------------------------------------------------------------

class AngularFunction:
    """Immutable non-negative integer function on the angles (quiver arrows)."""

    __slots__ = ("_values", "_key")

    def __init__(self, values):
        self._values = dict(values)
        self._key = tuple(sorted(self._values.items()))

    def __getitem__(self, angle):
        return self._values[angle]

    def items(self):
        return self._key

    def keys(self):
        return [a for a, _ in self._key]

    def as_dict(self):
        return dict(self._values)

    def shifted(self, delta):
        """New function with delta[a] added where present (no sign checks)."""
        vals = dict(self._values)
        for a, dv in delta.items():
            vals[a] = vals.get(a, 0) + dv
        return AngularFunction(vals)

    def __eq__(self, other):
        return isinstance(other, AngularFunction) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        inner = ", ".join(f"{a}:{v}" for a, v in self._key)
        return f"AngularFunction({inner})"


def require_connected(pmap: PlanarMap):
    if not pmap.is_connected():
        raise ValueError("operation requires a connected map")


def enumerate_compatible(pmap: PlanarMap, omega, quiver: MedialQuiver | None = None):
    """The complete set of omega-compatible angular functions, canonically ordered.

    Backtracking over angles in dart order; each angle is bounded by the
    remaining budget of its vertex and of its face, and the last unassigned
    angle of a cell is forced to the exact remainder.  The result is sorted
    lexicographically by value tuple; an empty list is a valid outcome.
    """
    require_connected(pmap)
    validate_weight(pmap, omega)
    if quiver is None:
        quiver = medial_quiver(pmap)

    angles = list(pmap.darts)
    cell_pair = {a: (quiver.angles[a].vertex, quiver.angles[a].face) for a in angles}
    remaining = Counter()
    for a in angles:
        v, f = cell_pair[a]
        remaining[v] += 1
        remaining[f] += 1
    budget = {c: omega[c] for c in list(pmap.vertices) + list(pmap.faces)}
    if any(b < 0 for b in budget.values()):
        return []

    out = []
    assignment = {}

    def backtrack(i):
        if i == len(angles):
            if all(b == 0 for b in budget.values()):
                out.append(AngularFunction(assignment))
            return
        a = angles[i]
        v, f = cell_pair[a]
        hi = min(budget[v], budget[f])
        lo = 0
        if remaining[v] == 1:
            forced = budget[v]
            if lo <= forced <= hi:
                lo = hi = forced
            else:
                lo, hi = 0, -1
        if remaining[f] == 1:
            forced = budget[f]
            if lo <= forced <= hi:
                lo = hi = forced
            else:
                lo, hi = 0, -1
        remaining[v] -= 1
        remaining[f] -= 1
        for val in range(lo, hi + 1):
            assignment[a] = val
            budget[v] -= val
            budget[f] -= val
            backtrack(i + 1)
            budget[v] += val
            budget[f] += val
        assignment.pop(a, None)
        remaining[v] += 1
        remaining[f] += 1

    backtrack(0)
    out.sort(key=lambda g: tuple(v for _, v in g.items()))
    return out


def enumerate_compatible_bruteforce(pmap: PlanarMap, omega):
    """Product-space filter oracle; only for tiny instances (<= 10 angles)."""
    from itertools import product

    quiver = medial_quiver(pmap)
    angles = list(pmap.darts)
    if len(angles) > 10:
        raise ValueError("brute-force oracle limited to 10 angles")
    top = max((omega[c] for c in list(pmap.vertices) + list(pmap.faces)), default=0)
    found = []
    for combo in product(range(top + 1), repeat=len(angles)):
        g = dict(zip(angles, combo))
        ok = all(
            sum(g[a] for a in quiver.vertex_cycles[v]) == omega[v]
            for v in pmap.vertices
        ) and all(
            sum(g[a] for a in quiver.face_cycles[f]) == omega[f]
            for f in pmap.faces
        )
        if ok:
            found.append(AngularFunction(g))
    found.sort(key=lambda g: tuple(v for _, v in g.items()))
    return found


# ----------------------------------------------------------------------
# moves
# ----------------------------------------------------------------------

def delta_chi(quiver: MedialQuiver, e):
    """The move increment along e: +1 on both incoming angles, -1 on both outgoing."""
    if e not in quiver.outgoing:
        raise UnknownEdge(f"{e!r} is not an edge of the map")
    d = {}
    for a in quiver.incoming[e]:
        d[a] = d.get(a, 0) + 1
    for a in quiver.outgoing[e]:
        d[a] = d.get(a, 0) - 1
    return d


def is_e_movable(quiver: MedialQuiver, g: AngularFunction, e) -> bool:
    """True iff g is positive on both angles with source e."""
    if e not in quiver.outgoing:
        raise UnknownEdge(f"{e!r} is not an edge of the map")
    return all(g[a] > 0 for a in quiver.outgoing[e])


def is_anti_e_movable(quiver: MedialQuiver, g: AngularFunction, e) -> bool:
    """True iff g is positive on both angles with target e."""
    if e not in quiver.incoming:
        raise UnknownEdge(f"{e!r} is not an edge of the map")
    return all(g[a] > 0 for a in quiver.incoming[e])


def mov_e(quiver: MedialQuiver, g: AngularFunction, e) -> AngularFunction:
    """Counterclockwise move along e.  Raises NotMovable if g is not e-movable."""
    if not is_e_movable(quiver, g, e):
        raise NotMovable(f"function is not movable along {e}")
    return g.shifted(delta_chi(quiver, e))


def anti_mov_e(quiver: MedialQuiver, g: AngularFunction, e) -> AngularFunction:
    """Clockwise move along e, the inverse of mov_e."""
    if not is_anti_e_movable(quiver, g, e):
        raise NotMovable(f"function is not anti-movable along {e}")
    return g.shifted({a: -dv for a, dv in delta_chi(quiver, e).items()})


class StateGraph:
    """Directed move graph: nodes are states, edges are labeled by map edges."""

    def __init__(self, nodes, edges):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)  # (source index, target index, edge label)

    def out_edges(self, i):
        return [(j, lab) for (s, j, lab) in self.edges if s == i]

    def undirected_components(self):
        adj = {i: set() for i in range(len(self.nodes))}
        for s, t, _ in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        seen, comps = set(), []
        for i in range(len(self.nodes)):
            if i in seen:
                continue
            comp, stack = [], [i]
            seen.add(i)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps


def build_L_graph(pmap: PlanarMap, omega, quiver: MedialQuiver | None = None) -> StateGraph:
    """Move graph on all compatible angular functions."""
    if quiver is None:
        quiver = medial_quiver(pmap)
    nodes = enumerate_compatible(pmap, omega, quiver)
    index = {g: i for i, g in enumerate(nodes)}
    edges = []
    for i, g in enumerate(nodes):
        for e in quiver.vertices:
            if is_e_movable(quiver, g, e):
                edges.append((i, index[mov_e(quiver, g, e)], e))
    edges.sort()
    return StateGraph(nodes, edges)


# ----------------------------------------------------------------------
# angular cycles
# ----------------------------------------------------------------------

class AngularCycle:
    """A directed cycle in the medial quiver, given by its arrow sequence."""

    def __init__(self, arrows):
        self.arrows = tuple(arrows)

    @property
    def coefficients(self):
        return Counter(self.arrows)

    def __repr__(self):
        return f"AngularCycle({' '.join(self.arrows)})"


def check_cycle(quiver: MedialQuiver, arrows):
    """Validate that consecutive arrows compose head-to-tail and close up."""
    if not arrows:
        raise NotACycle("empty arrow sequence")
    for a in arrows:
        if a not in quiver.arrows:
            raise NotACycle(f"unknown arrow {a!r}")
    for a, b in zip(arrows, arrows[1:] + tuple(arrows[:1])):
        if quiver.target(a) != quiver.source(b):
            raise NotACycle(f"arrows {a} and {b} do not compose")


def lambda_omega(quiver: MedialQuiver, cycle, g: AngularFunction) -> int:
    """Pairing of a directed cycle with the weight, evaluated through g.

    The value sum(c_a * g(a)) is independent of the choice of compatible g.
    """
    arrows = cycle.arrows if isinstance(cycle, AngularCycle) else tuple(cycle)
    check_cycle(quiver, arrows)
    return sum(g[a] for a in arrows)


# ----------------------------------------------------------------------
# invisible cycles, nilpotency, and the graph of invisible cycles
# ----------------------------------------------------------------------

def invisible_subgraph(pmap: PlanarMap, omega, quiver: MedialQuiver | None = None):
    """Arrows lying on a directed cycle inside the zero set of a compatible function.

    The answer does not depend on which compatible function is used: a cycle
    is invisible for one iff it is invisible for all.

    Raises:
        EmptyStateSet: no compatible angular function exists.
    """
    if quiver is None:
        quiver = medial_quiver(pmap)
    states = enumerate_compatible(pmap, omega, quiver)
    if not states:
        raise EmptyStateSet("no compatible angular function")
    g0 = states[0]
    zero = [a for a in quiver.arrow_ids if g0[a] == 0]
    dg = nx.DiGraph()
    dg.add_nodes_from(quiver.vertices)
    dg.add_edges_from((quiver.source(a), quiver.target(a)) for a in zero)
    comp = {}
    for i, scc in enumerate(nx.strongly_connected_components(dg)):
        for v in scc:
            comp[v] = i
    return frozenset(
        a for a in zero if comp[quiver.source(a)] == comp[quiver.target(a)])


def invisible_edge_set(quiver: MedialQuiver, invisible_arrows):
    """Map edges (quiver vertices) lying on some invisible cycle."""
    out = set()
    for a in invisible_arrows:
        out.add(quiver.source(a))
        out.add(quiver.target(a))
    return frozenset(out)


def nilpotency_degree(pmap: PlanarMap, omega, quiver: MedialQuiver | None = None) -> int:
    """Minimum of the weight pairing over non-zero directed cycles.

    Computed as a minimum-weight directed cycle with non-negative arrow
    weights g0(a), via one shortest-path sweep per arrow.
    """
    require_connected(pmap)
    if quiver is None:
        quiver = medial_quiver(pmap)
    states = enumerate_compatible(pmap, omega, quiver)
    if not states:
        raise EmptyStateSet("no compatible angular function")
    g0 = states[0]
    dg = nx.DiGraph()
    dg.add_nodes_from(quiver.vertices)
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        w = g0[a]
        if not dg.has_edge(s, t) or dg[s][t]["weight"] > w:
            dg.add_edge(s, t, weight=w)
    best = None
    dist = dict(nx.all_pairs_dijkstra_path_length(dg, weight="weight"))
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        if s in dist.get(t, {}):
            total = g0[a] + dist[t][s]
            best = total if best is None else min(best, total)
    if best is None:  # pragma: no cover - impossible for connected maps
        raise ValueError("quiver has no directed cycle")
    return best


def gamma_inv_components(pmap: PlanarMap, omega, quiver: MedialQuiver | None = None) -> int:
    """Number of components of the graph of invisible connected angular cycles.

    Two invisible cycles are adjacent when they share a quiver vertex, which
    happens exactly when they lie in the same strongly connected component of
    the invisible subgraph; so the component count equals the number of SCCs
    of that subgraph.

    Raises:
        EmptyStateSet, NotNilpotencyZero.
    """
    require_connected(pmap)
    if quiver is None:
        quiver = medial_quiver(pmap)
    if nilpotency_degree(pmap, omega, quiver) != 0:
        raise NotNilpotencyZero("no invisible cycles at positive nilpotency degree")
    inv = invisible_subgraph(pmap, omega, quiver)
    dg = nx.DiGraph()
    dg.add_edges_from((quiver.source(a), quiver.target(a)) for a in inv)
    return sum(1 for _ in nx.strongly_connected_components(dg))


def gamma_inv_connected(pmap: PlanarMap, omega, quiver: MedialQuiver | None = None):
    """(is_connected, component_count) for the graph of invisible cycles."""
    n = gamma_inv_components(pmap, omega, quiver)
    return n == 1, n


def gamma_inv_components_bruteforce(pmap: PlanarMap, omega, max_arrows=12) -> int:
    """Oracle: enumerate simple cycles in the zero set and glue along shared vertices."""
    require_connected(pmap)
    quiver = medial_quiver(pmap)
    if len(quiver.arrow_ids) > max_arrows:
        raise ValueError(f"brute-force oracle limited to {max_arrows} arrows")
    states = enumerate_compatible(pmap, omega, quiver)
    if not states:
        raise EmptyStateSet("no compatible angular function")
    g0 = states[0]
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(quiver.vertices)
    for a in quiver.arrow_ids:
        if g0[a] == 0:
            dg.add_edge(quiver.source(a), quiver.target(a), key=a)
    cycles = [frozenset(c) for c in nx.simple_cycles(dg)]
    if not cycles:
        return 0
    glue = nx.Graph()
    glue.add_nodes_from(range(len(cycles)))
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if cycles[i] & cycles[j]:
                glue.add_edge(i, j)
    return sum(1 for _ in nx.connected_components(glue))
