"""Link diagrams, Kauffman states, and the clock lattice.

A link diagram is a connected 4-regular planar map together with a marked
edge whose two adjacent faces are distinct.  The Kauffman weight is 1 on
every crossing and unmarked face and 0 on the two marked faces; a Kauffman
state picks one angle per crossing so that every unmarked face also receives
exactly one pick and the marked faces receive none.

Indicator functions identify Kauffman states with the weight-compatible
angular functions, moves included: moving along an edge rotates the two
markers sitting at its endpoints one step counterclockwise.  For prime
diagrams the move graph is a graded distributive lattice (the clock
lattice), built and certified here.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from . import bms
from .lattice import CertificationFailed, FiniteLattice, certified_lattice
from .planar import MedialQuiver, PlanarMap, medial_quiver, parse_map_text
from .states import (
    AngularFunction,
    enumerate_compatible,
    gamma_inv_connected,
    is_e_movable,
    mov_e,
    validate_weight,
)


class MarkedFacesNotDistinct(ValueError):
    """The two faces beside the marked edge coincide (the edge is a bridge)."""


class NotApplicable(ValueError):
    """The requested marker move is not available in this state."""


class NotPrime(ValueError):
    """A separating pair of edges exists; carries it as `witness`."""

    def __init__(self, witness, message):
        super().__init__(message)
        self.witness = witness


class LinkDiagram:
    """Connected 4-regular planar map with a marked edge."""

    def __init__(self, pmap: PlanarMap, marked_edge):
        marked_edge = str(marked_edge)
        if marked_edge not in pmap.edges:
            raise ValueError(f"unknown marked edge {marked_edge!r}")
        faces = pmap.edge_faces(marked_edge)
        if faces[0] == faces[1]:
            raise MarkedFacesNotDistinct(
                f"both sides of {marked_edge} are face {faces[0]}")
        bad = [v for v in pmap.vertices if pmap.degree(v) != 4]
        if bad:
            raise ValueError(f"not 4-regular at {sorted(bad)}")
        if not pmap.is_connected():
            raise ValueError("diagram must be connected")
        self.pmap = pmap
        self.marked_edge = marked_edge
        self.marked_faces = faces
        assert len(pmap.vertices) == len(pmap.faces) - 2

    @classmethod
    def from_text(cls, text):
        pmap, marked = parse_map_text(text)
        if marked is None:
            raise ValueError("diagram file must declare marked_edge")
        return cls(pmap, marked)


def kauffman_weight(diagram: LinkDiagram):
    """1 on crossings and unmarked faces, 0 on the two marked faces."""
    w = {v: 1 for v in diagram.pmap.vertices}
    w.update({f: 1 for f in diagram.pmap.faces})
    for f in diagram.marked_faces:
        w[f] = 0
    assert validate_weight(diagram.pmap, w)
    return w


@dataclass(frozen=True)
class KauffmanState:
    """One marker angle per crossing, given by sorted angle (dart) ids."""

    angles: tuple

    @classmethod
    def of(cls, angles):
        return cls(tuple(sorted(set(angles))))

    def __contains__(self, angle):
        return angle in self.angles


def is_valid_state(diagram: LinkDiagram, state: KauffmanState) -> bool:
    """Exactly one marker per crossing and per unmarked face, none marked."""
    pmap = diagram.pmap
    if not set(state.angles) <= set(pmap.darts):
        return False
    quiver = medial_quiver(pmap)
    per_vertex = {v: 0 for v in pmap.vertices}
    per_face = {f: 0 for f in pmap.faces}
    for a in state.angles:
        ang = quiver.angles[a]
        per_vertex[ang.vertex] += 1
        per_face[ang.face] += 1
    if any(n != 1 for n in per_vertex.values()):
        return False
    marked = set(diagram.marked_faces)
    return all(
        n == (0 if f in marked else 1) for f, n in per_face.items())


def chi(diagram: LinkDiagram, state: KauffmanState) -> AngularFunction:
    """Indicator angular function of a state."""
    return AngularFunction(
        {d: (1 if d in state.angles else 0) for d in diagram.pmap.darts})


def chi_inv(diagram: LinkDiagram, g: AngularFunction) -> KauffmanState:
    """Support of a 0/1-valued angular function."""
    values = dict(g.items())
    if any(v not in (0, 1) for v in values.values()):
        raise ValueError("function is not 0/1-valued")
    return KauffmanState.of(a for a, v in values.items() if v == 1)


def _enumerate_direct(diagram: LinkDiagram):
    """Matching-style enumeration: each crossing picks one unmarked angle,
    each unmarked face must end up picked exactly once."""
    pmap = diagram.pmap
    quiver = medial_quiver(pmap)
    marked = set(diagram.marked_faces)
    vertices = sorted(pmap.vertices, key=lambda v: int(v[1:]))
    choices = {
        v: [a for a in quiver.vertex_cycles[v]
            if quiver.angles[a].face not in marked]
        for v in vertices}
    remaining = {f: 0 for f in pmap.faces}
    for v in vertices:
        for a in choices[v]:
            remaining[quiver.angles[a].face] += 1

    states = []
    picked_faces = set()
    picks = []

    def backtrack(i):
        if i == len(vertices):
            states.append(KauffmanState.of(picks))
            return
        v = vertices[i]
        for a in choices[v]:
            f = quiver.angles[a].face
            remaining[f] -= 1
        for a in choices[v]:
            f = quiver.angles[a].face
            if f in picked_faces:
                continue
            picked_faces.add(f)
            picks.append(a)
            # a face with no remaining choice must already be picked
            if all(remaining[x] > 0 or x in picked_faces or x in marked
                   for x in pmap.faces):
                backtrack(i + 1)
            picks.pop()
            picked_faces.remove(f)
        for a in choices[v]:
            remaining[quiver.angles[a].face] += 1

    backtrack(0)
    return sorted(states, key=lambda s: s.angles)


def enumerate_kauffman_states(diagram: LinkDiagram):
    """All Kauffman states, cross-checked between two enumerations.

    Computed once through the compatible-angular-function enumeration and
    once by direct matching-style search; any disagreement is an internal
    error.
    """
    w = kauffman_weight(diagram)
    via_functions = sorted(
        (chi_inv(diagram, g) for g in enumerate_compatible(diagram.pmap, w)),
        key=lambda s: s.angles)
    direct = _enumerate_direct(diagram)
    if via_functions != direct:
        raise AssertionError(
            "state enumerations disagree: "
            f"{len(via_functions)} via functions, {len(direct)} direct")
    return via_functions


def kauffman_move(diagram: LinkDiagram, state: KauffmanState, e) -> KauffmanState:
    """Rotate the two markers at the endpoints of e one counterclockwise step.

    Applicable exactly when both markers sit on the source angles of e (the
    angles keyed by e's own darts) and e is not the marked edge.

    Raises:
        NotApplicable.
    """
    pmap = diagram.pmap
    if str(e) == diagram.marked_edge:
        raise NotApplicable("cannot move along the marked edge")
    if str(e) not in pmap.edges:
        raise NotApplicable(f"unknown edge {e!r}")
    quiver = medial_quiver(pmap)
    g = chi(diagram, state)
    if not is_e_movable(quiver, g, str(e)):
        raise NotApplicable(
            f"markers are not positioned on the source angles of {e}")
    return chi_inv(diagram, mov_e(quiver, g, str(e)))


def find_separating_pair(pmap: PlanarMap):
    """A pair of edges whose removal disconnects the map, or None."""
    edges = sorted(pmap.edges)
    graph = nx.MultiGraph()
    graph.add_nodes_from(pmap.vertices)
    for e in edges:
        u, v = pmap.edge_endpoints(e)
        graph.add_edge(u, v, key=e)
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            h = graph.copy()
            u1, v1 = pmap.edge_endpoints(e1)
            u2, v2 = pmap.edge_endpoints(e2)
            h.remove_edge(u1, v1, key=e1)
            h.remove_edge(u2, v2, key=e2)
            if not nx.is_connected(h):
                return (e1, e2)
    return None


def is_prime_diagram(diagram: LinkDiagram) -> bool:
    """True iff no pair of edges separates the underlying map."""
    return find_separating_pair(diagram.pmap) is None


def clock_lattice(diagram: LinkDiagram, bound=500, seed=0) -> FiniteLattice:
    """The certified lattice of all Kauffman states of a prime diagram.

    Certifies that the graph of invisible cycles is connected, grows the
    state lattice from the greedily-found minimum, checks it reaches every
    state, and re-labels everything in Kauffman-state coordinates.

    Raises:
        NotPrime: with the separating edge pair as witness.
        CertificationFailed: a theorem-level guarantee failed to verify.
    """
    witness = find_separating_pair(diagram.pmap)
    if witness is not None:
        raise NotPrime(witness, f"separating edge pair {witness}")
    pmap = diagram.pmap
    w = kauffman_weight(diagram)
    quiver = medial_quiver(pmap)
    connected, ncomp = gamma_inv_connected(pmap, w, quiver)
    if not connected:
        raise CertificationFailed(
            f"graph of invisible cycles has {ncomp} components on a prime diagram")
    functions = enumerate_compatible(pmap, w, quiver)
    f_min, _ = bms.component_minimum(pmap, w, functions[0], quiver)
    inner = bms.bms_plus_lattice(pmap, w, f_min, quiver, bound=bound, seed=seed)
    if len(inner) != len(functions):
        raise CertificationFailed(
            f"lattice reaches {len(inner)} of {len(functions)} states")

    as_state = {xi: chi_inv(diagram, xi.f_plus) for xi in inner.elements}
    elements = [as_state[xi] for xi in inner.elements]
    covers = [(as_state[a], as_state[b]) for a, b in inner.covers]
    labels = {
        (as_state[a], as_state[b]): e for (a, b), e in inner.labels.items()}
    grade = {as_state[xi]: xi.d_tot for xi in inner.elements}
    return certified_lattice(
        elements, covers, grade=grade, labels=labels, bound=bound, seed=seed)
