"""Sphere-embedded planar multigraphs as combinatorial maps.

A map is encoded by its darts (half-edges), a fixed-point-free involution
``theta`` pairing the two darts of each edge, and a permutation ``sigma``
whose cycles list the darts clockwise around each vertex.  Faces are derived
by face tracing, angles sit between consecutive darts at a vertex, and the
directed medial quiver has the edges of the map as vertices and its angles
as arrows.
"""

from __future__ import annotations

from dataclasses import dataclass

import yaml


class MapFormatError(ValueError):
    """Raised when the textual rotation-system input cannot be parsed."""


class MalformedInvolution(ValueError):
    """Edge pairing is not a fixed-point-free involution on the dart set."""


class LoopEdge(ValueError):
    """An edge has both of its darts at the same vertex."""


class DegreeTooSmall(ValueError):
    """A vertex has fewer than two darts."""


class NotSpherical(ValueError):
    """Euler count V - E + F != 2 on some connected component."""


@dataclass(frozen=True)
class Angle:
    """One angle of a planar map, keyed by its first dart.

    The angle sits at ``vertex`` between ``dart`` and its clockwise successor,
    inside ``face``.  As an arrow of the medial quiver it points from
    ``source_edge`` (the edge of ``dart``) to ``target_edge`` (the edge of the
    successor dart).
    """

    dart: str
    vertex: str
    face: str
    source_edge: str
    target_edge: str
    dart_pair: tuple[str, str]


class PlanarMap:
    """Immutable combinatorial map with derived faces and angles.

    Attributes:
        darts: sorted tuple of dart identifiers.
        theta: edge involution (dart -> opposite dart).
        sigma: clockwise vertex rotation (dart -> next dart at same vertex).
        vertices: vertex id -> tuple of darts in clockwise rotation order.
        edges: edge id -> pair of darts.
        faces: face id -> tuple of darts in face-tracing order.
        vertex_of / edge_of / face_of: dart -> incident cell id.
    """

    def __init__(self, rotations, pairing):
        darts = [d for cycle in rotations for d in cycle]
        if len(set(darts)) != len(darts):
            raise MalformedInvolution("a dart appears in more than one rotation slot")
        dart_set = set(darts)

        theta = {}
        for pair in pairing:
            if len(pair) != 2:
                raise MalformedInvolution("edge pairing entries must be dart pairs")
            a, b = pair
            if a == b:
                raise MalformedInvolution(f"involution fixes dart {a!r}")
            if a not in dart_set or b not in dart_set:
                raise MalformedInvolution(f"pairing mentions unknown dart in ({a!r}, {b!r})")
            if a in theta or b in theta:
                raise MalformedInvolution(f"dart appears in two edge pairs: ({a!r}, {b!r})")
            theta[a] = b
            theta[b] = a
        if set(theta) != dart_set:
            missing = sorted(dart_set - set(theta))
            raise MalformedInvolution(f"darts not covered by the edge pairing: {missing}")

        sigma = {}
        vertex_of = {}
        vertices = {}
        for i, cycle in enumerate(rotations):
            if len(cycle) < 2:
                raise DegreeTooSmall(f"vertex v{i} has degree {len(cycle)} < 2")
            vid = f"v{i}"
            vertices[vid] = tuple(cycle)
            for j, d in enumerate(cycle):
                sigma[d] = cycle[(j + 1) % len(cycle)]
                vertex_of[d] = vid

        edges = {}
        edge_of = {}
        for i, (a, b) in enumerate(pairing):
            if vertex_of[a] == vertex_of[b]:
                raise LoopEdge(f"edge e{i} = ({a!r}, {b!r}) is a loop at {vertex_of[a]}")
            eid = f"e{i}"
            edges[eid] = (a, b)
            edge_of[a] = eid
            edge_of[b] = eid

        # Face tracing: the successor of d along its face is sigma(theta(d)).
        faces = {}
        face_of = {}
        seen = set()
        traced = []
        for start in sorted(dart_set):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            d = sigma[theta[start]]
            while d != start:
                cycle.append(d)
                seen.add(d)
                d = sigma[theta[d]]
            traced.append(tuple(cycle))
        for i, cycle in enumerate(sorted(traced, key=lambda c: c[0])):
            fid = f"f{i}"
            faces[fid] = cycle
            for d in cycle:
                face_of[d] = fid

        self.darts = tuple(sorted(dart_set))
        self.theta = theta
        self.sigma = sigma
        self.sigma_inv = {v: k for k, v in sigma.items()}
        self.vertices = vertices
        self.edges = edges
        self.faces = faces
        self.vertex_of = vertex_of
        self.edge_of = edge_of
        self.face_of = face_of

        self._check_euler()

    # ------------------------------------------------------------------
    # validation
    # ------------------------------------------------------------------

    def _check_euler(self):
        """Require V - E + F = 2 on every connected component."""
        parent = {d: d for d in self.darts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for d in self.darts:
            union(d, self.theta[d])
            union(d, self.sigma[d])

        comp_of_dart = {d: find(d) for d in self.darts}
        counts = {}
        for cells, idx in ((self.vertices, 0), (self.edges, 1), (self.faces, 2)):
            for ds in cells.values():
                comp = comp_of_dart[ds[0]]
                counts.setdefault(comp, [0, 0, 0])[idx] += 1
        for comp, (nv, ne, nf) in sorted(counts.items()):
            if nv - ne + nf != 2:
                raise NotSpherical(
                    f"component of dart {comp!r} has V-E+F = {nv}-{ne}+{nf} = {nv - ne + nf}, expected 2")

    # ------------------------------------------------------------------
    # derived data
    # ------------------------------------------------------------------

    def degree(self, vid):
        return len(self.vertices[vid])

    def is_connected(self):
        if not self.darts:
            return True
        seen = {self.darts[0]}
        stack = [self.darts[0]]
        while stack:
            d = stack.pop()
            for n in (self.theta[d], self.sigma[d]):
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(self.darts)

    def edge_endpoints(self, eid):
        a, b = self.edges[eid]
        return (self.vertex_of[a], self.vertex_of[b])

    def edge_faces(self, eid):
        a, b = self.edges[eid]
        return (self.face_of[self.sigma[a]], self.face_of[self.sigma[b]])

    def canonical_form(self):
        """Renaming-invariant canonical encoding, used for round-trip checks."""
        order = {d: i for i, d in enumerate(self.darts)}
        rot = sorted(
            tuple(order[d] for d in _rotate_min(cycle, order))
            for cycle in self.vertices.values())
        pairs = sorted(tuple(sorted((order[a], order[b]))) for a, b in self.edges.values())
        return (tuple(rot), tuple(pairs))


def _rotate_min(cycle, order):
    """Rotate a cyclic tuple so that its smallest element comes first."""
    k = min(range(len(cycle)), key=lambda i: order[cycle[i]])
    return cycle[k:] + cycle[:k]


def build_planar_map(rotation_data, edge_pairing) -> PlanarMap:
    """Validate and build a planar map from per-vertex clockwise dart lists.

    Args:
        rotation_data: list of dart lists, one per vertex, clockwise.
        edge_pairing: list of 2-element dart lists pairing opposite darts.

    Returns:
        A validated ``PlanarMap`` with derived faces.

    Raises:
        MalformedInvolution, LoopEdge, DegreeTooSmall, NotSpherical.
    """
    rotations = [[str(d) for d in cycle] for cycle in rotation_data]
    pairing = [[str(d) for d in pair] for pair in edge_pairing]
    return PlanarMap(rotations, pairing)


def angles_of(pmap: PlanarMap) -> list[Angle]:
    """All angles of the map, one per dart, in canonical dart order.

    The angle keyed by dart ``d`` lies at ``vertex_of[d]`` between ``d`` and
    ``sigma[d]``; its face is the face traversing ``sigma[d]`` (equivalently
    ``theta[d]``), its source edge is the edge of ``d`` and its target edge the
    edge of ``sigma[d]``.
    """
    out = []
    for d in pmap.darts:
        s = pmap.sigma[d]
        out.append(Angle(
            dart=d,
            vertex=pmap.vertex_of[d],
            face=pmap.face_of[s],
            source_edge=pmap.edge_of[d],
            target_edge=pmap.edge_of[s],
            dart_pair=(d, s),
        ))
    return out


class MedialQuiver:
    """Directed medial quiver of a planar map.

    Vertices are edge ids of the map; arrows are angles, keyed by their dart.
    ``vertex_cycles[v]`` and ``face_cycles[f]`` are the distinguished cyclic
    arrow sequences bounding the quiver face that corresponds to the vertex
    ``v`` (clockwise) or face ``f`` (counterclockwise) of the map.
    """

    def __init__(self, pmap: PlanarMap):
        self.pmap = pmap
        self.angles = {a.dart: a for a in angles_of(pmap)}
        self.vertices = tuple(sorted(pmap.edges))
        self.arrows = {a: (ang.source_edge, ang.target_edge)
                       for a, ang in self.angles.items()}
        self.arrow_ids = tuple(sorted(self.arrows))

        order = {d: i for i, d in enumerate(pmap.darts)}
        self.vertex_cycles = {}
        for vid, cycle in pmap.vertices.items():
            self.vertex_cycles[vid] = tuple(_rotate_min(cycle, order))
        self.face_cycles = {}
        for fid, cycle in pmap.faces.items():
            arrows = tuple(pmap.theta[d] for d in cycle)
            self.face_cycles[fid] = tuple(_rotate_min(arrows, order))

        # Outgoing arrows of a quiver vertex e are the angles keyed by the two
        # darts of e; incoming arrows are keyed by their sigma-predecessors.
        self.outgoing = {}
        self.incoming = {}
        for eid, (a, b) in pmap.edges.items():
            self.outgoing[eid] = tuple(sorted((a, b)))
            self.incoming[eid] = tuple(sorted((pmap.sigma_inv[a], pmap.sigma_inv[b])))

        self._self_check()

    def _self_check(self):
        """Assert the structural invariants instead of trusting conventions."""
        out_deg = {v: 0 for v in self.vertices}
        in_deg = {v: 0 for v in self.vertices}
        for s, t in self.arrows.values():
            if s == t:
                raise AssertionError("medial quiver has a loop")
            out_deg[s] += 1
            in_deg[t] += 1
        if any(out_deg[v] != 2 or in_deg[v] != 2 for v in self.vertices):
            raise AssertionError("medial quiver vertex not of in/out degree 2")

        for cycles in (self.vertex_cycles, self.face_cycles):
            used = []
            for cyc in cycles.values():
                used.extend(cyc)
                for i, a in enumerate(cyc):
                    nxt = cyc[(i + 1) % len(cyc)]
                    if self.arrows[a][1] != self.arrows[nxt][0]:
                        raise AssertionError("distinguished cycle does not compose")
            if sorted(used) != list(self.arrow_ids):
                raise AssertionError("distinguished cycles do not partition the arrows")

    def source(self, arrow):
        return self.arrows[arrow][0]

    def target(self, arrow):
        return self.arrows[arrow][1]

    def angles_at_vertex(self, vid):
        """Arrow ids of the map-vertex cycle, as a set-friendly tuple."""
        return self.vertex_cycles[vid]

    def angles_at_face(self, fid):
        return self.face_cycles[fid]

    def is_strongly_connected(self):
        if not self.vertices:
            return True
        succ = {v: [] for v in self.vertices}
        pred = {v: [] for v in self.vertices}
        for s, t in self.arrows.values():
            succ[s].append(t)
            pred[t].append(s)

        def sweep(adj):
            seen = {self.vertices[0]}
            stack = [self.vertices[0]]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            return len(seen) == len(self.vertices)

        return sweep(succ) and sweep(pred)


def medial_quiver(pmap: PlanarMap) -> MedialQuiver:
    """Construct the directed medial quiver of a validated planar map."""
    return MedialQuiver(pmap)


# ----------------------------------------------------------------------
# external text format
# ----------------------------------------------------------------------

def parse_map_text(text):
    """Parse the rotation-system input format.

    The format is a small YAML document::

        vertices: [[a1, a2, a3, a4], [b4, b3, b2, b1]]
        edges: [[a1, b1], [a2, b2], [a3, b3], [a4, b4]]
        marked_edge: e0        # optional, link diagrams only

    Returns:
        (PlanarMap, marked_edge or None)
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise MapFormatError(f"not valid structured text: {exc}") from exc
    if not isinstance(doc, dict):
        raise MapFormatError("expected a mapping with 'vertices' and 'edges' keys")
    if "vertices" not in doc or "edges" not in doc:
        raise MapFormatError("missing 'vertices' or 'edges' key")
    rotations = doc["vertices"]
    pairing = doc["edges"]
    if (not isinstance(rotations, list) or not isinstance(pairing, list)
            or any(not isinstance(c, list) for c in rotations)
            or any(not isinstance(p, list) for p in pairing)):
        raise MapFormatError("'vertices' and 'edges' must be lists of dart lists")
    pmap = build_planar_map(rotations, pairing)
    marked = doc.get("marked_edge")
    if marked is not None:
        marked = str(marked)
        if marked not in pmap.edges:
            raise MapFormatError(f"marked_edge {marked!r} is not an edge id")
    return pmap, marked


def dump_map_text(pmap: PlanarMap, marked_edge=None):
    """Serialize a map back to the input format (canonical, deterministic)."""
    lines = []
    rot = ", ".join(
        "[" + ", ".join(pmap.vertices[v]) + "]" for v in sorted(pmap.vertices, key=_cell_key))
    lines.append(f"vertices: [{rot}]")
    pairs = ", ".join(
        "[" + ", ".join(pmap.edges[e]) + "]" for e in sorted(pmap.edges, key=_cell_key))
    lines.append(f"edges: [{pairs}]")
    if marked_edge is not None:
        lines.append(f"marked_edge: {marked_edge}")
    return "\n".join(lines) + "\n"


def _cell_key(cid):
    """Sort v2 before v10: cell ids are a letter followed by an index."""
    return (cid[0], int(cid[1:]))
