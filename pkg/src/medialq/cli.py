"""Command-line interface: one verb per construction in the library.

Reports are plain deterministic text: same input, same seed, same bytes.
Every report starts with the sha256 of its inputs and the seed in use, so a
report file identifies what it was computed from.  Exit status is 0 for
success, 1 when a check found a counterexample or failed to certify, and 2
for unusable input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from importlib import resources
from pathlib import Path

from . import bms, corpus
from . import reps
from . import states as st
from .kauffman import (
    LinkDiagram,
    NotPrime,
    clock_lattice,
    enumerate_kauffman_states,
    find_separating_pair,
    is_prime_diagram,
    kauffman_weight,
)
from .lattice import CertificationFailed, FiniteLattice
from .planar import MapFormatError, medial_quiver, parse_map_text
from .reps import CandidateSpaceTooLarge, NotCharacteristicWeight
from .states import EmptyStateSet, MissingValue, NotNilpotencyZero


class InputError(Exception):
    """Anything wrong with the input files or requested regime (exit 2)."""


# ----------------------------------------------------------------------
# plumbing
# ----------------------------------------------------------------------

def _read_bytes(path):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_map(path):
    raw = _read_bytes(path)
    pmap, marked = parse_map_text(raw.decode("utf-8"))
    return pmap, marked, raw


def _resolve_weight(args, pmap, marked):
    """Explicit --weight file, else the Kauffman weight of the marked edge."""
    if getattr(args, "weight", None):
        raw = _read_bytes(args.weight)
        omega = st.parse_weight_text(raw.decode("utf-8"))
        if not st.validate_weight(pmap, omega):
            raise InputError(
                "weight is negative somewhere or vertex/face totals differ")
        return omega, [(args.weight, raw)]
    if marked is not None:
        return kauffman_weight(LinkDiagram(pmap, marked)), []
    raise InputError("no --weight given and the map has no marked_edge")


def _header(verb, inputs, seed=None):
    lines = [f"# medialq {verb}"]
    for name, raw in inputs:
        lines.append(f"# input {name}: sha256 {hashlib.sha256(raw).hexdigest()}")
    if seed is not None:
        lines.append(f"# seed {seed}")
    return lines


def _emit(args, lines):
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _fun_text(g):
    inner = ",".join(f"{a}:{v}" for a, v in g.items() if v)
    return inner or "0"


def _dims_text(d):
    inner = ",".join(f"{e}:{v}" for e, v in sorted(d.items()) if v)
    return inner or "0"


def _mat_text(m):
    rows = "; ".join(" ".join(str(x) for x in row) for row in m.data)
    return f"{m.rows}x{m.cols} [{rows}]"


def _state_text(x):
    if isinstance(x, bms.BMSState):
        return f"d={_dims_text(dict(x.d))} f+={_fun_text(x.f_plus)}"
    if hasattr(x, "angles"):
        return "markers=" + ",".join(x.angles)
    if isinstance(x, st.AngularFunction):
        return _fun_text(x)
    if isinstance(x, reps.PrefixFamily):
        return f"k={_dims_text(dict(x.dims))}"
    return str(x)


def _lattice_lines(lat: FiniteLattice):
    """Elements, covers with move labels, grades, and full join/meet tables."""
    order = list(lat.elements)
    index = {x: i for i, x in enumerate(order)}
    out = [f"elements: {len(order)}"]
    for i, x in enumerate(order):
        out.append(f"  {i}: grade {lat.grade[x]} {_state_text(x)}")
    out.append(f"minimum: {index[lat.minimum]}")
    out.append(f"maximum: {index[lat.maximum]}")
    out.append(f"covers: {len(lat.covers)}")
    for a, b in lat.covers:
        label = (lat.labels or {}).get((a, b))
        suffix = f" by {label}" if label is not None else ""
        out.append(f"  {index[a]} -> {index[b]}{suffix}")
    for name, op in (("join", lat.poset.join_index),
                     ("meet", lat.poset.meet_index)):
        out.append(f"{name} table:")
        for i in range(len(order)):
            row = " ".join(str(op(i, j)) for j in range(len(order)))
            out.append(f"  {row}")
    cert = lat.certificate
    out.append(
        f"certified: size {cert.size}, grades {cert.grade_range[0]}"
        f"..{cert.grade_range[1]}, sampled {cert.sampled}")
    return out


def _component_lattice(pmap, omega, quiver, seed, bound):
    functions = st.enumerate_compatible(pmap, omega, quiver)
    if not functions:
        return None, 0
    g0, _ = bms.component_minimum(pmap, omega, functions[0], quiver)
    return (bms.bms_plus_lattice(pmap, omega, g0, quiver,
                                 bound=bound, seed=seed),
            len(functions))


def _top_module(pmap, omega, quiver, seed, bound):
    lattice, _ = _component_lattice(pmap, omega, quiver, seed, bound)
    if lattice is None:
        raise InputError("no compatible angular function, nothing to build")
    top = max(lattice.elements, key=lambda s: s.d_tot)
    return lattice, top, reps.state_module(pmap, top, quiver)


# ----------------------------------------------------------------------
# verbs
# ----------------------------------------------------------------------

def cmd_medial(args):
    pmap, marked, raw = _load_map(args.map)
    quiver = medial_quiver(pmap)
    if args.format == "dot":
        lines = ["digraph medial {"]
        for e in quiver.vertices:
            lines.append(f'  "{e}";')
        for a in quiver.arrow_ids:
            s, t = quiver.arrows[a]
            lines.append(f'  "{s}" -> "{t}" [label="{a}"];')
        lines.append("}")
        return 0, _header("medial", [(args.map, raw)]) + lines
    lines = _header("medial", [(args.map, raw)])
    lines.append(f"vertices: {len(pmap.vertices)} edges: {len(pmap.edges)} "
                 f"faces: {len(pmap.faces)}")
    for f in sorted(pmap.faces, key=_cell_key):
        lines.append(f"face {f}: " + " ".join(pmap.faces[f]))
    lines.append(f"quiver vertices: {' '.join(quiver.vertices)}")
    for a in quiver.arrow_ids:
        s, t = quiver.arrows[a]
        ang = quiver.angles[a]
        lines.append(f"arrow {a}: {s} -> {t} (vertex {ang.vertex}, "
                     f"face {ang.face})")
    return 0, lines


def _cell_key(cid):
    return (cid[0], int(cid[1:]))


def cmd_states(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    functions = st.enumerate_compatible(pmap, omega)
    lines = _header("states", [(args.map, raw)] + extra)
    lines.append(f"compatible angular functions: {len(functions)}")
    for i, g in enumerate(functions):
        lines.append(f"  {i}: {_fun_text(g)}")
    return 0, lines


def cmd_move_graph(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    graph = st.build_L_graph(pmap, omega)
    if args.format == "dot":
        lines = ["digraph moves {"]
        for i, g in enumerate(graph.nodes):
            lines.append(f'  n{i} [label="{_fun_text(g)}"];')
        for s, t, e in graph.edges:
            lines.append(f'  n{s} -> n{t} [label="{e}"];')
        lines.append("}")
        return 0, _header("move-graph", [(args.map, raw)] + extra) + lines
    lines = _header("move-graph", [(args.map, raw)] + extra)
    lines.append(f"states: {len(graph.nodes)} moves: {len(graph.edges)}")
    for i, g in enumerate(graph.nodes):
        lines.append(f"  {i}: {_fun_text(g)}")
    for s, t, e in graph.edges:
        lines.append(f"  {s} -> {t} by {e}")
    comps = graph.undirected_components()
    lines.append(f"components: {len(comps)}")
    return 0, lines


def cmd_invisible(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    lines = _header("invisible", [(args.map, raw)] + extra)
    try:
        arrows = st.invisible_subgraph(pmap, omega)
    except EmptyStateSet:
        lines.append("no compatible angular functions; nothing is invisible")
        return 0, lines
    lines.append(f"invisible arrows: {' '.join(sorted(arrows)) or 'none'}")
    edges = st.invisible_edge_set(medial_quiver(pmap), arrows)
    lines.append(f"invisible edges: {' '.join(sorted(edges)) or 'none'}")
    try:
        connected, ncomp = st.gamma_inv_connected(pmap, omega)
        lines.append(f"invisible cycle graph components: {ncomp} "
                     f"(connected: {connected})")
    except NotNilpotencyZero:
        lines.append("no invisible cycles: nilpotency degree is positive")
    return 0, lines


def cmd_nilpotency(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    lines = _header("nilpotency", [(args.map, raw)] + extra)
    try:
        lines.append(f"nilpotency degree: {st.nilpotency_degree(pmap, omega)}")
    except EmptyStateSet:
        lines.append("nilpotency degree undefined: no compatible functions")
    return 0, lines


def cmd_bms_lattice(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    lattice, total = _component_lattice(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    lines = _header("bms-lattice", [(args.map, raw)] + extra, seed=args.seed)
    if lattice is None:
        lines.append("no compatible angular functions")
        return 0, lines
    if args.format == "dot":
        return 0, lines + [lattice.poset.hasse_dot(
            label=lambda x: _dims_text(dict(x.d))).rstrip("\n")]
    lines.append(f"component covers {len(lattice)} of {total} states")
    lines.extend(_lattice_lines(lattice))
    return 0, lines


def cmd_component(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    graph = st.build_L_graph(pmap, omega, quiver)
    lines = _header("component", [(args.map, raw)] + extra)
    comps = graph.undirected_components()
    lines.append(f"states: {len(graph.nodes)} components: {len(comps)}")
    for i, comp in enumerate(comps):
        g0, d = bms.component_minimum(
            pmap, omega, graph.nodes[comp[0]], quiver)
        lines.append(f"component {i}: size {len(comp)} "
                     f"minimum {_fun_text(g0)} "
                     f"({sum(d.values())} anti-moves down)")
    return 0, lines


def cmd_subobjects(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    lattice, _ = _component_lattice(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    lines = _header("subobjects", [(args.map, raw)] + extra, seed=args.seed)
    if lattice is None:
        lines.append("no compatible angular functions")
        return 0, lines
    top = max(lattice.elements, key=lambda s: s.d_tot)
    below = bms.plus_subobjects(pmap, omega, top, quiver,
                                bound=args.bound_lattice, seed=args.seed)
    lines.append(f"subobjects of the maximal state {_state_text(top)}")
    if args.format == "dot":
        return 0, lines + [below.poset.hasse_dot(
            label=lambda x: _dims_text(dict(x.d))).rstrip("\n")]
    lines.extend(_lattice_lines(below))
    return 0, lines


def _diagram(args):
    pmap, marked, raw = _load_map(args.map)
    if marked is None:
        raise InputError("this verb needs a link diagram with marked_edge")
    return LinkDiagram(pmap, marked), raw


def cmd_clock(args):
    diagram, raw = _diagram(args)
    lines = _header("clock", [(args.map, raw)], seed=args.seed)
    lattice = clock_lattice(diagram, bound=args.bound_lattice, seed=args.seed)
    if args.format == "dot":
        return 0, lines + [lattice.poset.hasse_dot(
            label=lambda x: ",".join(x.angles)).rstrip("\n")]
    lines.append(f"clock lattice of {args.map} "
                 f"(marked edge {diagram.marked_edge})")
    lines.extend(_lattice_lines(lattice))
    return 0, lines


def cmd_prime_check(args):
    diagram, raw = _diagram(args)
    lines = _header("prime-check", [(args.map, raw)])
    witness = find_separating_pair(diagram.pmap)
    if witness is None:
        lines.append("prime: yes (no separating edge pair)")
        return 0, lines
    lines.append(f"prime: no, separating pair {witness[0]} {witness[1]}")
    return 1, lines


def cmd_kauffman_states(args):
    diagram, raw = _diagram(args)
    states = enumerate_kauffman_states(diagram)
    lines = _header("kauffman-states", [(args.map, raw)])
    lines.append(f"kauffman states: {len(states)}")
    for i, state in enumerate(states):
        lines.append(f"  {i}: " + ",".join(state.angles))
    return 0, lines


def cmd_module(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    _, top, module = _top_module(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    lines = _header("module", [(args.map, raw)] + extra, seed=args.seed)
    lines.append(f"state module of the maximal state {_state_text(top)}")
    lines.append("dims: " + " ".join(
        f"{e}:{module.dims[e]}" for e in module.vertices))
    for a in sorted(module.arrows):
        s, t = module.arrows[a]
        lines.append(f"arrow {a}: {s} -> {t} {_mat_text(module.mats[a])}")
    return 0, lines


def cmd_jacobian_check(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    lattice, _ = _component_lattice(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    lines = _header("jacobian-check", [(args.map, raw)] + extra,
                    seed=args.seed)
    if lattice is None:
        lines.append("no compatible angular functions")
        return 0, lines
    potential = reps.canonical_potential(pmap, omega, quiver)
    lines.append(f"potential terms: {len(potential.terms)}")
    bad = 0
    for i, state in enumerate(lattice.elements):
        report = reps.check_jacobian(
            reps.state_module(pmap, state, quiver), potential)
        verdict = "ok" if report.ok else "NONZERO RESIDUAL"
        lines.append(f"state {i} ({_dims_text(dict(state.d))}): "
                     f"{report.arrows_checked} derivatives {verdict}")
        for arrow, residual in report.nonzero:
            bad += 1
            lines.append(f"  residual at {arrow}: {_mat_text(residual)}")
    lines.append(f"states checked: {len(lattice)} violations: {bad}")
    return (1 if bad else 0), lines


def cmd_endo(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    _, top, module = _top_module(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    ring = reps.endomorphism_ring(module)
    lines = _header("endo", [(args.map, raw)] + extra, seed=args.seed)
    lines.append(f"endomorphisms of the maximal state module "
                 f"{_state_text(top)}")
    lines.append(f"dimension: {ring.dimension} semisimple rank: "
                 f"{ring.gram_rank} local: {ring.is_local}")
    for i, endo in enumerate(ring.basis):
        blocks = " ".join(f"{e}:{_mat_text(endo[e])}"
                          for e in module.vertices if module.dims[e])
        lines.append(f"  basis {i}: {blocks}")
    return 0, lines


def cmd_subreps(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    _, top, module = _top_module(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    found = reps.enumerate_subreps(
        module, omega, bound=args.bound_candidates,
        bound_lattice=args.bound_lattice, seed=args.seed)
    lines = _header("subreps", [(args.map, raw)] + extra, seed=args.seed)
    lines.append(f"subrepresentations of the maximal state module "
                 f"{_state_text(top)}")
    if args.format == "dot":
        return 0, lines + [found.poset.hasse_dot(
            label=lambda x: _dims_text(dict(x.dims))).rstrip("\n")]
    lines.extend(_lattice_lines(found))
    return 0, lines


def cmd_verify_iso(args):
    pmap, marked, raw = _load_map(args.map)
    omega, extra = _resolve_weight(args, pmap, marked)
    quiver = medial_quiver(pmap)
    lattice, _ = _component_lattice(
        pmap, omega, quiver, args.seed, args.bound_lattice)
    lines = _header("verify-iso", [(args.map, raw)] + extra, seed=args.seed)
    if lattice is None:
        lines.append("no compatible angular functions")
        return 0, lines
    top = max(lattice.elements, key=lambda s: s.d_tot)
    cert = reps.verify_subrep_isomorphism(
        pmap, omega, top, quiver, bound=args.bound_lattice, seed=args.seed,
        bound_candidates=args.bound_candidates)
    lines.append(f"maximal state: {_state_text(top)}")
    lines.append(f"plus-subobjects: {len(cert.bms_lattice)} "
                 f"subrepresentations: {len(cert.subrep_lattice)}")
    for state in cert.bms_lattice.elements:
        lines.append(f"  {_dims_text(dict(state.d))} -> "
                     f"{_state_text(cert.mapping[state])}")
    lines.append(f"order isomorphism: {cert.order_isomorphic} "
                 f"grades match: {cert.grades_match}")
    return (0 if cert.ok else 1), lines


# ----------------------------------------------------------------------
# the whole suite
# ----------------------------------------------------------------------

def _check_one_diagram(raw, seed, bound_lattice, bound_candidates):
    """All certifiable properties of one link diagram; (passed, lines)."""
    lines = []
    failures = []

    def check(label, fn):
        try:
            outcome = fn()
        except Exception as exc:  # honest reporting beats early exit here
            failures.append(f"{label}: {type(exc).__name__}: {exc}")
            lines.append(f"  {label}: ERROR {type(exc).__name__}: {exc}")
            return None
        lines.append(f"  {label}: {outcome}")
        return outcome

    diagram = LinkDiagram.from_text(raw.decode("utf-8"))
    pmap = diagram.pmap
    omega = kauffman_weight(diagram)
    quiver = medial_quiver(pmap)

    states = enumerate_kauffman_states(diagram)
    lines.append(f"  kauffman states (dual enumeration agrees): {len(states)}")

    check("nilpotency degree", lambda: st.nilpotency_degree(pmap, omega, quiver))
    ncomp = check("invisible cycle graph components",
                  lambda: st.gamma_inv_components(pmap, omega, quiver))
    if len(quiver.arrow_ids) <= 12:
        brute = check("  same by brute force",
                      lambda: st.gamma_inv_components_bruteforce(pmap, omega))
        if brute is not None and ncomp is not None and brute != ncomp:
            failures.append(f"invisible component mismatch {ncomp} vs {brute}")

    functions = st.enumerate_compatible(pmap, omega, quiver)
    graph = st.build_L_graph(pmap, omega, quiver)
    comps = graph.undirected_components()
    lines.append(f"  angular functions: {len(functions)} in {len(comps)} "
                 "component(s)")
    lattices = []
    for comp in comps:
        g0, _ = bms.component_minimum(pmap, omega, graph.nodes[comp[0]], quiver)
        lattice = bms.bms_plus_lattice(pmap, omega, g0, quiver,
                                       bound=bound_lattice, seed=seed)
        lattices.append(lattice)
        if len(lattice) != len(comp):
            failures.append(
                f"lattice size {len(lattice)} != component size {len(comp)}")
    lines.append("  certified component lattices: "
                 + " ".join(str(len(l)) for l in lattices))
    projection = bms.forgetful_projection(pmap, omega,
                                          [x for l in lattices
                                           for x in l.elements], quiver)
    if not projection.ok:
        failures.append("forgetful projection is not a move-graph isomorphism")
    lines.append(f"  projection onto the move graph: ok={projection.ok}")

    potential = reps.canonical_potential(pmap, omega, quiver)
    violations = 0
    for lattice in lattices:
        for state in lattice.elements:
            report = reps.check_jacobian(
                reps.state_module(pmap, state, quiver), potential)
            violations += len(report.nonzero)
    if violations:
        failures.append(f"{violations} nonzero cyclic-derivative residuals")
    lines.append(f"  cyclic-derivative residuals: {violations}")

    prime = is_prime_diagram(diagram)
    lines.append(f"  prime: {prime}")
    if prime:
        clock = clock_lattice(diagram, bound=bound_lattice, seed=seed)
        if len(clock) != len(states):
            failures.append(
                f"clock lattice has {len(clock)} of {len(states)} states")
        lines.append(f"  clock lattice: {len(clock)} states")

    big = max(lattices, key=len)
    top = max(big.elements, key=lambda s: s.d_tot)
    module = reps.state_module(pmap, top, quiver)
    if not reps.is_nilpotent(module):
        failures.append("maximal state module is not nilpotent")
    verdict = check("maximal module indecomposable (methods agree)",
                    lambda: reps.is_indecomposable(module, omega))
    anti = frozenset(e for e in quiver.vertices
                     if bms.is_bms_anti_movable(quiver, top, e))
    if reps.simple_quotients(module) != anti:
        failures.append("simple quotients do not match anti-movable edges")
    lines.append(f"  simple quotients = anti-movable edges: "
                 f"{sorted(anti) or 'none'}")
    cert = reps.verify_subrep_isomorphism(
        pmap, omega, top, quiver, bound=bound_lattice, seed=seed,
        bound_candidates=bound_candidates)
    if not cert.ok:
        failures.append("subobject/subrepresentation lattices disagree")
    lines.append(f"  subrep lattice isomorphism: ok={cert.ok} "
                 f"size={len(cert.bms_lattice)}")

    return failures, lines


def cmd_check_all(args):
    if args.path:
        folder = Path(args.path)
        files = sorted(folder.glob("*.map"))
        if not files:
            raise InputError(f"no .map files in {folder}")
        sources = [(str(p), _read_bytes(p)) for p in files]
    else:
        folder = resources.files("medialq").joinpath("corpus")
        sources = [(f"builtin:{name}",
                    folder.joinpath(f"{name}.map").read_bytes())
                   for name in corpus.names()]
    lines = _header("check-all", sources, seed=args.seed)
    total_failures = []
    for name, raw in sources:
        lines.append(f"{name}:")
        try:
            failures, body = _check_one_diagram(
                raw, args.seed, args.bound_lattice, args.bound_candidates)
        except (MapFormatError, ValueError) as exc:
            raise InputError(f"{name}: {exc}") from exc
        lines.extend(body)
        for f in failures:
            lines.append(f"  FAIL: {f}")
        total_failures.extend((name, f) for f in failures)
    lines.append(f"diagrams checked: {len(sources)} "
                 f"failures: {len(total_failures)}")
    return (1 if total_failures else 0), lines


# ----------------------------------------------------------------------
# argument wiring
# ----------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="medialq",
        description="planar maps, medial quivers, state lattices, and their "
                    "representations")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, *, weight=False, fmt=False, bounds=False,
            candidates=False, map_arg=True):
        p = sub.add_parser(name)
        if map_arg:
            p.add_argument("map", help="rotation-system input file")
        p.add_argument("--out", help="write the report here instead of stdout")
        if weight:
            p.add_argument("--weight", help="weight file (defaults to the "
                           "Kauffman weight of the marked edge)")
        if fmt:
            p.add_argument("--format", choices=("dump", "dot"),
                           default="dump")
        if bounds:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--bound-lattice", type=int, default=500)
        if candidates:
            p.add_argument("--bound-candidates", type=int, default=100000)
        p.set_defaults(func=fn)
        return p

    add("medial", cmd_medial, fmt=True)
    add("states", cmd_states, weight=True)
    add("move-graph", cmd_move_graph, weight=True, fmt=True)
    add("invisible", cmd_invisible, weight=True)
    add("nilpotency", cmd_nilpotency, weight=True)
    add("bms-lattice", cmd_bms_lattice, weight=True, fmt=True, bounds=True)
    add("component", cmd_component, weight=True)
    add("subobjects", cmd_subobjects, weight=True, fmt=True, bounds=True)
    add("clock", cmd_clock, fmt=True, bounds=True)
    add("prime-check", cmd_prime_check)
    add("kauffman-states", cmd_kauffman_states)
    add("module", cmd_module, weight=True, bounds=True)
    add("jacobian-check", cmd_jacobian_check, weight=True, bounds=True)
    add("endo", cmd_endo, weight=True, bounds=True)
    add("subreps", cmd_subreps, weight=True, fmt=True, bounds=True,
        candidates=True)
    add("verify-iso", cmd_verify_iso, weight=True, bounds=True,
        candidates=True)
    allp = add("check-all", cmd_check_all, bounds=True, candidates=True,
               map_arg=False)
    allp.add_argument("path", nargs="?",
                      help="directory of .map files (default: built-in corpus)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, lines = args.func(args)
    except (NotPrime, CertificationFailed) as exc:
        print(f"medialq: {exc}", file=sys.stderr)
        return 1
    except (InputError, MapFormatError, MissingValue, NotNilpotencyZero,
            NotCharacteristicWeight, CandidateSpaceTooLarge,
            ValueError) as exc:
        print(f"medialq: {exc}", file=sys.stderr)
        return 2
    _emit(args, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
