"""Decision procedures on the valued quiver of the trivial-extension algebra.

Global dimension is finite iff the quiver is acyclic. Iwanaga-Gorenstein
asks every connected component to be acyclic or a single directed cycle
with trivial valuations; Gorenstein drops the acyclic option, so an
isolated loop-free vertex already fails it (a simple algebra component is
excluded). The self-injective pattern, exposed separately, does allow
single-vertex components. sg-Hom-finiteness is decided by stripping:
repeatedly delete any vertex that is currently a source or a sink (a loop
protects its vertex), and accept iff the fixpoint is a disjoint union of
trivially valued directed cycles. Loops count as cycles of length one
throughout. Every negative verdict carries a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

import networkx as nx

from .errors import InternalInvariantError
from .orders import BackstromOrder
from .species import ValuedQuiver, is_finite_cm_type
from .syzygy import build_a_lambda

Witness = Union[None, str, Dict, List, Tuple]


def _digraph(q: ValuedQuiver) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((a.src, a.dst) for a in q.arrows)
    return g


def finite_gldim(q: ValuedQuiver) -> Tuple[bool, Witness]:
    """True iff the quiver has no directed cycle; witness is a cycle."""
    g = _digraph(q)
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        return True, None
    return False, {"cycle": [list(e[:2]) for e in cycle]}


def _component_shape(q: ValuedQuiver, comp: Tuple[int, ...]) -> str:
    """One of "acyclic", "cycle", "other" for an induced component.

    "cycle" additionally requires every arrow valuation to be trivial.
    """
    sub = q.induced(comp)
    acyclic, _ = finite_gldim(sub)
    if acyclic:
        return "acyclic"
    if all(sub.in_degree(v) == 1 and sub.out_degree(v) == 1 for v in comp):
        if sub.is_trivially_valued():
            return "cycle"
        return "other"
    return "other"


def iwanaga_gorenstein(q: ValuedQuiver) -> Tuple[bool, Witness]:
    """Each component must be acyclic or a trivially valued directed cycle."""
    for comp in q.undirected_components():
        shape = _component_shape(q, comp)
        if shape == "other":
            return False, {"component": list(comp), "reason": "not acyclic and not a trivially valued cycle"}
    return True, None


def gorenstein(q: ValuedQuiver) -> Tuple[bool, Witness]:
    """Each component must be a trivially valued directed cycle."""
    for comp in q.undirected_components():
        shape = _component_shape(q, comp)
        if shape != "cycle":
            reason = (
                "acyclic component is excluded (would give a simple factor)"
                if shape == "acyclic"
                else "not a trivially valued cycle"
            )
            return False, {"component": list(comp), "reason": reason}
    return True, None


def self_injective_pattern(q: ValuedQuiver) -> Tuple[bool, Witness]:
    """Like :func:`gorenstein` but single loop-free vertices are allowed."""
    for comp in q.undirected_components():
        if len(comp) == 1 and q.induced(comp).out_degree(comp[0]) == 0:
            continue
        if _component_shape(q, comp) != "cycle":
            return False, {"component": list(comp), "reason": "not a vertex or a trivially valued cycle"}
    return True, None


def stripped_core(q: ValuedQuiver) -> ValuedQuiver:
    """Iteratively delete sources and sinks; loops protect their vertex."""
    present = set(q.vertices)
    changed = True
    while changed and present:
        changed = False
        indeg = {v: 0 for v in present}
        outdeg = {v: 0 for v in present}
        for a in q.arrows:
            if a.src in present and a.dst in present:
                outdeg[a.src] += 1
                indeg[a.dst] += 1
        drop = {v for v in present if indeg[v] == 0 or outdeg[v] == 0}
        if drop:
            present -= drop
            changed = True
    return q.induced(sorted(present))


def sg_hom_finite(q: ValuedQuiver) -> Tuple[bool, ValuedQuiver]:
    """Accept iff the stripped core is a disjoint union of trivial cycles."""
    core = stripped_core(q)
    ok = all(
        core.in_degree(v) == 1 and core.out_degree(v) == 1 for v in core.vertices
    ) and core.is_trivially_valued()
    return ok, core


def gproj_nonprojective_vertices(q: ValuedQuiver) -> FrozenSet[int]:
    """Vertices whose whole component is a trivially valued directed cycle."""
    out = set()
    for comp in q.undirected_components():
        if _component_shape(q, comp) == "cycle":
            out.update(comp)
    return frozenset(out)


@dataclass
class ClassificationReport:
    """Verdicts with witnesses; None marks a field the input cannot decide."""

    hereditary: Optional[bool]
    finite_gldim: bool
    gorenstein: bool
    iwanaga_gorenstein: bool
    sg_hom_finite: bool
    finite_cm_type: Optional[bool]
    witnesses: Dict[str, Witness] = dataclass_field(default_factory=dict)

    def assert_hierarchy(self) -> None:
        checks = [
            (self.hereditary, self.finite_gldim, "hereditary => finite gldim"),
            (self.finite_gldim, self.iwanaga_gorenstein, "finite gldim => Iwanaga-Gorenstein"),
            (self.gorenstein, self.iwanaga_gorenstein, "Gorenstein => Iwanaga-Gorenstein"),
            (self.iwanaga_gorenstein, self.sg_hom_finite, "Iwanaga-Gorenstein => sg-Hom-finite"),
        ]
        for upper, lower, name in checks:
            if upper and not lower:
                raise InternalInvariantError(f"hierarchy violated: {name}")

    def as_dict(self) -> Dict:
        return {
            "hereditary": self.hereditary,
            "finite_gldim": self.finite_gldim,
            "gorenstein": self.gorenstein,
            "iwanaga_gorenstein": self.iwanaga_gorenstein,
            "sg_hom_finite": self.sg_hom_finite,
            "finite_cm_type": self.finite_cm_type,
            "witnesses": self.witnesses,
        }


def classify_quiver(q: ValuedQuiver) -> ClassificationReport:
    """The order-independent verdicts of a directly supplied valued quiver."""
    gl_ok, gl_w = finite_gldim(q)
    ig_ok, ig_w = iwanaga_gorenstein(q)
    gor_ok, gor_w = gorenstein(q)
    sgf_ok, core = sg_hom_finite(q)
    witnesses: Dict[str, Witness] = {
        "stripped_core": {
            "vertices": list(core.vertices),
            "arrows": sorted([a.src, a.dst] for a in core.arrows),
        }
    }
    if not gl_ok:
        witnesses["finite_gldim"] = gl_w
    if not ig_ok:
        witnesses["iwanaga_gorenstein"] = ig_w
    if not gor_ok:
        witnesses["gorenstein"] = gor_w
    report = ClassificationReport(
        hereditary=None,
        finite_gldim=gl_ok,
        gorenstein=gor_ok,
        iwanaga_gorenstein=ig_ok,
        sg_hom_finite=sgf_ok,
        finite_cm_type=None,
        witnesses=witnesses,
    )
    report.assert_hierarchy()
    return report


def classify(order: BackstromOrder) -> ClassificationReport:
    """Full report for an order, hierarchy-checked before returning."""
    order.require_valid()
    q = build_a_lambda(order).quiver
    report = classify_quiver(q)
    finite_cm, cm_report = is_finite_cm_type(order)
    report.hereditary = order.lambda_is_hereditary()
    report.finite_cm_type = finite_cm
    if not finite_cm:
        report.witnesses["finite_cm_type"] = [
            {"vertices": [list(v) for v in comp.vertices], "reason": comp.witness}
            for comp in cm_report
            if not comp.is_dynkin
        ]
    report.assert_hierarchy()
    return report
