"""Singularity-category Hom spaces by stabilization of the syzygy dynamics.

Hom spaces in the singularity category are filtered colimits of stable Hom
spaces along syzygy iterates. All objects in sight are semisimple, so a
level-i Hom space has k-dimension sum_x u_i[x] * w_i[x] * d_x, where u_i
and w_i are the multiplicity vectors of the two iterated syzygies. One
more syzygy embeds exactly the components sitting at vertices with an
outgoing arrow and kills the rest, and a component survives all the way to
the colimit iff its vertex can still reach a directed cycle (is
"immortal"). The colimit dimension is therefore the limit of the
nondecreasing sequence of immortal-restricted level dimensions.

That limit is evaluated exactly, never numerically guessed:

* finiteness is decided structurally on the product of the immortal part
  with itself: the dimension is infinite iff some walk from (a, b) to the
  diagonal accumulates two pumping cycles, i.e. passes through two
  cycle-bearing strong components, or one that is not a plain cycle;
* in the finite case the sequence is already constant once both immortal
  supports sit inside the permutation zone (the union of simple cycles all
  of whose vertices have a single immortal out-arrow), and in the rare
  finite cases that never reach that zone it is constant from step
  |immortal|^2 + 1 on, because any longer walk pair would have to cross a
  second pumping cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from .classify import sg_hom_finite
from .errors import InternalInvariantError, NotSemisimpleError
from .orders import BackstromOrder, Node
from .species import ValuedQuiver
from .syzygy import StableObject, build_a_lambda, j_prime, syzygy, syzygy_of_node

Vector = Dict[int, int]


@dataclass(frozen=True)
class StabilizedHom:
    """A colimit Hom dimension with its level history.

    ``dim`` is None exactly when the colimit is infinite dimensional;
    ``history[i]`` is the naive k-dimension of the level-i Hom space and
    ``level`` the index at which stabilization was certified.
    """

    dim: Optional[int]
    level: Optional[int]
    history: Tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.dim is not None


class SyzygyDynamics:
    """Linear syzygy dynamics on a finite vertex set with arrow multiplicities."""

    def __init__(
        self,
        vertices: Tuple[int, ...],
        mult: Dict[int, Dict[int, int]],
        weights: Optional[Dict[int, int]] = None,
    ) -> None:
        self.vertices = tuple(sorted(vertices))
        vset = set(self.vertices)
        self.mult = {
            v: {y: m for y, m in sorted(mult.get(v, {}).items()) if m}
            for v in self.vertices
        }
        for v, row in self.mult.items():
            if set(row) - vset:
                raise ValueError("arrow target outside the vertex set")
        self.weights = {v: (weights or {}).get(v, 1) for v in self.vertices}

        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for x, row in self.mult.items():
            for y in row:
                g.add_edge(x, y)
        self._graph = g

        cyc: Set[int] = set()
        for scc in nx.strongly_connected_components(g):
            if len(scc) > 1:
                cyc |= scc
        cyc |= {v for v in self.vertices if self.mult[v].get(v, 0)}
        self.cycle_vertices: FrozenSet[int] = frozenset(cyc)

        imm = set(cyc)
        stack = list(cyc)
        while stack:
            y = stack.pop()
            for x in g.predecessors(y):
                if x not in imm:
                    imm.add(x)
                    stack.append(x)
        self.immortal: FrozenSet[int] = frozenset(imm)

        zone = {
            x
            for x in cyc
            if sum(m for y, m in self.mult[x].items() if y in imm) == 1
        }
        changed = True
        while changed:
            changed = False
            for x in list(zone):
                succ = next(y for y, m in self.mult[x].items() if y in imm and m)
                if succ not in zone:
                    zone.discard(x)
                    changed = True
        self.zone: FrozenSet[int] = frozenset(zone)

        self._forward: Dict[int, FrozenSet[int]] = {}
        self._levels: Dict[int, List[Vector]] = {}
        self._h: Optional[Dict[Tuple[int, int], float]] = None

    # -- elementary dynamics ---------------------------------------------------

    def omega(self, vec: Vector) -> Vector:
        out: Vector = {}
        for x, m in vec.items():
            for y, k in self.mult[x].items():
                out[y] = out.get(y, 0) + m * k
        return out

    def levels(self, a: int, depth: int) -> List[Vector]:
        seq = self._levels.setdefault(a, [{a: 1}])
        while len(seq) <= depth:
            seq.append(self.omega(seq[-1]))
        return seq

    def forward(self, v: int) -> FrozenSet[int]:
        if v not in self._forward:
            self._forward[v] = frozenset(nx.descendants(self._graph, v) | {v})
        return self._forward[v]

    def _naive_dim(self, u: Vector, w: Vector) -> int:
        return sum(m * w.get(x, 0) * self.weights[x] for x, m in u.items())

    def _immortal_dim(self, u: Vector, w: Vector) -> int:
        return sum(
            m * w.get(x, 0) * self.weights[x]
            for x, m in u.items()
            if x in self.immortal
        )

    def _immortal_support(self, vec: Vector) -> FrozenSet[int]:
        return frozenset(x for x, m in vec.items() if m and x in self.immortal)

    # -- finite/infinite decision -----------------------------------------------

    def _pumping_values(self) -> Dict[Tuple[int, int], float]:
        """Max pumping weight of walks from each immortal pair to the diagonal.

        The value is the largest total over condensation paths ending in a
        strong component that contains a diagonal vertex, counting 1 per
        simple-cycle component and 2 per branching one; -inf when no walk
        reaches the diagonal at all. The colimit dimension is infinite iff
        the start pair's value is >= 2.
        """
        if self._h is not None:
            return self._h
        imm = sorted(self.immortal)
        prod = nx.DiGraph()
        prod.add_nodes_from((x, y) for x in imm for y in imm)
        pmult: Dict[Tuple[Tuple[int, int], Tuple[int, int]], int] = {}
        for x in imm:
            xrow = [(y, m) for y, m in self.mult[x].items() if y in self.immortal]
            for x2 in imm:
                x2row = [
                    (y, m) for y, m in self.mult[x2].items() if y in self.immortal
                ]
                for y1, m1 in xrow:
                    for y2, m2 in x2row:
                        prod.add_edge((x, x2), (y1, y2))
                        pmult[((x, x2), (y1, y2))] = m1 * m2
        cond = nx.condensation(prod)
        mapping = cond.graph["mapping"]
        weight: Dict[int, int] = {}
        diagonal: Dict[int, bool] = {}
        for s in cond.nodes:
            members = cond.nodes[s]["members"]
            totals = {
                u: sum(pmult.get((u, v), 0) for v in members) for u in members
            }
            if all(t == 0 for t in totals.values()):
                weight[s] = 0
            elif all(t == 1 for t in totals.values()):
                weight[s] = 1
            else:
                weight[s] = 2
            diagonal[s] = any(u[0] == u[1] for u in members)
        h_scc: Dict[int, float] = {}
        for s in reversed(list(nx.topological_sort(cond))):
            best = 0.0 if diagonal[s] else -math.inf
            for t in cond.successors(s):
                best = max(best, h_scc[t])
            h_scc[s] = -math.inf if best == -math.inf else weight[s] + best
        self._h = {pair: h_scc[mapping[pair]] for pair in prod.nodes}
        return self._h

    def is_infinite_pair(self, a: int, b: int) -> bool:
        if a not in self.immortal or b not in self.immortal:
            return False
        return self._pumping_values()[(a, b)] >= 2

    # -- the colimit ------------------------------------------------------------

    def hom(self, a: int, b: int) -> StabilizedHom:
        if a not in self.vertices or b not in self.vertices:
            raise ValueError(f"unknown vertex in pair ({a}, {b})")
        u: Vector = {a: 1}
        w: Vector = {b: 1}
        history = [self._naive_dim(u, w)]
        if a not in self.immortal or b not in self.immortal:
            return StabilizedHom(dim=0, level=0, history=tuple(history))
        if not (self.forward(a) & self.forward(b) & self.immortal):
            return StabilizedHom(dim=0, level=0, history=tuple(history))
        if self.is_infinite_pair(a, b):
            for _ in range(len(self.vertices) + 1):
                u, w = self.omega(u), self.omega(w)
                history.append(self._naive_dim(u, w))
            return StabilizedHom(dim=None, level=None, history=tuple(history))
        cap = len(self.immortal) ** 2 + 2
        i = 0
        while True:
            in_zone = (
                self._immortal_support(u) <= self.zone
                and self._immortal_support(w) <= self.zone
            )
            if in_zone or i >= cap:
                return StabilizedHom(
                    dim=self._immortal_dim(u, w), level=i, history=tuple(history)
                )
            u, w = self.omega(u), self.omega(w)
            i += 1
            history.append(self._naive_dim(u, w))

    def hom_table(self) -> Dict[Tuple[int, int], StabilizedHom]:
        return {
            (a, b): self.hom(a, b) for a in self.vertices for b in self.vertices
        }


def quiver_dynamics(q: ValuedQuiver) -> SyzygyDynamics:
    """Syzygy dynamics of the radical-square-zero algebra a quiver presents."""
    return SyzygyDynamics(q.vertices, q.adjacency_multiplicities(), dict(q.weights))


def order_dynamics(order: BackstromOrder) -> SyzygyDynamics:
    """Syzygy dynamics on the stable category of an order, via the cover rule."""
    order.require_valid()
    jp = sorted(j_prime(order))
    mult = {
        order.to_global(j): {
            order.to_global(t): m
            for t, m in syzygy_of_node(order, j).multiplicities().items()
        }
        for j in jp
    }
    return SyzygyDynamics(tuple(order.to_global(j) for j in jp), mult)


# ---------------------------------------------------------------------------
# order-facing operations


def _require_stable_node(order: BackstromOrder, j: Node) -> None:
    if order.is_lambda_projective(j):
        raise ValueError(f"{j} is projective over the glued order, hence stably zero")


def stable_hom_level0(order: BackstromOrder, a: Node, b: Node) -> int:
    """Stable Hom dimension between two non-projective overorder projectives."""
    _require_stable_node(order, a)
    _require_stable_node(order, b)
    return 1 if a == b else 0


def dsg_hom_dim(order: BackstromOrder, a: Node, b: Node) -> StabilizedHom:
    """Colimit Hom dimension between the classes of Q_a and Q_b."""
    _require_stable_node(order, a)
    _require_stable_node(order, b)
    dyn = order_dynamics(order)
    return dyn.hom(order.to_global(a), order.to_global(b))


def hom_table(order: BackstromOrder) -> Dict[Tuple[int, int], StabilizedHom]:
    """All pairwise colimit Hom dimensions, keyed by global node ids."""
    return order_dynamics(order).hom_table()


def end_dim(order: BackstromOrder) -> Optional[int]:
    """Total endomorphism dimension of the additive generator, None if infinite."""
    total = 0
    for h in hom_table(order).values():
        if not h.is_finite:
            return None
        total += h.dim
    return total


# ---------------------------------------------------------------------------
# Wedderburn structure of the colimit endomorphism algebra


@dataclass(frozen=True)
class WedderburnBlock:
    vertex: int  # global node id of the representing core vertex
    multiplicity: int
    weight: int


@dataclass(frozen=True)
class WedderburnData:
    """Semisimple block data of the colimit endomorphism algebra.

    ``suspension`` maps each block's core vertex to the core vertex of its
    image under the shift, which walks each core cycle backwards.
    """

    blocks: Tuple[WedderburnBlock, ...]
    suspension: Dict[int, int]
    end_dim: int


def _core_cycles(core: ValuedQuiver) -> List[List[int]]:
    succ = {a.src: a.dst for a in core.arrows}
    seen: Set[int] = set()
    cycles: List[List[int]] = []
    for v in core.vertices:
        if v in seen:
            continue
        cycle = [v]
        seen.add(v)
        cur = succ[v]
        while cur != v:
            cycle.append(cur)
            seen.add(cur)
            cur = succ[cur]
        cycles.append(cycle)
    return cycles


def v_lambda(order: BackstromOrder) -> WedderburnData:
    """Wedderburn blocks of the stabilized endomorphism algebra.

    Raises :class:`NotSemisimpleError` with the stripped core as witness
    when the order is not sg-Hom-finite. A hereditary order yields the
    empty block list.
    """
    order.require_valid()
    quiver = build_a_lambda(order).quiver
    finite, core = sg_hom_finite(quiver)
    if not finite:
        raise NotSemisimpleError(
            {
                "core_vertices": list(core.vertices),
                "core_arrows": sorted([a.src, a.dst] for a in core.arrows),
            }
        )
    cycles = _core_cycles(core)
    lcm = 1
    for c in cycles:
        lcm = math.lcm(lcm, len(c))
    jp = sorted(j_prime(order))
    n = len(jp) + lcm
    n += (-n) % lcm  # round up to a multiple of the cycle period
    dyn = order_dynamics(order)
    masses: Dict[int, int] = {v: 0 for v in core.vertices}
    for a in jp:
        x = StableObject.simple(a)
        for _ in range(n):
            x = syzygy(order, x)
        for node, m in x.items:
            g = order.to_global(node)
            if g in masses:
                masses[g] += m
            elif g in dyn.immortal:  # pragma: no cover
                raise InternalInvariantError("stabilized mass escaped the core")
            # mass parked on mortal spill vertices is stably zero and ignored
    blocks = tuple(
        WedderburnBlock(vertex=v, multiplicity=masses[v], weight=1)
        for v in core.vertices
    )
    suspension: Dict[int, int] = {}
    for cycle in cycles:
        for i, v in enumerate(cycle):
            suspension[v] = cycle[i - 1]  # one step against the arrows
    total = sum(b.multiplicity**2 * b.weight for b in blocks)
    expected = end_dim(order)
    if expected != total:
        raise InternalInvariantError(
            f"block dimension count {total} disagrees with Hom table total {expected}"
        )
    return WedderburnData(blocks=blocks, suspension=suspension, end_dim=total)


def suspension_orbit(order: BackstromOrder, a: Node) -> Tuple[StableObject, ...]:
    """The eventual periodic orbit of Q_a under the syzygy operator.

    The returned tuple has length equal to the least common multiple of the
    core cycle lengths meeting the stabilized support (length one for the
    zero object). Requires the order to be sg-Hom-finite.
    """
    order.require_valid()
    quiver = build_a_lambda(order).quiver
    finite, core = sg_hom_finite(quiver)
    if not finite:
        raise NotSemisimpleError(
            {"core_vertices": list(core.vertices)}
        )
    _require_stable_node(order, a)
    cycles = _core_cycles(core)
    jp_size = len(j_prime(order))
    x = StableObject.simple(a)
    for _ in range(jp_size + len(order.nodes()) + 1):
        x = syzygy(order, x)
    touched = [
        c for c in cycles if any(order.to_global(j) in c for j in x.support)
    ]
    period = 1
    for c in touched:
        period = math.lcm(period, len(c))
    orbit = []
    cur = x
    for _ in range(period):
        orbit.append(cur)
        cur = syzygy(order, cur)
    if cur != x:  # pragma: no cover
        raise InternalInvariantError("orbit failed to close up at its period")
    return tuple(orbit)
