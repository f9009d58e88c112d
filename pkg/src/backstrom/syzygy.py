"""The stable projective category of the overorder and its syzygy operator.

Objects are multisets of nodes whose projective is not projective over the
glued order; those are exactly the summands that survive in the stable
category. The projective cover of such a Q_j is the part projective P_v,
v = part(j), with kernel the direct sum of Q_{shift(j')} over the other
members j' of the part. Dropping the summands that are projective over the
glued order gives the stable syzygy, which is additive, and its support
relation is precisely the arrow set of the trivial-extension algebra's
valued quiver: vertices are the non-projective nodes, with one arrow
i -> shift(j') for each j' in part(i) other than i whose shift is again
non-projective. The shift map is injective on a part, so no parallel
arrows ever arise and all valuations are trivial in the split case.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Tuple, TYPE_CHECKING

from .errors import InternalInvariantError
from .linalg import rank
from .orders import BackstromOrder, Node
from .species import ValuedQuiver

if TYPE_CHECKING:  # pragma: no cover
    from .oracle import HRepresentation


@dataclass(frozen=True)
class StableObject:
    """Multiset of non-projective overorder projectives, up to isomorphism."""

    items: Tuple[Tuple[Node, int], ...]

    @staticmethod
    def of(multiplicities: Mapping[Node, int]) -> "StableObject":
        cleaned = {j: m for j, m in multiplicities.items() if m}
        if any(m < 0 for m in cleaned.values()):
            raise ValueError("negative multiplicity")
        return StableObject(tuple(sorted(cleaned.items())))

    @staticmethod
    def zero() -> "StableObject":
        return StableObject(())

    @staticmethod
    def simple(j: Node) -> "StableObject":
        return StableObject(((j, 1),))

    def multiplicities(self) -> Dict[Node, int]:
        return dict(self.items)

    def multiplicity(self, j: Node) -> int:
        return dict(self.items).get(j, 0)

    @property
    def support(self) -> FrozenSet[Node]:
        return frozenset(j for j, _ in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    def total(self) -> int:
        return sum(m for _, m in self.items)

    def __add__(self, other: "StableObject") -> "StableObject":
        acc = Counter(dict(self.items))
        acc.update(dict(other.items))
        return StableObject.of(acc)

    def scaled(self, c: int) -> "StableObject":
        if c < 0:
            raise ValueError("negative scalar")
        return StableObject.of({j: c * m for j, m in self.items})


def j_prime(order: BackstromOrder) -> FrozenSet[Node]:
    """Nodes whose projective is not projective over the glued order."""
    order.require_valid()
    return frozenset(
        j for j in order.nodes() if not order.is_lambda_projective(j)
    )


def _check_stable_support(order: BackstromOrder, x: StableObject) -> None:
    jp = j_prime(order)
    bad = x.support - jp
    if bad:
        raise ValueError(f"support outside the non-projective node set: {sorted(bad)}")


def syzygy_of_node(order: BackstromOrder, j: Node) -> StableObject:
    """Stable syzygy of a single non-projective Q_j."""
    if order.is_lambda_projective(j):
        raise ValueError(f"{j} is projective over the glued order")
    out: Counter = Counter()
    for j2 in order.part_nodes(order.part_of(j)):
        if j2 == j:
            continue
        target = order.rad_shift(j2)
        if not order.is_lambda_projective(target):
            out[target] += 1
    return StableObject.of(out)


def syzygy(order: BackstromOrder, x: StableObject) -> StableObject:
    """Stable syzygy, extended additively; projective summands are dropped."""
    _check_stable_support(order, x)
    acc: Counter = Counter()
    for j, m in x.items:
        for target, mult in syzygy_of_node(order, j).items:
            acc[target] += m * mult
    return StableObject.of(acc)


def syzygy_of_gamma(order: BackstromOrder) -> StableObject:
    """Stable syzygy of the full overorder, summed over non-projective nodes."""
    acc = StableObject.zero()
    for j in sorted(j_prime(order)):
        acc = acc + syzygy_of_node(order, j)
    return acc


def full_cover_kernel(order: BackstromOrder, j: Node) -> Tuple[int, Counter]:
    """Projective cover data of Q_j over the glued order, nothing dropped.

    Returns the covering part index and the kernel multiset of nodes. A
    node that is already projective is its own cover with empty kernel.
    """
    order._check_node(j)
    v = order.part_of(j)
    kernel: Counter = Counter()
    if order.is_lambda_projective(j):
        return v, kernel
    for j2 in order.part_nodes(v):
        if j2 != j:
            kernel[order.rad_shift(j2)] += 1
    return v, kernel


@dataclass(frozen=True)
class TrivialExtensionData:
    """Valued quiver of the trivial-extension algebra, on global node ids."""

    quiver: ValuedQuiver
    node_of_vertex: Dict[int, Node]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self.quiver.vertices


def build_a_lambda(order: BackstromOrder) -> TrivialExtensionData:
    """Vertices are the non-projective nodes; arrows follow stable syzygies."""
    order.require_valid()
    jp = sorted(j_prime(order))
    ids = {j: order.to_global(j) for j in jp}
    arcs: List[Tuple[int, int]] = []
    for i in jp:
        targets = sorted(syzygy_of_node(order, i).support)
        if len(targets) != len(set(targets)):  # pragma: no cover
            raise InternalInvariantError("parallel arrows in the extension quiver")
        arcs.extend((ids[i], ids[t]) for t in targets)
    quiver = ValuedQuiver.trivial(tuple(ids[j] for j in jp), arcs)
    return TrivialExtensionData(
        quiver=quiver, node_of_vertex={ids[j]: j for j in jp}
    )


def first_syzygy_from_h_module(
    order: BackstromOrder, rep: "HRepresentation"
) -> StableObject:
    """Stable first syzygy of the module a shape-quiver representation encodes.

    The cover kernel in the shape category is concentrated at node vertices
    with dimension dim W_part(j) - rank(alpha_j); each such dimension pulls
    back to a copy of Q_{shift(j)}, and projective summands are dropped.
    """
    acc: Counter = Counter()
    for j in order.nodes():
        v = order.part_of(j)
        alpha = rep.maps[j]
        expected = (rep.node_dims.get(j, 0), rep.part_dims[v])
        if (alpha.rows, alpha.cols) != expected:
            raise ValueError(
                f"map at {j} has shape {(alpha.rows, alpha.cols)}, expected {expected}"
            )
        z = rep.part_dims[v] - rank(alpha)
        if z < 0:  # pragma: no cover
            raise InternalInvariantError("negative kernel dimension")
        if z:
            target = order.rad_shift(j)
            if not order.is_lambda_projective(target):
                acc[target] += z
    return StableObject.of(acc)
