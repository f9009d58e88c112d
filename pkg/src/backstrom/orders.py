"""Split basic orders with hereditary overorder glued along a partition.

The hereditary overorder is a product of standard cycle orders over
R = k[[pi]], one factor per block. Its indecomposable projectives are the
*nodes* (block, pos); the radical shifts them cyclically within a block,
rad Q_(b,i) = Q_(b,i+1), and the coradical shifts the other way. The
smaller order glues node tops along a partition: each part yields one
indecomposable projective, obtained as the pullback of the part's nodes
over their common top, and Q_j stays projective over the glued order
exactly when its part is a singleton. The radical of the glued order
equals the radical of the hereditary one by construction.

Externally nodes are numbered 1..N with blocks concatenated in
declaration order; (block, pos) is the internal name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidOrderError
from .linalg import GroundField


@dataclass(frozen=True, order=True)
class Node:
    """Indecomposable projective of the hereditary overorder."""

    block: int
    pos: int


@dataclass(frozen=True)
class HereditarySpec:
    """Cycle lengths n_1..n_m of the hereditary overorder's blocks."""

    cycles: Tuple[int, ...]


@dataclass(frozen=True)
class GluingPartition:
    """Partition of the global node ids 1..N describing the gluing."""

    parts: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


class BackstromOrder:
    """A glued order, possibly invalid until :meth:`violations` says otherwise."""

    def __init__(
        self,
        field: GroundField,
        hereditary: HereditarySpec,
        gluing: GluingPartition,
    ) -> None:
        self.field = field
        self.hereditary = hereditary
        self.gluing = gluing
        self._violations: Optional[List[Violation]] = None
        self._part_of: Dict[Node, int] = {}

    @staticmethod
    def of(
        field: GroundField,
        cycles: Sequence[int],
        parts: Sequence[Sequence[int]],
    ) -> "BackstromOrder":
        return BackstromOrder(
            field,
            HereditarySpec(tuple(int(c) for c in cycles)),
            GluingPartition(tuple(tuple(int(j) for j in p) for p in parts)),
        )

    # -- global numbering ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return sum(self.hereditary.cycles)

    def nodes(self) -> List[Node]:
        return [
            Node(b, i)
            for b, n in enumerate(self.hereditary.cycles)
            for i in range(n)
        ]

    def to_global(self, node: Node) -> int:
        offset = sum(self.hereditary.cycles[: node.block])
        return offset + node.pos + 1

    def to_node(self, global_id: int) -> Node:
        g = global_id - 1
        for b, n in enumerate(self.hereditary.cycles):
            if g < n:
                return Node(b, g)
            g -= n
        raise InvalidOrderError([Violation("unknown-node", f"node {global_id}")])

    # -- validation ----------------------------------------------------------

    def violations(self) -> List[Violation]:
        if self._violations is not None:
            return self._violations
        out: List[Violation] = []
        if not self.hereditary.cycles:
            out.append(Violation("empty-hereditary", "no cycle blocks declared"))
        for b, n in enumerate(self.hereditary.cycles):
            if n < 1:
                out.append(Violation("bad-cycle-length", f"block {b} has length {n}"))
        if not out:
            total = self.node_count
            seen: Dict[int, int] = {}
            for v, part in enumerate(self.gluing.parts):
                if not part:
                    out.append(Violation("empty-part", f"part {v} is empty"))
                for j in part:
                    if not 1 <= j <= total:
                        out.append(
                            Violation("unknown-node", f"part {v} names node {j}")
                        )
                    elif j in seen:
                        out.append(
                            Violation(
                                "repeated-node",
                                f"node {j} repeated in parts {seen[j]} and {v}",
                            )
                        )
                    else:
                        seen[j] = v
            for j in range(1, total + 1):
                if j not in seen:
                    out.append(Violation("uncovered-node", f"node {j} uncovered"))
        self._violations = out
        if not out:
            for v, part in enumerate(self.gluing.parts):
                for j in part:
                    self._part_of[self.to_node(j)] = v
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def require_valid(self) -> None:
        if not self.is_valid:
            raise InvalidOrderError(self.violations())

    # -- node combinatorics ---------------------------------------------------

    def _check_node(self, j: Node) -> None:
        self.require_valid()
        cycles = self.hereditary.cycles
        if not (0 <= j.block < len(cycles) and 0 <= j.pos < cycles[j.block]):
            raise InvalidOrderError([Violation("unknown-node", f"{j}")])

    def rad_shift(self, j: Node) -> Node:
        """The node of rad Q_j, one step forward around its block."""
        self._check_node(j)
        return Node(j.block, (j.pos + 1) % self.hereditary.cycles[j.block])

    def corad_shift(self, j: Node) -> Node:
        """The node of corad Q_j, one step backward around its block."""
        self._check_node(j)
        return Node(j.block, (j.pos - 1) % self.hereditary.cycles[j.block])

    def part_of(self, j: Node) -> int:
        self._check_node(j)
        return self._part_of[j]

    def part_nodes(self, v: int) -> Tuple[Node, ...]:
        self.require_valid()
        return tuple(self.to_node(j) for j in self.gluing.parts[v])

    def is_lambda_projective(self, j: Node) -> bool:
        """Whether Q_j stays projective over the glued order."""
        return len(self.gluing.parts[self.part_of(j)]) == 1

    def lambda_is_hereditary(self) -> bool:
        """The glued order equals its hereditary overorder iff nothing glues."""
        self.require_valid()
        return all(len(p) == 1 for p in self.gluing.parts)


def validate(order: BackstromOrder) -> List[Violation]:
    """Every broken structural invariant, with the offending node or part."""
    return order.violations()
