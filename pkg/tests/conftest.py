from __future__ import annotations

from backstrom import BackstromOrder, GroundField

FIELD = GroundField.prime(5)


def make_order(cycles, parts, field=FIELD) -> BackstromOrder:
    return BackstromOrder.of(field, cycles, parts)


def glued_pair_order(field=FIELD) -> BackstromOrder:
    """Two-node cycle block with both tops glued into one part."""
    return make_order([2], [[1, 2]], field)


def star_order(n: int, field=FIELD) -> BackstromOrder:
    """n one-node blocks, all glued into a single part."""
    return make_order([1] * n, [list(range(1, n + 1))], field)


def paired_cycle_order(s: int) -> BackstromOrder:
    """Single 2s-cycle glued along the disjoint pairs {2i-1, 2i}."""
    return make_order([2 * s], [[2 * i - 1, 2 * i] for i in range(1, s + 1)])


def paired_cycle_with_fixed_point(s: int) -> BackstromOrder:
    """Single (2s+1)-cycle glued along the pairs, last node left alone."""
    parts = [[2 * i - 1, 2 * i] for i in range(1, s + 1)] + [[2 * s + 1]]
    return make_order([2 * s + 1], parts)


def odd_fan_order(s: int) -> BackstromOrder:
    """Single (2s+1)-cycle with all odd nodes glued into one part."""
    parts = [list(range(1, 2 * s + 2, 2))] + [[2 * i] for i in range(1, s + 1)]
    return make_order([2 * s + 1], parts)


def even_fan_order(s: int) -> BackstromOrder:
    """Single (2s+2)-cycle with the odd nodes up to 2s+1 glued into one part."""
    parts = [list(range(1, 2 * s + 2, 2))] + [[2 * i] for i in range(1, s + 2)]
    return make_order([2 * s + 2], parts)
