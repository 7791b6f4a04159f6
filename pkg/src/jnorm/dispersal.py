"""Splitting 2-sets into d-dispersed pieces and extending those to (d+1)-sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import DSet
from .errors import PreconditionError


@dataclass(frozen=True)
class TwoSet:
    """Ordered disjoint pairs (n1, n2), (n3, n4), ... with n1 < n2 < ... < n_2k."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        flat = self.flat()
        if any(i < 1 for i in flat):
            raise PreconditionError("indices are 1-based naturals")
        if any(p >= q for p, q in zip(flat, flat[1:])):
            raise PreconditionError("2-set indices must be strictly increasing")

    @classmethod
    def from_flat(cls, indices) -> TwoSet:
        indices = [int(i) for i in indices]
        if len(indices) % 2:
            raise PreconditionError("a 2-set needs an even number of indices")
        return cls(tuple(zip(indices[0::2], indices[1::2])))

    @classmethod
    def from_dset(cls, omega: DSet) -> TwoSet:
        if omega.block_size != 2:
            raise PreconditionError("only 2-block d-sets are 2-sets")
        return cls.from_flat(omega.indices)

    def flat(self) -> tuple[int, ...]:
        return tuple(i for pair in self.pairs for i in pair)

    def as_dset(self) -> DSet:
        return DSet(self.flat(), 2)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class DispersedDecomposition:
    classes: tuple[TwoSet, ...]
    dispersal: int
    bound: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "bound", class_bound(self.dispersal))

    @property
    def m(self) -> int:
        return len(self.classes)


def class_bound(d: int) -> int:
    """Maximum number of classes, floor(d/2) + 2."""
    return d // 2 + 2


def is_d_dispersed(delta: TwoSet, d: int) -> bool:
    """Each pair starts at least d after the previous pair ends."""
    return all(nxt[0] >= prev[1] + d for prev, nxt in zip(delta.pairs, delta.pairs[1:]))


def decompose_dispersed(omega: TwoSet, d: int) -> DispersedDecomposition:
    """Greedy left-to-right split into d-dispersed classes.

    A pair (a, b) joins the first class whose largest index m has m + d <= a;
    otherwise it opens a new class.
    """
    if d < 1:
        raise PreconditionError("dispersal d must be >= 1")
    classes: list[list[tuple[int, int]]] = []
    for a, b in omega.pairs:
        for cls in classes:
            if cls[-1][1] + d <= a:
                cls.append((a, b))
                break
        else:
            classes.append([(a, b)])
    return DispersedDecomposition(tuple(TwoSet(tuple(c)) for c in classes), d)


def extend_to_block_set(delta: TwoSet, d: int) -> DSet:
    """Append b+1, ..., b+d-1 to each pair (a, b), giving a (d+1)-block set."""
    if d < 1:
        raise PreconditionError("dispersal d must be >= 1")
    if not is_d_dispersed(delta, d):
        raise PreconditionError(f"2-set is not {d}-dispersed; extended blocks would collide")
    out: list[int] = []
    for a, b in delta.pairs:
        out.extend((a, b))
        out.extend(range(b + 1, b + d))
    return DSet(tuple(out), d + 1)


def validate_decomposition(omega: TwoSet, dec: DispersedDecomposition) -> bool:
    d = dec.dispersal
    if dec.m > class_bound(d):
        return False
    seen: list[tuple[int, int]] = []
    for cls in dec.classes:
        if not cls.pairs or not is_d_dispersed(cls, d):
            return False
        seen.extend(cls.pairs)
    flat = [i for pair in seen for i in pair]
    if len(set(flat)) != len(flat):
        return False
    return sorted(seen) == sorted(omega.pairs)
