"""Vertex labels and edge lengths over the integers mod p.

Vertices are the labels ``0..p-1``. The cyclic length of an edge is the
distance around the p-cycle, always in ``1..n`` with ``n = p // 2``.
Multiplying every vertex label by a unit ``k`` (``sigma``) permutes cyclic
lengths through ``phi``, which is what lets one realization stand in for a
whole orbit of multisets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    DomainError,
    InvalidEdgeError,
    MultisetSyntaxError,
    NonInvertibleMultiplierError,
    PrimalityRequiredError,
)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    for f in range(3, isqrt(q) + 1, 2):
        if q % f == 0:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """Number of vertices ``p`` with its half ``n = p // 2``.

    Odd p is the case of interest; even p is admitted because the
    two-length law covers every order, and there the longest cyclic
    length is exactly ``p / 2``.
    """

    p: int
    n: int = field(init=False)
    is_prime: bool = field(init=False)

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise DomainError(f"modulus must be an integer, got {self.p!r}")
        if self.p < 3:
            raise DomainError(f"modulus must be at least 3, got {self.p}")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "n", self.p // 2)
        object.__setattr__(self, "is_prime", is_prime(self.p))

    def require_prime(self, what: str = "this operation") -> None:
        if not self.is_prime:
            raise PrimalityRequiredError(f"{what} needs a prime modulus, got p={self.p}")

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self.p:
            raise DomainError(f"vertex {v} outside 0..{self.p - 1}")
        return int(v)

    def check_unit(self, k: int) -> int:
        if gcd(k, self.p) != 1:
            raise NonInvertibleMultiplierError(f"k={k} is not invertible mod {self.p}")
        return int(k)


def as_modulus(m: Modulus | int) -> Modulus:
    return m if isinstance(m, Modulus) else Modulus(m)


def cyclic_length(m: Modulus, u: int, v: int) -> int:
    m.check_vertex(u)
    m.check_vertex(v)
    if u == v:
        raise InvalidEdgeError(f"self-loop at vertex {u}")
    diff = abs(u - v)
    return min(diff, m.p - diff)


def linear_length(u: int, v: int) -> int:
    if u == v:
        raise InvalidEdgeError(f"self-loop at vertex {u}")
    return abs(u - v)


def phi(m: Modulus, k: int, i: int) -> int:
    """Cyclic length that ``i`` becomes after scaling every label by ``k``."""
    m.check_unit(k)
    if not 1 <= i <= m.n:
        raise DomainError(f"length {i} outside 1..{m.n}")
    r = (k * i) % m.p
    return min(r, m.p - r)


def sigma(m: Modulus, k: int, v: int) -> int:
    m.check_unit(k)
    m.check_vertex(v)
    return (k * v) % m.p


_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


@dataclass(frozen=True)
class LengthMultiset:
    """Immutable multiset of edge lengths tied to a modulus.

    ``items`` holds ``(length, multiplicity)`` pairs in ascending length
    order with every multiplicity positive. With ``linear=True`` lengths
    range over ``1..p-1`` (plain differences of labels) instead of ``1..n``.
    """

    modulus: Modulus
    items: tuple[tuple[int, int], ...]
    linear: bool = False

    def __post_init__(self):
        top = self.max_length
        last = 0
        for d, a in self.items:
            if not 1 <= d <= top:
                raise DomainError(f"length {d} outside 1..{top} for p={self.modulus.p}")
            if a < 1:
                raise DomainError(f"multiplicity of {d} must be positive, got {a}")
            if d <= last:
                raise DomainError("items must be strictly ascending by length")
            last = d

    @classmethod
    def from_counts(cls, m: Modulus, counts: Mapping[int, int] | Iterable[tuple[int, int]], linear: bool = False):
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        merged: dict[int, int] = {}
        for d, a in pairs:
            d, a = int(d), int(a)
            if a < 0:
                raise DomainError(f"negative multiplicity {a} for length {d}")
            if a:
                merged[d] = merged.get(d, 0) + a
        return cls(m, tuple(sorted(merged.items())), linear)

    @classmethod
    def from_lengths(cls, m: Modulus, lengths: Iterable[int], linear: bool = False):
        counts: dict[int, int] = {}
        for d in lengths:
            counts[int(d)] = counts.get(int(d), 0) + 1
        return cls.from_counts(m, counts, linear)

    @property
    def max_length(self) -> int:
        return self.modulus.p - 1 if self.linear else self.modulus.n

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.items)

    @property
    def size(self) -> int:
        return sum(a for _, a in self.items)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.items)

    @property
    def distinct(self) -> int:
        return len(self.items)

    def count(self, d: int) -> int:
        return self.counts.get(d, 0)

    def __contains__(self, d: object) -> bool:
        return self.count(d) > 0  # type: ignore[arg-type]

    def __iter__(self) -> Iterator[int]:
        for d, a in self.items:
            for _ in range(a):
                yield d

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return ",".join(f"{d}^{a}" for d, a in self.items)

    def is_target(self) -> bool:
        return self.size == self.modulus.p - 1

    def require_target(self) -> None:
        if not self.is_target():
            raise DomainError(
                f"multiset {self} has {self.size} elements, a realization needs p-1={self.modulus.p - 1}"
            )

    def dense(self) -> np.ndarray:
        """Counts as an int64 array indexed by length (index 0 unused)."""
        out = np.zeros(self.max_length + 1, dtype=np.int64)
        for d, a in self.items:
            out[d] = a
        return out

    def add(self, d: int, times: int = 1) -> LengthMultiset:
        c = self.counts
        c[d] = c.get(d, 0) + times
        return LengthMultiset.from_counts(self.modulus, c, self.linear)

    def remove(self, d: int, times: int = 1) -> LengthMultiset:
        c = self.counts
        if c.get(d, 0) < times:
            raise DomainError(f"cannot remove {times} copies of {d} from {self}")
        c[d] -= times
        return LengthMultiset.from_counts(self.modulus, c, self.linear)

    def minus(self, other: LengthMultiset) -> LengthMultiset:
        """Multiset difference, truncated at zero."""
        c = self.counts
        for d, a in other.items:
            if d in c:
                c[d] = max(0, c[d] - a)
        return LengthMultiset.from_counts(self.modulus, c, self.linear)


def parse_multiset(text: str, m: Modulus, linear: bool = False) -> LengthMultiset:
    """Parse ``"1^3,2,2"`` style text; repeated terms add up."""
    if not text or not text.strip():
        raise MultisetSyntaxError("empty multiset")
    counts: dict[int, int] = {}
    for term in text.split(","):
        match = _TERM.match(term)
        if match is None:
            raise MultisetSyntaxError(f"bad term {term!r} in {text!r}")
        d = int(match.group(1))
        a = int(match.group(2)) if match.group(2) is not None else 1
        if a == 0:
            raise MultisetSyntaxError(f"zero multiplicity in term {term.strip()!r}")
        counts[d] = counts.get(d, 0) + a
    return LengthMultiset.from_counts(m, counts, linear)


def map_multiset(m: Modulus, k: int, L: LengthMultiset) -> LengthMultiset:
    m.check_unit(k)
    # colliding images only happen for composite p; they merge
    return LengthMultiset.from_counts(m, [(phi(m, k, d), a) for d, a in L.items])


def orbit_images(m: Modulus, L: LengthMultiset) -> list[tuple[int, LengthMultiset]]:
    """``(k, phi_k(L))`` for ``k = 1..n``, duplicates kept."""
    m.require_prime("multiset_orbit")
    return [(k, map_multiset(m, k, L)) for k in range(1, m.n + 1)]


def multiset_orbit(m: Modulus, L: LengthMultiset) -> frozenset[LengthMultiset]:
    return frozenset(image for _, image in orbit_images(m, L))


def all_multisets(m: Modulus, size: int | None = None) -> Iterator[LengthMultiset]:
    """Every multiset of ``size`` (default p-1) lengths from ``1..n``."""
    from itertools import combinations_with_replacement

    size = m.p - 1 if size is None else size
    for combo in combinations_with_replacement(range(1, m.n + 1), size):
        yield LengthMultiset.from_lengths(m, combo)
