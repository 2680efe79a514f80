"""Finite abelian groups presented as products of cyclic groups.

Elements are residue tuples; component ``i`` lives in ``Z_{d_i}``.  Every
group also carries a dense indexing (mixed radix, last factor fastest) so
that counting code can work on flat arrays of length ``order``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

__all__ = [
    "GroupElement",
    "GroupSpec",
    "make_group",
    "parse_group",
    "add",
    "negate",
    "element_order",
    "enumerate_elements",
    "index_of",
    "element_at",
    "has_element_of_order_gt2",
    "primary_factors",
    "invariant_factors",
    "isomorphic",
    "abelian_presentations",
]

_SPEC_RE = re.compile(r"[0-9]+(x[0-9]+)*")


@dataclass(frozen=True)
class GroupElement:
    residues: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.residues)

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True)
class GroupSpec:
    """``Z_{d_1} x ... x Z_{d_r}`` in the given (non-normalized) presentation."""

    factors: tuple[int, ...]
    order: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.factors)
        if not factors:
            raise ValueError("a group needs at least one cyclic factor")
        bad = [d for d in factors if d < 2]
        if bad:
            raise ValueError(f"cyclic factors must be >= 2, got {bad}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "order", math.prod(factors))

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        acc = 1
        for d in reversed(self.factors):
            strides.append(acc)
            acc *= d
        return tuple(reversed(strides))

    # -- membership and construction --------------------------------------

    def element(self, residues: Sequence[int]) -> GroupElement:
        """Build an element, reducing each residue modulo its factor."""
        if len(residues) != self.rank:
            raise ValueError(
                f"expected {self.rank} residues for group {self}, got {len(residues)}"
            )
        return GroupElement(tuple(int(r) % d for r, d in zip(residues, self.factors)))

    def contains(self, a: GroupElement) -> bool:
        return len(a.residues) == self.rank and all(
            0 <= r < d for r, d in zip(a.residues, self.factors)
        )

    def check(self, a: GroupElement) -> None:
        if not self.contains(a):
            raise ValueError(f"{a.residues} is not an element of {self}")

    @property
    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    # -- arithmetic -------------------------------------------------------

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self.check(a)
        self.check(b)
        return GroupElement(
            tuple((x + y) % d for x, y, d in zip(a.residues, b.residues, self.factors))
        )

    def negate(self, a: GroupElement) -> GroupElement:
        self.check(a)
        return GroupElement(tuple((-x) % d for x, d in zip(a.residues, self.factors)))

    def element_order(self, a: GroupElement) -> int:
        self.check(a)
        return math.lcm(*(d // math.gcd(d, x) for x, d in zip(a.residues, self.factors)))

    # -- dense indexing ---------------------------------------------------

    def elements(self) -> list[GroupElement]:
        return [self.element_at(i) for i in range(self.order)]

    def index_of(self, a: GroupElement) -> int:
        self.check(a)
        return sum(r * s for r, s in zip(a.residues, self._strides))

    def element_at(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise IndexError(f"index {i} out of range for group of order {self.order}")
        return GroupElement(tuple((i // s) % d for s, d in zip(self._strides, self.factors)))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        """``add_table[i][j]`` is the index of ``element_at(i) + element_at(j)``."""
        n = self.order
        digits = [self.element_at(i).residues for i in range(n)]
        table = []
        for x in digits:
            row = []
            for y in digits:
                row.append(
                    sum(((p + q) % d) * s for p, q, d, s in zip(x, y, self.factors, self._strides))
                )
            table.append(tuple(row))
        return tuple(table)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index_of(self.negate(self.element_at(i))) for i in range(self.order))

    # -- classification ---------------------------------------------------

    def has_element_of_order_gt2(self) -> bool:
        return any(d > 2 for d in self.factors)

    def is_elementary_2(self) -> bool:
        """True for ``(Z_2)^m`` with ``m >= 2``; ``Z_2`` itself is excluded."""
        return self.rank >= 2 and all(d == 2 for d in self.factors)

    def is_cyclic(self) -> bool:
        """Isomorphic to a cyclic group (pairwise coprime factors)."""
        return all(
            math.gcd(a, b) == 1
            for i, a in enumerate(self.factors)
            for b in self.factors[i + 1 :]
        )


def make_group(factors: Sequence[int]) -> GroupSpec:
    return GroupSpec(tuple(factors))


def parse_group(text: str) -> GroupSpec:
    """Parse ``"2x4"``-style specs.  Whitespace is rejected."""
    if not _SPEC_RE.fullmatch(text):
        raise ValueError(f"malformed group spec {text!r}; expected e.g. '2x4'")
    return make_group([int(part) for part in text.split("x")])


def add(g: GroupSpec, a: GroupElement, b: GroupElement) -> GroupElement:
    return g.add(a, b)


def negate(g: GroupSpec, a: GroupElement) -> GroupElement:
    return g.negate(a)


def element_order(g: GroupSpec, a: GroupElement) -> int:
    return g.element_order(a)


def enumerate_elements(g: GroupSpec) -> list[GroupElement]:
    return g.elements()


def index_of(g: GroupSpec, a: GroupElement) -> int:
    return g.index_of(a)


def element_at(g: GroupSpec, i: int) -> GroupElement:
    return g.element_at(i)


def has_element_of_order_gt2(g: GroupSpec) -> bool:
    return g.has_element_of_order_gt2()


def prime_powers(d: int) -> list[int]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


def primary_factors(g: GroupSpec) -> tuple[int, ...]:
    """Elementary divisors of ``g`` (sorted prime powers)."""
    return tuple(sorted(q for d in g.factors for q in prime_powers(d)))


def invariant_factors(g: GroupSpec) -> tuple[int, ...]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of ``g``, increasing."""
    by_prime: dict[int, list[int]] = {}
    for q in primary_factors(g):
        p = min(_prime_factorization(q))
        by_prime.setdefault(p, []).append(q)
    width = max(len(v) for v in by_prime.values())
    out = [1] * width
    for powers in by_prime.values():
        for i, q in enumerate(sorted(powers, reverse=True)):
            out[width - 1 - i] *= q
    return tuple(out)


def isomorphic(g: GroupSpec, h: GroupSpec) -> bool:
    return primary_factors(g) == primary_factors(h)


def _partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_presentations(order: int) -> list[GroupSpec]:
    """Invariant-factor and primary presentations of every abelian group of ``order``.

    Both presentations are listed for each isomorphism class (once when they
    coincide).  ``order == 1`` yields nothing since the trivial group has no
    valid presentation here.
    """
    if order < 2:
        return []

    fact = _prime_factorization(order)
    per_prime = [
        [tuple(p**e for e in part) for part in _partitions(k)] for p, k in sorted(fact.items())
    ]
    seen: set[tuple[int, ...]] = set()
    out: list[GroupSpec] = []
    for choice in itertools.product(*per_prime):
        primary = tuple(sorted(q for block in choice for q in block))
        width = max(len(block) for block in choice)
        invariant = []
        for i in range(width):
            # i-th largest power of each prime multiplies into one invariant factor
            d = 1
            for block in choice:
                if i < len(block):
                    d *= block[i]
            invariant.append(d)
        invariant_t = tuple(sorted(invariant))
        for pres in (invariant_t, primary):
            if pres not in seen:
                seen.add(pres)
                out.append(make_group(pres))
    return out
