"""Truncation sets: finite sets of positive integers closed under division."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import DomainError, UsageError


@dataclass(frozen=True)
class TruncationSet:
    """A finite divisor-closed set of positive integers, stored sorted."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(s) for s in self.elements)
        if any(s < 1 for s in elems):
            raise DomainError(f"truncation set elements must be positive: {elems}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise DomainError(f"truncation set must be strictly increasing: {elems}")
        members = set(elems)
        for s in elems:
            for d in _divisors(s):
                if d not in members:
                    raise DomainError(
                        f"{sorted(members)} is not closed under division: {d} divides {s}"
                    )
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, items: Iterable[int]) -> "TruncationSet":
        """Build from any iterable; sorts and removes duplicates but never closes."""
        return cls(tuple(sorted(set(int(x) for x in items))))

    @classmethod
    def parse(cls, text: str) -> "TruncationSet":
        """Parse ``"1..m"`` or ``"{a,b,c}"`` (also ``"{}"``)."""
        t = text.strip()
        m = re.fullmatch(r"1\s*\.\.\s*(\d+)", t)
        if m:
            return ts_interval(int(m.group(1)))
        m = re.fullmatch(r"\{\s*(.*?)\s*\}", t)
        if m:
            body = m.group(1)
            if not body:
                return cls(())
            try:
                items = [int(x) for x in body.split(",")]
            except ValueError:
                raise UsageError(f"malformed truncation set {text!r}") from None
            return cls.of(items)
        raise UsageError(f"malformed truncation set {text!r}; expected '1..m' or '{{a,b,c}}'")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, s):
        return s in self._index

    def __str__(self):
        n = len(self.elements)
        if n and self.elements == tuple(range(1, n + 1)):
            return f"1..{n}"
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __repr__(self):
        return f"TruncationSet({self})"

    def issubset(self, other: "TruncationSet") -> bool:
        return all(s in other for s in self.elements)

    @cached_property
    def _index(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.elements)}

    def index(self, s: int) -> int:
        return self._index[s]

    @cached_property
    def divisor_table(self) -> tuple[tuple[int, ...], ...]:
        """For each element (by position), the positions of its proper divisors."""
        idx = self._index
        return tuple(
            tuple(idx[d] for d in _divisors(s) if d != s) for s in self.elements
        )


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def ts_interval(m: int) -> TruncationSet:
    """The set {1, ..., m}; empty for m = 0."""
    if m < 0:
        raise DomainError(f"interval length must be nonnegative, got {m}")
    return TruncationSet(tuple(range(1, m + 1)))


def ts_divide(S: TruncationSet, n: int) -> TruncationSet:
    """S/n = {s : n*s in S}."""
    if n < 1:
        raise DomainError(f"divisor must be positive, got {n}")
    return TruncationSet(tuple(s // n for s in S.elements if s % n == 0))


def p_typical_set(p: int, t: int) -> TruncationSet:
    """{1, p, ..., p^(t-1)}."""
    return TruncationSet(tuple(p**v for v in range(t)))


def p_free_part(n: int, p: int) -> tuple[int, int]:
    """Write n = p^v * n' with p not dividing n'; return (v, n')."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def p_typical_lengths(S: TruncationSet, p: int) -> dict[int, int]:
    """Map each p-free j in S to t_j = #{v >= 0 : j p^v in S}."""
    lengths: dict[int, int] = {}
    for s in S.elements:
        _, j = p_free_part(s, p)
        lengths[j] = lengths.get(j, 0) + 1
    return dict(sorted(lengths.items()))
