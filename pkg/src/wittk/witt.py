"""Big Witt vectors W_S(R) for R = Z or Z/m.

A vector stores one coefficient per element of its truncation set. Ring
operations go through ghost coordinates

    w_s(a) = sum_{d | s} d * a_d^(s/d),

which turn Witt addition and multiplication into componentwise arithmetic.
For R = Z/m every operation lifts the coefficients to [0, m), computes in
W_S(Z) and reduces; the Witt polynomials have integer coefficients, so this
is the operation of W_S(Z/m).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DomainError, UsageError
from .truncation import (
    TruncationSet,
    p_typical_lengths,
    p_typical_set,
    ts_divide,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class WittVector:
    """Coefficients (a_s) for s in ``set``, ordered like ``set.elements``.

    ``modulus`` 0 means integer coefficients; m > 0 means Z/m with canonical
    representatives in [0, m).
    """

    set: TruncationSet
    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.modulus < 0:
            raise DomainError(f"modulus must be nonnegative, got {self.modulus}")
        if len(coeffs) != len(self.set):
            raise UsageError(
                f"expected {len(self.set)} coefficients for {self.set}, got {len(coeffs)}"
            )
        if self.modulus and any(not 0 <= c < self.modulus for c in coeffs):
            raise DomainError(f"coefficients must lie in [0, {self.modulus}): {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def make(cls, S: TruncationSet, coeffs: Iterable[int], modulus: int = 0) -> "WittVector":
        """Like the constructor but reduces coefficients by the modulus first."""
        cs = [int(c) for c in coeffs]
        if modulus:
            cs = [c % modulus for c in cs]
        return cls(S, modulus, tuple(cs))

    @classmethod
    def from_mapping(cls, S: TruncationSet, coeffs: Mapping[int, int], modulus: int = 0):
        """Coefficients given as {s: a_s}; missing indices are zero."""
        extra = set(coeffs) - set(S.elements)
        if extra:
            raise UsageError(f"indices {sorted(extra)} not in {S}")
        return cls.make(S, [coeffs.get(s, 0) for s in S], modulus)

    def __getitem__(self, s: int) -> int:
        return self.coeffs[self.set.index(s)]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.set.elements, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def reduce(self, m: int) -> "WittVector":
        """Image under the coefficientwise projection Z -> Z/m (or Z/m' -> Z/m for m | m')."""
        if self.modulus and self.modulus % m:
            raise DomainError(f"cannot reduce modulus {self.modulus} to {m}")
        return WittVector.make(self.set, self.coeffs, m)

    def lift(self) -> "WittVector":
        """Canonical integral lift (representatives are already in [0, m))."""
        return WittVector(self.set, 0, self.coeffs)

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def __mul__(self, other):
        if isinstance(other, WittVector):
            return witt_mul(self, other)
        return NotImplemented

    def __rmul__(self, n):
        if isinstance(n, int):
            return scalar_int(n, self)
        return NotImplemented

    def to_json(self) -> str:
        return json.dumps(
            {"coeffs": list(self.coeffs), "modulus": self.modulus, "set": list(self.set)},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "WittVector":
        obj = json.loads(text)
        try:
            S = TruncationSet.of(obj["set"])
            return cls.make(S, obj["coeffs"], int(obj.get("modulus", 0)))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed Witt vector JSON: {exc}") from None

    def to_csv(self) -> str:
        return ",".join(map(str, self.coeffs))


@dataclass(frozen=True)
class GhostVector:
    set: TruncationSet
    values: tuple[int, ...]

    def __getitem__(self, s: int) -> int:
        return self.values[self.set.index(s)]


def zero(S: TruncationSet, modulus: int = 0) -> WittVector:
    return WittVector(S, modulus, (0,) * len(S))


def teichmuller(c: int, S: TruncationSet, modulus: int = 0) -> WittVector:
    """Teichmüller representative [c] = (c, 0, 0, ...)."""
    if not len(S):
        return zero(S, modulus)
    return WittVector.make(S, (c,) + (0,) * (len(S) - 1), modulus)


def unit(S: TruncationSet, modulus: int = 0) -> WittVector:
    return teichmuller(1, S, modulus)


def _ghost_values(S: TruncationSet, coeffs: tuple[int, ...]) -> list[int]:
    divs = S.divisor_table
    elems = S.elements
    out = []
    for i, s in enumerate(elems):
        w = s * coeffs[i]
        for di in divs[i]:
            d = elems[di]
            w += d * coeffs[di] ** (s // d)
        out.append(w)
    return out


def _solve_ghost(S: TruncationSet, values: Iterable[int]) -> list[int]:
    divs = S.divisor_table
    elems = S.elements
    coeffs: list[int] = []
    for i, (s, w) in enumerate(zip(elems, values)):
        for di in divs[i]:
            d = elems[di]
            w -= d * coeffs[di] ** (s // d)
        q, r = divmod(w, s)
        if r:
            raise DomainError(f"ghost vector not in image (index {s})")
        coeffs.append(q)
    return coeffs


def ghost(a: WittVector) -> GhostVector:
    if a.modulus:
        raise DomainError("ghost requires integral coefficients")
    return GhostVector(a.set, tuple(_ghost_values(a.set, a.coeffs)))


def from_ghost(g: GhostVector) -> WittVector:
    return WittVector(g.set, 0, tuple(_solve_ghost(g.set, g.values)))


def _check_pair(a: WittVector, b: WittVector):
    if a.set != b.set or a.modulus != b.modulus:
        raise UsageError(
            f"Witt vectors live in different rings: W_{a.set}(mod {a.modulus}) vs W_{b.set}(mod {b.modulus})"
        )


def _finish(S: TruncationSet, values: Iterable[int], modulus: int) -> WittVector:
    return WittVector.make(S, _solve_ghost(S, values), modulus)


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check_pair(a, b)
    ga = _ghost_values(a.set, a.coeffs)
    gb = _ghost_values(b.set, b.coeffs)
    return _finish(a.set, (x + y for x, y in zip(ga, gb)), a.modulus)


def witt_neg(a: WittVector) -> WittVector:
    # [-1] is not the additive inverse of [1], so negate in ghost coordinates
    ga = _ghost_values(a.set, a.coeffs)
    return _finish(a.set, (-x for x in ga), a.modulus)


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    _check_pair(a, b)
    ga = _ghost_values(a.set, a.coeffs)
    gb = _ghost_values(b.set, b.coeffs)
    return _finish(a.set, (x - y for x, y in zip(ga, gb)), a.modulus)


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    _check_pair(a, b)
    ga = _ghost_values(a.set, a.coeffs)
    gb = _ghost_values(b.set, b.coeffs)
    return _finish(a.set, (x * y for x, y in zip(ga, gb)), a.modulus)


def scalar_int(n: int, a: WittVector) -> WittVector:
    """n-fold Witt sum of a, by binary doubling; negative n negates."""
    if n < 0:
        return scalar_int(-n, witt_neg(a))
    result = zero(a.set, a.modulus)
    base = a
    while n:
        if n & 1:
            result = witt_add(result, base)
        n >>= 1
        if n:
            base = witt_add(base, base)
    return result


def verschiebung(n: int, a: WittVector, target: TruncationSet) -> WittVector:
    """V_n : W_{S/n} -> W_S, placing a_s at slot n*s."""
    if n < 1:
        raise DomainError(f"Verschiebung index must be positive, got {n}")
    if a.set != ts_divide(target, n):
        raise UsageError(f"V_{n} into {target} needs a vector on {ts_divide(target, n)}, got {a.set}")
    coeffs = [a[s // n] if s % n == 0 else 0 for s in target]
    return WittVector(target, a.modulus, tuple(coeffs))


def frobenius(n: int, a: WittVector) -> WittVector:
    """F_n : W_S -> W_{S/n}, characterised by w_s(F_n a) = w_{ns}(a)."""
    if n < 1:
        raise DomainError(f"Frobenius index must be positive, got {n}")
    S = a.set
    T = ts_divide(S, n)
    g = _ghost_values(S, a.coeffs)
    values = [g[S.index(n * s)] for s in T]
    try:
        return _finish(T, values, a.modulus)
    except DomainError as exc:  # integrality of F_n is a theorem
        raise AssertionError(f"Frobenius produced a non-integral vector: {exc}") from None


def restrict(a: WittVector, T: TruncationSet) -> WittVector:
    if not T.issubset(a.set):
        raise UsageError(f"{T} is not a subset of {a.set}")
    return WittVector(T, a.modulus, tuple(a[s] for s in T))


def _p_typical_length(S: TruncationSet, p: int) -> int:
    t = len(S)
    if S != p_typical_set(p, t):
        raise UsageError(f"{S} is not of the form {{1, {p}, ..., {p}^(t-1)}}")
    return t


def p_typ_to_int(w: WittVector) -> int:
    """The residue n mod p^t with n * 1 = w in W_t(F_p) = W_{1,p,...,p^(t-1)}(F_p).

    Digits are peeled off one at a time: subtract c * 1 where c is the first
    coefficient; what remains is V_p of a shorter vector, and V_p = p on
    W(F_p).
    """
    p = w.modulus
    require_prime(p)
    t = _p_typical_length(w.set, p)
    n, scale, cur = 0, 1, w
    for _ in range(t):
        c = cur.coeffs[0]
        cur = witt_sub(cur, scalar_int(c, unit(cur.set, p)))
        assert cur.coeffs[0] == 0, "digit extraction left a nonzero first coefficient"
        n += c * scale
        scale *= p
        shorter = p_typical_set(p, len(cur.set) - 1)
        cur = WittVector(shorter, p, cur.coeffs[1:])
    return n


def p_typ_to_int_bruteforce(w: WittVector, limit: int = 4096) -> int:
    """Enumerate n * 1 for n < p^t until it matches w."""
    p = w.modulus
    t = _p_typical_length(w.set, p)
    if p**t > limit:
        raise DomainError(f"p^t = {p**t} exceeds brute-force limit {limit}")
    one = unit(w.set, p)
    cur = zero(w.set, p)
    for n in range(p**t):
        if cur == w:
            return n
        cur = witt_add(cur, one)
    raise AssertionError(f"{w} is not a multiple of 1")


def int_to_p_typ(n: int, p: int, t: int) -> WittVector:
    require_prime(p)
    return scalar_int(n % p**t, unit(p_typical_set(p, t), p))


def decompose(a: WittVector, p: int | None = None) -> dict[int, int]:
    """Additive isomorphism W_S(F_p) -> sum over p-free j in S of Z/p^(t_j).

    Component j is F_j(a) restricted to {1, p, ..., p^(t_j - 1)} and read as
    a residue mod p^(t_j).
    """
    if p is None:
        p = a.modulus
    require_prime(p)
    if a.modulus != p:
        raise DomainError(f"decompose needs coefficients in F_{p}, got modulus {a.modulus}")
    out = {}
    for j, t in p_typical_lengths(a.set, p).items():
        fa = frobenius(j, a)
        out[j] = p_typ_to_int(restrict(fa, p_typical_set(p, t)))
    return out


def compose_components(parts: Mapping[int, int], S: TruncationSet, p: int) -> WittVector:
    """Inverse of :func:`decompose`, found by solving one component at a time.

    Adding V_j(x) only moves components indexed by multiples of j, so fixing
    components in increasing order is triangular.
    """
    require_prime(p)
    lengths = p_typical_lengths(S, p)
    a = zero(S, p)
    for j in sorted(lengths):
        t = lengths[j]
        have = decompose(a, p)[j]
        want = parts.get(j, 0) % p**t
        if have == want:
            continue
        Sj = ts_divide(S, j)
        # V_j(x) has component j equal to j * x for p-typical x, and j is a unit mod p
        delta = (want - have) * pow(j, -1, p**t) % p**t
        x = restrict(int_to_p_typ(delta, p, t), p_typical_set(p, t))
        lifted = WittVector.from_mapping(Sj, x.as_dict(), p)
        a = witt_add(a, verschiebung(j, lifted, S))
    return a
