"""Relative K-groups of F_p[x]/(x^m) as Witt vector quotients.

K_{2j-1}(F_p[x]/(x^m), (x)) is presented as W_{jm}(F_p) / V_m W_j(F_p). The
additive group W_S(F_p) is written in p-typical coordinates

    W_S(F_p) = sum over p-free e in S of Z/p^(t_e),

so every group here is a finite abelian p-group given by an integer matrix,
and the power map x -> x^n becomes the matrix of V_n in those coordinates.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .abgroup import (
    AbGroupPresentation,
    GroupMap,
    SESReport,
    format_group,
    identity,
    induced_map,
    quotient_by_columns,
    ses_check,
    trivial_group,
)
from .errors import DomainError, ResourceError
from .truncation import TruncationSet, p_free_part, p_typical_lengths, ts_divide, ts_interval
from .witt import (
    WittVector,
    decompose,
    require_prime,
    teichmuller,
    verschiebung,
)

DEFAULT_ORACLE_BOUND = 2**20
DEFAULT_MAX_ORDER_BITS = 64


def witt_group(p: int, S: TruncationSet) -> tuple[tuple[tuple[int, int], ...], AbGroupPresentation]:
    """W_S(F_p) as sum of Z/p^(t_e); returns ((e, t_e), ...) and the presentation."""
    require_prime(p)
    comps = tuple(p_typical_lengths(S, p).items())
    return comps, AbGroupPresentation.cyclic_sum([p**t for _, t in comps])


def v_matrix(p: int, source: TruncationSet, n: int, target: TruncationSet) -> list[list[int]]:
    """Matrix of V_n : W_source(F_p) -> W_target(F_p) in p-typical coordinates.

    With n = p^v n' (p not dividing n'), component e goes to component e n'
    multiplied by n' p^v; all other entries vanish.
    """
    require_prime(p)
    if source != ts_divide(target, n):
        raise DomainError(f"V_{n} into {target} starts from {ts_divide(target, n)}, not {source}")
    v, n_free = p_free_part(n, p)
    src = list(p_typical_lengths(source, p))
    tgt = {e: i for i, e in enumerate(p_typical_lengths(target, p))}
    M = [[0] * len(src) for _ in tgt]
    for col, e in enumerate(src):
        M[tgt[e * n_free]][col] = n_free * p**v
    return M


def random_witt(S: TruncationSet, p: int, rng: random.Random) -> WittVector:
    return WittVector(S, p, tuple(rng.randrange(p) for _ in S))


def check_v_matrix(p: int, source: TruncationSet, n: int, target: TruncationSet,
                   samples: int, rng: random.Random) -> list[WittVector]:
    """Compare decompose(V_n a) with the V_n matrix applied to decompose(a).

    Returns the sampled vectors where the two routes disagree.
    """
    M = v_matrix(p, source, n, target)
    tgt_len = p_typical_lengths(target, p)
    bad = []
    for _ in range(samples):
        a = random_witt(source, p, rng)
        x = list(decompose(a, p).values())
        direct = decompose(verschiebung(n, a, target), p)
        via_matrix = [sum(r * c for r, c in zip(row, x)) for row in M]
        for (e, t), y in zip(tgt_len.items(), via_matrix):
            if direct[e] != y % p**t:
                bad.append(a)
                break
    return bad


@dataclass(frozen=True)
class WittQuotient:
    """W_S(F_p) / V_m W_{S/m}(F_p) with its coordinate bookkeeping."""

    p: int
    S: TruncationSet
    m: int
    components: tuple[tuple[int, int], ...]
    ambient: AbGroupPresentation
    generators: tuple[tuple[int, ...], ...]
    group: AbGroupPresentation


def witt_quotient_group(p: int, S: TruncationSet, m: int) -> WittQuotient:
    """Quotient of W_S(F_p) by the image of V_m, in p-typical coordinates.

    The image is generated by V_m V_s [c] for s in S/m and 0 < c < p; each
    generator is built as a Witt vector and decomposed.
    """
    require_prime(p)
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    comps, ambient = witt_group(p, S)
    Sm = ts_divide(S, m)
    gens = []
    for s in Sm:
        inner = ts_divide(Sm, s)
        for c in range(1, p):
            x = verschiebung(s, teichmuller(c, inner, p), Sm)
            parts = decompose(verschiebung(m, x, S), p)
            gens.append(tuple(parts[e] for e, _ in comps))
    group = quotient_by_columns(ambient, gens)
    return WittQuotient(p, S, m, comps, ambient, tuple(gens), group)


@dataclass(frozen=True)
class KGroupReport:
    p: int
    m: int
    j: int
    degree: int
    group: AbGroupPresentation
    components: tuple[tuple[int, int], ...] = ()
    quotient: Optional[WittQuotient] = field(default=None, repr=False, compare=False)
    oracle_checked: bool = False

    @property
    def invariant_factors(self) -> list[int]:
        """Largest first, e.g. [4, 2] for Z/4 + Z/2."""
        return sorted(self.group.invariant_factors, reverse=True)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def expected_order(self) -> int:
        if self.degree % 2 == 0:
            return 1
        return self.p ** (self.j * (self.m - 1))

    def to_dict(self) -> dict:
        return {
            "ambient": [list(c) for c in self.components],
            "degree": self.degree,
            "invariant_factors": self.invariant_factors,
            "j": self.j,
            "m": self.m,
            "oracle_checked": self.oracle_checked,
            "order": str(self.order),
            "p": self.p,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self):
        return (f"K_{self.degree}(F_{self.p}[x]/(x^{self.m}), (x)) = "
                f"{format_group(self.group.invariant_factors)}  (order {self.order})")


def _check_params(p: int, m: int, j: int):
    require_prime(p)
    if m < 1 or j < 1:
        raise DomainError(f"m and j must be positive, got m={m}, j={j}")


def k_group(p: int, m: int, j: int) -> KGroupReport:
    """K_{2j-1}(F_p[x]/(x^m), (x)) = W_{jm}(F_p) / V_m W_j(F_p)."""
    _check_params(p, m, j)
    q = witt_quotient_group(p, ts_interval(j * m), m)
    return KGroupReport(p, m, j, 2 * j - 1, q.group, q.components, q)


def k_group_even(p: int, m: int, j: int) -> KGroupReport:
    """K_{2j}(F_p[x]/(x^m), (x)), which vanishes."""
    _check_params(p, m, j)
    return KGroupReport(p, m, j, 2 * j, trivial_group())


def guard_order_bits(p: int, size: int, max_order_bits: int):
    """Refuse W_S(F_p) with p^|S| above 2^max_order_bits."""
    if p**size > 2**max_order_bits:
        raise ResourceError(
            f"|W_S(F_{p})| = {p}^{size} exceeds the 2^{max_order_bits} bound"
        )


def v_map(p: int, m: int, n: int, j: int) -> GroupMap:
    """The power map x -> x^n on K_{2j-1}, induced by V_n on Witt vectors."""
    _check_params(p, m, j)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    src = k_group(p, m, j).group
    tgt = k_group(p, m * n, j).group
    M = v_matrix(p, ts_interval(j * m), n, ts_interval(j * m * n))
    return induced_map(M, src, tgt)


@dataclass(frozen=True)
class SESDiagramReport:
    p: int
    m: int
    n: int
    j: int
    top_row: SESReport
    bottom_row: SESReport
    left_square_witt: bool
    left_square_matrix: bool
    right_square: bool
    v_injective: bool

    def failures(self) -> list[str]:
        out = [f"top_row.{f}" for f in self.top_row.failures()]
        out += [f"bottom_row.{f}" for f in self.bottom_row.failures()]
        for name in ("left_square_witt", "left_square_matrix", "right_square", "v_injective"):
            if not getattr(self, name):
                out.append(name)
        return out

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_dict(self) -> dict:
        return {"failures": self.failures(), "j": self.j, "m": self.m, "n": self.n,
                "ok": self.ok, "p": self.p}


def _row(p: int, m: int, j: int):
    """0 -> W_j -V_m-> W_{jm} -> K_{2j-1}(x^m) -> 0 as a pair of GroupMaps."""
    Sj, Sjm = ts_interval(j), ts_interval(j * m)
    _, Wj = witt_group(p, Sj)
    _, Wjm = witt_group(p, Sjm)
    K = k_group(p, m, j).group
    vm = induced_map(v_matrix(p, Sj, m, Sjm), Wj, Wjm)
    proj = induced_map(identity(Wjm.rank), Wjm, K)
    return vm, proj


def ses_diagram_check(p: int, m: int, n: int, j: int) -> SESDiagramReport:
    """Verify the map of short exact sequences induced by x -> x^n."""
    _check_params(p, m, j)
    top_v, top_pr = _row(p, m, j)
    bot_v, bot_pr = _row(p, m * n, j)
    Sj, Sjm, Sjmn = ts_interval(j), ts_interval(j * m), ts_interval(j * m * n)
    vn = induced_map(v_matrix(p, Sjm, n, Sjmn), top_v.target, bot_v.target)

    witt_ok = True
    for s in Sj:
        for c in range(1, p):
            x = verschiebung(s, teichmuller(c, ts_divide(Sj, s), p), Sj)
            if verschiebung(n, verschiebung(m, x, Sjm), Sjmn) != verschiebung(m * n, x, Sjmn):
                witt_ok = False

    vmap = v_map(p, m, n, j)
    return SESDiagramReport(
        p, m, n, j,
        top_row=ses_check(top_v, top_pr),
        bottom_row=ses_check(bot_v, bot_pr),
        left_square_witt=witt_ok,
        left_square_matrix=top_v.then(vn).equals(bot_v),
        right_square=vn.then(bot_pr).equals(top_pr.then(vmap)),
        v_injective=vmap.is_injective,
    )


@dataclass(frozen=True)
class TowerStage:
    index: int
    report: KGroupReport
    transition: Optional[GroupMap] = field(default=None, repr=False)

    @property
    def transition_injective(self) -> Optional[bool]:
        return None if self.transition is None else self.transition.is_injective

    def to_dict(self) -> dict:
        d = self.report.to_dict()
        d["stage"] = self.index
        d["transition_injective"] = self.transition_injective
        return d


def _tower(p: int, j: int, N: int, level, max_order_bits: int) -> list[TowerStage]:
    require_prime(p)
    if j < 1 or N < 1:
        raise DomainError(f"j and N must be positive, got j={j}, N={N}")
    ms = [level(n) for n in range(1, N + 1)]
    for m in ms:
        guard_order_bits(p, j * m, max_order_bits)
    reports = [k_group(p, m, j) for m in ms]
    stages = []
    for idx, (m, rep) in enumerate(zip(ms, reports)):
        trans = None
        if idx + 1 < len(ms):
            nxt = ms[idx + 1]
            assert nxt == m * p
            M = v_matrix(p, ts_interval(j * m), p, ts_interval(j * nxt))
            trans = induced_map(M, rep.group, reports[idx + 1].group)
        stages.append(TowerStage(idx + 1, rep, trans))
    return stages


def fermat_level(p: int, n: int) -> int:
    return p**n


def cyclotomic_level(p: int, n: int) -> int:
    return p ** (n - 1) * (p - 1)


def tower_fermat(p: int, j: int, N: int, max_order_bits: int = DEFAULT_MAX_ORDER_BITS) -> list[TowerStage]:
    """Stages W_{jp^n}/V_{p^n} W_j, n = 1..N, joined by the maps induced by V_p."""
    return _tower(p, j, N, lambda n: fermat_level(p, n), max_order_bits)


def tower_cyclotomic(p: int, j: int, N: int, max_order_bits: int = DEFAULT_MAX_ORDER_BITS) -> list[TowerStage]:
    """Stages W_{jp^(n-1)(p-1)}/V_{p^(n-1)(p-1)} W_j, n = 1..N, joined by V_p."""
    return _tower(p, j, N, lambda n: cyclotomic_level(p, n), max_order_bits)


def max_stages(p: int, j: int, kind: str, max_order_bits: int = DEFAULT_MAX_ORDER_BITS) -> int:
    """Largest N for which every stage of the tower fits under the order guard."""
    level = fermat_level if kind == "fermat" else cyclotomic_level
    n = 0
    while p ** (j * level(p, n + 1)) <= 2**max_order_bits:
        n += 1
    return n


# -- brute-force oracle for j = 1 ---------------------------------------------------

def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    m = len(a)
    out = [0] * m
    for i, x in enumerate(a):
        if x:
            for k in range(m - i):
                out[i + k] = (out[i + k] + x * b[k]) % p
    return tuple(out)


def unit_group_oracle(p: int, m: int, bound: int = DEFAULT_ORACLE_BOUND) -> list[int]:
    """Invariant factors (largest first) of the principal units 1 + x F_p[x]/(x^m).

    Enumerates every unit, finds the p-power order of each by repeated
    multiplication, and recovers the factors from the sizes of the p^k-torsion
    subgroups.
    """
    require_prime(p)
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if p ** (m - 1) > bound:
        raise ResourceError(f"{p}^{m - 1} units exceed the enumeration bound {bound}")
    one = (1,) + (0,) * (m - 1)
    exponents = []
    for tail in itertools.product(range(p), repeat=m - 1):
        u = (1,) + tail
        k, cur = 0, u
        while cur != one:
            power = one
            for _ in range(p):
                power = _poly_mul(power, cur, p)
            cur = power
            k += 1
        exponents.append(k)
    # |G[p^k]| = p^(sum_i min(k, e_i)); differences count factors with e_i >= k
    logs = []
    top = max(exponents, default=0)
    for k in range(top + 2):
        count = sum(1 for e in exponents if e <= k)
        lg = 0
        while count % p == 0 and count > 1:
            count //= p
            lg += 1
        assert count == 1, "torsion subgroup size is not a power of p"
        logs.append(lg)
    at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
    factors = []
    for k in range(1, len(at_least) + 1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        factors += [p**k] * exactly
    return sorted(factors, reverse=True)
