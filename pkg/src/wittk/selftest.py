"""Acceptance checks shared by ``wittk selftest`` and the test suite.

Each check returns a CriterionResult; a check passes only if every assertion
holds and it finished inside its time budget.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from . import nerve
from .ktheory import (
    DEFAULT_MAX_ORDER_BITS,
    check_v_matrix,
    k_group,
    k_group_even,
    max_stages,
    ses_diagram_check,
    tower_cyclotomic,
    tower_fermat,
    unit_group_oracle,
    v_map,
)
from .truncation import p_typical_lengths, ts_divide, ts_interval
from .witt import (
    WittVector,
    decompose,
    frobenius,
    from_ghost,
    ghost,
    scalar_int,
    teichmuller,
    verschiebung,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    failures: list[str] = field(default_factory=list)
    checks: int = 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number}. {self.name}: {self.checks} checks in {self.elapsed:.2f}s (limit {self.limit:.0f}s)"
        if self.failures:
            text += "; first failure: " + self.failures[0]
        return text

    def to_dict(self) -> dict:
        return {"checks": self.checks, "elapsed": round(self.elapsed, 3), "failures": self.failures[:10],
                "limit": self.limit, "name": self.name, "number": self.number, "passed": self.passed}


class _Recorder:
    def __init__(self):
        self.failures: list[str] = []
        self.checks = 0

    def expect(self, ok: bool, what: str):
        self.checks += 1
        if not ok:
            self.failures.append(what)


def oracle_equivalence(rec: _Recorder, quick: bool = False):
    bound = 2**10 if quick else 2**20
    for p in (2, 3, 5):
        for m in range(2, 7):
            if p ** (m - 1) > bound:
                continue
            got = k_group(p, m, 1).invariant_factors
            want = unit_group_oracle(p, m, bound)
            rec.expect(got == want, f"p={p} m={m}: {got} != oracle {want}")


def order_law(rec: _Recorder, quick: bool = False):
    for p in (2, 3):
        for j in range(1, 3 if quick else 5):
            for m in range(1, 7):
                rep = k_group(p, m, j)
                rec.expect(rep.order == p ** (j * (m - 1)), f"p={p} m={m} j={j}: order {rep.order}")


def witt_axioms(rec: _Recorder, quick: bool = False, seed: int = 20240611):
    rng = random.Random(seed)
    S = ts_interval(12)
    elems = S.elements

    def rand(T):
        return WittVector.make(T, [rng.randint(-4, 4) for _ in T])

    for case in range(20 if quick else 100):
        a, b = rand(S), rand(S)
        ga, gb = ghost(a).values, ghost(b).values
        rec.expect(ghost(a + b).values == tuple(x + y for x, y in zip(ga, gb)), f"case {case}: ghost additivity")
        rec.expect(ghost(a * b).values == tuple(x * y for x, y in zip(ga, gb)), f"case {case}: ghost multiplicativity")
        rec.expect(from_ghost(ghost(a)) == a, f"case {case}: from_ghost o ghost")

        n = rng.choice([s for s in elems if s > 1])
        x = rand(ts_divide(S, n))
        rec.expect(frobenius(n, verschiebung(n, x, S)) == scalar_int(n, x), f"case {case}: F_{n} V_{n} != {n}")

        u, v = rng.choice([(2, 2), (2, 3), (3, 2), (2, 5), (3, 4), (2, 6), (4, 3)])
        y = rand(ts_divide(S, u * v))
        lhs = verschiebung(u, verschiebung(v, y, ts_divide(S, u)), S)
        rec.expect(lhs == verschiebung(u * v, y, S), f"case {case}: V_{u} V_{v} != V_{u * v}")

        mm, nn = rng.choice([(m_, n_) for m_ in range(2, 7) for n_ in range(2, 7) if gcd(m_, n_) == 1])
        z = rand(ts_divide(S, nn))
        lhs = frobenius(mm, verschiebung(nn, z, S))
        rhs = verschiebung(nn, frobenius(mm, z), ts_divide(S, mm))
        rec.expect(lhs == rhs, f"case {case}: F_{mm} V_{nn} != V_{nn} F_{mm}")

        c, d = rng.randint(-9, 9), rng.randint(-9, 9)
        rec.expect(teichmuller(c * d, S) == teichmuller(c, S) * teichmuller(d, S), f"case {case}: [{c}][{d}]")

        mod = rng.choice([2, 3, 4, 5, 6, 8, 9, 12])
        ra, rb = a.reduce(mod), b.reduce(mod)
        rec.expect((a + b).reduce(mod) == ra + rb, f"case {case}: sum mod {mod}")
        rec.expect((a * b).reduce(mod) == ra * rb, f"case {case}: product mod {mod}")


def decomposition_bijectivity(rec: _Recorder, quick: bool = False):
    for p, m in ((2, 4), (3, 3)):
        S = ts_interval(m)
        lengths = p_typical_lengths(S, p)
        vecs = [WittVector(S, p, cs) for cs in itertools.product(range(p), repeat=len(S))]
        images = {v: tuple(decompose(v, p)[j] for j in lengths) for v in vecs}
        target = 1
        for t in lengths.values():
            target *= p**t
        rec.expect(len(set(images.values())) == len(vecs) == target, f"p={p} S={S}: not a bijection")
        pairs = itertools.product(vecs, repeat=2)
        if quick:
            pairs = itertools.islice(pairs, 200)
        for a, b in pairs:
            want = tuple((x + y) % p ** lengths[j] for j, x, y in zip(lengths, images[a], images[b]))
            if images[a + b] != want:
                rec.expect(False, f"p={p}: decompose not additive at {a.coeffs}, {b.coeffs}")
                break
        else:
            rec.expect(True, "")


def v_matrix_agreement(rec: _Recorder, quick: bool = False, seed: int = 7):
    rng = random.Random(seed)
    target = ts_interval(12)
    for p in (2, 3):
        for n in (2, 3, 4, 6):
            bad = check_v_matrix(p, ts_divide(target, n), n, target, 10 if quick else 50, rng)
            rec.expect(not bad, f"p={p} n={n}: {len(bad)} disagreements")


def ses_grid(rec: _Recorder, quick: bool = False):
    ms = (2, 3) if quick else (2, 3, 4)
    for p, m, n, j in itertools.product((2, 3), ms, (2, 3), (1, 2)):
        rep = ses_diagram_check(p, m, n, j)
        rec.expect(rep.ok, f"p={p} m={m} n={n} j={j}: {rep.failures()}")
    for p, m, j in itertools.product((2, 3), ms, (1, 2)):
        for n, n2 in ((2, 2), (2, 3), (3, 2)):
            comp = v_map(p, m, n, j).then(v_map(p, m * n, n2, j))
            rec.expect(comp.equals(v_map(p, m, n * n2, j)), f"p={p} m={m} j={j}: v_{n2} v_{n} != v_{n * n2}")


def towers(rec: _Recorder, quick: bool = False, max_order_bits: int = DEFAULT_MAX_ORDER_BITS):
    bits = 24 if quick else max_order_bits
    j = 1
    for p in (2, 3):
        N_f = max_stages(p, j, "fermat", bits)
        N_c = max_stages(p, j, "cyclotomic", bits)
        fermat = tower_fermat(p, j, N_f, bits)
        cyclo = tower_cyclotomic(p, j, N_c, bits)
        for n, st in enumerate(fermat, start=1):
            want = p ** (j * (p**n - 1))
            rec.expect(st.report.order == want, f"fermat p={p} n={n}: order {st.report.order} != {want}")
            rec.expect(k_group_even(p, p**n, j).group.is_trivial, f"fermat p={p} n={n}: even degree nonzero")
        for n, st in enumerate(cyclo, start=1):
            want = p ** (j * (p ** (n - 1) * (p - 1) - 1))
            rec.expect(st.report.order == want, f"cyclotomic p={p} n={n}: order {st.report.order} != {want}")
            rec.expect(k_group_even(p, p ** (n - 1) * (p - 1), j).group.is_trivial,
                       f"cyclotomic p={p} n={n}: even degree nonzero")
        for st in fermat + cyclo:
            if st.transition is not None:
                rec.expect(st.transition.is_injective, f"p={p} stage {st.index}: transition not injective")
        if p == 2:
            for n in range(1, min(N_f, N_c - 1) + 1):
                a, b = fermat[n - 1].report, cyclo[n].report
                rec.expect(a.invariant_factors == b.invariant_factors,
                           f"p=2: fermat stage {n} != cyclotomic stage {n + 1}")


def nerve_homology(rec: _Recorder, quick: bool = False):
    for k in (2, 3, 4):
        for i in range(1, 9 if quick else 11):
            C = nerve.chain_complex(k, i)
            rec.expect(C.is_complex(), f"k={k} i={i}: boundary squared is nonzero")
            got = {r: nerve.group_factors(G) for r, G in nerve.homology(k, i).items()}
            want = nerve.predicted_homology(k, i)
            rec.expect(got == want, f"k={k} i={i}: {got} != predicted {want}")
    for k in range(2, 6):
        for i in range(1, 15):
            rec.expect(nerve.euler_check(k, i) == 0, f"k={k} i={i}: Euler characteristic nonzero")


def power_maps(rec: _Recorder, quick: bool = False):
    ns = (2, 3)
    for k in (2, 3):
        for i in range(k, (6 if quick else 8) + 1, k):
            for n in ns:
                rec.expect(nerve.g_chain_map(k, i, n).commutes(), f"k={k} i={i} n={n}: not a chain map")
                rep = nerve.torsion_map_report(k, i, n)
                ok = (rep["source"] == [k] and rep["target"] == [n * k]
                      and rep["injective"] and rep["cokernel_order"] == n)
                rec.expect(ok, f"k={k} i={i} n={n}: {rep['source']} -> {rep['target']}, "
                               f"injective={rep['injective']}, cokernel {rep['cokernel_order']}")
                for n2 in ns:
                    r = rep["degree"]
                    rec.expect(nerve.naturality_holds(k, i, n, n2, r),
                               f"k={k} i={i}: naturality fails for n={n}, n'={n2}")


CRITERIA: list[tuple[int, str, float, Callable]] = [
    (1, "oracle equivalence", 60, oracle_equivalence),
    (2, "order law", 30, order_law),
    (3, "Witt ring axioms", 10, witt_axioms),
    (4, "decomposition bijectivity", 5, decomposition_bijectivity),
    (5, "V-matrix agreement", 10, v_matrix_agreement),
    (6, "SES diagram", 60, ses_grid),
    (7, "towers", 120, towers),
    (8, "nerve homology", 60, nerve_homology),
    (9, "power-map homology", 60, power_maps),
]


def run_criterion(number: int, quick: bool = False) -> CriterionResult:
    num, name, limit, fn = CRITERIA[number - 1]
    rec = _Recorder()
    start = time.perf_counter()
    try:
        fn(rec, quick=quick)
    except Exception as exc:  # a crash is a failure, not an abort of the run
        rec.failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    failures = list(rec.failures)
    if elapsed > limit:
        failures.append(f"took {elapsed:.1f}s, limit {limit:.0f}s")
    return CriterionResult(num, name, not failures, elapsed, limit, failures, rec.checks)


def run_all(quick: bool = False, only: list[int] | None = None) -> list[CriterionResult]:
    return [run_criterion(n, quick) for n, *_ in CRITERIA if not only or n in only]
