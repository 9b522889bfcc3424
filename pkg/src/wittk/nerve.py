"""Integral homology of the weight-i part of the cyclic bar construction of Π_k.

Π_k = {0, 1, x, ..., x^(k-1)} with x^k = 0. A nondegenerate r-cell of weight
i is a word (a_0, a_1, ..., a_r) of exponents with a_0 in [0, k-1] (0 is the
unit), a_s in [1, k-1] for s >= 1 and a_0 + ... + a_r = i. Faces multiply
neighbours, the last one wrapping a_r onto a_0; a product reaching x^k is the
basepoint and drops out of the reduced chains.

Two models of the homology are provided. ``FullHomology`` runs Smith normal
form on the whole complex. ``MorseHomology`` uses an acyclic matching whose
critical cells are (a_0; x, x^(k-1), x, x^(k-1), ...), leaving at most two
cells per weight; it makes the large complexes reached by the power maps
tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .abgroup import (
    AbGroupPresentation,
    GroupMap,
    LatticeSolver,
    columns,
    from_columns,
    identity,
    induced_map,
    integer_kernel,
)
from .errors import DomainError

Word = tuple[int, ...]
Chain = dict

DEFAULT_FULL_LIMIT = 1500


def _check(k: int, i: int):
    if k < 2 or i < 1:
        raise DomainError(f"need k >= 2 and i >= 1, got k={k}, i={i}")


# -- cells and faces ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _compositions(w: int, parts: int, top: int) -> tuple[Word, ...]:
    """Ordered tuples of ``parts`` integers in [1, top] summing to w."""
    if parts == 0:
        return ((),) if w == 0 else ()
    if w < parts or w > parts * top:
        return ()
    out = []
    for a in range(1, min(top, w) + 1):
        for rest in _compositions(w - a, parts - 1, top):
            out.append((a,) + rest)
    return tuple(out)


def cells(k: int, i: int) -> list[list[Word]]:
    """Nondegenerate cells by degree 0..i (no cells exist above degree i)."""
    _check(k, i)
    return [cells_of_degree(k, i, r) for r in range(i + 1)]


def cells_of_degree(k: int, i: int, r: int) -> list[Word]:
    if not 0 <= r <= i:
        return []
    return sorted((a0,) + tail for a0 in range(k) for tail in _compositions(i - a0, r, k - 1))


@lru_cache(maxsize=None)
def _count(w: int, parts: int, top: int) -> int:
    if parts == 0:
        return int(w == 0)
    if w < parts or w > parts * top:
        return 0
    return sum(_count(w - a, parts - 1, top) for a in range(1, min(top, w) + 1))


def cell_counts(k: int, i: int) -> list[int]:
    """Number of cells in each degree, counted without enumerating them."""
    _check(k, i)
    return [sum(_count(i - a0, r, k - 1) for a0 in range(k)) for r in range(i + 1)]


def euler_check(k: int, i: int) -> int:
    return sum((-1) ** r * c for r, c in enumerate(cell_counts(k, i)))


def faces(word: Word, k: int) -> list[tuple[int, Word]]:
    """(sign, face) for the faces of ``word`` that miss the basepoint."""
    r = len(word) - 1
    out = []
    if r == 0:
        return out
    for s in range(r):
        a = word[s] + word[s + 1]
        if a < k:
            out.append((-1 if s % 2 else 1, word[:s] + (a,) + word[s + 2:]))
    a = word[r] + word[0]
    if a < k:
        out.append((-1 if r % 2 else 1, (a,) + word[1:r]))
    return out


def boundary(word: Word, k: int) -> dict[Word, int]:
    out: dict[Word, int] = {}
    for sign, f in faces(word, k):
        c = out.get(f, 0) + sign
        if c:
            out[f] = c
        else:
            del out[f]
    return out


def chain_boundary(chain: Mapping[Word, int], k: int) -> dict[Word, int]:
    out: dict[Word, int] = {}
    for w, c in chain.items():
        for f, s in boundary(w, k).items():
            _add(out, f, c * s)
    return out


def _add(chain: dict, key, value: int):
    v = chain.get(key, 0) + value
    if v:
        chain[key] = v
    else:
        chain.pop(key, None)


def format_word(word: Word) -> str:
    def letter(a):
        if a == 0:
            return "1"
        return "x" if a == 1 else f"x^{a}"
    return "(" + ",".join(letter(a) for a in word) + ")"


# -- generic chain complexes ----------------------------------------------------------

@dataclass
class ChainComplex:
    """Free chain complex with an explicit basis in each degree 0..top."""

    basis: list[list[Hashable]]
    boundary_of: Callable[[Hashable], Mapping[Hashable, int]] = field(repr=False)

    @cached_property
    def _index(self) -> list[dict]:
        return [{c: n for n, c in enumerate(b)} for b in self.basis]

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def cells_in(self, r: int) -> list:
        return self.basis[r] if 0 <= r < len(self.basis) else []

    def matrix(self, r: int) -> list[list[int]]:
        """∂_r as a dense matrix: rows indexed by degree r-1 cells, columns by degree r."""
        rows, cols = self.cells_in(r - 1), self.cells_in(r)
        M = [[0] * len(cols) for _ in rows]
        if not rows:
            return M
        idx = self._index[r - 1]
        for j, c in enumerate(cols):
            for f, s in self.boundary_of(c).items():
                M[idx[f]][j] += s
        return M

    def to_vector(self, r: int, chain: Mapping) -> list[int]:
        v = [0] * len(self.cells_in(r))
        idx = self._index[r] if 0 <= r < len(self.basis) else {}
        for c, x in chain.items():
            v[idx[c]] += x
        return v

    def to_chain(self, r: int, v: Sequence[int]) -> dict:
        return {c: x for c, x in zip(self.cells_in(r), v) if x}

    def is_complex(self) -> bool:
        """∂∂ = 0 on every basis cell, checked on sparse chains."""
        for layer in self.basis[2:]:
            for c in layer:
                twice: dict = {}
                for f, s in self.boundary_of(c).items():
                    for g, t in self.boundary_of(f).items():
                        _add(twice, g, s * t)
                if twice:
                    return False
        return True

    def euler_characteristic(self) -> int:
        return sum((-1) ** r * len(b) for r, b in enumerate(self.basis))


class HomologyModel:
    """H_r of a ChainComplex, as Z^(cycle rank) modulo boundaries, via SNF."""

    def __init__(self, C: ChainComplex, r: int):
        self.complex, self.degree = C, r
        n = len(C.cells_in(r))
        rows = len(C.cells_in(r - 1))
        if rows and n:
            K = integer_kernel(C.matrix(r), n)
        else:
            K = [list(e) for e in identity(n)]
        self.cycles = K
        self._solver = LatticeSolver(from_columns(K, n), n, len(K))
        rels = []
        for col in columns(C.matrix(r + 1)) if C.cells_in(r + 1) and n else []:
            y = self._solver.solve(col)
            assert y is not None, "boundary is not a cycle"
            rels.append(tuple(y))
        self.group = AbGroupPresentation(len(K), tuple(rels))

    def classify(self, chain: Mapping) -> list[int]:
        """Coordinates of the class of a cycle."""
        y = self._solver.solve(self.complex.to_vector(self.degree, chain))
        if y is None:
            raise DomainError("chain is not a cycle")
        return y

    def representative(self, idx: int) -> dict:
        return self.complex.to_chain(self.degree, self.cycles[idx])


def chain_complex(k: int, i: int, degrees: Iterable[int] | None = None) -> ChainComplex:
    """Normalized reduced chains of the weight-i part of N^cy(Π_k).

    With ``degrees`` given, only those degrees get a basis (the others are left
    empty), which is enough for homology in a window of degrees.
    """
    _check(k, i)
    if degrees is None:
        return ChainComplex(cells(k, i), lambda w: boundary(w, k))
    keep = set(degrees)
    basis = [cells_of_degree(k, i, r) if r in keep else [] for r in range(i + 1)]
    return ChainComplex(basis, lambda w: boundary(w, k))


def group_factors(G: AbGroupPresentation) -> list[int]:
    """Invariant factors with 0 for each free summand, in divisibility order."""
    return G.invariant_factors + [0] * G.free_rank


def homology(k: int, i: int) -> dict[int, AbGroupPresentation]:
    """Nonzero reduced homology groups H_r, r = 0..i, computed on the full complex."""
    C = chain_complex(k, i)
    out = {}
    for r in range(i + 1):
        G = HomologyModel(C, r).group
        if not G.is_trivial:
            out[r] = G
    return out


def predicted_homology(k: int, i: int) -> dict[int, list[int]]:
    """Homology forced by the cofibration sequence, in ``group_factors`` form.

    With d = floor((i-1)/k): Z in degrees 2d and 2d+1 when k does not divide
    i; Z/k in degree 2d+1 when it does.
    """
    _check(k, i)
    d = (i - 1) // k
    if i % k:
        return {2 * d: [0], 2 * d + 1: [0]}
    return {2 * d + 1: [k]}


# -- Morse reduction -------------------------------------------------------------------

CRITICAL, DOWN, UP = "critical", "down", "up"


def anick_letters(r: int, k: int) -> Word:
    return tuple(1 if s % 2 == 0 else k - 1 for s in range(r))


def morse_partner(word: Word, k: int) -> tuple[str, Word | None, int]:
    """Classify a cell under the matching; returns (kind, partner, incidence).

    Scan the letters after a_0 against the pattern x, x^(k-1), x, ... . At the
    first mismatch: an odd position holding x^a with a >= 2 is split into
    x | x^(a-1) (the cell is the lower end of its pair); an even position
    holding x^b with b < k-1 is merged into its left neighbour x to give
    x^(b+1) (the cell is the upper end). ``incidence`` is the coefficient of
    the lower cell in the boundary of the upper one.
    """
    for j in range(1, len(word)):
        x = word[j]
        if j % 2:
            if x == 1:
                continue
            up = word[:j] + (1, x - 1) + word[j + 1:]
            return DOWN, up, -1
        if x == k - 1:
            continue
        down = word[:j - 1] + (1 + x,) + word[j + 1:]
        return UP, down, -1
    return CRITICAL, None, 0


def critical_cells(k: int, i: int) -> list[list[Word]]:
    _check(k, i)
    out = []
    for r in range(i + 1):
        letters = anick_letters(r, k)
        a0 = i - sum(letters)
        out.append([(a0,) + letters] if 0 <= a0 < k else [])
    return out


class MorseReduction:
    """Projection to, and inclusion of, the Morse complex of the matching."""

    def __init__(self, k: int, i: int, max_steps: int = 10_000_000):
        _check(k, i)
        self.k, self.i = k, i
        self.max_steps = max_steps
        self._kind = lru_cache(maxsize=None)(lambda w: morse_partner(w, k))
        self._bd = lru_cache(maxsize=None)(lambda w: boundary(w, k))
        self._crit_bd: dict = {}

    def project(self, chain: Mapping[Word, int]) -> dict[Word, int]:
        """Critical part after flowing every lower-matched cell away.

        Adds boundaries of upper cells only, so the result is homologous to
        ``chain`` when ``chain`` is a cycle.
        """
        z = dict(chain)
        pending = [w for w in z if self._kind(w)[0] == DOWN]
        steps = 0
        while pending:
            u = pending.pop()
            lam = z.get(u, 0)
            if not lam:
                continue
            steps += 1
            if steps > self.max_steps:
                raise RuntimeError("Morse flow did not terminate; matching is not acyclic")
            _, w, kappa = self._kind(u)
            coef = lam * kappa
            for f, s in self._bd(w).items():
                _add(z, f, -coef * s)
                if f in z and self._kind(f)[0] == DOWN:
                    pending.append(f)
            assert u not in z
        return {w: c for w, c in z.items() if self._kind(w)[0] == CRITICAL}

    def lift(self, chain: Mapping[Word, int]) -> dict[Word, int]:
        """The chain x with critical part ``chain``, no lower-matched cells, and
        no lower-matched cells in ∂x; a chain map from the Morse complex."""
        x = dict(chain)
        bd = chain_boundary(x, self.k)
        pending = [w for w in bd if self._kind(w)[0] == DOWN]
        steps = 0
        while pending:
            u = pending.pop()
            lam = bd.get(u, 0)
            if not lam:
                continue
            steps += 1
            if steps > self.max_steps:
                raise RuntimeError("Morse flow did not terminate; matching is not acyclic")
            _, w, kappa = self._kind(u)
            coef = lam * kappa
            _add(x, w, -coef)
            for f, s in self._bd(w).items():
                _add(bd, f, -coef * s)
                if f in bd and self._kind(f)[0] == DOWN:
                    pending.append(f)
        return x

    def morse_boundary(self, c: Word) -> dict[Word, int]:
        if c not in self._crit_bd:
            self._crit_bd[c] = self.project(self._bd(c))
        return self._crit_bd[c]

    @cached_property
    def complex(self) -> ChainComplex:
        return ChainComplex(critical_cells(self.k, self.i), self.morse_boundary)


# -- homology models with classification ------------------------------------------------

class FullHomology:
    """H_r(k, i) from the whole complex."""

    method = "full"

    def __init__(self, k: int, i: int, r: int):
        self.k, self.i, self.degree = k, i, r
        self.model = HomologyModel(chain_complex(k, i, (r - 1, r, r + 1)), r)
        self.group = self.model.group

    def classify(self, cycle: Mapping[Word, int]) -> list[int]:
        return self.model.classify(cycle)

    def representative(self, idx: int) -> dict[Word, int]:
        return self.model.representative(idx)


class MorseHomology:
    """H_r(k, i) from the Morse complex; cycles are classified by projection."""

    method = "morse"

    def __init__(self, k: int, i: int, r: int, reduction: MorseReduction | None = None):
        self.k, self.i, self.degree = k, i, r
        self.reduction = reduction or MorseReduction(k, i)
        self.model = HomologyModel(self.reduction.complex, r)
        self.group = self.model.group

    def classify(self, cycle: Mapping[Word, int]) -> list[int]:
        if chain_boundary(cycle, self.k):
            raise DomainError("chain is not a cycle")
        return self.model.classify(self.reduction.project(cycle))

    def representative(self, idx: int) -> dict[Word, int]:
        return self.reduction.lift(self.model.representative(idx))


_MODEL_CACHE: dict = {}


def homology_model(k: int, i: int, r: int, method: str = "auto", full_limit: int = DEFAULT_FULL_LIMIT):
    """A FullHomology or MorseHomology for H_r(k, i); 'auto' picks full SNF for small complexes."""
    _check(k, i)
    if method == "auto":
        counts = cell_counts(k, i)
        size = sum(counts[d] for d in (r - 1, r, r + 1) if 0 <= d < len(counts))
        method = "full" if size <= full_limit else "morse"
    key = (k, i, r, method)
    if key not in _MODEL_CACHE:
        if method == "full":
            _MODEL_CACHE[key] = FullHomology(k, i, r)
        elif method == "morse":
            red = _MODEL_CACHE.setdefault((k, i, "reduction"), MorseReduction(k, i))
            _MODEL_CACHE[key] = MorseHomology(k, i, r, red)
        else:
            raise DomainError(f"unknown homology method {method!r}")
    return _MODEL_CACHE[key]


def morse_homology(k: int, i: int) -> dict[int, AbGroupPresentation]:
    red = MorseReduction(k, i)
    out = {}
    for r in range(i + 1):
        G = HomologyModel(red.complex, r).group
        if not G.is_trivial:
            out[r] = G
    return out


# -- power maps -----------------------------------------------------------------------

def scale_word(word: Word, n: int) -> Word:
    return tuple(n * a for a in word)


@dataclass(frozen=True)
class PowerMap:
    """Chain map N^cy(Π_k, i) -> N^cy(Π_nk, ni) induced by x -> x^n."""

    k: int
    i: int
    n: int

    @property
    def target(self) -> tuple[int, int]:
        return self.n * self.k, self.n * self.i

    def __call__(self, chain: Mapping[Word, int]) -> dict[Word, int]:
        return {scale_word(w, self.n): c for w, c in chain.items()}

    def commutes(self) -> bool:
        """g ∂ = ∂ g on every source cell; target boundaries are computed locally."""
        K = self.n * self.k
        for layer in cells(self.k, self.i):
            for w in layer:
                lhs = self({f: s for f, s in boundary(w, self.k).items()})
                if lhs != boundary(scale_word(w, self.n), K):
                    return False
        return True

    def matrix(self, r: int) -> list[list[int]]:
        """g_r on the full complexes (only sensible when the target is small)."""
        src = cells_of_degree(self.k, self.i, r)
        tgt = {w: j for j, w in enumerate(cells_of_degree(*self.target, r))}
        M = [[0] * len(src) for _ in tgt]
        for col, w in enumerate(src):
            M[tgt[scale_word(w, self.n)]][col] = 1
        return M

    def induced(self, r: int, source=None, target=None, method: str = "auto") -> GroupMap:
        """The map H_r(k, i) -> H_r(nk, ni) as a certified GroupMap."""
        source = source or homology_model(self.k, self.i, r, method)
        target = target or homology_model(*self.target, r, method)
        cols = [target.classify(self(source.representative(idx)))
                for idx in range(source.group.rank)]
        M = from_columns(cols, target.group.rank)
        return induced_map(M, source.group, target.group)


def g_chain_map(k: int, i: int, n: int) -> PowerMap:
    _check(k, i)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return PowerMap(k, i, n)


def torsion_map_report(k: int, i: int, n: int, method: str = "auto") -> dict:
    """For k | i: the induced map on H_(2d+1), expected to be Z/k -> Z/nk, injective."""
    if i % k:
        raise DomainError(f"{k} does not divide {i}")
    d = (i - 1) // k
    r = 2 * d + 1
    g = g_chain_map(k, i, n)
    f = g.induced(r, method=method)
    return {
        "degree": r,
        "source": group_factors(f.source),
        "target": group_factors(f.target),
        "injective": f.is_injective,
        "cokernel_order": f.cokernel().order,
        "map": f,
    }


def naturality_holds(k: int, i: int, n: int, n2: int, r: int, method: str = "auto") -> bool:
    """g(k,i,n*n2) and g(nk,ni,n2) o g(k,i,n) induce the same map on H_r."""
    src = homology_model(k, i, r, method)
    mid = homology_model(n * k, n * i, r, method)
    tgt = homology_model(n * n2 * k, n * n2 * i, r, method)
    direct = g_chain_map(k, i, n * n2).induced(r, src, tgt)
    first = g_chain_map(k, i, n).induced(r, src, mid)
    second = g_chain_map(n * k, n * i, n2).induced(r, mid, tgt)
    return first.then(second).equals(direct)
