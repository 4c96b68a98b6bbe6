"""The Johnson scheme J(2k, k): exact eigenvalues, structural matrices, the
weight <-> coefficient transform, and explicit subset-indexed adjacency
matrices for small instances.

Conventions
-----------
* Vertices of J(n, k, r) are the k-subsets of {1..n} in colexicographic
  order: the rank of {a_1 < ... < a_k} is sum_i C(a_i - 1, i).  The
  antipodal partner of a row is the row of the complement subset,
  computed by ranking, never assumed to be a fixed permutation.
* p_r(s) is the eigenvalue of the distance-r graph on the s-th common
  eigenspace; the substitution x = k - s is available via dual_hahn_x.
* Structural matrices carry one of two index ranges: entries 0..m
  (weighted graphs) or 1..k (unweighted unions).  Downstream code always
  states which range it uses.
* All eigenvalue machinery requires n = 2k; only the adjacency builder
  accepts general n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError
from .exactmath import binom

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_ADJACENCY_CAP = 5000

#: Largest admissible magnitude bound for doing exact matrix products in
#: int64; above this the axiom check falls back to object (bignum) dtype.
_INT64_SAFE_BOUND = 1 << 62


@dataclass(frozen=True)
class SchemeParams:
    """The pair (k, n) fixing a Johnson scheme; n = 2k for all transfer work."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")

    @classmethod
    def antipodal(cls, k: int) -> "SchemeParams":
        return cls(k=k, n=2 * k)

    def require_antipodal(self) -> None:
        if self.n != 2 * self.k:
            raise ValueError(f"this operation requires n = 2k, got n={self.n}, k={self.k}")


# ---------------------------------------------------------------------------
# subset indexing (colexicographic)
# ---------------------------------------------------------------------------

def colex_rank(subset: Sequence[int]) -> int:
    """Colex rank of a subset {a_1 < ... < a_k} of {1..n}: sum C(a_i - 1, i)."""
    sub = tuple(subset)
    if any(a < 1 for a in sub) or any(x >= y for x, y in zip(sub, sub[1:])):
        raise ValueError(f"subset must be strictly increasing positive integers, got {sub}")
    return sum(binom(a - 1, i) for i, a in enumerate(sub, start=1))


def colex_unrank(rank: int, k: int) -> tuple[int, ...]:
    """Inverse of colex_rank for k-subsets; greedy from the largest element."""
    if rank < 0 or k < 1:
        raise ValueError(f"need rank >= 0 and k >= 1, got rank={rank}, k={k}")
    out = []
    rem = rank
    for i in range(k, 0, -1):
        a = i  # smallest possible value of the i-th element
        while binom(a, i) <= rem:
            a += 1
        out.append(a)
        rem -= binom(a - 1, i)
    return tuple(reversed(out))


def subsets_colex(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of {1..n}, listed in colex order (index = colex rank)."""
    out: list[tuple[int, ...] | None] = [None] * binom(n, k)
    for sub in combinations(range(1, n + 1), k):
        out[colex_rank(sub)] = sub
    return out  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def dual_hahn(k: int, r: int, s: int) -> int:
    """Eigenvalue p_r(s) of the distance-r graph of J(2k, k).

    p_r(s) = sum_j (-1)^(r-j) C(k-j, r-j) C(k-s, j) C(k-s+j, j).
    """
    if not (0 <= r <= k and 0 <= s <= k):
        raise ValueError(f"need 0 <= r, s <= k, got k={k}, r={r}, s={s}")
    return sum(
        (-1) ** (r - j) * binom(k - j, r - j) * binom(k - s, j) * binom(k - s + j, j)
        for j in range(r + 1)
    )


def dual_hahn_x(k: int, r: int, x: int) -> int:
    """p_r(k - x) through the substituted closed form.

    p_r(k-x) = sum_j (-1)^(r-j) C(2j, j) C(k-j, r-j) C(x+j, 2j).
    """
    if not (0 <= r <= k and 0 <= x <= k):
        raise ValueError(f"need 0 <= r, x <= k, got k={k}, r={r}, x={x}")
    return sum(
        (-1) ** (r - j) * binom(2 * j, j) * binom(k - j, r - j) * binom(x + j, 2 * j)
        for j in range(r + 1)
    )


@dataclass(frozen=True)
class EigenTable:
    """The (k+1) x (k+1) grid of eigenvalues, rows[r][s] = p_r(s)."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    def p(self, r: int, s: int) -> int:
        return self.rows[r][s]


@lru_cache(maxsize=None)
def eigen_table(k: int) -> EigenTable:
    """Cached eigenvalue table for J(2k, k)."""
    if k < 1:
        raise ValueError(f"need k >= 1, got k={k}")
    rows = tuple(tuple(dual_hahn(k, r, s) for s in range(k + 1)) for r in range(k + 1))
    return EigenTable(k=k, rows=rows)


# ---------------------------------------------------------------------------
# structural matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructuralMatrices:
    """The diagonal/triangular machinery on one index range.

    With indices j, r running over lo..hi (lo = 0 weighted, lo = 1
    unweighted) and x over 0..k (0..k-1 for G):

        D = diag C(2j, j)           S = diag (-1)^j
        B[j][r] = C(k-j, r-j)       F[x][j] = C(x+j, 2j)
        G[x][j] = C(x+j, 2j-1)      (G always starts at j = 1: its j = 0
                                     column would vanish identically)

    B is unimodular and its inverse is S B S, computed as that product
    rather than by general inversion.
    """

    k: int
    lo: int
    hi: int
    D: Matrix
    S: Matrix
    B: Matrix
    F: Matrix
    G: Matrix

    @property
    def B_inv(self) -> Matrix:
        return mat_mul(mat_mul(self.S, self.B), self.S)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]):
    """Exact product of two dense matrices (nested sequences of int/Fraction)."""
    aa = np.array(a, dtype=object)
    bb = np.array(b, dtype=object)
    return tuple(tuple(row) for row in aa @ bb)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def build_structural(k: int, index_range: tuple[int, int]) -> StructuralMatrices:
    """Structural matrices on the given index range (lo, hi).

    Use (0, m) for weighted graphs on classes 0..m and (1, k) for
    unweighted unions.
    """
    lo, hi = index_range
    if lo not in (0, 1) or not lo <= hi <= k:
        raise ValueError(f"index range must be (0, m) or (1, k) with hi <= k, got {index_range}")
    idx = range(lo, hi + 1)
    D = tuple(tuple(binom(2 * j, j) if j == r else 0 for r in idx) for j in idx)
    S = tuple(tuple((-1) ** j if j == r else 0 for r in idx) for j in idx)
    B = tuple(tuple(binom(k - j, r - j) for r in idx) for j in idx)
    F = tuple(tuple(binom(x + j, 2 * j) for j in idx) for x in range(k + 1))
    gcols = range(max(lo, 1), hi + 1)
    G = tuple(tuple(binom(x + j, 2 * j - 1) for j in gcols) for x in range(k))
    return StructuralMatrices(k=k, lo=lo, hi=hi, D=D, S=S, B=B, F=F, G=G)


# ---------------------------------------------------------------------------
# weight and coefficient vectors
# ---------------------------------------------------------------------------

def _as_fractions(entries: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(e) for e in entries)


@dataclass(frozen=True)
class WeightVector:
    """Exact rational weights w_0..w_m on the distance classes of J(2k, k)."""

    k: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_fractions(self.entries))
        if not 1 <= len(self.entries) <= self.k + 1:
            raise ValueError(
                f"need 0 <= m <= k: got {len(self.entries)} entries for k={self.k}"
            )

    @property
    def m(self) -> int:
        return len(self.entries) - 1


@dataclass(frozen=True)
class CoeffVector:
    """Coefficients c_0..c_m of the spectrum in the C(x+j, 2j) basis."""

    k: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_fractions(self.entries))
        if not 1 <= len(self.entries) <= self.k + 1:
            raise ValueError(
                f"need 0 <= m <= k: got {len(self.entries)} entries for k={self.k}"
            )

    @property
    def m(self) -> int:
        return len(self.entries) - 1

    def as_integers(self) -> tuple[int, ...] | None:
        """The entries as ints, or None if any entry is non-integral."""
        if all(c.denominator == 1 for c in self.entries):
            return tuple(int(c) for c in self.entries)
        return None


def weights_to_coeffs(w: WeightVector) -> CoeffVector:
    """c = D S B S w, exactly."""
    sm = build_structural(w.k, (0, w.m))
    v = _mat_vec(sm.S, w.entries)
    v = _mat_vec(sm.B, v)
    v = _mat_vec(sm.S, v)
    v = _mat_vec(sm.D, v)
    return CoeffVector(k=w.k, entries=v)


def coeffs_to_weights(c: CoeffVector) -> WeightVector:
    """w = B D^-1 c, the exact inverse of weights_to_coeffs."""
    sm = build_structural(c.k, (0, c.m))
    v = tuple(cj / sm.D[j][j] for j, cj in enumerate(c.entries))
    v = _mat_vec(sm.B, v)
    return WeightVector(k=c.k, entries=v)


def spectrum_weighted(w: WeightVector) -> tuple[Fraction, ...]:
    """Eigenvalues f(0..k) of the weighted graph, f(x) = sum_r w_r p_r(k-x)."""
    table = eigen_table(w.k)
    k = w.k
    return tuple(
        sum((w_r * table.p(r, k - x) for r, w_r in enumerate(w.entries)), Fraction(0))
        for x in range(k + 1)
    )


# ---------------------------------------------------------------------------
# explicit adjacency matrices and the axiom check
# ---------------------------------------------------------------------------

def adjacency(n: int, k: int, r: int, cap: int = DEFAULT_ADJACENCY_CAP) -> np.ndarray:
    """01 adjacency matrix of J(n, k, r), rows/columns in colex subset order.

    Entry (u, v) is 1 iff the subsets differ in exactly r elements.
    Returns int8; callers upcast before taking products.
    """
    if not 0 <= r <= min(k, n - k):
        raise ValueError(f"need 0 <= r <= min(k, n-k), got n={n}, k={k}, r={r}")
    size = binom(n, k)
    if size > cap:
        raise CapacityError(
            f"J({n},{k}) has {size} vertices, above the cap of {cap}",
            needed=size, cap=cap,
        )
    subs = subsets_colex(n, k)
    member = np.zeros((size, n), dtype=np.int64)
    for i, sub in enumerate(subs):
        for a in sub:
            member[i, a - 1] = 1
    overlap = member @ member.T
    return (overlap == k - r).astype(np.int8)


def _union_adjacency_int64(n: int, k: int, cap: int) -> list[np.ndarray]:
    subs = subsets_colex(n, k)
    size = len(subs)
    member = np.zeros((size, n), dtype=np.int64)
    for i, sub in enumerate(subs):
        for a in sub:
            member[i, a - 1] = 1
    overlap = member @ member.T
    return [(overlap == k - r).astype(np.int64) for r in range(min(k, n - k) + 1)]


@dataclass(frozen=True)
class AxiomFailure:
    check: str
    r: int | None = None
    s: int | None = None


@dataclass(frozen=True)
class AxiomReport:
    n: int
    k: int
    ok: bool
    checks: tuple[str, ...]
    failures: tuple[AxiomFailure, ...]


def scheme_axiom_check(n: int, k: int, cap: int = DEFAULT_ADJACENCY_CAP) -> AxiomReport:
    """Verify the association-scheme axioms on explicit matrices.

    Checks A_0 = I, sum_r A_r = J, symmetry of every class, pairwise
    commutation, and (for n = 2k) the annihilation identity
    prod_s (A_r - p_r(s) I) = 0 over the integers for every r.

    Products are exact: they run in int64 whenever an a-priori magnitude
    bound (the product of spectral-norm bounds of the factors; partial
    products of commuting symmetric factors stay symmetric, so their
    entries obey it) stays below 2**62, and in bignum object dtype
    otherwise.
    """
    size = binom(n, k)
    if size > cap:
        raise CapacityError(
            f"J({n},{k}) has {size} vertices, above the cap of {cap}",
            needed=size, cap=cap,
        )
    mats = _union_adjacency_int64(n, k, cap)
    d = len(mats) - 1
    eye = np.identity(size, dtype=np.int64)
    failures: list[AxiomFailure] = []
    checks = ["identity", "completeness", "symmetry", "commutation"]

    if not np.array_equal(mats[0], eye):
        failures.append(AxiomFailure("identity", r=0))
    total = sum(mats[1:], mats[0].copy())
    if not (total == 1).all():
        failures.append(AxiomFailure("completeness"))
    for r in range(d + 1):
        if not np.array_equal(mats[r], mats[r].T):
            failures.append(AxiomFailure("symmetry", r=r))
    for r in range(d + 1):
        for s in range(r + 1, d + 1):
            if not np.array_equal(mats[r] @ mats[s], mats[s] @ mats[r]):
                failures.append(AxiomFailure("commutation", r=r, s=s))

    if n == 2 * k:
        checks.append("annihilation")
        table = eigen_table(k)
        for r in range(k + 1):
            eigs = [table.p(r, s) for s in range(k + 1)]
            valency = table.p(r, 0)
            bound = 1
            for e in eigs:
                bound *= valency + abs(e)
            if bound < _INT64_SAFE_BOUND:
                prod = eye
                for e in eigs:
                    prod = prod @ (mats[r] - e * eye)
            else:
                obj = mats[r].astype(object)
                eye_obj = eye.astype(object)
                prod = eye_obj
                for e in eigs:
                    prod = prod @ (obj - e * eye_obj)
            if prod.any():
                failures.append(AxiomFailure("annihilation", r=r))

    return AxiomReport(n=n, k=k, ok=not failures, checks=tuple(checks), failures=tuple(failures))
