"""Unweighted unions of distance graphs of J(2k, k).

A union is a 0/1 selector of classes 1..k.  Its spectrum is integral and
every adjacent eigenvalue difference is even, so a transfer time always
has the shape pi / (2^h z) with h >= 1 and z odd: 2^h z is the gcd of the
differences.

The congruence characterization: a selector u has transfer at pi/2^h iff
v = S B S u satisfies, per index j,

    sigma_2(j) = 1            ->  v_j = 2^(h-1)   (mod 2^h)
    sigma_2(j) = t, 2<=t<=h   ->  v_j = 0         (mod 2^(h-t+1))
    sigma_2(j) > h            ->  unconstrained

(sigma_2 = binary digit sum).  The sigma_2(j) > h case follows from the
entries C(2j, j) being divisible by 2^(sigma_2(j)); the exhaustive search
below cross-checks that reading.

solve_congruence reduces the system mod 2 first: the constrained rows of
B are unitriangular, so the mod-2 solutions form an explicit affine
subspace, which is then enumerated and filtered by the exact mod-2^h
conditions.  search_all instead walks all nonzero selectors in Gray-code
order, updating the difference vector by one eigenvalue column per step.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError
from .exactmath import binom, digit_sum, gcd_all, nu2, odd_part
from .scheme import WeightVector, build_structural, eigen_table, _mat_vec
from .transfer import PstCertificate

DEFAULT_ENUM_CAP = 24
DEFAULT_FREE_BITS_CAP = 26
_BATCH_BITS = 16


@dataclass(frozen=True)
class UnionSelector:
    """0/1 indicator (w_1..w_k) of which distance graphs are in the union.

    The all-zero selector (empty graph) is excluded.
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if not self.bits or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be a nonempty 0/1 tuple, got {self.bits}")
        if not any(self.bits):
            raise ValueError("the empty union is excluded")

    @property
    def k(self) -> int:
        return len(self.bits)

    @property
    def classes(self) -> tuple[int, ...]:
        """Ascending list of selected r values (the wire format)."""
        return tuple(r for r, b in enumerate(self.bits, start=1) if b)

    @classmethod
    def from_classes(cls, k: int, classes: Iterable[int]) -> "UnionSelector":
        chosen = set(classes)
        if not chosen <= set(range(1, k + 1)):
            raise ValueError(f"classes must lie in 1..{k}, got {sorted(chosen)}")
        return cls(bits=tuple(1 if r in chosen else 0 for r in range(1, k + 1)))

    def key(self) -> int:
        """Canonical sort key: the bits as a big-endian integer (w_1 leads)."""
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def weight_vector(self) -> WeightVector:
        return WeightVector(k=self.k, entries=(0,) + self.bits)


@dataclass(frozen=True)
class ResidueConstraint:
    """Per-index residue conditions on v = S B S u for transfer at pi/2^h.

    conditions[j-1] is (modulus, residue) or None when unconstrained.
    """

    h: int
    k: int
    conditions: tuple[tuple[int, int] | None, ...]

    @classmethod
    def for_scheme(cls, k: int, h: int) -> "ResidueConstraint":
        if h < 1 or k < 1:
            raise ValueError(f"need h >= 1 and k >= 1, got h={h}, k={k}")
        conds: list[tuple[int, int] | None] = []
        for j in range(1, k + 1):
            t = digit_sum(j, 2)
            if t == 1:
                conds.append((1 << h, 1 << (h - 1)))
            elif t <= h:
                conds.append((1 << (h - t + 1), 0))
            else:
                conds.append(None)
        return cls(h=h, k=k, conditions=tuple(conds))

    def satisfied_by(self, v: Sequence[int]) -> bool:
        return all(
            cond is None or (vj - cond[1]) % cond[0] == 0
            for vj, cond in zip(v, self.conditions)
        )


def union_spectrum(u: UnionSelector) -> tuple[int, ...]:
    """Integer eigenvalues f(0..k) of the union."""
    table = eigen_table(u.k)
    k = u.k
    return tuple(
        sum(table.p(r, k - x) for r in u.classes) for x in range(k + 1)
    )


def check_union(u: UnionSelector) -> PstCertificate:
    """Transfer verdict for a union, with the refined time pi/(2^h z).

    With d_x = f(x+1) - f(x): transfer happens iff all d_x are nonzero
    with one common 2-adic valuation; the time is then tau/pi = 1/gcd(d),
    gcd(d) = 2^h z.  Evidence holds the candidate-scaled differences in
    theta order (raw differences when a zero blocks any candidate time).
    """
    k = u.k
    f = union_spectrum(u)
    diffs = [f[x + 1] - f[x] for x in range(k)]
    # theta order: theta_s - theta_{s-1} = -(f(x+1) - f(x)) at x = k - s
    theta_diffs = [-diffs[k - s] for s in range(1, k + 1)]

    zero_s = next((s for s, d in enumerate(theta_diffs, start=1) if d == 0), None)
    if zero_s is not None:
        return PstCertificate(
            verdict=False,
            time_over_pi=None,
            parity_evidence=tuple(Fraction(d) for d in theta_diffs),
            failing_s=zero_s,
        )

    g = gcd_all(diffs)
    if __debug__:
        # the same gcd must emerge from the coefficient vector D S B S u
        sm = build_structural(k, (1, k))
        v = _mat_vec(sm.S, u.bits)
        v = _mat_vec(sm.B, v)
        v = _mat_vec(sm.S, v)
        c_tilde = _mat_vec(sm.D, v)
        assert gcd_all([int(x) for x in c_tilde]) == g
    evidence = tuple(Fraction(d, g) for d in theta_diffs)
    failing = next(
        (s for s, e in enumerate(evidence, start=1) if e.numerator % 2 == 0), None
    )
    if failing is not None:
        return PstCertificate(
            verdict=False,
            time_over_pi=None,
            parity_evidence=evidence,
            failing_s=failing,
        )
    return PstCertificate(
        verdict=True,
        time_over_pi=Fraction(1, g),
        parity_evidence=evidence,
        failing_s=None,
    )


def transfer_exponents(u: UnionSelector) -> tuple[int, int] | None:
    """(h, z) of the reported time pi/(2^h z), or None without transfer."""
    cert = check_union(u)
    if not cert.verdict:
        return None
    den = cert.time_over_pi.denominator
    return nu2(den), odd_part(den)


# ---------------------------------------------------------------------------
# the pi/2 family
# ---------------------------------------------------------------------------

def _required_powers(k: int) -> tuple[int, ...]:
    return tuple(1 << a for a in range(k.bit_length()))


def pi2_family(k: int, T: Iterable[int]) -> UnionSelector:
    """The selector with w_r = sum_{j in T} C(k-r, j-r) mod 2.

    T must contain every power of two up to k and lie inside {1..k};
    the result is guaranteed transfer at pi/2 (odd part refinements may
    report an earlier pi/(2z)).
    """
    tset = set(T)
    if not tset <= set(range(1, k + 1)):
        raise ValueError(f"T must lie in 1..{k}, got {sorted(tset)}")
    missing = [p for p in _required_powers(k) if p not in tset]
    if missing:
        raise ValueError(f"T is missing required powers of two: {missing}")
    bits = tuple(
        sum(binom(k - r, j - r) for j in tset) % 2 for r in range(1, k + 1)
    )
    return UnionSelector(bits=bits)


def enumerate_pi2(
    k: int,
    cap: int = DEFAULT_ENUM_CAP,
    sample: int | None = None,
    seed: int = 0,
) -> Iterator[UnionSelector]:
    """All selectors with transfer at pi/2, one per admissible subset T.

    Exactly 2**(k - floor(log2 k) - 1) selectors, all distinct.  Beyond
    the cap a CapacityError is raised unless sample is given, in which
    case that many T are drawn at random (seeded) instead.
    """
    powers = set(_required_powers(k))
    free = sorted(set(range(1, k + 1)) - powers)
    if k > cap and sample is None:
        raise CapacityError(
            f"k={k} exceeds the enumeration cap {cap}; pass sample= to draw instead",
            needed=k, cap=cap,
        )
    if sample is not None:
        rng = random.Random(seed)
        for _ in range(sample):
            extra = {j for j in free if rng.getrandbits(1)}
            yield pi2_family(k, powers | extra)
        return
    for mask in range(1 << len(free)):
        extra = {j for i, j in enumerate(free) if mask >> i & 1}
        yield pi2_family(k, powers | extra)


# ---------------------------------------------------------------------------
# the congruence solver
# ---------------------------------------------------------------------------

def _affine_mod2_solutions(k: int, h: int) -> tuple[np.ndarray, np.ndarray]:
    """Particular solution and nullspace basis of the mod-2 reduction.

    Constrained rows are those with sigma_2(j) <= h; row j of B has its
    pivot at column j (B is unitriangular), so back-substitution over
    descending j solves the system directly.
    """
    constrained = [j for j in range(1, k + 1) if digit_sum(j, 2) <= h]
    rhs = {j: (1 if h == 1 and digit_sum(j, 2) == 1 else 0) for j in constrained}
    brow = {
        j: [binom(k - j, r - j) % 2 for r in range(1, k + 1)] for j in constrained
    }
    free_cols = [r for r in range(1, k + 1) if r not in set(constrained)]

    def back_substitute(u: list[int]) -> list[int]:
        for j in sorted(constrained, reverse=True):
            acc = rhs[j]
            row = brow[j]
            for r in range(j + 1, k + 1):
                acc ^= row[r - 1] & u[r - 1]
            u[j - 1] = acc
        return u

    particular = back_substitute([0] * k)
    basis = []
    for t in free_cols:
        vec = [0] * k
        vec[t - 1] = 1
        hom = back_substitute(vec)
        # homogeneous solution: subtract the particular part contributed by rhs
        basis.append([(a ^ b) for a, b in zip(hom, particular)])
    return np.array(particular, dtype=np.uint8), np.array(basis, dtype=np.uint8).reshape(
        len(basis), k
    )


def _sbs_matrix_mod(k: int, modulus: int) -> np.ndarray:
    B = build_structural(k, (1, k)).B
    return np.array(
        [[((-1) ** (j + r) * B[j - 1][r - 1]) % modulus for r in range(1, k + 1)]
         for j in range(1, k + 1)],
        dtype=np.int64,
    )


def solve_congruence(
    k: int,
    h: int,
    max_free_bits: int = DEFAULT_FREE_BITS_CAP,
) -> list[UnionSelector]:
    """All nonzero selectors whose v = S B S u meets the level-h residues.

    Every returned selector has transfer with 2-adic exponent exactly h
    (so at time pi/2^h, refined by the odd part).  Solutions are found by
    enumerating the mod-2 affine space and filtering with the exact
    mod-2^h conditions; output is sorted by canonical selector key.
    """
    constraint = ResidueConstraint.for_scheme(k, h)
    particular, basis = _affine_mod2_solutions(k, h)
    dim = len(basis)
    if dim > max_free_bits:
        raise CapacityError(
            f"congruence solution space has 2**{dim} candidates, above 2**{max_free_bits}",
            needed=dim, cap=max_free_bits,
        )
    modulus = 1 << h
    sbs = _sbs_matrix_mod(k, modulus)
    mods = np.array([c[0] if c else 1 for c in constraint.conditions], dtype=np.int64)
    residues = np.array([c[1] if c else 0 for c in constraint.conditions], dtype=np.int64)

    hits: list[UnionSelector] = []
    total = 1 << dim
    step = min(total, 1 << _BATCH_BITS)
    for start in range(0, total, step):
        count = min(step, total - start)
        masks = np.arange(start, start + count, dtype=np.uint64)
        if dim:
            sel_bits = (masks[:, None] >> np.arange(dim, dtype=np.uint64)) & 1
            cand = (sel_bits.astype(np.uint8) @ basis + particular) % 2
        else:
            cand = particular.reshape(1, k)
        v = (cand.astype(np.int64) @ sbs.T) % modulus
        ok = ((v - residues) % mods == 0).all(axis=1)
        for row in cand[ok]:
            if row.any():
                hits.append(UnionSelector(bits=tuple(int(b) for b in row)))
    hits.sort(key=UnionSelector.key)
    return hits


# ---------------------------------------------------------------------------
# exhaustive search
# ---------------------------------------------------------------------------

def _classify_block(
    k: int, base: int, low_bits: int, h_max: int | None
) -> list[tuple[int, Fraction]]:
    """Classify every selector with the given high bits, by Gray-code walk.

    Selector integers use bit r-1 for class r.  The difference vector
    d[x] = f(x+1) - f(x) is updated by one eigenvalue column per step.
    """
    table = eigen_table(k)
    delta = [
        [table.p(r, k - x - 1) - table.p(r, k - x) for x in range(k)]
        for r in range(k + 1)
    ]
    d = [0] * k
    sel = 0
    for b in range(k):
        if base >> b & 1:
            sel |= 1 << b
            col = delta[b + 1]
            for x in range(k):
                d[x] += col[x]

    out: list[tuple[int, Fraction]] = []

    def record():
        if sel == 0 or any(v == 0 for v in d):
            return
        vals = {nu2(v) for v in d}
        if len(vals) != 1:
            return
        if h_max is not None and vals.pop() > h_max:
            return
        out.append((sel, Fraction(1, gcd_all(d))))

    record()
    for i in range(1, 1 << low_bits):
        b = nu2(i)
        sel ^= 1 << b
        sign = 1 if sel >> b & 1 else -1
        col = delta[b + 1]
        for x in range(k):
            d[x] += sign * col[x]
        record()
    return out


def search_all(
    k: int,
    h_max: int | None = None,
    cap: int = DEFAULT_ENUM_CAP,
    jobs: int = 1,
    sample: int | None = None,
    seed: int = 0,
) -> list[tuple[UnionSelector, Fraction]]:
    """Classify every nonzero selector; return those with transfer.

    Output rows are (selector, tau/pi), sorted by canonical selector key,
    identical regardless of the worker count.  Beyond the cap a
    CapacityError is raised unless sample is given (random selectors,
    seeded, duplicates removed).
    """
    if k > cap and sample is None:
        raise CapacityError(
            f"k={k} exceeds the exhaustive cap {cap}; pass sample= to draw instead",
            needed=k, cap=cap,
        )
    if sample is not None:
        rng = random.Random(seed)
        found: dict[int, Fraction] = {}
        for _ in range(sample):
            bits = rng.getrandbits(k)
            if bits == 0:
                continue
            u = UnionSelector(bits=tuple(bits >> b & 1 for b in range(k)))
            cert = check_union(u)
            if cert.verdict:
                found[bits] = cert.time_over_pi
        pairs = [(_selector_from_int(k, b), t) for b, t in found.items()]
        pairs.sort(key=lambda p: p[0].key())
        return pairs

    jobs = max(1, jobs)
    split_bits = 0
    while (1 << split_bits) < jobs and split_bits < k:
        split_bits += 1
    low_bits = k - split_bits
    blocks = [(k, hi << low_bits, low_bits, h_max) for hi in range(1 << split_bits)]
    if jobs == 1 or len(blocks) == 1:
        raw = [hit for blk in blocks for hit in _classify_block(*blk)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = [hit for part in pool.map(_classify_block_star, blocks) for hit in part]
    pairs = [(_selector_from_int(k, b), t) for b, t in raw]
    pairs.sort(key=lambda p: p[0].key())
    return pairs


def _classify_block_star(args: tuple) -> list[tuple[int, Fraction]]:
    return _classify_block(*args)


def _selector_from_int(k: int, bits: int) -> UnionSelector:
    return UnionSelector(bits=tuple(bits >> b & 1 for b in range(k)))
