"""Weighted perfect state transfer on J(2k, k).

The criterion: with eigenvalues theta_s = f(k - s), transfer between
antipodal vertices happens at time tau iff tau * (theta_s - theta_{s-1}) / pi
is an odd integer for every s = 1..k.  The eigenvalue-index mapping
x = k - s is fixed globally; parity of adjacent differences does not
depend on the ordering direction.

Construction: for any integers c_1..c_m that are odd exactly at
power-of-two indices (m at least 2**floor(log2 k)), the weights

    w_r = (pi/tau) * sum_{j>=r} c_j / C(2j, j) * C(k-r, j-r),  w_0 = 0

give transfer at time tau.  w_0 is a free parameter: shifting it shifts
every eigenvalue equally and leaves the criterion untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ObstructionError, ParityPatternError
from .exactmath import binom, gcd_all, nu2
from .scheme import CoeffVector, WeightVector, spectrum_weighted, weights_to_coeffs

ANTIPODAL_PAIR_NOTE = "antipodal (complementary k-subsets)"


@dataclass(frozen=True)
class PstCertificate:
    """Outcome of a transfer check.

    parity_evidence holds tau * (f(x+1) - f(x)) / pi for x = 0..k-1; the
    entry at x equals the criterion quantity tau * (theta_s - theta_{s-1}) / pi
    at s = k - x up to sign, so the odd-integer verdict is identical.  On
    a true verdict these are the k odd integers.  failing_s records the
    eigenspace index s = k - x of the first violation.
    """

    verdict: bool
    time_over_pi: Fraction | None
    parity_evidence: tuple[Fraction, ...]
    failing_s: int | None = None
    pair_note: str = field(default=ANTIPODAL_PAIR_NOTE)


@dataclass(frozen=True)
class ParityReport:
    """validate_parity outcome; offending lists the indices j in violation."""

    ok: bool
    offending: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok


def _is_power_of_two(j: int) -> bool:
    return j >= 1 and (j & (j - 1)) == 0


def _eigenvalue_differences(w: WeightVector) -> tuple[Fraction, ...]:
    # f(x+1) - f(x) = -(theta_s - theta_{s-1}) at s = k - x
    f = spectrum_weighted(w)
    return tuple(f[x + 1] - f[x] for x in range(w.k))


def _is_odd_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator % 2 != 0


def pst_check(w: WeightVector, tau_over_pi: Fraction | int) -> PstCertificate:
    """Decide perfect state transfer at time tau = tau_over_pi * pi."""
    tau_over_pi = Fraction(tau_over_pi)
    if tau_over_pi <= 0:
        raise ValueError(f"tau_over_pi must be positive, got {tau_over_pi}")
    evidence = tuple(tau_over_pi * d for d in _eigenvalue_differences(w))
    bad_x = next((x for x, e in enumerate(evidence) if not _is_odd_integer(e)), None)
    verdict = bad_x is None
    return PstCertificate(
        verdict=verdict,
        time_over_pi=tau_over_pi if verdict else None,
        parity_evidence=evidence,
        failing_s=None if verdict else w.k - bad_x,
    )


def minimal_pst_time(w: WeightVector) -> Fraction | None:
    """Earliest transfer time as tau/pi, or None when no time exists.

    Scale by L = lcm of the weight denominators so the adjacent
    eigenvalue differences d'_x = L (f(x+1) - f(x)) are integers; transfer
    happens at some time iff all d'_x are nonzero with one common 2-adic
    valuation, and then the earliest time is L/g for g = gcd of the d'_x.
    """
    L = math.lcm(*(e.denominator for e in w.entries))
    f = spectrum_weighted(w)
    d = [L * (f[x + 1] - f[x]) for x in range(w.k)]
    assert all(q.denominator == 1 for q in d)
    dints = [int(q) for q in d]
    if any(v == 0 for v in dints):
        return None
    if len({nu2(v) for v in dints}) != 1:
        return None
    return Fraction(L, gcd_all(dints))


def validate_parity(k: int, c: Sequence[int]) -> ParityReport:
    """Check that c_1..c_m is odd exactly at power-of-two indices.

    Requires 2**floor(log2 k) <= m <= k, so every relevant power of two
    is inside the index range.
    """
    m = len(c)
    ell = k.bit_length() - 1
    if not (1 << ell) <= m <= k:
        raise ValueError(
            f"validate_parity needs 2**floor(log2 k) <= m <= k, got k={k}, m={m}"
        )
    offending = tuple(
        j for j, cj in enumerate(c, start=1)
        if (cj % 2 != 0) != _is_power_of_two(j)
    )
    return ParityReport(ok=not offending, offending=offending)


def construct_weights(
    k: int,
    c: Sequence[int],
    tau_over_pi: Fraction | int,
    integral_shift: bool = False,
) -> WeightVector:
    """Weights with guaranteed transfer at tau, from coefficients c_1..c_m.

    w_0 = 0 by default; with integral_shift the constant class is shifted
    so the coefficient vector has c_0 = 0 (integral spectrum).  Raises
    ObstructionError when m < 2**floor(log2 k) and ParityPatternError when
    the parity pattern of c is wrong.
    """
    tau_over_pi = Fraction(tau_over_pi)
    if tau_over_pi <= 0:
        raise ValueError(f"tau_over_pi must be positive, got {tau_over_pi}")
    m = len(c)
    ell = k.bit_length() - 1
    if m < (1 << ell):
        raise ObstructionError(k=k, m=m)
    if m > k:
        raise ValueError(f"need m <= k, got m={m}, k={k}")
    report = validate_parity(k, c)
    if not report:
        raise ParityPatternError(report.offending)
    pi_over_tau = 1 / tau_over_pi
    entries = [Fraction(0)] + [
        pi_over_tau * sum(
            (Fraction(c[j - 1], binom(2 * j, j)) * binom(k - r, j - r)
             for j in range(r, m + 1)),
            Fraction(0),
        )
        for r in range(1, m + 1)
    ]
    w = WeightVector(k=k, entries=tuple(entries))
    if integral_shift:
        c0 = weights_to_coeffs(w).entries[0]
        entries[0] = -c0
        w = WeightVector(k=k, entries=tuple(entries))
    return w


def integral_spectrum_check(w: WeightVector) -> CoeffVector | None:
    """The integer coefficient vector of w, or None.

    Present exactly when the spectrum f(0..k) is integral: the basis
    change between f values and coefficients is unimodular.
    """
    c = weights_to_coeffs(w)
    return c if c.as_integers() is not None else None


def canonical_example(k: int) -> WeightVector:
    """The reference family: m = k, c_j = 3 at powers of two and 2 otherwise.

    Yields strictly positive weights decreasing in r, with transfer at
    time pi.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got k={k}")
    c = [3 if _is_power_of_two(j) else 2 for j in range(1, k + 1)]
    return construct_weights(k, c, Fraction(1))


def no_pst_witness(k: int, c: Sequence[int]) -> int:
    """The even eigenvalue difference that blocks transfer when m is short.

    For m < 2**floor(log2 k) returns g(2**l - 1) =
    sum_j c_j C(2**l + j - 1, 2j - 1), which is even for every integer c:
    each binomial in the sum carries a factor of 2.
    """
    m = len(c)
    ell = k.bit_length() - 1
    if m >= (1 << ell):
        raise ValueError(f"no_pst_witness needs m < 2**floor(log2 k) = {1 << ell}, got m={m}")
    x = (1 << ell) - 1
    return sum(cj * binom(x + j, 2 * j - 1) for j, cj in enumerate(c, start=1))
