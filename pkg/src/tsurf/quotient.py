"""Quotients of cyclic quotient singularities by involutions.

An involution of 1/m(1, q) lifts to a group of order 2m acting on the plane;
the possible quotients fall into five cases (a)-(e). The cases are evaluated
arithmetically and their consequences for Wahl and T-singularities are checked
by exhaustive scans.
"""

from dataclasses import dataclass, field
from math import gcd

from .cf_core import hj_expand
from .errors import ValidationError
from .tsing import TType, t_recognize


@dataclass(frozen=True)
class CQS:
    """The cyclic quotient singularity 1/m(1, q)."""

    m: int
    q: int

    def __post_init__(self):
        if not all(isinstance(x, int) for x in (self.m, self.q)):
            raise ValidationError("m and q must be integers")
        if not 0 < self.q < self.m or gcd(self.m, self.q) != 1:
            raise ValidationError(f"need 0 < q < m coprime, got ({self.m}, {self.q})")

    @property
    def is_duval(self):
        """Type A: the resolution is a chain of (-2)-curves."""
        return self.q == self.m - 1

    def same_as(self, other):
        """Equal up to swapping the coordinates (q -> q^-1 mod m)."""
        return self.m == other.m and (self.q == other.q or (self.q * other.q) % self.m == 1)


SMOOTH = "smooth"


@dataclass(frozen=True)
class QuotientOutcome:
    caseTag: str
    result: object
    normalized: object
    applicable: bool
    reason: str = ""
    isT: TType = None

    @property
    def smooth(self):
        return self.normalized == SMOOTH


def normalize(m0, q0):
    """Reduce q0 mod m0; returns SMOOTH for m0 = 1, a CQS, or None when not coprime."""
    if m0 == 1:
        return SMOOTH
    q = q0 % m0
    if q == 0 or gcd(m0, q) != 1:
        return None
    return CQS(m0, q)


def _t_of(normalized):
    if not isinstance(normalized, CQS):
        return None
    return t_recognize(hj_expand(normalized.m, normalized.q))


def _candidate(tag, m0, q0, applicable=True, reason=""):
    if not applicable:
        return QuotientOutcome(tag, (m0, q0) if m0 else None, None, False, reason)
    normalized = normalize(m0, q0)
    if normalized is None:
        reason = f"raw ({m0}, {q0}) is not a valid singularity type: gcd {gcd(m0, q0 % m0)}"
    return QuotientOutcome(tag, (m0, q0), normalized, True, reason, _t_of(normalized))


def quotient_candidates(m, q):
    """All five cases for 1/m(1, q), with applicability and normalized results."""
    CQS(m, q)
    out = []
    if q == m - 1:
        out.append(QuotientOutcome("a", SMOOTH, SMOOTH, True))
    else:
        out.append(QuotientOutcome("a", SMOOTH, None, False, "smooth quotient needs q = m - 1"))
    out.append(_candidate("b", 2 * m, q))
    out.append(_candidate("b", 2 * m, m + q))
    out.append(_candidate("c", m, 2 * q))
    if m % 2 == 0:
        out.append(_candidate("d", m // 2, q))
    else:
        out.append(_candidate("d", 0, q, False, "needs m even"))
    if (q * q) % m == 1 % m and q != m - 1:
        u = gcd(q + 1, m)
        out.append(_candidate("e", m // u, (q + 1) // u))
    else:
        out.append(_candidate("e", 0, 0, False, "needs q^2 = 1 mod m and q != m - 1"))
    return out


@dataclass
class ScanReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations


def wahl_types(max_n):
    for n in range(2, max_n + 1):
        for a in range(1, n):
            if gcd(n, a) == 1:
                yield TType(1, n, a)


def wahl_quotient_scan(max_n):
    """No involution quotient of a Wahl singularity is Wahl or smooth."""
    if not isinstance(max_n, int) or max_n < 2:
        raise ValidationError("max_n must be >= 2")
    report = ScanReport()
    for t in wahl_types(max_n):
        m, q = t.fraction()
        for outcome in quotient_candidates(m, q):
            if not outcome.applicable or outcome.normalized is None:
                continue
            report.checked += 1
            if outcome.smooth or (outcome.isT is not None and outcome.isT.d == 1):
                report.violations.append((t, outcome))
    return report


def t_types_up_to(max_index):
    """Non-Du-Val T-singularities with d n^2 <= max_index."""
    for n in range(2, max_index + 1):
        if n * n > max_index:
            break
        for d in range(1, max_index // (n * n) + 1):
            for a in range(1, n):
                if gcd(n, a) == 1:
                    yield TType(d, n, a)


def duval_quotient_scan(max_index):
    """A type-A quotient (smooth counts as A_0) of a T-singularity needs n = 2
    and is then 1/2d(1, 2d - 1)."""
    if not isinstance(max_index, int) or max_index < 1:
        raise ValidationError("max_index must be >= 1")
    report = ScanReport()
    for t in t_types_up_to(max_index):
        m, q = t.fraction()
        expected = CQS(2 * t.d, 2 * t.d - 1)
        for outcome in quotient_candidates(m, q):
            if not outcome.applicable or outcome.normalized is None:
                continue
            report.checked += 1
            if outcome.smooth:
                report.violations.append((t, outcome))
            elif outcome.normalized.is_duval and (t.n != 2 or not outcome.normalized.same_as(expected)):
                report.violations.append((t, outcome))
    return report


def lee_park_quotient(n):
    """Predicted T-quotient of 1/n^2(1, n - 1): (2n^2, 2nk - 1) for n = 2k - 1,
    (2k^2, 2k - 1) for n = 2k; returned with the case that produces it."""
    if not isinstance(n, int) or n < 2:
        raise ValidationError("n must be >= 2")
    if n % 2:
        k = (n + 1) // 2
        return "b", CQS(2 * n * n, 2 * n * k - 1)
    k = n // 2
    return "d", CQS(2 * k * k, 2 * k - 1)


def t_quotients(m, q):
    """Applicable outcomes whose normalized result is a non-Du-Val T-singularity."""
    return [o for o in quotient_candidates(m, q) if o.applicable and o.isT is not None]
