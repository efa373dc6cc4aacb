"""T-singularities: recognition, generation and discrepancies of T-chains."""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cf_core import check_hj_chain, evaluate, hj_expand
from .errors import InconsistencyError, ValidationError


@dataclass(frozen=True, order=True)
class TType:
    """The T-singularity 1/(d n^2) (1, d n a - 1)."""

    d: int
    n: int
    a: int

    def __post_init__(self):
        if not all(isinstance(x, int) for x in (self.d, self.n, self.a)):
            raise ValidationError(f"T-type entries must be integers: {self!r}")
        if self.d < 1 or self.n < 2 or not 0 < self.a < self.n:
            raise ValidationError(f"need d >= 1, n >= 2, 0 < a < n: {self!r}")
        if gcd(self.a, self.n) != 1:
            raise ValidationError(f"a and n not coprime: {self!r}")

    def fraction(self):
        return self.d * self.n ** 2, self.d * self.n * self.a - 1

    @property
    def is_wahl(self):
        return self.d == 1


@dataclass(frozen=True)
class DiscrepancyVector:
    deltas: tuple
    t_first: int = None
    t_last: int = None


def t_expand(t):
    """Minimal resolution chain of a T-singularity."""
    return hj_expand(*t.fraction())


def seed_d(chain):
    """d if chain is a seed [4] or [3, 2, ..., 2, 3], else None."""
    if chain == [4]:
        return 1
    if len(chain) >= 2 and chain[0] == 3 and chain[-1] == 3 and all(e == 2 for e in chain[1:-1]):
        return len(chain)
    return None


def unwrap(chain):
    """Undo child operations down to a seed.

    Returns (d, steps) where steps lists, from the seed outwards, which side
    received the new 2 ("left" for [2, ..., e_r + 1], "right" for
    [e_1 + 1, ..., 2]); None when the chain is not a T-chain.
    """
    steps = []
    current = list(chain)
    while True:
        d = seed_d(current)
        if d is not None:
            return d, steps[::-1]
        if len(current) < 2:
            return None
        # A T-chain never starts and ends with 2, so at most one side applies.
        if current[0] == 2 and current[-1] != 2 and current[-1] >= 3:
            steps.append("left")
            current = current[1:-1] + [current[-1] - 1]
        elif current[-1] == 2 and current[0] != 2 and current[0] >= 3:
            steps.append("right")
            current = [current[0] - 1] + current[1:-1]
        else:
            return None


def _recognize_arithmetic(chain):
    delta, omega = evaluate(chain)
    g = gcd(delta, omega + 1)
    n, rem = divmod(delta, g)
    if rem or n < 2 or g % n:
        return None
    d = g // n
    a, rem = divmod(omega + 1, d * n)
    if rem or not 0 < a < n or gcd(a, n) != 1:
        return None
    t = TType(d, n, a)
    return t if t_expand(t) == list(chain) else None


def t_recognize(chain):
    """The TType of a T-chain, or None when the chain is not one.

    Two independent routes are compared: gcd arithmetic on the fraction and
    unwrapping the chain down to a seed.
    """
    check_hj_chain(chain)
    arithmetic = _recognize_arithmetic(chain)
    unwrapped = unwrap(chain)
    if (arithmetic is None) != (unwrapped is None):
        raise InconsistencyError(f"T-chain recognition routes disagree on {chain}")
    if arithmetic is not None and arithmetic.d != unwrapped[0]:
        raise InconsistencyError(f"T-chain d disagrees on {chain}")
    return arithmetic


def t_children(chain):
    """The two T-chains ([2, e_1, ..., e_r + 1], [e_1 + 1, ..., e_r, 2])."""
    if t_recognize(chain) is None:
        raise ValidationError(f"not a T-chain: {chain}")
    return [2] + chain[:-1] + [chain[-1] + 1], [chain[0] + 1] + chain[1:] + [2]


def enumerate_t_chains(max_len, max_delta, d_filter=None):
    """All T-chains up to the given length and Delta, in lexicographic order."""
    if max_len < 1:
        raise ValidationError("max_len must be >= 1")
    seeds = []
    d = 1
    while True:
        seed = [4] if d == 1 else [3] + [2] * (d - 2) + [3]
        if 4 * d > max_delta or (len(seed) > max_len and d > 1):
            break
        if (d_filter is None or d_filter == d) and len(seed) <= max_len:
            seeds.append(seed)
        d += 1
    found = {}
    queue = deque(seeds)
    while queue:
        chain = queue.popleft()
        key = tuple(chain)
        if key in found:
            continue
        t = t_recognize(chain)
        found[key] = t
        if len(chain) < max_len:
            for child in t_children(chain):
                if t_expand_delta(child) <= max_delta:
                    queue.append(child)
    return [(found[k], list(k)) for k in sorted(found)]


def t_expand_delta(chain):
    return evaluate(chain).p


def discrepancies(chain):
    """Discrepancies of the chain curves, from the exact solve M delta = v.

    M is the intersection matrix (diagonal -e_i, 1 between neighbours) and
    v_i = e_i - 2. The system is tridiagonal and solved by exact elimination.
    """
    check_hj_chain(chain)
    size = len(chain)
    diag = [Fraction(-e) for e in chain]
    rhs = [Fraction(e - 2) for e in chain]
    for i in range(1, size):
        factor = 1 / diag[i - 1]
        diag[i] -= factor
        rhs[i] -= factor * rhs[i - 1]
    deltas = [Fraction(0)] * size
    deltas[-1] = rhs[-1] / diag[-1]
    for i in range(size - 2, -1, -1):
        deltas[i] = (rhs[i] - deltas[i + 1]) / diag[i]
    t = t_recognize(chain)
    if t is None:
        return DiscrepancyVector(tuple(deltas))
    return DiscrepancyVector(tuple(deltas), _t_value(deltas[0], t.n), _t_value(deltas[-1], t.n))


def _t_value(delta, n):
    value = n * (1 + delta)
    if value.denominator != 1:
        raise InconsistencyError(f"non-integral t = {value}")
    return int(value)


def discrepancies_recursive(chain):
    """Discrepancies rebuilt from the seed through the child operations.

    Each curve carries an integer t with delta = -1 + t/n. Seeds have n = 2 and
    every t = 1. Adding a 2 on the left gives index n + t_last with t values
    (n, t_1, ..., t_r); adding it on the right gives n + t_first with
    (t_1, ..., t_r, n).
    """
    check_hj_chain(chain)
    unwrapped = unwrap(chain)
    if unwrapped is None:
        raise ValidationError(f"not a T-chain: {chain}")
    d, steps = unwrapped
    n = 2
    ts = [1] * (1 if d == 1 else d)
    for side in steps:
        if side == "left":
            ts, n = [n] + ts, n + ts[-1]
        else:
            ts, n = ts + [n], n + ts[0]
    deltas = tuple(Fraction(t, n) - 1 for t in ts)
    return DiscrepancyVector(deltas, ts[0], ts[-1])


def center(chain):
    """1-based positions of the curves with the lowest discrepancy."""
    if t_recognize(chain) is None:
        raise ValidationError(f"not a T-chain: {chain}")
    deltas = discrepancies(chain).deltas
    low = min(deltas)
    return {i + 1 for i, x in enumerate(deltas) if x == low}
