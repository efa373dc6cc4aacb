"""Zero continued fractions, polygon triangulations and the sets K and K-cross."""

from dataclasses import dataclass
from functools import lru_cache

from .cf_core import dual, is_zero_chain
from .errors import InconsistencyError, ValidationError


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of the polygon V_0 ... V_s."""

    vertex_count: int
    diagonals: frozenset
    degrees: tuple


@lru_cache(maxsize=None)
def _triangulations(length):
    """Triangulations of the polygon on vertices 0..length, edge (0, length) fixed.

    Each entry is (diagonals, degrees) with degrees indexed by vertex.
    """
    if length < 2:
        return ((frozenset(), (0,) * (length + 1)),)
    out = []
    for k in range(1, length):
        for left_diags, left_deg in _triangulations(k):
            for right_diags, right_deg in _triangulations(length - k):
                degrees = list(left_deg) + [0] * (length - k)
                for i, v in enumerate(right_deg):
                    degrees[k + i] += v
                degrees[0] += 1
                degrees[k] += 1
                degrees[length] += 1
                diags = set(left_diags)
                diags.update((a + k, b + k) for a, b in right_diags)
                if k >= 2:
                    diags.add((0, k))
                if length - k >= 2:
                    diags.add((k, length))
                out.append((frozenset(diags), tuple(degrees)))
    return tuple(out)


@lru_cache(maxsize=None)
def _degree_vectors(length):
    """Like _triangulations but keeping only degree vectors (faster)."""
    if length < 2:
        return ((0,) * (length + 1),)
    out = []
    for k in range(1, length):
        rights = _degree_vectors(length - k)
        for left in _degree_vectors(k):
            for right in rights:
                deg = left[:-1] + (left[-1] + right[0] + 1,) + right[1:]
                out.append((deg[0] + 1,) + deg[1:-1] + (deg[-1] + 1,))
    return tuple(out)


def enumerate_triangulations(s):
    """All triangulations of the (s+1)-gon V_0 ... V_s."""
    if s < 2:
        raise ValidationError("need s >= 2")
    return [Triangulation(s + 1, diags, deg) for diags, deg in _triangulations(s)]


def enumerate_zcf(s):
    """All zero chains of length s, as [v_1, ..., v_s] of the triangulations."""
    if not isinstance(s, int) or s < 2:
        raise ValidationError("need s >= 2")
    chains = {deg[1:] for deg in _degree_vectors(s)}
    return [list(c) for c in sorted(chains)]


def bounded_zero_chains(bounds):
    """Zero chains k with 1 <= k_i <= bounds[i], by backtracking.

    A partial chain is kept only while every proper prefix continuant is
    positive and some completion can still bring the continuant to 0; the
    completion test is memoised on (position, last two continuants).
    """
    bounds = list(bounds)
    size = len(bounds)

    @lru_cache(maxsize=None)
    def completable(i, p_prev, p):
        # p_prev, p are the continuants of k_1..k_{i-1} and k_1..k_i.
        if i == size:
            return p == 0
        last = i == size - 1
        for k in range(1, bounds[i] + 1):
            nxt = k * p - p_prev
            if last:
                if nxt == 0:
                    return True
            elif nxt > 0 and completable(i + 1, p, nxt):
                return True
        return False

    out = []

    def walk(i, p_prev, p, prefix):
        if i == size:
            out.append(list(prefix))
            return
        last = i == size - 1
        for k in range(1, bounds[i] + 1):
            nxt = k * p - p_prev
            ok = nxt == 0 if last else nxt > 0 and completable(i + 1, p, nxt)
            if ok:
                prefix.append(k)
                walk(i + 1, p, nxt, prefix)
                prefix.pop()

    if size >= 2 and completable(0, 0, 1):
        walk(0, 0, 1, [])
    for chain in out:
        if not is_zero_chain(chain):
            raise InconsistencyError(f"backtracking produced a non-zero chain {chain}")
    return out


def k_set(delta, omega):
    """Zero chains bounded entrywise by the dual expansion."""
    return bounded_zero_chains(dual(delta, omega))


def k_cross_set(delta, omega):
    """Members of the K-set that agree with the dual at both ends."""
    b = dual(delta, omega)
    return [k for k in k_set(delta, omega) if k[0] == b[0] and k[-1] == b[-1]]
