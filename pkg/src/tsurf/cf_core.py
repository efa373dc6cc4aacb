"""Hirzebruch-Jung continued fractions: expansion, evaluation, duality, blow-down."""

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from .errors import StructuralError, ValidationError


@dataclass(frozen=True, order=True)
class CyclicQuotient:
    """The singularity 1/delta (1, omega) as a reduced pair."""

    delta: int
    omega: int

    def __post_init__(self):
        check_fraction(self.delta, self.omega)


class Continuant(NamedTuple):
    p: int
    q: int


def check_fraction(delta, omega):
    """Raise ValidationError unless 0 < omega < delta and gcd = 1."""
    if not (isinstance(delta, int) and isinstance(omega, int)):
        raise ValidationError(f"fraction entries must be integers: {delta!r}, {omega!r}")
    if not 0 < omega < delta:
        raise ValidationError(f"need 0 < omega < delta, got ({delta}, {omega})")
    if gcd(delta, omega) != 1:
        raise ValidationError(f"delta and omega not coprime: ({delta}, {omega})")


def hj_expand(delta, omega):
    """Expansion delta/omega = [e_1, ..., e_r] with every e_i >= 2."""
    check_fraction(delta, omega)
    chain = []
    num, den = delta, omega
    while den:
        e = -(-num // den)
        chain.append(e)
        num, den = den, e * den - num
    return chain


def _continuant(entries):
    p_prev, p = 0, 1
    for e in entries:
        p_prev, p = p, e * p - p_prev
    return p


def evaluate(chain):
    """Continuant pair (p, q) with value p/q of the chain."""
    if len(chain) == 0:
        raise ValidationError("cannot evaluate an empty chain")
    return Continuant(_continuant(chain), _continuant(chain[1:]))


def dual(delta, omega):
    """Expansion of delta/(delta - omega)."""
    check_fraction(delta, omega)
    return hj_expand(delta, delta - omega)


def check_hj_chain(chain):
    if len(chain) == 0 or any(not isinstance(e, int) or e < 2 for e in chain):
        raise ValidationError(f"not a Hirzebruch-Jung chain (entries >= 2): {chain!r}")


def chain_fraction(chain):
    """The pair (delta, omega) resolved by an HJ chain."""
    check_hj_chain(chain)
    p, q = evaluate(chain)
    return p, q


def contract_at(state, i):
    """Contract the entry 1 at index i of state; returns a new list."""
    out = list(state)
    if len(out) == 1:
        return []
    del out[i]
    if 0 < i < len(state) - 1:
        out[i - 1] -= 1
        out[i] -= 1
    elif i == 0:
        out[0] -= 1
    else:
        out[-1] -= 1
    return out


def is_stuck(state):
    """True when a 0 entry appears anywhere but the terminal state [0]."""
    return state != [0] and any(e <= 0 for e in state)


def blow_down(chain):
    """Contract 1-entries leftmost first until none remain or [0] is reached.

    A state holding a 0 other than the terminal [0] cannot be reduced further
    and is returned as it stands; blow_down_strict reports it as an error.
    """
    state = list(chain)
    while state != [0] and not is_stuck(state) and 1 in state:
        state = contract_at(state, state.index(1))
    return state


def blow_down_strict(chain):
    """blow_down that raises StructuralError on a stray 0."""
    state = blow_down(chain)
    if is_stuck(state):
        raise StructuralError(f"blow-down of {list(chain)} stalled at {state}")
    return state


def is_zero_chain(chain):
    """True iff the chain has value 0 as a continued fraction.

    The full continuant must vanish while every proper prefix continuant stays
    positive, so the value is well defined at each intermediate convergent.
    """
    if len(chain) == 0:
        raise ValidationError("cannot evaluate an empty chain")
    if any(not isinstance(e, int) or e < 1 for e in chain):
        raise ValidationError(f"zero chains have positive entries: {chain!r}")
    p_prev, p = 0, 1
    for i, e in enumerate(chain):
        p_prev, p = p, e * p - p_prev
        if i < len(chain) - 1 and p <= 0:
            return False
    return p == 0
