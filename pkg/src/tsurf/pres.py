"""P-resolutions of cyclic quotient singularities from zero continued fractions."""

from dataclasses import dataclass, field
from fractions import Fraction

from .cf_core import blow_down, blow_down_strict, check_fraction, dual, evaluate, is_zero_chain
from .errors import StructuralError, ValidationError
from .tsing import TType, discrepancies, t_expand
from .zcf import k_cross_set, k_set


@dataclass(frozen=True)
class PNode:
    """A point of a P-resolution stored as (d, n, a).

    n = a = 1 encodes the Du Val point A_{d-1}; d = n = a = 1 a smooth point.
    """

    d: int
    n: int
    a: int

    @property
    def kind(self):
        if self.n == 1 and self.a == 1:
            return "smooth" if self.d == 1 else "duval"
        return "T"

    def ttype(self):
        return TType(self.d, self.n, self.a) if self.kind == "T" else None

    def chain(self):
        """Minimal resolution chain, ordered from the left link to the right."""
        if self.kind == "T":
            return t_expand(self.ttype())
        return [2] * (self.d - 1)

    def end_discrepancies(self):
        """Discrepancies of the outermost curves (0 on Du Val and smooth points)."""
        if self.kind != "T":
            return Fraction(0), Fraction(0)
        deltas = discrepancies(self.chain()).deltas
        return deltas[0], deltas[-1]

    def token(self):
        if self.kind == "smooth":
            return None
        if self.kind == "duval":
            return f"A_{self.d - 1}"
        prefix = "" if self.d == 1 else str(self.d)
        return f"[{prefix}({self.n},{self.a})]"


@dataclass(frozen=True)
class PResolution:
    delta: int
    omega: int
    zcf: tuple
    nodes: tuple
    links: tuple
    d_deficits: tuple


@dataclass
class Report:
    zero_reduction: bool
    node_validity: bool
    ampleness: bool
    roundtrip: bool
    k_dot_gamma: list = field(default_factory=list)
    details: list = field(default_factory=list)

    @property
    def passed(self):
        return self.zero_reduction and self.node_validity and self.ampleness and self.roundtrip


def _contract_prefix(state, bound):
    """Contract 1-entries among the cells with tag < bound, leftmost first.

    state is a list of [value, tag] cells ordered from the link side. A cell
    removed at the link end also lowers the link by one; the number of such
    removals is returned. Cells with tag >= bound are never removed, though
    their values drop when a neighbour is contracted.
    """
    hits = 0
    while True:
        idx = next((i for i, (v, t) in enumerate(state) if t < bound and v == 1), None)
        if idx is None:
            return hits
        del state[idx]
        if idx == 0:
            hits += 1
            if state:
                state[0][0] -= 1
        else:
            state[idx - 1][0] -= 1
            if idx < len(state):
                state[idx][0] -= 1
        if any(v <= 0 for v, _ in state):
            raise StructuralError(f"stray non-positive entry while contracting: {state}")


def _node_from_prefix(state, bound, d):
    prefix = [v for v, t in state if t < bound]
    if not prefix:
        return PNode(d, 1, 1)
    if min(prefix) < 2:
        raise StructuralError(f"prefix chain not minimal: {prefix}")
    p, q = evaluate(prefix)
    return PNode(d, p, p - q)


def _run(b, positions, deficits):
    """Shared simulation: yields (node, link or None) per position."""
    state = [[v, t] for t, v in enumerate(b)]
    previous_a = False
    for idx, (j, d) in enumerate(zip(positions, deficits)):
        hits = _contract_prefix(state, j)
        node = _node_from_prefix(state, j, d)
        link = None
        if idx == 0:
            if hits:
                raise StructuralError("first node cannot follow a contraction")
        else:
            link = 1 + hits + (1 if previous_a else 0)
        yield node, link, state
        cell = next(c for c in state if c[1] == j)
        cell[0] -= d
        previous_a = node.n == 1


def compute_p_resolution(delta, omega, zcf):
    """The P-resolution attached to a member of the K-set."""
    check_fraction(delta, omega)
    b = dual(delta, omega)
    zcf = list(zcf)
    if len(zcf) != len(b) or any(not 1 <= k <= e for k, e in zip(zcf, b)) or not is_zero_chain(zcf):
        raise ValidationError(f"{zcf} is not in the K-set of ({delta}, {omega})")
    deficits = [e - k for e, k in zip(b, zcf)]
    positions = [j for j, x in enumerate(deficits) if x > 0]
    nodes, links = [], []
    state = None
    for node, link, state in _run(b, positions, [deficits[j] for j in positions]):
        nodes.append(node)
        if link is not None:
            links.append(link)
    # state now holds the final chain; it must be a zero chain.
    final = [v for v, _ in state]
    if blow_down_strict(final) != [0]:
        raise StructuralError(f"final chain {final} does not reduce to [0]")
    for node in nodes:
        if node.kind == "T":
            node.ttype()
    return PResolution(delta, omega, tuple(zcf), tuple(nodes), tuple(links), tuple(deficits))


def enumerate_p_resolutions(delta, omega, cross_only=False):
    """All P-resolutions (or only those from the K-cross set), ordered by zcf."""
    members = k_cross_set(delta, omega) if cross_only else k_set(delta, omega)
    return [compute_p_resolution(delta, omega, k) for k in members]


def resolution_chain(nodes, links):
    """Minimal resolution of the P-resolution: node chains joined by links."""
    out = list(nodes[0].chain())
    for link, node in zip(links, nodes[1:]):
        out.append(link)
        out.extend(node.chain())
    return out


def recover_zcf(delta, omega, nodes, links):
    """Zero chains whose P-resolution has exactly these nodes and links.

    Runs the simulation from the nodes alone: for each node, every position
    that reproduces its (n, a) and the preceding link is tried, and the
    deficits at the chosen positions rebuild k = b - d.
    """
    b = dual(delta, omega)
    nodes, links = list(nodes), list(links)
    results = []

    def search(idx, state, last, previous_a, chosen):
        if idx == len(nodes):
            k = list(b)
            for j, d in chosen:
                k[j] -= d
            if min(k) >= 1 and blow_down([v for v, _ in state]) == [0]:
                results.append(k)
            return
        node = nodes[idx]
        for j in range(last + 1, len(b)):
            trial = [list(c) for c in state]
            try:
                hits = _contract_prefix(trial, j)
                candidate = _node_from_prefix(trial, j, node.d)
            except (StructuralError, ValidationError):
                continue
            if (candidate.n, candidate.a) != (node.n, node.a):
                continue
            if idx == 0 and hits:
                continue
            if idx > 0 and links[idx - 1] != 1 + hits + (1 if previous_a else 0):
                continue
            cell = next(c for c in trial if c[1] == j)
            cell[0] -= node.d
            search(idx + 1, trial, j, node.n == 1, chosen + [(j, node.d)])

    if nodes and len(nodes) == len(links) + 1:
        search(0, [[v, t] for t, v in enumerate(b)], -1, False, [])
    return results


def node_is_valid(node):
    if not all(isinstance(x, int) for x in (node.d, node.n, node.a)) or node.d < 1:
        return False
    if node.n == 1:
        return node.a == 1
    try:
        TType(node.d, node.n, node.a)
    except ValidationError:
        return False
    return True


def link_degrees(nodes, links):
    """K.Gamma_i for every link: (c_i - 2) minus the adjacent end discrepancies."""
    out = []
    for i, c in enumerate(links):
        right_of_left = nodes[i].end_discrepancies()[1]
        left_of_right = nodes[i + 1].end_discrepancies()[0]
        out.append(Fraction(c - 2) - right_of_left - left_of_right)
    return out


def verify_p_resolution(p):
    """Four independent checks of a P-resolution; failures are recorded, not raised."""
    details = []
    nodes, links = list(p.nodes), list(p.links)
    shape_ok = len(nodes) == len(links) + 1 and all(isinstance(c, int) and c >= 1 for c in links)
    validity = shape_ok and all(node_is_valid(n) for n in nodes)
    if not validity:
        details.append("node validity failed")
    b = dual(p.delta, p.omega)
    zero_ok = False
    if validity:
        scheme = b[::-1] + [1] + resolution_chain(nodes, links)
        zero_ok = blow_down(scheme) == [0]
    if not zero_ok:
        details.append("zero reduction failed")
    degrees = link_degrees(nodes, links) if validity else []
    ample = validity and all(x > 0 for x in degrees)
    if not ample:
        details.append("relative ampleness failed")
    roundtrip = False
    if validity:
        nonzero = [x for x in p.d_deficits if x]
        consistent = (
            nonzero == [n.d for n in nodes]
            and [e - x for e, x in zip(b, p.d_deficits)] == list(p.zcf)
            and is_zero_chain(list(p.zcf))
        )
        roundtrip = consistent and recover_zcf(p.delta, p.omega, nodes, links) == [list(p.zcf)]
    if not roundtrip:
        details.append("zcf round trip failed")
    return Report(zero_ok, validity, ample, roundtrip, degrees, details)


def render(p):
    """Bracket notation: [d(n,a)] for T points, A_k for Du Val points, (c) for links."""
    report = verify_p_resolution(p)
    if not report.passed:
        raise ValidationError(f"cannot render an unverified P-resolution: {report.details}")
    return render_parts(p.nodes, p.links)


def render_parts(nodes, links):
    tokens = [nodes[0].token()]
    for c, node in zip(links, nodes[1:]):
        tokens.append(f"({c})")
        tokens.append(node.token())
    return "-".join(t for t in tokens if t is not None)
