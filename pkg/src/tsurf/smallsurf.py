"""Building blocks of small surfaces, their assembly and the Horikawa tables.

An elliptic surface with a section of self-intersection -(pg + 1) is blown up
so that a main block (containing the proper transform of the section) plus a
number of FIB blocks (one fibre each, meeting the section) become disjoint
T-chains. Each block is stored as data: chain constructors, the local K^2
contribution, the discrepancy of the section curve, the blow-up count and the
Euler number of the fibres it consumes.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InconsistencyError, ValidationError
from .tsing import TType, discrepancies, t_expand, t_recognize

FIB_JUNCTION = Fraction(-1, 3)


# ---------------------------------------------------------------- fibres

_EULER = {"II": 2, "III": 3, "IV": 4}


@dataclass(frozen=True)
class FiberType:
    """A Kodaira fibre I_n (n >= 1), II, III or IV."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind == "I":
            if not isinstance(self.n, int) or self.n < 1:
                raise ValidationError(f"I_n needs n >= 1, got {self.n!r}")
        elif self.kind in _EULER:
            if self.n:
                raise ValidationError(f"fibre {self.kind} takes no index")
        else:
            raise ValidationError(f"unknown fibre kind {self.kind!r}")

    @property
    def euler_number(self):
        return self.n if self.kind == "I" else _EULER[self.kind]

    def __str__(self):
        return f"I{self.n}" if self.kind == "I" else self.kind


def I(n):  # noqa: E743 - Kodaira name
    return FiberType("I", n)


def parse_fiber(text):
    """'I5' -> I_5; 'II', 'III', 'IV' as named."""
    text = text.strip()
    if text in _EULER:
        return FiberType(text)
    if text.startswith("I") and text[1:].isdigit():
        return FiberType("I", int(text[1:]))
    raise ValidationError(f"cannot parse fibre {text!r}")


# ---------------------------------------------------------------- catalog data


def twos(k):
    """Marker for a run of k (-2)-curves; k = -1 merges the two neighbours."""
    return ("2", k)


def build_chain(parts):
    """Expand ints and runs of twos; a run of length -1 fuses a, b into a + b - 2."""
    out = []
    pending_merge = False
    for part in parts:
        if isinstance(part, tuple):
            k = part[1]
            if k >= 0:
                out.extend([2] * k)
            elif k == -1:
                pending_merge = True
            else:
                raise ValidationError(f"run of {k} twos")
        else:
            if pending_merge:
                out[-1] = out[-1] + part - 2
                pending_merge = False
            else:
                out.append(part)
    if pending_merge:
        raise ValidationError("dangling merge")
    return out


@dataclass(frozen=True)
class Slot:
    """A complete fibre used by a block; min_n(r) bounds its I_n index."""

    name: str
    min_n: object
    allows_ii: bool = False


@dataclass(frozen=True)
class Fixed:
    """A chain whose shape depends only on r."""

    key: str
    parts: object


@dataclass(frozen=True)
class Family:
    """A parametric T-chain T(n - offset(r), base) on a fibre slot; absent when d = 0."""

    slot: str
    offset: object
    base: object


@dataclass(frozen=True)
class BlockSpec:
    id: str
    j: object
    r_ok: object
    slots: tuple
    partial_cost: object
    chains: tuple
    gamma: tuple
    section_d: object
    local_k2: object
    blowups: object

    def r_values(self, limit):
        return [r for r in range(2, limit + 1) if self.r_ok(r)]


def _fixed_r(value):
    return lambda r: r == value


def _r_at_least(value):
    return lambda r: r >= value


CATALOG = {
    spec.id: spec
    for spec in [
        BlockSpec(
            "S0F", 0, _r_at_least(4), (),
            lambda r: r - 3 if r >= 5 else 0,
            (Fixed("main", lambda r: [r, twos(r - 4)]),),
            ("main", lambda r: 0),
            lambda r: Fraction(-(r - 3), r - 2),
            lambda r: r - 3,
            lambda r: 0,
        ),
        BlockSpec(
            "S1F.1", 1, _fixed_r(3), (Slot("F", lambda r: 1, True),),
            lambda r: 0,
            (Fixed("main", lambda r: [3, 5, 2]), Family("F", lambda r: 1, lambda r: TType(1, 3, 1))),
            ("main", lambda r: 0),
            lambda r: Fraction(-3, 5),
            lambda r: 1,
            lambda r: 4,
        ),
        BlockSpec(
            "S1F.2", 1, _r_at_least(4), (Slot("F", lambda r: r - 2),),
            lambda r: 0,
            (
                Fixed("main", lambda r: [r, r + 1, twos(r - 4), 3, twos(r - 2)]),
                Family("F", lambda r: r - 2, lambda r: TType(1, r, 1)),
            ),
            ("main", lambda r: 0),
            lambda r: Fraction(-(r * r - 2 * r), r * r - r - 1),
            lambda r: r - 2,
            lambda r: 2 * (r - 1),
        ),
        BlockSpec(
            "S1F.3", 1, _fixed_r(5), (Slot("F", lambda r: 1, True),),
            lambda r: 3,
            (Fixed("main", lambda r: [2, 2, 5, 4]), Family("F", lambda r: 1, lambda r: TType(1, 2, 1))),
            ("main", lambda r: 2),
            lambda r: Fraction(-6, 7),
            lambda r: 3,
            lambda r: 2,
        ),
        BlockSpec(
            "S1F.4", 1, _r_at_least(3), (Slot("F", lambda r: r - 2),),
            lambda r: 2,
            (
                Fixed("main", lambda r: [2, r, 3, twos(r - 4), 3]),
                Family("F", lambda r: r - 2, lambda r: TType(1, 2, 1)),
            ),
            ("main", lambda r: 1),
            lambda r: Fraction(-(2 * r - 4), 2 * r - 3),
            lambda r: r - 2,
            lambda r: 2,
        ),
        BlockSpec(
            "S2F.1", 2, _fixed_r(4), (Slot("F", lambda r: 2), Slot("F2", lambda r: 3)),
            lambda r: 0,
            (
                Family("F", lambda r: 2, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [3, 3, 5, 3, 2]),
                Fixed("second", lambda r: [3, 6, 2, 3, 2]),
                Family("F2", lambda r: 3, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: 2),
            lambda r: Fraction(-12, 13),
            lambda r: 3,
            lambda r: 10,
        ),
        BlockSpec(
            "S2F.2", 2, _fixed_r(4), (Slot("F", lambda r: 4), Slot("F2", lambda r: 1, True)),
            lambda r: 0,
            (
                Family("F", lambda r: 4, lambda r: TType(1, 2, 1)),
                Fixed("first", lambda r: [3, 2, 2, 7, 2]),
                Fixed("main", lambda r: [3, 2, 2, 5, 5, 2]),
                Family("F2", lambda r: 1, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: 3),
            lambda r: Fraction(-15, 16),
            lambda r: 3,
            lambda r: 11,
        ),
        BlockSpec(
            "S2F.3", 2, _fixed_r(5), (Slot("F", lambda r: 4), Slot("F2", lambda r: 1, True)),
            lambda r: 0,
            (
                Family("F", lambda r: 4, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [3, 2, 2, 3, 5, 5, 2]),
                Family("F2", lambda r: 1, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: 4),
            lambda r: Fraction(-24, 25),
            lambda r: 4,
            lambda r: 6,
        ),
        BlockSpec(
            "S2F.4", 2, _r_at_least(3), (Slot("F", lambda r: r + 1), Slot("F2", lambda r: 1, True)),
            lambda r: 0,
            (
                Family("F", lambda r: r + 1, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [3, twos(r - 1), 3, r + 3, 2]),
                Fixed("second", lambda r: [3, 2, 6, 2]),
                Family("F2", lambda r: 1, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: r + 1),
            lambda r: Fraction(-(2 * r + 2), 2 * r + 3),
            lambda r: r - 1,
            lambda r: 10,
        ),
        BlockSpec(
            "S2F.5", 2, _r_at_least(3), (Slot("F", lambda r: r), Slot("F2", lambda r: 2)),
            lambda r: 0,
            (
                Family("F", lambda r: r, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [3, twos(r - 2), 3, r + 2, 2]),
                Fixed("second", lambda r: [3, 5, 3, 2]),
                Family("F2", lambda r: 2, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: r),
            lambda r: Fraction(-2 * r, 2 * r + 1),
            lambda r: r - 1,
            lambda r: 9,
        ),
        BlockSpec(
            "S2F.6", 2, _r_at_least(3), (Slot("F", lambda r: 2), Slot("F2", lambda r: r)),
            lambda r: 0,
            (
                Family("F", lambda r: 2, lambda r: TType(1, 2, 1)),
                Fixed("first", lambda r: [3, 5, 2]),
                Fixed("main", lambda r: [3, r + 2, twos(r - 3), 3, 2]),
                Fixed("second", lambda r: [3, r + 3, twos(r - 2), 3, 2]),
                Family("F2", lambda r: r, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: 1),
            lambda r: Fraction(-(3 * r - 2), 3 * r - 1),
            lambda r: r - 1,
            lambda r: r + 10,
        ),
        BlockSpec(
            "S2F.7", 2, _r_at_least(3), (Slot("F", lambda r: 1, True), Slot("F2", lambda r: r - 1)),
            lambda r: 0,
            (
                Family("F", lambda r: 1, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [4, r, 5, twos(r - 3), 3, 2, 2]),
                Family("F2", lambda r: r - 1, lambda r: TType(1, 4, 1)),
            ),
            ("main", lambda r: 1),
            lambda r: Fraction(-(8 * r - 8), 8 * r - 6),
            lambda r: r - 1,
            lambda r: 8,
        ),
        BlockSpec(
            "S2F.8", 2, _r_at_least(4), (Slot("F", lambda r: 1, True), Slot("F2", lambda r: r)),
            lambda r: 0,
            (
                Family("F", lambda r: 1, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [4, r + 1, twos(r - 4), 3, 2, 2]),
                Fixed("second", lambda r: [4, r + 3, twos(r - 2), 3, 2, 2]),
                Family("F2", lambda r: r, lambda r: TType(1, 4, 1)),
            ),
            ("main", lambda r: 1),
            lambda r: Fraction(-(4 * r - 6), 4 * r - 5),
            lambda r: r - 1,
            lambda r: r + 9,
        ),
        BlockSpec(
            "S2F.9", 2, _fixed_r(3), (Slot("F", lambda r: 2), Slot("F2", lambda r: 2)),
            lambda r: 0,
            (
                Family("F", lambda r: 2, lambda r: TType(1, 2, 1)),
                Fixed("main", lambda r: [3, 3, 3, 4, 3, 2]),
                Family("F2", lambda r: 2, lambda r: TType(1, 3, 1)),
            ),
            ("main", lambda r: 2),
            lambda r: Fraction(-12, 13),
            lambda r: 2,
            lambda r: 6,
        ),
        BlockSpec(
            "FIB", None, None, (Slot("F", lambda r: 1),),
            lambda r: 0,
            (Fixed("main", lambda r: [2, 5]), Family("F", lambda r: 1, lambda r: TType(1, 2, 1))),
            ("main", lambda r: 0),
            lambda r: FIB_JUNCTION,
            lambda r: -1,
            lambda r: 4,
        ),
    ]
}

BLOCK_IDS = tuple(CATALOG)
MAIN_BLOCK_IDS = tuple(b for b in BLOCK_IDS if b != "FIB")


# ---------------------------------------------------------------- instances


@lru_cache(maxsize=None)
def _recognize(chain):
    return t_recognize(list(chain))


@lru_cache(maxsize=None)
def _deltas(chain):
    return discrepancies(list(chain)).deltas


@dataclass(frozen=True)
class ChainRecord:
    """A produced T-chain; base is set for parametric chains (d copies of base)."""

    chain: tuple
    ttype: TType
    key: str
    base: TType = None

    def wahl_pieces(self):
        """The chain in M-resolution form: (chain, count) pairs."""
        if self.base is None:
            return [(self.chain, 1)]
        return [(tuple(t_expand(self.base)), self.ttype.d)]


@dataclass(frozen=True)
class BlockInstance:
    id: str
    params: dict
    chains: tuple
    localK2: int
    sectionDiscrepancy: Fraction
    eulerCost: int
    completeFibers: int
    jClass: object
    blowups: int
    fibers: tuple

    @property
    def r(self):
        return self.params.get("r")


def _fiber_index(spec, slot, fiber, r):
    if not isinstance(fiber, FiberType):
        raise ValidationError(f"{spec.id}: fibre {slot.name} must be a FiberType")
    if fiber.kind == "II" and slot.allows_ii:
        return 1
    if fiber.kind != "I":
        raise ValidationError(f"{spec.id}: fibre {fiber} is not modelled on slot {slot.name}")
    if fiber.n < slot.min_n(r):
        raise ValidationError(f"{spec.id}: slot {slot.name} needs n >= {slot.min_n(r)}, got {fiber}")
    return fiber.n


def instantiate_block(block_id, params):
    """Build a block from its parameters and validate every chain."""
    spec = CATALOG.get(block_id)
    if spec is None:
        raise ValidationError(f"unknown block {block_id!r}")
    params = dict(params)
    expected = {s.name for s in spec.slots} | ({"r"} if spec.r_ok else set())
    if set(params) != expected:
        raise ValidationError(f"{block_id} takes parameters {sorted(expected)}, got {sorted(params)}")
    r = params.get("r")
    if spec.r_ok is not None:
        if not isinstance(r, int) or not spec.r_ok(r):
            raise ValidationError(f"{block_id}: r = {r!r} outside the block's range")
    indices = {slot.name: _fiber_index(spec, slot, params[slot.name], r) for slot in spec.slots}

    chains = []
    blowups = spec.blowups(r)
    for part in spec.chains:
        if isinstance(part, Fixed):
            chain = tuple(build_chain(part.parts(r)))
            ttype = _recognize(chain)
            if ttype is None:
                raise InconsistencyError(f"{block_id}: {list(chain)} is not a T-chain")
            chains.append(ChainRecord(chain, ttype, part.key))
        else:
            base = part.base(r)
            d = indices[part.slot] - part.offset(r)
            if d < 0:
                raise InconsistencyError(f"{block_id}: negative family index")
            if d == 0:
                # The chain vanishes and so do the blow-ups that built it.
                blowups -= len(t_expand(base))
                continue
            ttype = TType(d, base.n, base.a)
            chain = tuple(t_expand(ttype))
            if _recognize(chain) != ttype:
                raise InconsistencyError(f"{block_id}: family chain {list(chain)} not recognised")
            chains.append(ChainRecord(chain, ttype, f"family:{part.slot}", base))

    key, position = spec.gamma
    host = next(c for c in chains if c.key == key)
    section = _deltas(host.chain)[position(r)]
    if section != spec.section_d(r):
        raise InconsistencyError(f"{block_id}: section discrepancy {section} != catalog {spec.section_d(r)}")

    local = spec.local_k2(r)
    accounted = sum(len(c.chain) - c.ttype.d + 1 for c in chains) - blowups
    if accounted != local:
        raise InconsistencyError(f"{block_id}: chain bookkeeping gives {accounted}, catalog {local}")

    fibers = tuple(params[s.name] for s in spec.slots)
    euler = spec.partial_cost(r) + sum(f.euler_number for f in fibers)
    return BlockInstance(
        block_id, params, tuple(chains), local, section, euler, len(fibers), spec.j, blowups, fibers
    )


def minimal_block(block_id, r=None):
    """The block with every fibre at its smallest admissible I_n."""
    spec = CATALOG[block_id]
    params = {s.name: I(max(1, s.min_n(r))) for s in spec.slots}
    if spec.r_ok is not None:
        params["r"] = r
    return instantiate_block(block_id, params)


# ---------------------------------------------------------------- assembly


def k2_global(kS2, m, chains):
    """K^2 of the contraction: kS2 - m + sum(r_j - d_j + 1) over (r_j, d_j)."""
    return kS2 - m + sum(length - d + 1 for length, d in chains)


@dataclass(frozen=True)
class InvariantsRecord:
    pg: int
    N: int
    K2: int
    chiTop: int
    bPlus: int
    bMinus: int
    sigma: int
    homeoType: str
    simplyConnectedUnknown: bool = False


def blowdown_invariants(pg, N, simply_connected_unknown=False):
    """Topological invariants of the rational blowdown of a small surface."""
    if not isinstance(pg, int) or pg < 2 or not isinstance(N, int) or N < 0:
        raise ValidationError("need integers pg >= 2 and N >= 0")
    k2 = pg - 2 + N
    plus = 2 * pg + 1
    minus = 9 * pg + 11 - N
    homeo = f"{plus}CP² # {10 * pg + 9 - k2}CP̄²"
    return InvariantsRecord(
        pg, N, k2, 12 * (1 + pg) - k2, plus, minus, -7 * pg - 10 + N, homeo, simply_connected_unknown
    )


@dataclass(frozen=True)
class SmallSurfaceConfig:
    pg: int
    main: BlockInstance
    fibs: tuple = ()


@dataclass
class SmallSurfaceReport:
    pg: int
    main: str
    chains: list
    singularities: list
    K2: int
    N: int
    l: int
    blowups: int
    eulerUsed: int
    eulerBudget: int
    fiberCount: int
    nefChecks: list
    invariants: InvariantsRecord
    countLawHolds: bool = field(default=True)

    @property
    def euler_ok(self):
        return self.eulerUsed <= self.eulerBudget

    @property
    def nef_ok(self):
        return all(value >= 0 for _, value in self.nefChecks)

    @property
    def passed(self):
        return self.euler_ok and self.nef_ok and self.countLawHolds


def assemble(config):
    """Glue the main block and the FIBs; checks are recorded, not raised."""
    pg, main, fibs = config.pg, config.main, tuple(config.fibs)
    if not isinstance(pg, int) or pg < 2:
        raise ValidationError("pg must be an integer >= 2")
    if main.id == "FIB" or any(f.id != "FIB" for f in fibs):
        raise ValidationError("need one non-FIB main block and FIB blocks only")
    if main.r is not None and main.r != pg + 1 + 2 * len(fibs):
        raise ValidationError(f"section needs r = pg + 1 + 2s = {pg + 1 + 2 * len(fibs)}, block has r = {main.r}")
    if main.r is None:
        raise ValidationError("main block carries no r")

    blocks = (main,) + fibs
    chains = [c for b in blocks for c in b.chains]
    m = sum(b.blowups for b in blocks)
    N = sum(b.completeFibers for b in blocks)
    s = len(fibs)
    by_blocks = sum(b.localK2 for b in blocks)
    by_chains = k2_global(0, m, [(len(c.chain), c.ttype.d) for c in chains])
    by_count = pg - 2 + s + main.jClass
    if not by_blocks == by_chains == by_count == pg - 2 + N:
        raise InconsistencyError(
            f"K^2 bookkeeping disagrees: blocks {by_blocks}, chains {by_chains}, "
            f"count {by_count}, pg - 2 + N = {pg - 2 + N}"
        )
    nef = [
        (f"{main.id}|FIB{i + 1}", -1 - main.sectionDiscrepancy - FIB_JUNCTION)
        for i in range(s)
    ]
    fiber_count = sum(len(b.fibers) for b in blocks) + (1 if CATALOG[main.id].partial_cost(main.r) else 0)
    count = len(chains)
    return SmallSurfaceReport(
        pg=pg,
        main=main.id,
        chains=[list(c.chain) for c in chains],
        singularities=[c.ttype for c in chains],
        K2=by_blocks,
        N=N,
        l=count,
        blowups=m,
        eulerUsed=sum(b.eulerCost for b in blocks),
        eulerBudget=12 * (pg + 1),
        fiberCount=fiber_count,
        nefChecks=nef,
        invariants=blowdown_invariants(pg, N, main.id == "S2F.7"),
        countLawHolds=count >= max(1, N - 1),
    )


def fib(fiber):
    return instantiate_block("FIB", {"F": fiber})


def configuration(pg, block_id, fibs=(), **fibers):
    """Convenience: main block at r = pg + 1 + 2s plus the given FIB fibres."""
    spec = CATALOG.get(block_id)
    if spec is None or block_id == "FIB":
        raise ValidationError(f"unknown main block {block_id!r}")
    params = dict(fibers)
    params["r"] = pg + 1 + 2 * len(fibs)
    return SmallSurfaceConfig(pg, instantiate_block(block_id, params), tuple(fib(f) for f in fibs))


# ---------------------------------------------------------------- geography


@dataclass
class Geography:
    pg: int
    minK2: int
    maxK2: int
    realizable: list
    witnesses: dict
    blockMaxima: dict

    @property
    def max_witnesses(self):
        return sorted({b for b, _ in self.witnesses[self.maxK2]})


def minimal_configurations(pg):
    """Every main block with s FIBs on I_1 fibres and the cheapest fibres elsewhere,
    for every s that keeps r admissible, the Euler budget and nefness."""
    out = []
    budget = 12 * (pg + 1)
    for block_id in MAIN_BLOCK_IDS:
        spec = CATALOG[block_id]
        s = 0
        while True:
            r = pg + 1 + 2 * s
            main_cost = None
            if spec.r_ok(r):
                main = minimal_block(block_id, r)
                main_cost = main.eulerCost
                if main_cost + s <= budget:
                    report = assemble(SmallSurfaceConfig(pg, main, tuple(fib(I(1)) for _ in range(s))))
                    if report.passed:
                        out.append((block_id, s, report))
            if s > budget:
                break
            s += 1
    return out


def geography(pg):
    """Minimum and maximum K^2 over all small surfaces with this pg, with witnesses."""
    if not isinstance(pg, int) or pg < 3:
        raise ValidationError("geography needs pg >= 3")
    witnesses = {}
    maxima = {}
    for block_id, s, report in minimal_configurations(pg):
        witnesses.setdefault(report.K2, []).append((block_id, s))
        if block_id not in maxima or report.K2 > maxima[block_id][1]:
            maxima[block_id] = (s, report.K2)
    values = sorted(witnesses)
    return Geography(pg, values[0], values[-1], values, witnesses, maxima)


# ---------------------------------------------------------------- Horikawa tables


@dataclass(frozen=True)
class HorikawaFamily:
    pg: int
    label: str
    blockTag: str
    params: tuple
    chainSpec: tuple
    paramBounds: int
    computedBounds: dict
    smoothabilityNote: str
    builder: object = field(repr=False, compare=False, default=None)

    def instantiate(self, **values):
        if set(values) != set(self.params):
            raise ValidationError(f"{self.label} takes {self.params}")
        if any(not isinstance(v, int) or v < 0 for v in values.values()):
            raise ValidationError("family parameters are non-negative integers")
        return self.builder(**values)

    def expected_pieces(self, **values):
        """Table multiset: canonical chain -> (count, stated d)."""
        out = {}
        for chain, const, param, d in self.chainSpec:
            total = const + (values[param] if param else 0)
            if total:
                key = _orient(chain)
                prior = out.get(key, (0, d))
                out[key] = (prior[0] + total, d)
        return out


def _orient(chain):
    chain = tuple(chain)
    return min(chain, chain[::-1])


def _merge_family_pieces(records):
    out = {}
    for rec in records:
        for chain, count in rec.wahl_pieces():
            key = _orient(chain)
            d = 1 if rec.base is not None else rec.ttype.d
            prior = out.get(key, (0, d))
            out[key] = (prior[0] + count, d)
    return out


def family_pieces(config):
    """M-resolution view of a configuration: parametric chains become d Wahl copies."""
    blocks = (config.main,) + tuple(config.fibs)
    return _merge_family_pieces([c for b in blocks for c in b.chains])


def _fib_list(s, big=0):
    """s FIB fibres, all I_1 except the first, which is I_{big + 1}."""
    return [I(big + 1)] + [I(1)] * (s - 1) if s else []


def _euler_bounds(base_config):
    """Largest parameter total allowed by the Euler budget, with and without the
    three-singular-fibre rule, from the configuration at all parameters zero."""
    report = assemble(base_config)
    free = report.eulerBudget - report.eulerUsed
    missing = max(0, 3 - report.fiberCount)
    return {"euler": free, "euler_with_fiber_rule": free - missing}


NOTE = "smoothability not decided by this catalogue"


def horikawa_families(pg):
    """Lee-Park plus the small families with K^2 = 2 pg - 4, as tabulated."""
    if not isinstance(pg, int) or pg < 3:
        raise ValidationError("need pg >= 3")
    families = [_lee_park_family(pg)]
    rows = _rows_pg3() if pg == 3 else _rows_pg4() if pg == 4 else _rows_general(pg)
    for label, block, params, spec, stated, builder in rows:
        zero = builder(**{p: 0 for p in params})
        bounds = _euler_bounds(zero)
        families.append(
            HorikawaFamily(pg, f"p_g={pg} ({label})", block, tuple(params), tuple(spec), stated, bounds, NOTE, builder)
        )
    return families


def _lee_park_family(pg):
    chain = tuple([pg + 1] + [2] * (pg - 3))
    return HorikawaFamily(pg, f"p_g={pg} (i)", "Lee-Park", (), ((chain, 2, None, 1),), 0, {}, NOTE, None)


def _s0f(pg):
    s = pg - 2

    def build(n):
        return configuration(pg, "S0F", _fib_list(s, n))

    r = pg + 1 + 2 * s
    spec = [([r] + [2] * (r - 4), 1, None, 1), ([2, 5], s, None, 1), ([4], 0, "n", 1)]
    return "S0F", ["n"], spec, build


def _s1f2(pg):
    s = pg - 3
    r = pg + 1 + 2 * s
    main = [r, r + 1] + [2] * (r - 4) + [3] + [2] * (r - 2)
    wahl = [r + 2] + [2] * (r - 2)
    if s == 0:
        def build(n):
            return configuration(pg, "S1F.2", [], F=I(r - 2 + n))

        return "S1F.2", ["n"], [(main, 1, None, 1), (wahl, 0, "n", 1)], build

    def build(n1, n2):
        return configuration(pg, "S1F.2", _fib_list(s, n1), F=I(r - 2 + n2))

    spec = [(main, 1, None, 1), ([2, 5], s, None, 1), ([4], 0, "n1", 1), (wahl, 0, "n2", 1)]
    return "S1F.2", ["n1", "n2"], spec, build


def _s1f4(pg):
    s = pg - 3
    r = pg + 1 + 2 * s

    def build(n):
        return configuration(pg, "S1F.4", [I(1)] * s, F=I(r - 2 + n))

    spec = [([2, r, 3] + [2] * (r - 4) + [3], 1, None, 2), ([2, 5], s, None, 1), ([4], 0, "n", 1)]
    return "S1F.4", ["n"], spec, build


def _rows_pg3():
    rows = []
    block, params, spec, build = _s0f(3)
    rows.append(("ii", block, params, spec, 43, build))
    block, params, spec, build = _s1f2(3)
    rows.append(("iii", block, params, spec, 44, build))
    block, params, spec, build = _s1f4(3)
    rows.append(("iv", block, params, spec, 43, build))
    return rows


def _rows_pg4():
    rows = []
    for label, maker, stated in (("ii", _s0f, 52), ("iii", _s1f2, 53), ("iv", _s1f4, 52)):
        block, params, spec, build = maker(4)
        rows.append((label, block, params, spec, stated, build))

    def left_right(block):
        r = 5
        left, right = CATALOG[block].slots

        def build(n1, n2):
            return configuration(4, block, [], F=I(left.min_n(r) + n1), F2=I(right.min_n(r) + n2))

        return build

    four = ([4], 0, "n1", 1)
    rows.append(("v", "S2F.3", ["n1", "n2"],
                 [([3, 2, 2, 3, 5, 5, 2], 1, None, 1), four, ([5, 2], 0, "n2", 1)], 54,
                 left_right("S2F.3")))
    rows.append(("vi", "S2F.4", ["n1", "n2"],
                 [([3, 2, 2, 2, 2, 3, 8, 2], 1, None, 2), ([3, 2, 6, 2], 1, None, 1), four, ([2, 5], 0, "n2", 1)], 52,
                 left_right("S2F.4")))
    rows.append(("vii", "S2F.5", ["n1", "n2"],
                 [([3, 2, 2, 2, 3, 7, 2], 1, None, 2), ([3, 5, 3, 2], 1, None, 1), four, ([2, 5], 0, "n2", 1)], 52,
                 left_right("S2F.5")))
    rows.append(("viii", "S2F.6", ["n1", "n2"],
                 [([3, 7, 2, 2, 3, 2], 1, None, 1), ([3, 8, 2, 2, 2, 3, 2], 1, None, 1), ([3, 5, 2], 1, None, 1), four,
                  ([2, 5], 0, "n2", 1)], 52,
                 left_right("S2F.6")))
    rows.append(("ix", "S2F.7", ["n1", "n2"],
                 [([4, 5, 5, 2, 2, 3, 2, 2], 1, None, 1), four, ([6, 2, 2], 0, "n2", 1)], 54,
                 left_right("S2F.7")))
    rows.append(("x", "S2F.8", ["n1", "n2"],
                 [([4, 6, 2, 3, 2, 2], 1, None, 1), ([4, 8, 2, 2, 2, 3, 2, 2], 1, None, 1), four,
                  ([6, 2, 2], 0, "n2", 1)], 53,
                 left_right("S2F.8")))
    return rows


def _rows_general(pg):
    rows = []
    for label, maker, extra in (("ii", _s0f, 20), ("iii", _s1f2, 22), ("iv", _s1f4, 20)):
        block, params, spec, build = maker(pg)
        rows.append((label, block, params, spec, 8 * pg + extra, build))
    s = pg - 4
    r = pg + 1 + 2 * s

    def two_sided(block, left_count, right_count):
        left, right = CATALOG[block].slots

        def build(n1, n2):
            return configuration(
                pg, block, [I(1)] * s,
                F=I(left.min_n(r) + left_count(n1, n2)),
                F2=I(right.min_n(r) + right_count(n1, n2)),
            )

        return build

    # S2F.4 to S2F.6: n1 counts extra [2,5] on the right fibre, n2 the [4] on the left.
    def first(a, b):
        return a

    def second(a, b):
        return b

    fours_n2 = ([4], 0, "n2", 1)
    fives = ([2, 5], s, "n1", 1)
    rows.append(("v", "S2F.4", ["n1", "n2"],
                 [([3] + [2] * (r - 1) + [3, r + 3, 2], 1, None, 2), ([3, 2, 6, 2], 1, None, 1), fives, fours_n2],
                 8 * pg + 21, two_sided("S2F.4", second, first)))
    rows.append(("vi", "S2F.5", ["n1", "n2"],
                 [([3] + [2] * (r - 2) + [3, r + 2, 2], 1, None, 2), ([3, 5, 3, 2], 1, None, 1), fives, fours_n2],
                 8 * pg + 21, two_sided("S2F.5", second, first)))
    rows.append(("vii", "S2F.6", ["n1", "n2"],
                 [([3, r + 2] + [2] * (r - 3) + [3, 2], 1, None, 1), ([3, r + 3] + [2] * (r - 2) + [3, 2], 1, None, 1),
                  ([3, 5, 2], 1, None, 1), fives, fours_n2],
                 8 * pg + 21, two_sided("S2F.6", second, first)))
    # S2F.7 and S2F.8: n1 counts [4] on the left fibre, n2 the [6,2,2] on the right.
    fours_n1 = ([4], 0, "n1", 1)
    sixes = ([6, 2, 2], 0, "n2", 1)
    rows.append(("viii", "S2F.7", ["n1", "n2"],
                 [([4, r, 5] + [2] * (r - 3) + [3, 2, 2], 1, None, 1), ([2, 5], s, None, 1), fours_n1, sixes],
                 8 * pg + 23, two_sided("S2F.7", first, second)))
    rows.append(("ix", "S2F.8", ["n1", "n2"],
                 [([4, r + 1] + [2] * (r - 4) + [3, 2, 2], 1, None, 1), ([4, r + 3] + [2] * (r - 2) + [3, 2, 2], 1, None, 1),
                  ([2, 5], s, None, 1), fours_n1, sixes],
                 8 * pg + 22, two_sided("S2F.8", first, second)))
    return rows


# ---------------------------------------------------------------- Lee-Park and bounds


@dataclass(frozen=True)
class LeeParkRecord:
    pg: int
    chains: tuple
    singularities: tuple
    K2: int


def lee_park(pg):
    """Two disjoint sections contracted as Wahl chains [pg + 1, 2, ..., 2]."""
    if not isinstance(pg, int) or pg < 3:
        raise ValidationError("need pg >= 3")
    chain = [pg + 1] + [2] * (pg - 3)
    ttype = t_recognize(chain)
    # Read from the long end the chain is T(1, pg - 1, 1); the other end gives a = pg - 2.
    if ttype not in (TType(1, pg - 1, 1), TType(1, pg - 1, max(1, pg - 2))):
        raise InconsistencyError(f"{chain} recognised as {ttype}")
    k2 = k2_global(0, 0, [(len(chain), 1), (len(chain), 1)])
    return LeeParkRecord(pg, (chain, list(chain)), (ttype, ttype), k2)


def k2_multisection(e, ePrime, N, NPrime, NStar, t30, pg):
    """K^2 when the chains contain e sections: (N + pg - 2) e + e' - N' - N* + t30."""
    values = (e, ePrime, N, NPrime, NStar, t30, pg)
    if not all(isinstance(v, int) and v >= 0 for v in values):
        raise ValidationError("all counts must be non-negative integers")
    if NPrime > 0 and not NPrime <= ePrime <= e * NPrime:
        raise ValidationError("need N' <= e' <= e N'")
    return (N + pg - 2) * e + ePrime - NPrime - NStar + t30


def bmy_bound(pg, sings):
    """9 (1 + pg) - (3/4) sum(d - 1/(d n^2)) over the T-singularities."""
    if not isinstance(pg, int) or pg < 0:
        raise ValidationError("pg must be a non-negative integer")
    total = sum((Fraction(t.d) - Fraction(1, t.d * t.n ** 2) for t in sings), Fraction(0))
    return Fraction(9 * (1 + pg)) - Fraction(3, 4) * total
