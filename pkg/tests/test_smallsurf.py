import itertools
from fractions import Fraction

import pytest

from tsurf.errors import ValidationError
from tsurf.smallsurf import (
    BLOCK_IDS,
    CATALOG,
    MAIN_BLOCK_IDS,
    FiberType,
    I,
    SmallSurfaceConfig,
    assemble,
    blowdown_invariants,
    bmy_bound,
    configuration,
    family_pieces,
    fib,
    geography,
    horikawa_families,
    instantiate_block,
    k2_global,
    k2_multisection,
    lee_park,
    parse_fiber,
)
from tsurf.tsing import TType, t_recognize


def chains_of(block):
    return [list(c.chain) for c in block.chains]


def test_catalog_has_fifteen_blocks():
    assert len(BLOCK_IDS) == 15
    assert "FIB" in BLOCK_IDS and "FIB" not in MAIN_BLOCK_IDS


def test_fiber_types():
    assert [I(3).euler_number, FiberType("II").euler_number] == [3, 2]
    assert FiberType("III").euler_number == 3 and FiberType("IV").euler_number == 4
    assert parse_fiber("I5") == I(5) and parse_fiber("II") == FiberType("II")
    for bad in ("I0", "V", "I_x"):
        with pytest.raises(ValidationError):
            parse_fiber(bad)


def test_s0f_example():
    block = instantiate_block("S0F", {"r": 6})
    assert chains_of(block) == [[6, 2, 2]]
    assert block.localK2 == 3
    assert block.sectionDiscrepancy == Fraction(-3, 4)
    assert block.jClass == 0


def test_fib_example():
    block = fib(I(2))
    assert sorted(chains_of(block)) == [[2, 5], [4]]
    assert block.localK2 == -1
    assert fib(I(1)).chains[0].chain == (2, 5)


def test_s1f4_example():
    block = instantiate_block("S1F.4", {"r": 4, "F": I(2)})
    assert chains_of(block) == [[2, 4, 3, 3]]
    assert block.chains[0].ttype == TType(2, 5, 3)
    assert block.localK2 == 2
    assert block.sectionDiscrepancy == Fraction(-4, 5)


def test_s1f1_is_the_three_five_two_chain():
    block = instantiate_block("S1F.1", {"r": 3, "F": I(1)})
    assert chains_of(block) == [[3, 5, 2]]


@pytest.mark.parametrize(
    "block_id, params",
    [
        ("S0F", {"r": 3}),
        ("S1F.2", {"r": 3, "F": I(1)}),
        ("S1F.2", {"r": 6, "F": I(3)}),
        ("S0F", {"r": 6, "F": I(2)}),
        ("S1F.4", {"r": 4, "F": FiberType("IV")}),
        ("NOPE", {}),
    ],
)
def test_block_range_errors(block_id, params):
    with pytest.raises(ValidationError):
        instantiate_block(block_id, params)


def block_variants(block_id, r_limit=13, bumps=(0, 1, 3)):
    spec = CATALOG[block_id]
    rs = spec.r_values(r_limit) if spec.r_ok else [None]
    for r in rs:
        for extra in itertools.product(bumps, repeat=len(spec.slots)):
            params = {s.name: I(max(1, s.min_n(r)) + e) for s, e in zip(spec.slots, extra)}
            if r is not None:
                params["r"] = r
            yield params


def test_every_block_instantiates_across_its_range():
    seen = 0
    for block_id in BLOCK_IDS:
        for params in block_variants(block_id):
            block = instantiate_block(block_id, params)
            for record in block.chains:
                assert t_recognize(list(record.chain)) == record.ttype
            assert block.localK2 == sum(len(c.chain) - c.ttype.d + 1 for c in block.chains) - block.blowups
            seen += 1
    assert seen > 200


def test_nefness_and_double_bookkeeping_on_all_assemblies():
    checked = 0
    for block_id in MAIN_BLOCK_IDS:
        for params in block_variants(block_id, r_limit=11, bumps=(0, 2)):
            r = params["r"]
            for s in range(0, 4):
                pg = r - 1 - 2 * s
                if pg < 2:
                    continue
                fibs = tuple(fib(I(1 + (i % 2))) for i in range(s))
                report = assemble(SmallSurfaceConfig(pg, instantiate_block(block_id, params), fibs))
                assert report.K2 == pg - 2 + report.N
                chain_k2 = k2_global(0, report.blowups, [(len(c), t.d) for c, t in zip(report.chains, report.singularities)])
                assert chain_k2 == report.K2
                assert report.countLawHolds
                main = instantiate_block(block_id, params)
                assert abs(main.sectionDiscrepancy) + Fraction(1, 3) >= 1 or s == 0
                assert report.nef_ok
                checked += 1
    assert checked > 100


def test_k2_global_examples():
    pg = 6
    assert k2_global(0, 0, [(pg - 2, 1), (pg - 2, 1)]) == 8
    assert k2_global(0, 0, []) == 0


def test_k2_global_block_assembly():
    # S0F r=6 with one FIB on I_2: chains [6,2,2], [2,5], [4] and four blow-ups.
    assert k2_global(0, 4, [(3, 1), (2, 1), (1, 1)]) == 2
    # The one-chain form of the same bookkeeping does not give 2.
    assert k2_global(0, 4, [(5, 1)]) == 1


def test_assemble_examples():
    report = assemble(configuration(3, "S0F", [I(2)]))
    assert sorted(report.chains) == [[2, 5], [4], [6, 2, 2]]
    assert (report.K2, report.N) == (2, 1)
    assert report.passed

    report = assemble(configuration(2, "S1F.1", F=I(1)))
    assert report.chains == [[3, 5, 2]] and report.K2 == 1

    report = assemble(configuration(3, "S1F.4", F=I(2)))
    assert report.chains == [[2, 4, 3, 3]] and report.K2 == 2


def test_assemble_rejects_wrong_r():
    main = instantiate_block("S0F", {"r": 6})
    with pytest.raises(ValidationError):
        assemble(SmallSurfaceConfig(3, main, ()))


def test_euler_budget_is_reported_not_raised():
    report = assemble(configuration(3, "S0F", [I(60)]))
    assert not report.euler_ok and not report.passed


def test_invariants_examples():
    record = blowdown_invariants(3, 1)
    assert (record.bPlus, record.bMinus) == (7, 37)
    assert record.homeoType == "7CP² # 37CP̄²"
    assert blowdown_invariants(5, 0).sigma == -45
    record = blowdown_invariants(6, 4)
    assert (record.K2, record.bMinus) == (8, 61)
    with pytest.raises(ValidationError):
        blowdown_invariants(1, 0)


def test_invariant_identities():
    for pg in range(2, 15):
        for n in range(0, 30):
            rec = blowdown_invariants(pg, n)
            assert rec.chiTop == 2 + rec.bPlus + rec.bMinus
            assert rec.sigma == rec.bPlus - rec.bMinus
            assert 12 * (1 + pg) == rec.K2 + rec.chiTop


def test_s2f7_carries_caveat():
    report = assemble(configuration(4, "S2F.7", F=I(1), F2=I(4)))
    assert report.invariants.simplyConnectedUnknown
    assert not assemble(configuration(3, "S0F", [I(2)])).invariants.simplyConnectedUnknown


@pytest.mark.parametrize("pg, low, high", [(3, 1, 17), (4, 2, 22), (5, 3, 27)])
def test_geography_examples(pg, low, high):
    g = geography(pg)
    assert (g.minK2, g.maxK2) == (low, high)
    assert g.realizable == list(range(low, high + 1))
    assert ("S0F", 0) in g.witnesses[low]


def test_geography_rejects_small_pg():
    with pytest.raises(ValidationError):
        geography(2)


def test_geography_maximum_by_residue():
    for pg in range(3, 9):
        g = geography(pg)
        assert 3 * g.maxK2 == 14 * pg + 9 + pg % 3
        assert "S2F.7" in g.max_witnesses
        assert (g.max_witnesses == ["S2F.7"]) == (pg % 3 == 2)


@pytest.mark.parametrize("pg, count", [(3, 4), (4, 10), (5, 9), (7, 9), (12, 9)])
def test_horikawa_counts(pg, count):
    assert len(horikawa_families(pg)) == count


def test_horikawa_examples():
    pg3 = {f.label: f for f in horikawa_families(3)}
    family = pg3["p_g=3 (iii)"]
    pieces = family.expected_pieces(n=2)
    assert pieces[(2, 2, 3, 5, 4)] == (1, 1)
    assert pieces[(2, 2, 6)] == (2, 1)
    pg4 = {f.label: f for f in horikawa_families(4)}
    assert ([4, 5, 5, 2, 2, 3, 2, 2], 1, None, 1) in pg4["p_g=4 (ix)"].chainSpec
    pg7 = {f.label: f for f in horikawa_families(7)}
    spec = pg7["p_g=7 (ii)"].chainSpec
    assert ([18] + [2] * 14, 1, None, 1) in spec
    assert ([2, 5], 5, None, 1) in spec


def _sample(bound, params):
    values = set()
    for total in {0, 1, bound // 2, bound}:
        if len(params) == 1:
            values.add((total,))
        else:
            values.update({(total, 0), (0, total)})
    return [dict(zip(params, v)) for v in sorted(values)]


@pytest.mark.parametrize("pg", [3, 4, 5, 6, 9])
def test_horikawa_cross_validation(pg):
    for family in horikawa_families(pg)[1:]:
        assert family.computedBounds["euler_with_fiber_rule"] == family.paramBounds
        for values in _sample(family.paramBounds, family.params):
            config = family.instantiate(**values)
            report = assemble(config)
            assert report.K2 == 2 * pg - 4
            assert report.passed
            assert family_pieces(config) == family.expected_pieces(**values), (family.label, values)


@pytest.mark.parametrize("pg", [3, 4, 6])
def test_horikawa_euler_bound_is_sharp(pg):
    for family in horikawa_families(pg)[1:]:
        euler = family.computedBounds["euler"]
        first = family.params[0]
        values = {p: 0 for p in family.params}
        values[first] = euler
        assert assemble(family.instantiate(**values)).euler_ok
        values[first] = euler + 1
        assert not assemble(family.instantiate(**values)).euler_ok


def test_horikawa_rejects_bad_values():
    family = horikawa_families(4)[1]
    with pytest.raises(ValidationError):
        family.instantiate(n=-1)
    with pytest.raises(ValidationError):
        family.instantiate(m=1)
    with pytest.raises(ValidationError):
        horikawa_families(2)


@pytest.mark.parametrize(
    "pg, chain, ttype",
    [(6, [7, 2, 2, 2], TType(1, 5, 4)), (3, [4], TType(1, 2, 1)), (4, [5, 2], TType(1, 3, 2))],
)
def test_lee_park_examples(pg, chain, ttype):
    record = lee_park(pg)
    assert record.chains == (chain, chain)
    # The same singularity read from the other end of the chain.
    assert t_recognize(chain[::-1]) == ttype
    assert all(t.is_wahl and t.n == pg - 1 for t in record.singularities)
    assert record.K2 == 2 * pg - 4


def test_k2_multisection_examples():
    for pg in range(2, 8):
        for n in range(5):
            assert k2_multisection(1, 0, n, 0, 0, 0, pg) == pg - 2 + n
        assert k2_multisection(2, 0, 0, 0, 0, 0, pg) == 2 * pg - 4
    with pytest.raises(ValidationError):
        k2_multisection(1, 5, 0, 2, 0, 0, 3)
    with pytest.raises(ValidationError):
        k2_multisection(-1, 0, 0, 0, 0, 0, 3)


def test_bmy_example():
    assert bmy_bound(2, [TType(1, 3, 2)]) == Fraction(79, 3)
    assert bmy_bound(2, []) == 27
