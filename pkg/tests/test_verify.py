import pytest

from tileverify import fixtures
from tileverify.core import Configuration, Glue, SeedAssembly, Side, TileAssemblySystem, TileType
from tileverify.transition import build
from tileverify.verify import (
    SeedNotSingleton, Verdict, budget, local_determinism_online, rectilinearity_check, schedule, verify,
)
from oracles import naive_growth_violation, naive_terminals


def row_system():
    """Seed plus a tile that only grows east along the south row."""
    tiles = (TileType("s", east=Glue("h", 2)), TileType("r", west=Glue("h", 2), east=Glue("h", 2)))
    return TileAssemblySystem(tiles, SeedAssembly({(0, 0): "s"}))


class TestSchedule:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_covers_surface_once(self, n):
        cells = []
        for kind, locs in schedule(n):
            cells.extend(locs)
        assert sorted(cells) == [(x, y) for x in range(n) for y in range(n)]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_dependencies_precede(self, n):
        placed = set()
        for kind, locs in schedule(n):
            for x, y in locs:
                assert x == 0 or (x - 1, y) in placed or (x - 1, y) in locs
                assert y == 0 or (x, y - 1) in placed or (x, y - 1) in locs
            placed.update(locs)

    def test_budget(self):
        assert [budget(n) for n in (1, 2, 3, 50)] == [1, 5, 11, 2549]


class TestVerify:
    @pytest.mark.parametrize("name", ["sierpinski", "carpet"])
    @pytest.mark.parametrize("n", [1, 2, 3, 7, 20])
    def test_unique(self, name, n):
        sys = fixtures.FIXTURES[name]()
        rep = verify(sys, n)
        assert rep.verdict == Verdict.UNIQUE_TERMINAL
        assert rep.configurations_evaluated == n * n + n - 1
        assert rep.witnesses == ()
        if n <= 3:
            assert [rep.assembly] == naive_terminals(sys, n)

    def test_strict_mode_same_on_good_systems(self, sierpinski):
        assert verify(sierpinski, 9, strict=True).verdict == Verdict.UNIQUE_TERMINAL

    def test_ambiguous(self, ambiguous):
        rep = verify(ambiguous, 4)
        assert rep.verdict == Verdict.NON_UNIQUE_TERMINAL
        assert rep.location == (1, 0)
        a, b = rep.witnesses
        ca, cb = a.replay(ambiguous, 4), b.replay(ambiguous, 4)
        assert ca != cb
        assert {ca, cb} <= set(naive_terminals(ambiguous, 4))
        # the two witnesses branch at the ambiguous cell
        (ta, la), (tb, lb) = a.steps[0], b.steps[0]
        assert la == lb == (1, 0) and {ta, tb} == {"first", "stop"}

    @pytest.mark.parametrize("strict", [False, True])
    def test_drop(self, drop, strict):
        rep = verify(drop, 4, strict=strict)
        assert rep.verdict == Verdict.NOT_RECTILINEAR
        (w,) = rep.witnesses
        assert w.is_legal(drop, 4)
        assert naive_growth_violation(drop, 4)

    def test_overbind(self):
        sys = fixtures.overbind()
        assert verify(sys, 4).verdict == Verdict.NOT_RECTILINEAR
        rep = verify(sys, 4, strict=True)
        assert rep.verdict == Verdict.NOT_LOCALLY_DETERMINISTIC
        assert rep.local_determinism.kind == "over-binding" and rep.local_determinism.strength == 3
        assert rep.witnesses[0].is_legal(sys, 4)

    def test_rejects_multi_tile_seed(self, sierpinski):
        sys = TileAssemblySystem(sierpinski.tile_types, SeedAssembly({(0, 0): "seed", (0, 1): "north"}))
        with pytest.raises(SeedNotSingleton):
            verify(sys, 3)
        assert verify(sys, 3, allow_multi_tile_seed=True).verdict == Verdict.UNIQUE_TERMINAL

    def test_partial_fill(self):
        rep = verify(row_system(), 5)
        assert rep.verdict == Verdict.UNIQUE_TERMINAL
        assert len(rep.assembly) == 5

    def test_ld_check_can_be_disabled(self):
        sys = fixtures.overbind()
        rep = verify(sys, 4, strict=True, local_determinism=False)
        assert rep.verdict != Verdict.NOT_LOCALLY_DETERMINISTIC


class TestRectilinearityCheck:
    def test_all_sierpinski_placements_ok(self, sierpinski):
        ts = build(sierpinski, 3)
        for s, out in enumerate(ts.edges):
            for e in out:
                assert rectilinearity_check(ts.states[e.target], e.loc, sierpinski) is None

    def test_bound_through_east(self):
        tiles = (TileType("s", west=Glue("g", 2)), TileType("w", east=Glue("g", 2)))
        sys = TileAssemblySystem(tiles, SeedAssembly({(1, 0): "s"}))
        c = Configuration(2, {(1, 0): "s", (0, 0): "w"})
        v = rectilinearity_check(c, (0, 0), sys)
        assert v.direction == Side.E and v.kind == "bound"

    def test_exposed_north_glue_off_west_edge(self):
        tiles = (TileType("s", east=Glue("h", 2)), TileType("u", west=Glue("h", 2), east=Glue("h", 2),
                                                              north=Glue("up", 2)))
        sys = TileAssemblySystem(tiles, SeedAssembly({(0, 0): "s"}))
        c = Configuration(4, {(0, 0): "s", (1, 0): "u", (2, 0): "u"})
        v = rectilinearity_check(c, (2, 0), sys)
        assert v.direction == Side.N and v.kind == "exposed"

    def test_strict_mode_ignores_east_exposure(self, drop):
        c = Configuration(4, {(0, 0): "seed", (0, 1): "north"})
        assert rectilinearity_check(c, (0, 1), drop).direction == Side.E
        assert rectilinearity_check(c, (0, 1), drop, strict=True) is None


class TestLocalDeterminismOnline:
    def test_ok(self, sierpinski):
        c = Configuration(3, {(0, 0): "seed", (0, 1): "north", (1, 0): "east"})
        assert local_determinism_online(("1+1", (1, 1)), c, sierpinski) is None

    def test_over_binding(self):
        sys = fixtures.overbind()
        c = Configuration(3, {(0, 0): "seed", (0, 1): "col", (1, 0): "row"})
        v = local_determinism_online(("corner", (1, 1)), c, sys)
        assert v.kind == "over-binding" and v.strength == 3

    def test_ambiguous(self, ambiguous):
        v = local_determinism_online(("first", (1, 0)), ambiguous.seed_configuration(3), ambiguous)
        assert v.kind == "ambiguous" and v.rivals == ("first", "stop")
