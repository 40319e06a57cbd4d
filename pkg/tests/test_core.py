import pytest

from tileverify.core import (
    Configuration, Glue, GlueRelation, SeedAssembly, Side, SurfaceTooSmall, TileAssemblySystem, TileType,
    binding_strength, can_attach, frontier, interaction_strength, is_stable,
)
from oracles import naive_moves, naive_strengths


class TestGlue:
    def test_strength_range(self):
        for bad in (-1, 3):
            with pytest.raises(ValueError):
                Glue("a", bad)
        with pytest.raises(TypeError):
            Glue("a", 1.0)

    def test_interaction_diagonal(self):
        assert interaction_strength(Glue("1", 1), Glue("1", 1)) == 1
        assert interaction_strength(Glue("x", 2), Glue("y", 2)) == 0
        assert interaction_strength(Glue("a", 0), Glue("a", 0)) == 0
        # diagonal relation also requires equal strength
        assert interaction_strength(Glue("a", 1), Glue("a", 2)) == 0

    def test_explicit_relation_is_symmetric(self):
        rel = GlueRelation.explicit([("a", "b")])
        assert interaction_strength(Glue("a", 2), Glue("b", 1), rel) == 1
        assert interaction_strength(Glue("b", 1), Glue("a", 2), rel) == 1
        assert interaction_strength(Glue("a", 2), Glue("a", 2), rel) == 0


class TestTileType:
    def test_sides(self):
        t = TileType("t", north=Glue("n", 1), east=Glue("e", 2))
        assert t.glue(Side.N).label == "n"
        assert t.glue(Side.E).strength == 2
        assert t.glue(Side.S) == Glue()

    def test_empty_name_rejected(self):
        with pytest.raises(ValueError):
            TileType("")

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            TileAssemblySystem((TileType("a"), TileType("a")), SeedAssembly({(0, 0): "a"}))

    def test_unknown_seed_tile(self):
        with pytest.raises(ValueError):
            TileAssemblySystem((TileType("a"),), SeedAssembly({(0, 0): "b"}))


class TestSeed:
    def test_rooted(self):
        s = SeedAssembly({(3, 4): "a", (4, 4): "b"}).rooted()
        assert s.placements == {(0, 0): "a", (1, 0): "b"}
        assert s.extent == 2

    def test_connectivity(self):
        assert SeedAssembly({(0, 0): "a", (1, 0): "a"}).is_connected()
        assert not SeedAssembly({(0, 0): "a", (2, 0): "a"}).is_connected()

    def test_surface_too_small(self, sierpinski):
        big = TileAssemblySystem(sierpinski.tile_types, SeedAssembly({(0, 0): "seed", (0, 1): "north"}))
        with pytest.raises(SurfaceTooSmall):
            big.seed_configuration(1)


class TestConfiguration:
    def test_immutable_update(self):
        c = Configuration(2, {(0, 0): "a"})
        d = c.with_tile((1, 0), "b")
        assert c.get((1, 0)) is None and d.get((1, 0)) == "b"
        assert len(d.empty_cells()) == 2
        assert hash(c) != hash(d) or c != d

    def test_full(self):
        c = Configuration(1, {(0, 0): "a"})
        assert c.is_full()


class TestBinding:
    def test_rule_tile_two_weak_bonds(self, sierpinski):
        c = Configuration(3, {(0, 0): "seed", (0, 1): "north", (1, 0): "east"})
        assert binding_strength("1+1", (1, 1), c, sierpinski) == 2
        assert can_attach("1+1", (1, 1), c, sierpinski)
        assert not can_attach("0+0", (1, 1), c, sierpinski)

    def test_empty_neighbourhood(self, sierpinski):
        c = Configuration(3, {(0, 0): "seed"})
        for t in sierpinski.tile_types:
            assert binding_strength(t, (2, 2), c, sierpinski) == 0

    def test_strong_boundary_bond(self, sierpinski):
        c = Configuration(3, {(0, 0): "seed"})
        assert binding_strength("north", (0, 1), c, sierpinski) == 2

    def test_single_weak_bond_insufficient(self, sierpinski):
        c = Configuration(3, {(0, 0): "seed", (0, 1): "north"})
        # 1+1 gets only its west bond (strength 1) at (1,1)
        assert binding_strength("1+1", (1, 1), c, sierpinski) == 1
        assert not can_attach("1+1", (1, 1), c, sierpinski)

    def test_matches_naive_strengths(self, sierpinski):
        c = Configuration(3, {(0, 0): "seed", (0, 1): "north", (1, 0): "east", (1, 1): "1+1"})
        tiles = c.tiles
        for t in sierpinski.tile_types:
            for loc in c.empty_cells():
                assert binding_strength(t, loc, c, sierpinski) == sum(naive_strengths(sierpinski, tiles, t, loc).values())


class TestFrontier:
    def test_seed_only(self, sierpinski):
        c = sierpinski.seed_configuration(2)
        assert set(frontier(c, sierpinski)) == {((0, 1), "north"), ((1, 0), "east")}

    def test_full_and_empty(self, sierpinski):
        assert frontier(Configuration(1, {(0, 0): "seed"}), sierpinski) == []
        assert frontier(Configuration(3, {}), sierpinski) == []

    def test_matches_naive(self, ambiguous):
        c = ambiguous.seed_configuration(3).with_tile((0, 1), "north")
        assert sorted(frontier(c, ambiguous)) == sorted((loc, name) for name, loc in naive_moves(ambiguous, 3, c.tiles))


class TestStability:
    def test_single_tile(self, sierpinski):
        assert is_stable(Configuration(2, {(0, 0): "seed"}), sierpinski)

    def test_diagonal_tiles(self, sierpinski):
        assert not is_stable(Configuration(2, {(0, 0): "seed", (1, 1): "1+1"}), sierpinski)

    def test_strong_bond(self, sierpinski):
        assert is_stable(Configuration(2, {(0, 0): "seed", (0, 1): "north"}), sierpinski)

    def test_weak_bond_is_unstable(self, sierpinski):
        # north at (0,1) and 1+1 at (1,1) share a strength-1 bond only
        assert not is_stable(Configuration(2, {(0, 1): "north", (1, 1): "1+1"}), sierpinski, contract_seed=False)
