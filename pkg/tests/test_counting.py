import pytest

from tileverify import fixtures
from tileverify.core import Glue, SeedAssembly, TileAssemblySystem, TileType
from tileverify.counting import diamond_enumeration, explicit_config_count, worst_case_config_count
from oracles import central_binomial_minus_one, lattice_path_configs


class TestFormula:
    def test_small_values(self):
        assert [worst_case_config_count(n) for n in range(1, 7)] == [1, 5, 19, 69, 251, 923]

    @pytest.mark.parametrize("n", [1, 2, 5, 12, 40, 100])
    def test_binomial_form(self, n):
        assert worst_case_config_count(n) == central_binomial_minus_one(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_brute_force_shapes(self, n):
        assert worst_case_config_count(n) == lattice_path_configs(n)

    def test_big_integers(self):
        assert worst_case_config_count(200) > 2 ** 64

    def test_invalid(self):
        with pytest.raises(ValueError):
            worst_case_config_count(0)


class TestDiamond:
    def test_minimal(self):
        d = diamond_enumeration(2)
        assert d.total == 5
        assert d.levels == ((1,), (1, 1), (2,))

    def test_second(self):
        d = diamond_enumeration(3)
        assert d.total == 19
        assert d.levels == ((1,), (1, 1), (1, 2, 1), (3, 3), (6,))

    @pytest.mark.parametrize("n", range(1, 13))
    def test_levels_palindromic(self, n):
        for level in diamond_enumeration(n).levels:
            assert level == level[::-1]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_total(self, n):
        assert diamond_enumeration(n).total == worst_case_config_count(n)


class TestExplicit:
    def test_sierpinski(self, sierpinski):
        assert explicit_config_count(sierpinski, 2) == 5
        assert explicit_config_count(sierpinski, 4) == 69

    def test_partial_fill_below_bound(self):
        tiles = (TileType("s", east=Glue("h", 2)), TileType("r", west=Glue("h", 2), east=Glue("h", 2)))
        sys = TileAssemblySystem(tiles, SeedAssembly({(0, 0): "s"}))
        assert explicit_config_count(sys, 4) == 4 < worst_case_config_count(4)

    def test_requires_verified(self):
        with pytest.raises(ValueError):
            explicit_config_count(fixtures.ambiguous(), 3)
        assert explicit_config_count(fixtures.ambiguous(), 3, require_verified=False) == 25
