import random

import pytest

from modlat import (
    Lattice,
    LatticeError,
    canonical_form,
    decode_digraph6,
    decorate,
    decoration_sites,
    decoration_vector_of,
    is_isomorphic,
    is_rack,
    rack_of,
    trinkets,
)

from fixtures import boolean, chain, figure_rack, grid, m_k


def decode(form):
    n, arcs = decode_digraph6(form)
    return Lattice(n, arcs)


class TestDecorationSites:
    def test_b3_has_none(self):
        assert decoration_sites(boolean(3)) == []

    def test_m_k_single_site(self):
        for k in range(2, 7):
            sites = decoration_sites(m_k(k))
            assert len(sites) == 1
            (site,) = sites
            assert (site.lower, site.upper) == (0, k + 1)
            assert site.width == k
            assert site.trinket_count == k - 2

    def test_chains_have_none(self):
        assert decoration_sites(chain(6)) == []

    def test_sites_disjoint_corners(self, rack_forms_14):
        for n in range(1, 13):
            for form in rack_forms_14[n]:
                sites = decoration_sites(decode(form))
                lowers = [s.lower for s in sites]
                uppers = [s.upper for s in sites]
                assert len(set(lowers)) == len(lowers)
                assert len(set(uppers)) == len(uppers)


class TestTrinkets:
    def test_m3_highest_label(self):
        assert trinkets(m_k(3)) == {3}

    def test_m5_three_trinkets(self):
        assert len(trinkets(m_k(5))) == 3

    def test_b3_empty(self):
        assert trinkets(boolean(3)) == set()


class TestRackOf:
    def test_m_k_reduces_to_square(self):
        for k in range(2, 8):
            assert is_isomorphic(rack_of(m_k(k)), boolean(2))

    def test_fixed_point_on_racks(self, rack_forms_14):
        for n in range(1, 12):
            for form in rack_forms_14[n]:
                rack = decode(form)
                assert rack_of(rack) is rack

    def test_b3_unchanged(self):
        assert rack_of(boolean(3)).covers == boolean(3).covers

    def test_idempotent(self):
        lat = decorate(figure_rack(), (3, 1, 0, 2))
        reduced = rack_of(lat)
        assert rack_of(reduced).covers == reduced.covers


class TestIsRack:
    def test_distributive_examples(self):
        for lat in (boolean(3), chain(5), grid(3, 4)):
            assert lat.is_distributive()
            assert is_rack(lat)

    def test_m3_is_not(self):
        assert not is_rack(m_k(3))

    def test_square_is(self):
        assert is_rack(boolean(2))


class TestDecorate:
    def test_square_to_m5(self):
        assert is_isomorphic(decorate(boolean(2), (3,)), m_k(5))

    def test_zero_vector_identity(self):
        rack = figure_rack()
        assert decorate(rack, (0, 0, 0, 0)).covers == rack.covers

    def test_paper_vectors_give_seven_classes(self):
        vectors = [(2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 0, 1), (0, 2, 0, 0),
                   (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 0, 2)]
        rack = figure_rack()
        forms = {canonical_form(decorate(rack, v)) for v in vectors}
        assert len(forms) == 7
        for v in vectors:
            lat = decorate(rack, v)
            assert lat.is_modular()
            assert lat.n == 11

    def test_element_count_and_irreducibility(self):
        rack = figure_rack()
        lat = decorate(rack, (2, 0, 1, 0))
        assert lat.n == rack.n + 3
        for x in range(rack.n, lat.n):
            assert lat.is_doubly_irreducible(x)

    def test_length_mismatch(self):
        with pytest.raises(LatticeError, match="sites"):
            decorate(boolean(2), (1, 2))


class TestDecorationVectorOf:
    def test_m5(self):
        rack, vector = decoration_vector_of(m_k(5))
        assert is_isomorphic(rack, boolean(2))
        assert vector == (3,)

    def test_rack_gives_zeros(self):
        rack, vector = decoration_vector_of(figure_rack())
        assert rack.covers == figure_rack().covers
        assert vector == (0, 0, 0, 0)

    def test_round_trip_exhaustive(self, mv_forms_12):
        for n in range(1, 13):
            for form in mv_forms_12[n]:
                lat = decode(form)
                rack, vector = decoration_vector_of(lat)
                assert is_isomorphic(decorate(rack, vector), lat)


class TestStructuralLaws:
    """Reduction commutes with the structure maps it should commute with."""

    def _relabel_map(self, lat):
        kept = sorted(set(lat.elements) - trinkets(lat))
        return {old: new for new, old in enumerate(kept)}

    def test_site_preservation(self):
        for lat in (m_k(5), decorate(figure_rack(), (2, 1, 0, 0)), decorate(boolean(2), (4,))):
            mapping = self._relabel_map(lat)
            before = {(mapping[s.lower], mapping[s.upper]) for s in decoration_sites(lat)}
            after = {(s.lower, s.upper) for s in decoration_sites(rack_of(lat))}
            assert before == after

    def test_vi_preservation(self):
        from modlat import vertical_compose

        cases = [m_k(4), decorate(figure_rack(), (1, 0, 0, 1)),
                 vertical_compose([m_k(3), m_k(4)])]
        for lat in cases:
            assert rack_of(lat).is_vertically_indecomposable() == lat.is_vertically_indecomposable()

    def test_duality_commutes(self):
        rng = random.Random(11)
        racks = [figure_rack(), boolean(2), grid(2, 4)]
        for rack in racks:
            sites = decoration_sites(rack)
            for _ in range(10):
                v = tuple(rng.randrange(3) for _ in sites)
                lat = decorate(rack, v)
                assert is_isomorphic(rack_of(lat.dual()), rack_of(lat).dual())

    def test_semimodularity_and_modularity_preserved(self):
        for lat in (m_k(5), decorate(figure_rack(), (0, 3, 0, 0)), boolean(3)):
            assert rack_of(lat).is_semimodular() == lat.is_semimodular()
            assert rack_of(lat).is_modular() == lat.is_modular()

    def test_isomorphism_invariance(self):
        rng = random.Random(3)
        lat = decorate(figure_rack(), (2, 0, 1, 0))
        for _ in range(20):
            perm = list(range(lat.n))
            rng.shuffle(perm)
            assert is_isomorphic(rack_of(lat.relabel(perm)), rack_of(lat))
