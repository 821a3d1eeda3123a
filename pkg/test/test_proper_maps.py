import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanquot import domains, proper_maps
from cartanquot.exceptions import (ConfigurationException, InconsistentMultiplicityException, OutOfImageException,
                                   PoleException, UnsupportedMapException)
from cartanquot.proper_maps import (BidiscSplit, BidiscSym, DiscSquare, FMapPhi4, Joukowski, LambdaN, MapId,
                                    NeilMap, TetrablockPhi)
from .mock_points import QUOTIENT_2_CASES, QUOTIENT_POINT

CATALOG = proper_maps.catalog()
EQUIDIMENSIONAL = [m for m in CATALOG if not isinstance(m, NeilMap)]
DISC_POINT = st.complex_numbers(max_magnitude=0.99, allow_nan=False, allow_infinity=False)


def regular_sources(m, count=200, seed=3):
    points = m.sample_source(count, np.random.default_rng(seed))
    return points[m._locus_margin(points) > 1e-3]


class TestCatalog:
    def test_every_map_is_listed(self):
        tags = {m._tag for m in CATALOG}
        assert tags == {"DiscSquare", "AnnulusSquare", "Joukowski", "BidiscSplit", "BidiscSym", "BallEllipsoid",
                        "TetrablockPhi", "FMapPhi4", "LambdaN", "NeilMap"}

    @pytest.mark.parametrize("json, expected", [
        ({"tag": "LambdaN", "n": 3}, LambdaN(3)),
        ({"tag": "BidiscSym", "omega": [0.0, 1.0]}, BidiscSym(1j)),
        ({"tag": "Joukowski"}, Joukowski(0.5, 1)),
        ({"tag": "NeilMap", "source": "Ball2"}, NeilMap("Ball2")),
    ])
    def test_from_json(self, json, expected):
        m = MapId.from_json(json)
        assert m == expected
        assert MapId.from_json(m.to_json()) == m, "to_json should be readable by from_json"

    @pytest.mark.parametrize("json, error", [
        ({"tag": "Cube"}, ConfigurationException),
        ({"n": 2}, ConfigurationException),
        ({"tag": "Joukowski", "omega": [2.0, 0.0]}, UnsupportedMapException),
        ({"tag": "LambdaN", "n": 1}, UnsupportedMapException),
        ({"tag": "NeilMap", "source": "Polydisc3"}, UnsupportedMapException),
    ])
    def test_bad_descriptors(self, json, error):
        with pytest.raises(error):
            MapId.from_json(json)


class TestFibers:
    @pytest.mark.parametrize("m", CATALOG, ids=str)
    def test_fiber_points_map_to_the_target(self, m):
        points = regular_sources(m)
        targets = m._eval(points)
        first, second = m._fiber_pair(targets)
        for candidate in (first, second):
            assert np.max(np.abs(m._eval(candidate) - targets)) < 1e-10, "{}: fiber point off target".format(m)
        distance = np.minimum(np.max(np.abs(first - points), axis=1), np.max(np.abs(second - points), axis=1))
        assert np.max(distance) < 1e-8, "{}: the source point should be in its own fiber".format(m)

    def test_regular_fiber_of_lambda(self):
        result = proper_maps.fiber(LambdaN(2), QUOTIENT_POINT)
        assert len(result) == 2 and not result.is_critical
        firsts = sorted(point[0].real for point in result.preimages)
        assert firsts == pytest.approx([-0.5, 0.5])

    def test_critical_fiber_has_one_point(self):
        result = proper_maps.fiber(LambdaN(2), [0.0, 0.5])
        assert len(result) == 1 and result.is_critical, "targets on the critical image have a single preimage"
        assert result.to_json() == {"preimages": [[[0.0, 0.0], [0.5, 0.0]]], "isCritical": True}

    def test_near_critical_fiber_is_merged_with_a_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="cartanquot.proper_maps"):
            result = proper_maps.fiber(LambdaN(2), [1e-20, 0.1])
        assert len(result) == 1 and result.is_critical, "preimages 2e-10 apart should merge"
        assert any(record.levelno == logging.WARNING and "merged" in record.getMessage()
                   for record in caplog.records), "merging distinct preimages should be logged"

    def test_exact_critical_fiber_is_not_logged(self, caplog):
        with caplog.at_level(logging.WARNING, logger="cartanquot.proper_maps"):
            proper_maps.fiber(LambdaN(2), [0.0, 0.5])
        assert not caplog.records

    def test_outside_target(self):
        with pytest.raises(OutOfImageException) as error:
            proper_maps.fiber(LambdaN(2), [0.36, 0.6j])
        assert error.value.margin < 0, "the exception should carry the negative margin"

    def test_off_variety_target(self):
        with pytest.raises(OutOfImageException):
            proper_maps.fiber(NeilMap("Bidisc"), [1.0, 1.0, 0.5])

    @pytest.mark.parametrize("point, state", QUOTIENT_2_CASES)
    def test_image_contains_matches_quotient_membership(self, point, state):
        assert proper_maps.image_contains(LambdaN(2), point).state.value == state

    def test_neil_variety(self):
        m = NeilMap("Ball2")
        images = m._eval(m.sample_source(100, np.random.default_rng(0)))
        assert np.max(np.abs(proper_maps.neil_variety_residual(images))) < 1e-15


class TestDeck:
    @pytest.mark.parametrize("m", CATALOG, ids=str)
    def test_involution_and_invariance(self, m):
        identity, involution = proper_maps.deck(m)
        points = m.sample_source(100, np.random.default_rng(5))
        assert np.array_equal(identity(points), points)
        assert np.allclose(involution(involution(points)), points, atol=1e-12), "{}: g o g should be id".format(m)
        assert np.allclose(m._eval(involution(points)), m._eval(points), atol=1e-12), "{}: m o g = m".format(m)

    def test_split_square_squares_the_first_coordinate(self):
        z = np.array([[0.3, 0.5j], [-0.2j, 0.4]])
        swapped = z[:, ::-1]
        m = BidiscSplit()
        assert np.allclose(m._eval(z), np.column_stack([z[:, 0] ** 2, z[:, 1]]))
        assert np.allclose(m._eval(swapped)[:, ::-1], np.column_stack([z[:, 0], z[:, 1] ** 2])), \
            "the swap conjugates it to squaring the second coordinate"
        assert np.allclose(proper_maps.deck(m)[1](z), z * np.array([-1, 1]))

    @pytest.mark.parametrize("m", CATALOG, ids=str)
    def test_deck_preserves_the_source(self, m):
        points = m.sample_source(100, np.random.default_rng(6))
        assert np.all(m.source_margin(m._deck(points)) > -1e-12)

    @pytest.mark.parametrize("m", [BidiscSym(np.exp(0.7j)), FMapPhi4(), TetrablockPhi(), LambdaN(3)], ids=str)
    def test_involution_from_fibers(self, m):
        points = regular_sources(m)
        assert np.allclose(proper_maps.deck_involution_from_fibers(m, points), m._deck(points), atol=1e-8)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=0.0, max_value=2 * np.pi), DISC_POINT, DISC_POINT)
    def test_symmetrization_is_deck_invariant(self, theta, z1, z2):
        m = BidiscSym(np.exp(1j * theta))
        point = np.array([z1, z2])
        swapped = proper_maps.deck(m)[1](point)
        assert np.allclose(proper_maps.eval_map(m, swapped), proper_maps.eval_map(m, point), atol=1e-12)


class TestJacobians:
    @pytest.mark.parametrize("m", EQUIDIMENSIONAL, ids=str)
    def test_closed_form_determinant(self, m):
        points = m.sample_source(50, np.random.default_rng(7))
        assert np.allclose(proper_maps.jacobian_det(m, points), np.linalg.det(proper_maps.jacobian_matrix(m, points)),
                           atol=1e-12)

    @pytest.mark.parametrize("m", CATALOG, ids=str)
    def test_finite_differences(self, m):
        points = m.sample_source(50, np.random.default_rng(8))
        assert np.allclose(proper_maps.finite_difference_jacobian(m, points), m._jacobian(points), atol=1e-6)

    @pytest.mark.parametrize("m", CATALOG, ids=str)
    def test_locus_is_fixed_by_the_deck(self, m):
        points = proper_maps.locus_samples(m, 50, np.random.default_rng(9))
        if points.shape[0] == 0:
            pytest.skip("{} has no fixed points in its source".format(m))
        assert np.allclose(m._deck(points), points, atol=1e-12)
        assert np.max(proper_maps.locus_margin(m, points)) < 1e-12, "{}: the locus is critical".format(m)

    def test_neil_map_has_no_determinant(self):
        with pytest.raises(UnsupportedMapException):
            proper_maps.jacobian_det(NeilMap(), [0.1, 0.2])
        assert proper_maps.locus_margin(NeilMap(), [0.0, 0.0]) == 0.0
        assert proper_maps.locus_margin(NeilMap(), [0.1, 0.2]) > 0


class TestEvaluation:
    def test_disc_square(self):
        assert proper_maps.eval_map(DiscSquare(), [0.5j]) == pytest.approx([-0.25])

    def test_joukowski_pole(self):
        with pytest.raises(PoleException):
            proper_maps.eval_map(Joukowski(0.5), [0.0])

    def test_check_source_membership(self):
        with pytest.raises(OutOfImageException):
            proper_maps.eval_map(DiscSquare(), [1.5], check=True)
        assert proper_maps.eval_map(DiscSquare(), [1.5]) == pytest.approx([2.25]), "unchecked evaluation is allowed"

    def test_lambda_maps_the_lie_ball_onto_the_quotient(self):
        m = LambdaN(4)
        images = m._eval(m.sample_source(500, np.random.default_rng(1)))
        assert np.all(domains.margins(domains.QuotientL(4), images) > -1e-14)


class TestMultiplicity:
    @pytest.mark.parametrize("m", CATALOG, ids=str)
    def test_every_map_is_two_to_one(self, m):
        assert proper_maps.multiplicity_probe(m, 200, 4) == 2, "{} should be 2-proper".format(m)

    def test_needs_enough_samples(self):
        with pytest.raises(ValueError):
            proper_maps.multiplicity_probe(DiscSquare(), 10, 0)

    def test_inconsistent_counts_raise(self, monkeypatch):
        m = DiscSquare()
        # a broken fiber solver that returns the same root twice on half of the targets
        original = DiscSquare._fiber_pair

        def broken(self, w):
            first, second = original(self, w)
            second = np.where(np.arange(w.shape[0])[:, np.newaxis] % 2 == 0, first, second)
            return first, second

        monkeypatch.setattr(DiscSquare, "_fiber_pair", broken)
        with pytest.raises(InconsistentMultiplicityException) as error:
            proper_maps.multiplicity_probe(m, 200, 0)
        assert error.value.counts == [1, 2]
