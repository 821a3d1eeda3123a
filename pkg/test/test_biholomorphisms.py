import numpy as np
import pytest

from cartanquot import biholomorphisms, domains
from cartanquot._util import polydisc_uniform
from cartanquot.biholomorphisms import BIH_TAGS, BihId
from cartanquot.exceptions import ConfigurationException, UnsupportedMapException
from .mock_points import LIE_POINT, QUOTIENT_POINT, SYM_BIDISC_POINT

ALL_BIHS = [BihId(tag, inverse) for tag in BIH_TAGS for inverse in (False, True)]


def chart_points(domain, count, seed, spread=1.0):
    """Sampled points in the chart of ``domain``, mostly inside when ``spread`` is 1."""
    rng = np.random.default_rng(seed)
    if spread == 1.0:
        return domains.sample_uniform(domain, count, rng)
    return polydisc_uniform(rng, count, spread * np.array(domains.bounding_box(domain)))


class TestDescriptor:
    def test_json(self):
        bih = BihId.from_json({"tag": "LL3toE", "inverse": True})
        assert bih == BihId("LL3toE", True)
        assert bih.to_json() == {"tag": "LL3toE", "inverse": True}
        assert BihId.from_json({"tag": "L2toBidisc"}).inverse is False, "inverse should default to false"

    def test_unknown_tags(self):
        with pytest.raises(ConfigurationException):
            BihId.from_json({"tag": "L5toR5"})
        with pytest.raises(UnsupportedMapException):
            BihId("L5toR5")

    @pytest.mark.parametrize("tag, source, target", [
        ("L2toBidisc", domains.LieBall(2), domains.Polydisc(2)),
        ("L3toR3", domains.LieBall(3), domains.CartanIII(2)),
        ("L4toR1", domains.LieBall(4), domains.CartanI(2, 2)),
        ("LL2toG2", domains.QuotientL(2), domains.SymBidisc()),
        ("LL3toE", domains.QuotientL(3), domains.Tetrablock()),
        ("LL4toF", domains.QuotientL(4), domains.FDomain()),
    ])
    def test_domains(self, tag, source, target):
        assert biholomorphisms.source_domain(BihId(tag)) == source
        assert biholomorphisms.target_domain(BihId(tag)) == target
        assert biholomorphisms.source_domain(BihId(tag, True)) == target, "the inverse swaps the domains"


class TestEvaluation:
    def test_lie_boundary_point_goes_to_the_bidisc_boundary(self):
        image = biholomorphisms.bih_eval(BihId("L2toBidisc"), [0.5, 0.5j])
        assert np.allclose(image, [0.0, -1.0])
        assert domains.contains(domains.Polydisc(2), image).boundary

    def test_quotient_point_goes_to_the_symmetrized_bidisc(self):
        assert np.allclose(biholomorphisms.bih_eval(BihId("LL2toG2"), QUOTIENT_POINT), SYM_BIDISC_POINT)
        assert np.allclose(biholomorphisms.bih_eval(BihId("LL2toG2", True), SYM_BIDISC_POINT), QUOTIENT_POINT)

    def test_matrix_images(self):
        image = biholomorphisms.bih_eval(BihId("L3toR3"), [0.1, 0.2, 0.3])
        assert image.shape == (2, 2)
        assert np.allclose(image, image.T), "L3toR3 lands in symmetric matrices"
        assert np.allclose(biholomorphisms.bih_inverse(BihId("L3toR3"), image), [0.1, 0.2, 0.3])

    @pytest.mark.parametrize("bih", ALL_BIHS, ids=repr)
    def test_round_trip(self, bih):
        source = biholomorphisms.source_domain(bih)
        points = chart_points(source, 200, 4)
        if isinstance(source, domains._MatrixDomain):
            points = source.to_matrix(points)
        back = biholomorphisms.bih_inverse(bih, biholomorphisms.bih_eval(bih, points))
        assert np.allclose(back, points, atol=1e-12), "{!r} should invert exactly".format(bih)

    @pytest.mark.parametrize("bih", ALL_BIHS, ids=repr)
    @pytest.mark.parametrize("spread", [1.0, 1.5])
    def test_membership_is_transported(self, bih, spread):
        source = biholomorphisms.source_domain(bih)
        source_margin, target_margin = biholomorphisms.transported_margins(bih, chart_points(source, 500, 5, spread))
        clear = (np.abs(source_margin) > 1e-6) & (np.abs(target_margin) > 1e-6)
        assert np.count_nonzero(clear) > 100
        assert np.array_equal(source_margin[clear] > 0, target_margin[clear] > 0), \
            "{!r} should map inside to inside and outside to outside".format(bih)


class TestCommutingSquares:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_squares_commute(self, n):
        assert biholomorphisms.commuting_square_residual(n, samples=2000, seed=1) < 1e-12

    def test_square_at_a_point(self):
        assert biholomorphisms.commuting_square_residual(2, z=LIE_POINT) < 1e-15

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_deck_groups_correspond(self, n):
        assert biholomorphisms.deck_transport_residual(n, samples=2000, seed=2) < 1e-9

    @pytest.mark.parametrize("n", [1, 5])
    def test_no_square_outside_dimensions_two_to_four(self, n):
        with pytest.raises(UnsupportedMapException):
            biholomorphisms.commuting_square_residual(n, samples=10)

    def test_isomorphism_residual_detects_mismatches(self):
        points = np.ones((3, 2), dtype=complex)
        residual = biholomorphisms.isomorphism_residual(lambda z: z, lambda z: z, lambda z: z, lambda z: 2 * z, points)
        assert residual == pytest.approx(np.sqrt(2))
