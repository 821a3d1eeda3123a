import numpy as np
import pytest

from cartanquot import reflections
from cartanquot.exceptions import FrameConditionException, InvalidPointException, NotAReflectionException
from cartanquot.proper_maps import BidiscSym
from cartanquot.reflections import BasicPolynomialMap, LinearMap
from .mock_points import REFLECTION_DIAGONAL, REFLECTION_SWAP

SHEAR_REFLECTION = np.array([[1, 1], [0, -1]], dtype=complex)


def random_invertible(seed, n):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 3 * np.eye(n)


class TestLinearMap:
    def test_acts_on_columns(self):
        swap = LinearMap(REFLECTION_SWAP)
        assert np.array_equal(swap([1.0, 2j]), [2j, 1.0])
        assert swap(np.array([[1.0, 0.0], [0.0, 1.0]])).shape == (2, 2), "batches keep their shape"

    def test_from_json(self):
        json = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
        assert LinearMap.from_json(json) == LinearMap(REFLECTION_SWAP)
        assert LinearMap.from_json(LinearMap(REFLECTION_SWAP).to_json()) == LinearMap(REFLECTION_SWAP)

    @pytest.mark.parametrize("matrix", [np.zeros((2, 3)), np.zeros(3), [[np.nan, 0], [0, 1]]])
    def test_invalid_matrices(self, matrix):
        with pytest.raises(InvalidPointException):
            LinearMap(matrix)


class TestReflections:
    @pytest.mark.parametrize("matrix, expected", [
        (REFLECTION_SWAP, True),
        (REFLECTION_DIAGONAL, True),
        (SHEAR_REFLECTION, True),
        (np.eye(3), False),
        (-np.eye(2), False),
        (np.diag([2.0, 1.0]), False),
        (np.diag([1j, 1.0]), False),
    ])
    def test_is_reflection(self, matrix, expected):
        assert reflections.is_reflection(matrix) == expected, "{} reflection check".format(matrix.tolist())

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            reflections.is_reflection(REFLECTION_SWAP, tol=0.0)

    def test_reflection_data_of_the_swap(self):
        axis, normal = reflections.reflection_data(REFLECTION_SWAP)
        half = np.sqrt(0.5)
        assert np.allclose(axis, [half, -half]), "the swap flips (1, -1)"
        assert np.allclose(normal, [half, -half]), "the swap fixes the diagonal"

    def test_reflection_data_of_a_non_unitary_reflection(self):
        axis, normal = reflections.reflection_data(SHEAR_REFLECTION)
        assert np.allclose(SHEAR_REFLECTION @ axis, -axis)
        fixed = reflections.fixed_hyperplane_basis(SHEAR_REFLECTION)
        assert fixed.shape == (2, 1)
        assert np.allclose(SHEAR_REFLECTION @ fixed, fixed)
        assert abs(np.vdot(normal, fixed[:, 0])) < 1e-12, "the normal is orthogonal to the fixed hyperplane"

    def test_not_a_reflection(self):
        with pytest.raises(NotAReflectionException):
            reflections.reflection_data(np.eye(2))

    @pytest.mark.parametrize("seed", range(5))
    def test_conjugates_are_reflections(self, seed):
        conjugated = reflections.conjugate(REFLECTION_DIAGONAL, random_invertible(seed, 3))
        assert reflections.is_reflection(conjugated), "P sigma P^-1 should be a reflection"
        assert np.allclose(np.trace(conjugated.matrix), 1.0), "conjugation keeps the trace"


class TestBasicPolynomialMaps:
    @pytest.mark.parametrize("sigma", [REFLECTION_SWAP, REFLECTION_DIAGONAL, SHEAR_REFLECTION,
                                       reflections.conjugate(REFLECTION_DIAGONAL, random_invertible(11, 3)).matrix])
    def test_frame_gives_an_invariant_map(self, sigma):
        frame = reflections.frame_for_reflection(sigma)
        basic = reflections.basic_map_from_reflection(sigma, frame)
        points = np.random.default_rng(2).standard_normal((100, sigma.shape[0])) + 0j
        assert np.allclose(basic(points @ sigma.T), basic(points), atol=1e-10), "f o sigma = f"

    def test_identity_frame_for_a_diagonal_reflection(self):
        basic = reflections.basic_map_from_reflection(REFLECTION_DIAGONAL, np.eye(3))
        assert isinstance(basic, BasicPolynomialMap)
        assert np.allclose(basic([0.5, 0.25, 1j]), [0.25, 0.25, 1j])
        assert basic.to_json() == {"frame": [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                                             [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
                                             [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]]}

    @pytest.mark.parametrize("frame", [
        np.eye(2),
        np.array([[1, -1], [1, -1]]),
        np.array([[1, -1], [1, 0]]),
        np.eye(3),
    ])
    def test_bad_frames(self, frame):
        with pytest.raises(FrameConditionException):
            reflections.basic_map_from_reflection(REFLECTION_SWAP, frame)

    def test_good_frame_for_the_swap(self):
        basic = reflections.basic_map_from_reflection(REFLECTION_SWAP, [[1, -1], [1, 1]])
        assert np.allclose(basic([0.5, 0.25]), [0.0625, 0.75])

    def test_bad_reflection(self):
        with pytest.raises(NotAReflectionException):
            reflections.basic_map_from_reflection(np.diag([2.0, 1.0]), np.eye(2))


class TestIntertwining:
    @pytest.mark.parametrize("omega", [1j, np.exp(0.7j), -1])
    def test_p_omega_intertwines_symmetrizations(self, omega):
        residual = reflections.intertwine_residual(BidiscSym(1), BidiscSym(omega), reflections.p_omega(omega),
                                                   samples=500, seed=1)
        assert residual < 1e-14, "pi_omega o P_omega should equal pi_1"

    def test_identity_does_not_intertwine_distinct_symmetrizations(self):
        residual = reflections.intertwine_residual(BidiscSym(1), BidiscSym(1j), np.eye(2), samples=500, seed=1)
        assert residual > 0.1

    def test_callables_are_accepted(self):
        def square_first(z):
            image = np.array(z, copy=True)
            image[:, 0] = image[:, 0] ** 2
            return image

        basic = reflections.basic_map_from_reflection(REFLECTION_DIAGONAL, np.eye(3))
        assert reflections.intertwine_residual(square_first, basic, np.eye(3), samples=100) < 1e-15
