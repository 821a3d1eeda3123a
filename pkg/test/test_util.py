import numpy as np
import pytest

from cartanquot._util import (array_from_json, as_batch, as_matrix_batch, ball_uniform, complex_from_json,
                              derive_seed, dumps, loads, polydisc_uniform, quadratic_roots, to_jsonable, unbatch)
from cartanquot.exceptions import ConfigurationException, InvalidPointException


class TestBatches:
    def test_single_point_is_batched_and_unbatched(self):
        arr, single = as_batch([0.5, 0.25j], 2)
        assert arr.shape == (1, 2), "a single point should become a batch of one"
        assert single, "a single point should be flagged as such"
        assert unbatch(arr[:, 0], single) == 0.5, "unbatch should return the scalar of a single point"

    def test_batch_is_kept(self):
        arr, single = as_batch(np.zeros((5, 3)), 3)
        assert arr.shape == (5, 3)
        assert not single
        assert arr.dtype == complex, "batches should be complex"

    @pytest.mark.parametrize("points, width", [
        ([0.1, 0.2, 0.3], 2),
        (np.zeros((2, 2, 2)), 2),
        ([np.nan, 0.0], 2),
        ([np.inf, 0.0], 2),
    ])
    def test_invalid_points_raise(self, points, width):
        with pytest.raises(InvalidPointException):
            as_batch(points, width)

    def test_matrix_batch_shape_is_checked(self):
        mats, single = as_matrix_batch(np.eye(2), 2, 2)
        assert mats.shape == (1, 2, 2) and single
        with pytest.raises(InvalidPointException):
            as_matrix_batch(np.eye(3), 2, 2)


class TestQuadraticRoots:
    @pytest.mark.parametrize("b, c", [
        (1.0, 0.25),
        (0.0, -0.25),
        (1j, -0.5),
        (2.0, 1.0),
        (1e8, 1.0),
        (0.0, 0.0),
    ])
    def test_vieta(self, b, c):
        first, second = quadratic_roots(np.array([b], dtype=complex), np.array([c], dtype=complex))
        assert abs(first[0] + second[0] - b) <= 1e-12 * max(1.0, abs(b)), "roots should sum to b"
        assert abs(first[0] * second[0] - c) <= 1e-12 * max(1.0, abs(c)), "roots should multiply to c"

    def test_small_root_is_accurate(self):
        first, second = quadratic_roots(np.array([1e8 + 0j]), np.array([1.0 + 0j]))
        small = min(first[0], second[0], key=abs)
        assert abs(small - 1e-8) < 1e-20, "the small root should not suffer from cancellation"


class TestSamplers:
    def test_polydisc_uniform_stays_in_radii(self):
        points = polydisc_uniform(np.random.default_rng(0), 1000, [0.5, 2.0])
        assert np.all(np.abs(points[:, 0]) <= 0.5)
        assert np.all(np.abs(points[:, 1]) <= 2.0)

    def test_ball_uniform_stays_in_ball(self):
        points = ball_uniform(np.random.default_rng(0), 1000, 3)
        assert np.all(np.sum(np.abs(points) ** 2, axis=1) <= 1.0)

    def test_derive_seed_depends_on_stream(self):
        assert derive_seed(7, "kernel") == derive_seed(7, "kernel"), "seeds should be reproducible"
        assert derive_seed(7, "kernel") != derive_seed(7, "volume"), "streams should get distinct seeds"
        assert derive_seed(7, "kernel") != derive_seed(8, "kernel"), "run seeds should matter"


class TestJson:
    def test_complex_from_json(self):
        assert complex_from_json([0.5, -1.0]) == 0.5 - 1j
        assert complex_from_json(2) == 2 + 0j
        with pytest.raises(ConfigurationException):
            complex_from_json("1+2j")
        with pytest.raises(ConfigurationException):
            complex_from_json([1.0, 2.0, 3.0])

    def test_array_from_json_point_matrix_and_batch(self):
        point = array_from_json([[0.5, 0.0], [0.0, 0.5]])
        assert point.shape == (2,), "a list of pairs is a point"
        assert point[1] == 0.5j
        real = array_from_json([0.5, 0.25])
        assert real.shape == (2,) and real[1] == 0.25, "bare numbers are real coordinates"
        matrix = array_from_json([[[1, 0], [0, 0]], [[0, 0], [1, 0]]])
        assert np.array_equal(matrix, np.eye(2)), "a list of rows of pairs is a matrix"
        stack = array_from_json([[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]] * 3)
        assert stack.shape == (3, 2, 2)

    def test_array_from_json_rejects_garbage(self):
        with pytest.raises(ConfigurationException):
            array_from_json([])
        with pytest.raises(ConfigurationException):
            array_from_json({"a": 1})
        with pytest.raises(ConfigurationException):
            array_from_json([[[1, 0]], [[1, 0], [2, 0]]])

    def test_to_jsonable_and_dumps_are_deterministic(self):
        value = {"b": np.array([1 + 2j]), "a": np.float64(0.5), "c": np.bool_(True)}
        assert to_jsonable(value) == {"a": 0.5, "b": [[1.0, 2.0]], "c": True}
        assert dumps(value) == dumps(dict(reversed(list(value.items())))), "key order should not matter"
        assert dumps(value).index('"a"') < dumps(value).index('"b"'), "keys should be sorted"

    def test_loads_raises_configuration_exception(self):
        assert loads('{"tag": "UnitDisc"}') == {"tag": "UnitDisc"}
        with pytest.raises(ConfigurationException):
            loads("{not json")
