import numpy as np

# (point, expected state) in L_2
LIE_BALL_2_CASES = [
    ([0.5, 0.5], "Inside"),
    ([0.9, 0.0], "Inside"),
    ([0.0, 0.0], "Inside"),
    ([0.5, 0.5j], "Boundary"),
    ([0.6, 0.6j], "Outside"),
    ([1.1, 0.0], "Outside"),
]

# (w, expected state) in the quotient of L_2
QUOTIENT_2_CASES = [
    ([0.25, 0.5], "Inside"),
    ([-0.25, 0.5j], "Inside"),
    ([0.0, 0.0], "Inside"),
    ([0.25, 0.5j], "Boundary"),
    ([0.36, 0.6j], "Outside"),
]

HALF_IDENTITY = 0.5 * np.eye(2)
LARGE_DIAGONAL = np.diag([1.2, 0.0])
UNIT_DIAGONAL = np.diag([1.0, 0.3])

# Lambda_2 images and their symmetrized bidisc counterparts
LIE_POINT = np.array([0.5, 0.5], dtype=complex)
QUOTIENT_POINT = np.array([0.25, 0.5], dtype=complex)
SYM_BIDISC_POINT = np.array([1j, -0.5], dtype=complex)

LIE_AUT_JSON = {"omega": [0.0, 1.0], "U": [[[0.0, 0.0], [-1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]}

REFLECTION_SWAP = np.array([[0, 1], [1, 0]], dtype=complex)
REFLECTION_DIAGONAL = np.diag([-1.0, 1.0, 1.0]).astype(complex)
