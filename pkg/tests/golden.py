"""Golden data for the three worked examples used across the test suite.

Forms are stored as {exponent tuple: integer coefficient} in the
(X, Y, Z, T) / (k1, k2, k3, k4) monomial order.
"""

# --- F_1697 fast-model (5,5)-isogeny ------------------------------------------

F1697 = 1697
THETA_1697 = (883, 375, 1692, 1586)
R_1697 = (1593, 713, 1161, 1)
S_1697 = (615, 1249, 125, 1)
IMAGE_THETA_1697 = (381, 960, 69, 1199)
LAMBDA_1697 = (1, 283, 418, 1396)

# the unscaled quintic map, one dict per coordinate
PSI_1697 = [
    {(5, 0, 0, 0): 1668, (3, 2, 0, 0): 708, (3, 0, 2, 0): 1282, (3, 0, 0, 2): 1487,
     (2, 1, 1, 1): 823, (1, 4, 0, 0): 646, (1, 2, 2, 0): 760, (1, 2, 0, 2): 502,
     (1, 0, 4, 0): 632, (1, 0, 2, 2): 1352, (1, 0, 0, 4): 247, (0, 3, 1, 1): 651,
     (0, 1, 3, 1): 1154, (0, 1, 1, 3): 331},
    {(4, 1, 0, 0): 1026, (3, 0, 1, 1): 512, (2, 3, 0, 0): 556, (2, 1, 2, 0): 278,
     (2, 1, 0, 2): 7, (1, 2, 1, 1): 509, (1, 0, 3, 1): 289, (1, 0, 1, 3): 136,
     (0, 5, 0, 0): 370, (0, 3, 2, 0): 975, (0, 3, 0, 2): 1564, (0, 1, 4, 0): 329,
     (0, 1, 2, 2): 1026, (0, 1, 0, 4): 942},
    {(4, 0, 1, 0): 259, (3, 1, 0, 1): 19, (2, 2, 1, 0): 1373, (2, 0, 3, 0): 396,
     (2, 0, 1, 2): 686, (1, 3, 0, 1): 1101, (1, 1, 2, 1): 1610, (1, 1, 0, 3): 371,
     (0, 4, 1, 0): 660, (0, 2, 3, 0): 1520, (0, 2, 1, 2): 1539, (0, 0, 5, 0): 229,
     (0, 0, 3, 2): 933, (0, 0, 1, 4): 121},
    {(4, 0, 0, 1): 397, (3, 1, 1, 0): 371, (2, 2, 0, 1): 610, (2, 0, 2, 1): 1326,
     (2, 0, 0, 3): 1464, (1, 3, 1, 0): 1073, (1, 1, 3, 0): 945, (1, 1, 1, 2): 686,
     (0, 4, 0, 1): 80, (0, 2, 2, 1): 1613, (0, 2, 0, 3): 816, (0, 0, 4, 1): 593,
     (0, 0, 2, 3): 770, (0, 0, 0, 5): 708},
]

# --- F_11 general-model (5,5)-isogeny ------------------------------------------

F11_CURVE = (3, 9, 10, 9, 3, 1, 0)  # y^2 = x^5 + 3x^4 + 9x^3 + 10x^2 + 9x + 3
R_11 = (0, 1, 4, 5)
S_11 = (0, 1, 0, 0)
TWO_R_11 = (1, 8, 5, 7)
TWO_S_11 = (1, 0, 0, 5)
IMAGE_CURVE_11 = (2, 3, 4, 9, 5, 1, 5)
U_11 = (2, 2, 2)

# the defining quartic of the domain surface
QUARTIC_11 = {
    (1, 0, 1, 2): 7, (0, 2, 0, 2): 1,
    (3, 0, 0, 1): 10, (2, 1, 0, 1): 4, (2, 0, 1, 1): 4, (1, 1, 1, 1): 4,
    (1, 0, 2, 1): 10, (0, 1, 2, 1): 9,
    (4, 0, 0, 0): 5, (0, 0, 4, 0): 1, (2, 1, 1, 0): 3, (1, 2, 1, 0): 8,
    (1, 1, 2, 0): 4, (2, 0, 2, 0): 1, (3, 1, 0, 0): 2, (3, 0, 1, 0): 3,
    (2, 2, 0, 0): 8, (1, 3, 0, 0): 10, (1, 0, 3, 0): 4,
}

# the normalized map coordinates (the fourth is printed after the final
# linear adjustment, i.e. it equals ell4 - 2(ell1 + ell2 + ell3))
ELL_11 = [
    {(5, 0, 0, 0): 6, (4, 1, 0, 0): 9, (4, 0, 1, 0): 4, (4, 0, 0, 1): 3, (3, 2, 0, 0): 5,
     (3, 1, 1, 0): 6, (3, 1, 0, 1): 4, (3, 0, 2, 0): 5, (3, 0, 1, 1): 7, (3, 0, 0, 2): 10,
     (2, 3, 0, 0): 6, (2, 2, 1, 0): 1, (2, 2, 0, 1): 8, (2, 1, 2, 0): 7, (2, 1, 1, 1): 9,
     (2, 1, 0, 2): 4, (2, 0, 3, 0): 10, (2, 0, 2, 1): 8, (2, 0, 1, 2): 8, (2, 0, 0, 3): 7,
     (1, 2, 2, 0): 7, (1, 1, 3, 0): 2, (1, 1, 1, 2): 4, (1, 1, 0, 3): 9, (1, 0, 4, 0): 2,
     (1, 0, 3, 1): 10, (1, 0, 2, 2): 5, (1, 0, 1, 3): 9, (1, 0, 0, 4): 1, (0, 3, 2, 0): 1,
     (0, 2, 3, 0): 3, (0, 2, 2, 1): 1, (0, 1, 3, 1): 3, (0, 1, 2, 2): 8, (0, 0, 4, 1): 7,
     (0, 0, 3, 2): 7, (0, 0, 2, 3): 6},
    {(5, 0, 0, 0): 3, (4, 1, 0, 0): 10, (4, 0, 1, 0): 9, (4, 0, 0, 1): 7, (3, 2, 0, 0): 9,
     (3, 1, 1, 0): 7, (3, 1, 0, 1): 2, (3, 0, 2, 0): 10, (3, 0, 1, 1): 8, (3, 0, 0, 2): 1,
     (2, 2, 0, 1): 7, (2, 1, 2, 0): 6, (2, 1, 1, 1): 2, (2, 1, 0, 2): 2, (2, 0, 3, 0): 8,
     (2, 0, 1, 2): 9, (2, 0, 0, 3): 9, (1, 3, 1, 0): 2, (1, 2, 2, 0): 1, (1, 2, 1, 1): 4,
     (1, 1, 3, 0): 2, (1, 1, 2, 1): 2, (1, 1, 1, 2): 1, (1, 1, 0, 3): 5, (1, 0, 4, 0): 10,
     (1, 0, 3, 1): 8, (1, 0, 2, 2): 9, (1, 0, 1, 3): 3, (0, 3, 1, 1): 2, (0, 2, 3, 0): 10,
     (0, 2, 2, 1): 10, (0, 1, 4, 0): 2, (0, 1, 3, 1): 4, (0, 1, 2, 2): 6, (0, 1, 1, 3): 3,
     (0, 1, 0, 4): 1, (0, 0, 5, 0): 3, (0, 0, 4, 1): 9, (0, 0, 3, 2): 8},
    {(5, 0, 0, 0): 9, (4, 1, 0, 0): 3, (4, 0, 1, 0): 9, (3, 1, 1, 0): 7, (3, 1, 0, 1): 9,
     (3, 0, 2, 0): 8, (3, 0, 1, 1): 7, (3, 0, 0, 2): 3, (2, 3, 0, 0): 1, (2, 2, 1, 0): 1,
     (2, 1, 2, 0): 5, (2, 1, 1, 1): 8, (2, 1, 0, 2): 7, (2, 0, 3, 0): 5, (2, 0, 2, 1): 2,
     (2, 0, 1, 2): 7, (2, 0, 0, 3): 1, (1, 4, 0, 0): 1, (1, 3, 1, 0): 10, (1, 3, 0, 1): 1,
     (1, 2, 2, 0): 7, (1, 2, 1, 1): 1, (1, 1, 2, 1): 6, (1, 1, 1, 2): 7, (1, 1, 0, 3): 2,
     (1, 0, 4, 0): 6, (1, 0, 3, 1): 4, (1, 0, 2, 2): 9, (1, 0, 1, 3): 9, (0, 2, 2, 1): 1,
     (0, 1, 2, 2): 1, (0, 1, 1, 3): 9, (0, 0, 5, 0): 9, (0, 0, 4, 1): 10, (0, 0, 3, 2): 8,
     (0, 0, 2, 3): 6, (0, 0, 1, 4): 1},
    {(4, 1, 0, 0): 10, (4, 0, 1, 0): 1, (4, 0, 0, 1): 5, (3, 2, 0, 0): 1, (3, 1, 1, 0): 4,
     (3, 1, 0, 1): 9, (3, 0, 2, 0): 3, (3, 0, 1, 1): 3, (3, 0, 0, 2): 9, (2, 3, 0, 0): 10,
     (2, 2, 1, 0): 8, (2, 2, 0, 1): 9, (2, 1, 2, 0): 5, (2, 1, 1, 1): 10, (2, 1, 0, 2): 6,
     (2, 0, 3, 0): 10, (2, 0, 2, 1): 6, (2, 0, 0, 3): 8, (1, 4, 0, 0): 4, (1, 3, 1, 0): 5,
     (1, 3, 0, 1): 5, (1, 1, 3, 0): 3, (1, 1, 2, 1): 1, (1, 1, 1, 2): 5, (1, 1, 0, 3): 10,
     (1, 0, 4, 0): 8, (1, 0, 3, 1): 8, (1, 0, 2, 2): 6, (1, 0, 1, 3): 4, (1, 0, 0, 4): 9,
     (0, 5, 0, 0): 1, (0, 4, 1, 0): 10, (0, 4, 0, 1): 1, (0, 3, 2, 0): 7, (0, 3, 1, 1): 10,
     (0, 2, 3, 0): 2, (0, 2, 2, 1): 8, (0, 1, 4, 0): 9, (0, 1, 2, 2): 5, (0, 1, 1, 3): 10,
     (0, 1, 0, 4): 9, (0, 0, 5, 0): 2, (0, 0, 4, 1): 10, (0, 0, 3, 2): 6, (0, 0, 2, 3): 2,
     (0, 0, 1, 4): 9, (0, 0, 0, 5): 1},
]

# quartic satisfied by (ell1, ell2, ell3, ell4) in the marker-normalized basis
RECOVERED_QUARTIC_11 = {
    (0, 2, 0, 2): 1, (1, 0, 1, 2): 7,
    (3, 0, 0, 1): 3, (2, 1, 0, 1): 5, (1, 2, 0, 1): 7, (1, 1, 1, 1): 9, (1, 0, 2, 1): 7,
    (0, 3, 0, 1): 7, (0, 2, 1, 1): 7, (0, 1, 2, 1): 9, (0, 0, 3, 1): 2,
    (4, 0, 0, 0): 4, (2, 2, 0, 0): 9, (2, 1, 1, 0): 7, (2, 0, 2, 0): 7, (1, 2, 1, 0): 8,
    (1, 1, 2, 0): 4, (1, 0, 3, 0): 2, (0, 4, 0, 0): 8, (0, 3, 1, 0): 3, (0, 2, 2, 0): 5,
    (0, 1, 3, 0): 7, (0, 0, 4, 0): 7,
}

# --- F_101 diagonalization -------------------------------------------------------

F101_FACTORS = ((13, 15, 1), (83, 53, 1), (64, 10, 1))
M1_101 = [[6, 18, 39, 1], [92, 13, 15, 86], [17, 52, 22, 13], [46, 54, 52, 60]]
M2_101 = [[58, 100, 96, 1], [60, 91, 13, 48], [32, 15, 52, 83], [66, 22, 58, 1]]
EIGS_101 = ((52, 49), (33, 68))
RES_101 = (78, 79)
SPARSE_QUARTIC_101 = {
    (4, 0, 0, 0): 50, (0, 4, 0, 0): 57, (0, 0, 0, 4): 27, (0, 0, 4, 0): 83,
    (2, 2, 0, 0): 70, (0, 0, 2, 2): 10, (2, 0, 2, 0): 54, (0, 2, 0, 2): 91,
    (2, 0, 0, 2): 13, (0, 2, 2, 0): 44, (1, 1, 1, 1): 90,
}
