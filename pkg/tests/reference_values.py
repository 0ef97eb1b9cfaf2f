"""Frozen reference data shared by the tests."""

DELANNOY_TABLE = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 3, 5, 7, 9, 11, 13],
    [1, 5, 13, 25, 41, 61, 85],
    [1, 7, 25, 63, 129, 231, 377],
    [1, 9, 41, 129, 321, 681, 1289],
    [1, 11, 61, 231, 681, 1683, 3653],
    [1, 13, 85, 377, 1289, 3653, 8989],
]

CORONA_TABLE = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 4, 6, 8, 10, 12, 14],
    [1, 6, 16, 30, 48, 70, 96],
    [1, 8, 30, 76, 154, 272, 438],
    [1, 10, 48, 154, 384, 810, 1520],
    [1, 12, 70, 272, 810, 2004, 4334],
    [1, 14, 96, 438, 1520, 4334, 10672],
]

XI_DIAGONAL = [2, 4, 8, 18, 38, 88, 192, 450, 1002]

S_6_3 = [(1, 2, 3, 4), (1, 2, 4, 5), (1, 2, 5, 6), (2, 3, 5, 6), (3, 4, 5, 6), (1, 3, 4, 6)]

S_10_5 = [
    (1, 2, 3, 4, 5, 6), (3, 4, 5, 6, 7, 8), (5, 6, 7, 8, 9, 10), (1, 2, 7, 8, 9, 10), (1, 2, 3, 4, 9, 10),
    (1, 2, 3, 4, 7, 8), (3, 4, 5, 6, 9, 10), (1, 2, 5, 6, 7, 8), (3, 4, 7, 8, 9, 10), (1, 2, 5, 6, 9, 10),
    (1, 2, 3, 4, 6, 7), (3, 4, 5, 6, 8, 9), (1, 5, 6, 7, 8, 10), (2, 3, 7, 8, 9, 10), (1, 2, 4, 5, 9, 10),
    (1, 2, 3, 4, 8, 9), (1, 3, 4, 5, 6, 10), (2, 3, 5, 6, 7, 8), (4, 5, 7, 8, 9, 10), (1, 2, 6, 7, 9, 10),
    (1, 2, 4, 5, 7, 8), (3, 4, 6, 7, 9, 10), (1, 2, 5, 6, 8, 9), (1, 3, 4, 7, 8, 10), (2, 3, 5, 6, 9, 10),
    (1, 2, 4, 5, 8, 9), (1, 3, 4, 6, 7, 10), (2, 3, 5, 6, 8, 9), (1, 4, 5, 7, 8, 10), (2, 3, 6, 7, 9, 10),
]

# three mutually adjacent facets of the boundary of C(6,4)
C_6_3_TRIANGLE = [(1, 2, 3, 4), (1, 2, 4, 5), (2, 3, 4, 5)]

# planar complex with a bipartite adjacency graph and no proper 3-colouring
NOT_BALANCED_FACETS = [(1, 2, 3), (2, 3, 5), (3, 4, 5), (4, 5, 6), (4, 6, 7), (1, 4, 7)]
# decoration read off the vector drawing (coordinates scaled by 10)
NOT_BALANCED_VECTORS = {
    1: (-5, 15), 2: (18, -5), 3: (-15, -5), 4: (-5, -15), 5: (12, 12), 6: (-5, 15), 7: (18, -5),
}

SIMCOMP6_BALANCED_FACETS = [(1, 2, 3), (1, 3, 4), (1, 2, 7), (1, 4, 7), (3, 4, 5), (4, 5, 6)]
# the regular triangulation also covers the triangle 467, which the colouring cannot decorate
SIMCOMP6_TRIANGULATION = sorted(SIMCOMP6_BALANCED_FACETS + [(4, 6, 7)])
