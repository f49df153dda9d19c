"""Reference grids for the self-test: exact values of the log coupling table.

One grid per partition size, rows and columns in the order listed next to
it; the table is symmetric and vanishes across different sizes.
"""

from fractions import Fraction as F

GOLDEN_ORDERS = {
    1: [(1,)],
    2: [(2,), (1, 1)],
    3: [(1, 1, 1), (2, 1), (3,)],
    4: [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)],
    5: [(5,), (4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)],
    6: [(6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (3, 1, 1, 1),
        (2, 2, 2), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)],
}

GOLDEN_GRIDS = {
    1: [[1]],
    2: [
        [F(1, 4), F(1, 4)],
        [F(1, 4), F(-1, 4)],
    ],
    3: [
        [F(1, 9), F(-1, 6), F(1, 18)],
        [F(-1, 6), 0, F(1, 6)],
        [F(1, 18), F(1, 6), F(1, 9)],
    ],
    4: [
        [F(1, 16), F(1, 12), F(1, 32), F(1, 16), F(1, 96)],
        [F(1, 12), 0, F(1, 24), F(-1, 12), F(-1, 24)],
        [F(1, 32), F(1, 24), F(-1, 64), F(-1, 32), F(-5, 192)],
        [F(1, 16), F(-1, 12), F(-1, 32), F(-1, 16), F(11, 96)],
        [F(1, 96), F(-1, 24), F(-5, 192), F(11, 96), F(-11, 192)],
    ],
    5: [
        [F(1, 25), F(1, 20), F(1, 30), F(1, 30), F(1, 40), F(1, 60), F(1, 600)],
        [F(1, 20), 0, F(1, 24), F(-1, 24), 0, F(-1, 24), F(-1, 120)],
        [F(1, 30), F(1, 24), 0, 0, F(-1, 48), F(-1, 24), F(-1, 80)],
        [F(1, 30), F(-1, 24), 0, 0, F(-1, 16), F(1, 24), F(7, 240)],
        [F(1, 40), 0, F(-1, 48), F(-1, 16), 0, F(1, 48), F(3, 80)],
        [F(1, 60), F(-1, 24), F(-1, 24), F(1, 24), F(1, 48), F(1, 12), F(-19, 240)],
        [F(1, 600), F(-1, 120), F(-1, 80), F(7, 240), F(3, 80), F(-19, 240), F(19, 600)],
    ],
    6: [
        [F(1, 36), F(1, 30), F(1, 48), F(1, 48), F(1, 108), F(1, 36), F(1, 108),
         F(1, 288), F(1, 96), F(1, 288), F(1, 4320)],
        [F(1, 30), 0, F(1, 40), F(-1, 40), F(1, 90), 0, F(-1, 45),
         F(1, 240), F(-1, 80), F(-1, 80), F(-1, 720)],
        [F(1, 48), F(1, 40), 0, 0, F(1, 144), 0, F(-1, 72),
         F(-1, 192), F(-1, 64), F(-1, 64), F(-7, 2880)],
        [F(1, 48), F(-1, 40), 0, 0, F(1, 144), F(-1, 24), F(1, 36),
         F(-1, 192), F(-1, 64), F(5, 192), F(17, 2880)],
        [F(1, 108), F(1, 90), F(1, 144), F(1, 144), F(-1, 324), F(-1, 108), F(-1, 324),
         F(1, 864), F(-1, 96), F(-7, 864), F(-19, 12960)],
        [F(1, 36), 0, 0, F(-1, 24), F(-1, 108), F(-1, 36), F(-1, 108),
         F(-1, 144), 0, F(7, 144), F(1, 54)],
        [F(1, 108), F(-1, 45), F(-1, 72), F(1, 36), F(-1, 324), F(-1, 108), F(-1, 324),
         F(-1, 108), F(1, 16), F(-1, 54), F(-131, 6480)],
        [F(1, 288), F(1, 240), F(-1, 192), F(-1, 192), F(1, 864), F(-1, 144), F(-1, 108),
         F(1, 576), F(1, 192), F(1, 144), F(17, 4320)],
        [F(1, 96), F(-1, 80), F(-1, 64), F(-1, 64), F(-1, 96), 0, F(1, 16),
         F(1, 192), F(1, 64), 0, F(-19, 480)],
        [F(1, 288), F(-1, 80), F(-1, 64), F(5, 192), F(-7, 864), F(7, 144), F(-1, 54),
         F(1, 144), 0, F(-49, 576), F(473, 8640)],
        [F(1, 4320), F(-1, 720), F(-7, 2880), F(17, 2880), F(-19, 12960), F(1, 54),
         F(-131, 6480), F(17, 4320), F(-19, 480), F(473, 8640), F(-473, 25920)],
    ],
}


def golden_entries(size):
    order = GOLDEN_ORDERS[size]
    grid = GOLDEN_GRIDS[size]
    for i, ka in enumerate(order):
        for j, la in enumerate(order):
            yield (ka, la), grid[i][j]
