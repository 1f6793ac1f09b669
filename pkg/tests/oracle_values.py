"""Frozen reference values produced by tools/oracle_values.py (independent of the package).

Regenerate with ``python3 tools/oracle_values.py`` and paste the output here;
never edit the numbers by hand.
"""
from fractions import Fraction

TABLE_A6_N1 = {
    (1, 0): Fraction(0, 1),
    (1, 1): Fraction(0, 1),
    (2, 0): Fraction(-185, 2),
    (2, 1): Fraction(185, 2),
    (3, 0): Fraction(185, 2),
    (3, 1): Fraction(185, 2),
    (4, 0): Fraction(-57, 1),
    (4, 1): Fraction(57, 1),
    (5, 0): Fraction(22, 1),
    (5, 1): Fraction(22, 1),
    (6, 0): Fraction(-4, 1),
    (6, 1): Fraction(4, 1),
}
S_AT_ONE = {
    1: '3.5128349962507323707343384367e-12',
    2: '5.31648081728977305055248939518e-24',
    3: '4.03546404081721551645981959575e-35',
    4: '7.08303692635335563014899011038e-46',
}
GROWTH_RATES = {
    8: -24.906767,
    9: -24.731627,
    10: -24.580222,
    11: -24.448147,
    12: -24.332058,
    13: -24.229408,
    14: -24.138251,
    15: -24.057133,
    16: -23.985032,
    17: -23.921385,
    18: -23.866289,
    19: -23.821220,
    20: -23.792537,
    21: -23.865003,
    22: -23.685675,
    23: -23.603103,
    24: -23.539583,
}
KAPPA = {
    6: '4.7887059871672913031',
    8: '4.2465060469866139345',
    10: '3.6208013980654820104',
    12: '2.9407904514620253693',
    14: '2.2259803021806381154',
    16: '1.4892326409131807801',
    18: '0.73882905130540221538',
    20: '-0.020016392006677682543',
    22: '-0.78407084653164192165',
    24: '-1.5513444187663736803',
}
Z0_20 = ('0.992234120294707208732775194515', '-0.0120053982933104391772239494008')
W0_20 = ('-22.0200163920066776825425697887', '3.10440862413582370053738265877')
RHO_STIRLING = {
    32: '9.73002365160759',
    40: '10.3949088742617',
}
