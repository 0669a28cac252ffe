"""Published reference values used by the golden and acceptance tests."""


def _expand(spec):
    out = []
    for n, h, ks, m in spec:
        for k in (ks if isinstance(ks, tuple) else (ks,)):
            out.append((n, h, k, m))
    return sorted(out)


# survivors of the inequality chain, grouped by (n, h, m)
QUADRUPLES_82 = _expand([
    (23, 1, (13, 14, 15, 16, 17), 3), (23, 1, (16, 17), 4), (24, 1, (14, 15, 16, 17, 18), 2),
    (24, 1, (15, 16, 17, 18), 3), (24, 1, 18, 4), (24, 2, (14, 16, 18), 2),
    (24, 2, (16, 18), 3), (24, 2, 18, 4), (24, 3, (15, 18), 2),
    (24, 3, 18, 3), (24, 3, 18, 4), (24, 4, 16, 2),
    (24, 4, 16, 3), (25, 1, (16, 17, 18), 3), (26, 1, (15, 16, 17, 18, 19), 2),
    (26, 1, (17, 18, 19), 3), (26, 2, (16, 18), 2), (26, 2, 18, 3),
    (27, 1, (17, 18, 19, 20), 3), (27, 1, 20, 4), (27, 3, 18, 3),
    (28, 1, (19, 20, 21), 2), (28, 1, (20, 21), 3), (28, 2, 20, 2),
    (28, 2, 20, 3), (28, 4, 20, 2), (29, 1, (20, 21), 3),
    (30, 1, (19, 20, 21, 22), 2), (30, 1, (21, 22), 3), (30, 2, (20, 22), 2),
    (30, 2, 22, 3), (30, 3, 21, 2), (31, 1, (22, 23), 3),
    (33, 1, 24, 3), (34, 1, (23, 24, 25), 2), (34, 2, 24, 2),
    (35, 1, 26, 3), (36, 1, 27, 2), (38, 1, (27, 28), 2),
    (38, 2, 28, 2), (42, 1, 31, 2),
])

# after the h > 1 eliminations
QUADRUPLES_20 = _expand([
    (24, 1, (15, 16, 17, 18), 3), (24, 1, 18, 4), (25, 1, (16, 17, 18), 3),
    (26, 1, (17, 18, 19), 3), (27, 1, (17, 18, 19, 20), 3), (27, 1, 20, 4),
    (28, 1, (20, 21), 3), (30, 1, (21, 22), 3),
])

# after the profit pipeline
QUADRUPLES_7 = _expand([(24, 1, (17, 18), 3), (25, 1, (17, 18), 3), (26, 1, 19, 3), (27, 1, (19, 20), 3)])

BOUND_LINES = [
    "(24,1,17,3): r<=3, s<=6, t<=6, u>=33",
    "(24,1,18,3): r<=17, s<=34, t<=34, u>=0",
    "(25,1,17,3): r<=2, s<=6, t<=6, u>=34",
    "(25,1,18,3): r<=3, s<=6, t<=6, u>=36",
    "(26,1,19,3): r<=6, s<=6, t<=6, u>=36",
    "(27,1,19,3): r<=2, s<=6, t<=6, u>=40",
    "(27,1,20,3): r<=3, s<=38, t<=38, u>=0",
]

STAGE_COUNTS = {"I4": 309, "I2": 282, "I3": 207, "I5": 188, "I6": 99, "I7": 89, "N32": 82,
                "M2": 43, "IG": 30, "H": 20, "PIPELINE": 7}

NEIGHBOR = {
    4: [[7, 4], [4, 16]],
    6: [[16, 12], [12, 8]],
    7: [[18]],
    8: [[16, 16, 24, 24, 28], [16, 16, 16, 16, 16], [24, 16, 16, 16, 16],
        [24, 16, 16, 24, 24], [28, 16, 16, 24, 24]],
    9: [[18, 18], [18, 36]],
    10: [[40, 40], [40, 24]],
    12: [[32, 48, 82, 36, 60], [48, 32, 70, 60, 36], [82, 70, 48, 72, 60],
         [36, 60, 72, 32, 48], [60, 36, 60, 48, 32]],
    14: [[64, 84], [84, 48]],
    15: [[50]],
}

NEIGHBOR_16 = [
    [64, 64, 112, 112, 64, 96, 112, 112, 112, 112, 136, 136, 128, 148],
    [64, 64, 64, 64, 64, 88, 128, 112, 112, 64, 96, 96, 96, 112],
    [112, 64, 64, 64, 88, 64, 96, 64, 96, 64, 64, 96, 96, 96],
    [112, 64, 64, 64, 88, 64, 96, 96, 64, 64, 64, 64, 96, 112],
    [64, 64, 88, 88, 64, 64, 96, 96, 96, 64, 96, 96, 96, 112],
    [96, 88, 64, 64, 64, 64, 96, 96, 96, 88, 96, 96, 64, 128],
    [112, 128, 96, 96, 96, 96, 64, 64, 64, 112, 64, 112, 96, 112],
    [112, 112, 64, 96, 96, 96, 64, 64, 64, 112, 96, 96, 64, 128],
    [112, 112, 96, 64, 96, 96, 64, 64, 64, 112, 96, 64, 96, 136],
    [112, 64, 64, 64, 64, 88, 112, 112, 112, 64, 64, 64, 64, 64],
    [136, 96, 64, 64, 96, 96, 64, 96, 96, 64, 64, 64, 64, 64],
    [136, 96, 96, 64, 96, 96, 112, 96, 64, 64, 64, 64, 64, 96],
    [128, 96, 96, 96, 96, 64, 96, 64, 96, 64, 64, 64, 64, 88],
    [148, 112, 96, 112, 112, 128, 112, 128, 136, 64, 64, 96, 88, 72],
]

DELTA_ISO_CYCLIC = {4: 7, 5: 12, 6: 8, 7: 18, 8: 16, 9: 18, 10: 24, 11: 48, 12: 32,
                    13: 60, 14: 48, 15: 50, 16: 64, 17: 84, 18: 72, 19: 96, 20: 96,
                    21: 98, 22: 108}
