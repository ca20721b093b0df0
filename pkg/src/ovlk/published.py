"""Published reference values for the four three-population scenarios.

``SCENARIOS`` holds the population parameters with the printed overlap
(3 decimals). ``TABLE2`` holds the printed estimator summaries, keyed by
scenario, the printed size-cell label, metric and estimator label.

The unbalanced cell is printed as (100,150,200), but its numbers are only
reproducible with sizes (50,100,150) and r = 50; ``SIMULATED_SIZES`` maps
each printed label to the sizes that are actually simulated.
"""

SCENARIOS = {
    "S1": (((0.0, 0.95), (0.0, 1.0), (0.0, 1.1)), 0.929),
    "S2": (((-0.1, 1.0), (0.0, 1.0), (0.1, 1.0)), 0.689),
    "S3": (((-0.5, 1.0), (0.0, 0.5), (0.75, 1.0)), 0.469),
    "S4": (((-1.0, 1.5), (0.0, 0.8), (2.0, 0.4)), 0.074),
}

BALANCED = "(50,50,50)"
UNBALANCED = "(100,150,200)"

SIMULATED_SIZES = {
    BALANCED: (50, 50, 50),
    UNBALANCED: (50, 100, 150),
}

ESTIMATORS = ("comparator", "simpson(1)", "simpson(2)", "simpson(ml)")
METRICS = ("AV", "RB", "RRMSE", "EFF")


def _block(av, rb, rrmse, eff):
    return {
        "AV": dict(zip(ESTIMATORS, av)),
        "RB": dict(zip(ESTIMATORS, rb)),
        "RRMSE": dict(zip(ESTIMATORS, rrmse)),
        "EFF": dict(zip(ESTIMATORS, eff)),
    }


TABLE2 = {
    "S1": {
        BALANCED: _block(
            (0.85073, 0.85029, 0.84800, 0.85031),
            (-0.08425, -0.08473, -0.08719, -0.08471),
            (0.10149, 0.10156, 0.10302, 0.10155),
            (1.00000, 0.99888, 0.97052, 0.99888),
        ),
        UNBALANCED: _block(
            (0.87408, 0.87370, 0.87093, 0.87373),
            (-0.05912, -0.05953, -0.06251, -0.05949),
            (0.07673, 0.07700, 0.07838, 0.07699),
            (1.00000, 0.99219, 0.95849, 0.99219),
        ),
    },
    "S2": {
        BALANCED: _block(
            (0.84738, 0.84669, 0.84441, 0.84672),
            (0.22986, 0.22887, 0.22555, 0.22891),
            (0.24319, 0.24214, 0.23861, 0.24218),
            (1.00000, 1.00898, 1.03885, 1.00862),
        ),
        UNBALANCED: _block(
            (0.87485, 0.87450, 0.87165, 0.87454),
            (0.26974, 0.26924, 0.26510, 0.26929),
            (0.27789, 0.27735, 0.27306, 0.27740),
            (1.00000, 1.00383, 1.03559, 1.00356),
        ),
    },
    "S3": {
        BALANCED: _block(
            (0.45462, 0.45375, 0.45372, 0.45375),
            (-0.0307, -0.0325, -0.0326, -0.0325),
            (0.12102, 0.11762, 0.11758, 0.11759),
            (1.00000, 1.05921, 1.05921, 1.05921),
        ),
        UNBALANCED: _block(
            (0.45879, 0.45902, 0.45899, 0.45903),
            (-0.02176, -0.02128, -0.02135, -0.02126),
            (0.08720, 0.08474, 0.08471, 0.08473),
            (1.00000, 1.05696, 1.05696, 1.05696),
        ),
    },
    "S4": {
        BALANCED: _block(
            (0.06711, 0.06835, 0.06863, 0.06842),
            (-0.0931, -0.07637, -0.07251, -0.07544),
            (0.30476, 0.26544, 0.26616, 0.26499),
            (1.00000, 1.30769, 1.30769, 1.34211),
        ),
        UNBALANCED: _block(
            (0.06940, 0.06919, 0.07089, 0.06936),
            (-0.06216, -0.0650, -0.0421, -0.0627),
            (0.25685, 0.22058, 0.22370, 0.22117),
            (1.00000, 1.33333, 1.33333, 1.33333),
        ),
    },
}


def cell_label(sizes):
    """Printed label for simulated sizes, or the sizes themselves if unknown."""
    sizes = tuple(sizes)
    for label, sim in SIMULATED_SIZES.items():
        if sim == sizes:
            return label
    return "(" + ",".join(str(n) for n in sizes) + ")"
