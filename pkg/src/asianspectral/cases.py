"""Built-in benchmark contracts, stored by their market parameters only."""

from .pricer import MarketParams

# (r, sigma, T, S0, K)
CASES = {
    1: MarketParams(0.02, 0.10, 1.0, 2.0, 2.0),
    2: MarketParams(0.18, 0.30, 1.0, 2.0, 2.0),
    3: MarketParams(0.0125, 0.25, 2.0, 2.0, 2.0),
    4: MarketParams(0.05, 0.50, 1.0, 1.9, 2.0),
    5: MarketParams(0.05, 0.50, 1.0, 2.0, 2.0),
    6: MarketParams(0.05, 0.50, 1.0, 2.1, 2.0),
    7: MarketParams(0.05, 0.50, 2.0, 2.0, 2.0),
}

# Reference Laguerre-quadrature call and put values used as regression targets.
# Case 1 is the 200-node figure.
REFERENCE_CALL = {
    1: 0.0559968559,
    2: 0.2183875466,
    3: 0.1722687384,
    4: 0.1931459862,
    5: 0.2463981292,
    6: 0.3062092452,
    7: 0.3481391471,
}
REFERENCE_PUT = {2: 0.0585969851, 3: 0.1476815247}

# Reference Monte Carlo values (mean, standard error),
# kept as context; the acceptance gates use this package's own simulator.
REFERENCE_MC = {
    1: (0.055929, 0.000024),
    2: (0.21704, 0.00083),
    3: (0.173279, 0.000089),
    4: (0.1922, 0.0011),
    5: (0.2450, 0.0013),
    6: (0.3055, 0.0014),
    7: (0.3496, 0.0020),
}


def parse_case_range(text):
    """'2-3' -> [2, 3]; '1,4,6' -> [1, 4, 6]; '1-7' -> all. Raises ValueError."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            raise ValueError("empty case specification")
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-", 1))
            if lo > hi:
                raise ValueError(f"bad case range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    for c in out:
        if c not in CASES:
            raise ValueError(f"unknown case {c}; valid cases are 1-{len(CASES)}")
    return sorted(set(out))
