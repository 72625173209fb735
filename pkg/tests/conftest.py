import numpy as np
import pytest

from adet import PrecisionContext, pair_indexing, parse_diagram

# The desk-scale pair list used by the solution/torsion/constancy checks.
ACCEPT_PAIRS = ["A1,A1", "A1,T1", "A1,T2", "A2,A1", "A2,T1", "A1,A2", "A3,A1", "T1,T1"]


def pair(label: str):
    left, right = label.split(",")
    return pair_indexing(parse_diagram(left), parse_diagram(right))


def all_pairs_up_to(max_product: int):
    """Every ordered supported pair with rank product <= max_product."""
    diagrams = []
    for n in range(1, max_product + 1):
        diagrams.append(f"A{n}")
        diagrams.append(f"T{n}")
        if n >= 2:
            diagrams.append(f"D{n}")
        if n in (6, 7, 8):
            diagrams.append(f"E{n}")
    out = []
    for a in diagrams:
        for b in diagrams:
            if parse_diagram(a).rank * parse_diagram(b).rank <= max_product:
                out.append(f"{a},{b}")
    return out


def sample_points(p, count, rng, noise=0.1):
    """Near-positive complex evaluation points (positive reals + imaginary noise)."""
    pts = []
    for _ in range(count):
        re = rng.uniform(0.5, 2.0, p.n)
        im = noise * rng.uniform(-1.0, 1.0, p.n)
        pts.append([complex(a, b) for a, b in zip(re, im)])
    return pts


@pytest.fixture
def ctx128():
    return PrecisionContext(mantissa_bits=128)


@pytest.fixture
def ctx256():
    return PrecisionContext(mantissa_bits=256)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
