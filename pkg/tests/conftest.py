"""Shared fixtures and independent oracles for the test suite."""

import random

import pytest

from ffdioph import FieldSpec, Laurent, parse_laurent
from ffdioph.algebra.poly import Poly, ops_for


@pytest.fixture(scope="session")
def F2():
    return FieldSpec.get(2)


@pytest.fixture(scope="session")
def F3():
    return FieldSpec.get(3)


@pytest.fixture(scope="session")
def F9():
    return FieldSpec.get(9)


def random_poly(field, max_deg, rng, nonzero=False):
    while True:
        coeffs = [rng.randrange(field.q) for _ in range(max_deg + 1)]
        p = Poly(field, coeffs)
        if not nonzero or not p.is_zero():
            return p


def random_laurent(field, lead, floor, rng, exact=False):
    coeffs = [rng.randrange(field.q) for _ in range(lead - floor + 1)]
    return Laurent(field, coeffs, lead, exact=exact,
                   floor=None if exact else floor)


def quadratic_point(field, floor):
    """The point with every partial quotient T: the root of y = 1/(T+y)."""
    T = parse_laurent("T", field)
    z = parse_laurent("T^-1", field)
    for _ in range(2 * (-floor) + 8):
        z = (T + z).inverse(floor=floor - 2)
    return z.forget_below(floor)


def liouville_point(field, floor):
    """Partial sums of sum_k T**(-k!) listed down to the floor."""
    import math

    digits = {}
    k = 1
    while math.factorial(k) <= -floor:
        digits[-math.factorial(k)] = 1
        k += 1
    vals = [digits.get(d, 0) for d in range(-1, floor - 1, -1)]
    return Laurent(field, vals, -1, exact=False, floor=floor)


def naive_poly_mul(field, a, b):
    """Independent schoolbook convolution over raw coefficient tuples."""
    ops = ops_for(field)
    ca, cb = ops.to_coeffs(a.raw), ops.to_coeffs(b.raw)
    if not ca or not cb:
        return Poly.zero(field)
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return Poly(field, out)


def seeded(n=0):
    return random.Random(20240 + n)
