import cmath
import math
import random

import mpmath
import pytest

from kzmonodromy.specfn import EULER_GAMMA, PoleError, digamma, gamma, log_gamma, recip_gamma


def _sample(count=100, seed=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-8, 8), rng.uniform(-10, 10))
        if abs(z.imag) < 0.05 and abs(z.real - round(z.real)) < 0.05:
            continue
        out.append(z)
    return out


@pytest.mark.parametrize("z, expected", [(1, 1), (0.5, math.sqrt(math.pi)), (5, 24), (2, 1)])
def test_gamma_values(z, expected):
    assert abs(gamma(z) - expected) <= 1e-12 * abs(expected)


@pytest.mark.parametrize("z", [0, -1, -3, -10])
def test_gamma_pole_raises(z):
    with pytest.raises(PoleError):
        gamma(z)


@pytest.mark.parametrize("z", [0, -1, -3, -10])
def test_recip_gamma_zero_at_poles(z):
    assert recip_gamma(z) == 0


def test_recip_gamma_at_two():
    assert abs(recip_gamma(2) - 1) < 1e-14


@pytest.mark.parametrize(
    "z, expected",
    [(1, -EULER_GAMMA), (2, 1 - EULER_GAMMA), (0.5, -EULER_GAMMA - 2 * math.log(2))],
)
def test_digamma_values(z, expected):
    assert abs(digamma(z) - expected) < 1e-12


def test_digamma_pole_raises():
    with pytest.raises(PoleError):
        digamma(-2)


def test_reflection_formula():
    for z in _sample():
        val = gamma(z) * gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        assert abs(val - 1) < 1e-10


def test_recurrence():
    for z in _sample():
        assert abs(gamma(z + 1) - z * gamma(z)) <= 1e-11 * abs(z * gamma(z))


def test_recip_gamma_inverts_gamma():
    for z in _sample(30):
        assert abs(recip_gamma(z) * gamma(z) - 1) < 1e-11


def test_gamma_matches_mpmath():
    rng = random.Random(11)
    for _ in range(60):
        z = complex(rng.uniform(-30, 30), rng.uniform(-20, 20))
        if abs(z.imag) < 1e-3 and abs(z.real - round(z.real)) < 1e-3:
            continue
        ref = complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))
        assert abs(gamma(z) - ref) <= 1e-12 * abs(ref) * 10


def test_digamma_matches_mpmath():
    rng = random.Random(12)
    for _ in range(60):
        z = complex(rng.uniform(-30, 30), rng.uniform(-20, 20))
        if abs(z.imag) < 1e-3 and abs(z.real - round(z.real)) < 1e-3:
            continue
        ref = complex(mpmath.digamma(mpmath.mpc(z.real, z.imag)))
        assert abs(digamma(z) - ref) <= 1e-10 * max(1, abs(ref))


def test_log_gamma_exponentiates_to_gamma():
    for z in _sample(30):
        assert abs(cmath.exp(log_gamma(z)) - gamma(z)) <= 1e-10 * abs(gamma(z))
