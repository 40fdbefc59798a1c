from fractions import Fraction

import pytest

from kneserlab import QuadIrr, TorusInterval, golden_rotation, sqrt_rotation


@pytest.fixture
def golden() -> QuadIrr:
    return golden_rotation()


@pytest.fixture
def sqrt2m1() -> QuadIrr:
    return sqrt_rotation(2)


@pytest.fixture
def arc_3_10() -> TorusInterval:
    return TorusInterval(0, Fraction(3, 10))


class ScaledRationalOracle:
    """High-precision rational stand-in for (p + q*sqrt(d))/r.

    sqrt(d) is replaced by isqrt(d * B^2)/B with B = 10^digits, giving a
    rational within 1/B of the true value; fractional-part interval
    tests are then pure integer comparisons.  Decisions are safe as long
    as no orbit point comes within n/B of an arc endpoint, which for the
    scales tested is astronomically far from tight.
    """

    def __init__(self, alpha: QuadIrr, digits: int = 200):
        import math
        B = 10 ** digits
        s = math.isqrt(alpha.d * B * B)
        # alpha ~ (p*B + q*s) / (r*B)
        self.num = alpha.p * B + alpha.q * s
        self.den = alpha.r * B

    def frac_in(self, n: int, lo: Fraction, hi: Fraction) -> bool:
        x = (n * self.num) % self.den  # {n*alpha} = x / den
        lo_ok = x * lo.denominator >= lo.numerator * self.den
        hi_ok = x * hi.denominator <= hi.numerator * self.den
        if lo <= hi:
            return lo_ok and hi_ok
        return lo_ok or hi_ok


@pytest.fixture
def oracle_factory():
    return ScaledRationalOracle
