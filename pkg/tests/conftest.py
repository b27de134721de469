import mpmath as mp
import pytest


def hermite_oracle(n, x, dps=50):
    """h_n(x) from mpmath's Hermite polynomial at ``dps`` digits (an mpf)."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        norm = mp.sqrt(mp.mpf(2) ** n * mp.factorial(n) * mp.sqrt(mp.pi))
        return mp.hermite(n, x) * mp.exp(-x * x / 2) / norm


def scaled_relative_error(value, oracle):
    """|v - o|/|o| for a HermiteValue v, compared without leaving extended precision."""
    with mp.workdps(40):
        v = mp.mpf(value.mantissa) * mp.mpf(2) ** value.exponent
        if oracle == 0:
            return float(abs(v))
        return float(abs(v - oracle) / abs(oracle))


@pytest.fixture
def oracle():
    return hermite_oracle
