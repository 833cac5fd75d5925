import random
from fractions import Fraction

import pytest

from qrucible.cyclotomic import CycRat
from qrucible.series import QSeries, SeriesContext


def rand_cycrat(rng: random.Random, height: int = 6) -> CycRat:
    def frac():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    return CycRat(frac(), frac())


def rand_series(rng: random.Random, ctx: SeriesContext, max_val: int = 3) -> QSeries:
    val = rng.randint(-max_val, max_val)
    n = rng.randint(0, min(8, ctx.order - val))
    coeffs = [rand_cycrat(rng, 4) for _ in range(n)]
    return QSeries(ctx, val, coeffs, ctx.order)


@pytest.fixture
def rng():
    return random.Random(20260808)
