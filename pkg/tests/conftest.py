import pytest

from q3pen.circuits import PriceScenario


@pytest.fixture
def worked_example() -> PriceScenario:
    """The six-product reference scenario used throughout the suite.

    Buyer meets or beats the seller on five of six products (all but the
    fourth), so the true count is 5 and the threshold of 5 is met.
    """
    return PriceScenario(A=(3, 2, 5, 4, 7, 6), B=(2, 2, 5, 5, 6, 6), epsilon=5)


def random_scenario(rng, max_n=8, max_price=7):
    """Small random scenario for property sweeps."""
    N = int(rng.integers(1, max_n + 1))
    A = tuple(int(x) for x in rng.integers(0, max_price + 1, size=N))
    B = tuple(int(x) for x in rng.integers(0, max_price + 1, size=N))
    eps = int(rng.integers(1, N + 1))
    return PriceScenario(A=A, B=B, epsilon=eps)
