import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_orthogonal(Q, rng, k=4):
    """Product of k random reflections of the form Q in well-conditioned mirrors."""
    m = np.eye(Q.shape[0])
    for _ in range(k):
        while True:
            w = rng.normal(size=Q.shape[0])
            if abs(w @ Q @ w) > 0.5 * (w @ w):
                break
        m = m @ (np.eye(Q.shape[0]) - 2.0 * np.outer(w, Q @ w) / (w @ Q @ w))
    return m


def random_on_quadric(Q, rng):
    while True:
        a, b = rng.normal(size=Q.shape[0]), rng.normal(size=Q.shape[0])
        qa, qb, qc = b @ Q @ b, 2 * a @ Q @ b, a @ Q @ a
        d = qb * qb - 4 * qa * qc
        if d > 0 and abs(qa) > 1e-3:
            return a + (-qb + np.sqrt(d)) / (2 * qa) * b


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
