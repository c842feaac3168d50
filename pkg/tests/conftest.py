"""Shared oracles and generators for the test suite.

The dense oracle solves the generalized eigenvalue problem J y = z D y by
Cholesky reduction and a dense symmetric eigensolver, independently of the
sign-count bisection used by the library.
"""

import numpy as np
import pytest

from peakons import build_pencil, validate


def dense_eigenvalues(m):
    """All eigenvalues via numpy on the dense pencil; oracle only."""
    p = build_pencil(m)
    L = np.linalg.cholesky(p.J)
    y = np.linalg.solve(L, p.D)
    c = np.linalg.solve(L, y.T).T
    nu = np.linalg.eigvalsh((c + c.T) / 2.0)
    return sorted(1.0 / v for v in nu)


def random_measure(rng, n=None, signs="mixed", with_v=True, span=4.0):
    """Random valid measure: min gap 0.05, weights bounded away from 0."""
    if n is None:
        n = int(rng.integers(1, 7))
    xs = np.sort(rng.uniform(-span, span, n))
    for i in range(1, n):
        if xs[i] - xs[i - 1] < 0.05:
            xs[i] = xs[i - 1] + 0.05 + rng.uniform(0.0, 0.1)
    triples = []
    for x in xs:
        v = float(rng.uniform(0.2, 1.5)) if with_v and rng.random() < 0.4 else 0.0
        w = float(rng.uniform(0.2, 2.5))
        if signs == "mixed" and rng.random() < 0.5:
            w = -w
        if v > 0.0 and rng.random() < 0.3:
            w = 0.0
        triples.append((float(x), w, v))
    return validate(triples)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
