import numpy as np
import pytest

from negdimcd import ScalarFunction1D


def quadratic(curv: float = 1.0) -> ScalarFunction1D:
    """Potential curv*x^2/2 with analytic derivatives."""
    return ScalarFunction1D(
        fn=lambda x: curv * np.asarray(x, dtype=float) ** 2 / 2.0,
        d1=lambda x: curv * np.asarray(x, dtype=float),
        d2=lambda x: curv * np.ones_like(np.asarray(x, dtype=float)),
        name=f"{curv}*x^2/2")


def linear(slope: float) -> ScalarFunction1D:
    return ScalarFunction1D(
        fn=lambda x: slope * np.asarray(x, dtype=float),
        d1=lambda x: slope * np.ones_like(np.asarray(x, dtype=float)),
        d2=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        name=f"{slope}*x")


def log_fn(scale: float = 1.0) -> ScalarFunction1D:
    """scale*log(x) on (0, inf)."""
    return ScalarFunction1D(
        fn=lambda x: scale * np.log(np.asarray(x, dtype=float)),
        d1=lambda x: scale / np.asarray(x, dtype=float),
        d2=lambda x: -scale / np.asarray(x, dtype=float) ** 2,
        name=f"{scale}*log(x)")


@pytest.fixture(scope="session")
def quad_flow():
    """Descent curve of x^2/2 from x0=1 over [0, 2] at step 1e-3."""
    from negdimcd import integrate_flow
    return integrate_flow(quadratic(1.0), 1.0, 2.0, 1e-3)
