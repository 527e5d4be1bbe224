import numpy as np
import pytest

from ssrjd import (DiscountCurve, IntensityParams, PaymentSchedule, ShiftFunction,
                   SwaptionSpec)


@pytest.fixture(scope="session")
def table1_params():
    return IntensityParams(y0=0.005, kappa=0.196, mu=0.065, nu=0.1594,
                           alpha=0.5, gamma=0.025)


@pytest.fixture(scope="session")
def fig2_params():
    return IntensityParams(y0=0.005, kappa=0.229, mu=0.0134, nu=0.078,
                           alpha=1.5, gamma=0.0067)


@pytest.fixture(scope="session")
def model1():
    return IntensityParams(y0=0.0007, kappa=0.4066, mu=0.0515, nu=0.1507,
                           alpha=0.5009, gamma=0.0050)


@pytest.fixture(scope="session")
def model2():
    return IntensityParams(y0=1.3e-06, kappa=0.4851, mu=0.0457, nu=0.2000,
                           alpha=0.5009, gamma=0.0050)


@pytest.fixture(scope="session")
def model3():
    return IntensityParams(y0=0.005, kappa=0.2281, mu=0.0134, nu=0.0782,
                           alpha=1.5000, gamma=0.0067)


@pytest.fixture(scope="session")
def bench_models(model1, model2, model3):
    return {"model1": model1, "model2": model2, "model3": model3}


@pytest.fixture(scope="session")
def flat_curve():
    return DiscountCurve.flat(0.03)


@pytest.fixture(scope="session")
def zero_shift():
    return ShiftFunction.zero()


@pytest.fixture(scope="session")
def fwd_schedule():
    """Quarterly 1y-into-4y protection schedule."""
    return PaymentSchedule.regular(1.0, 5.0, 4)


@pytest.fixture(scope="session")
def fig2_spec(fwd_schedule):
    return SwaptionSpec(maturity=1.0, schedule=fwd_schedule, strike=0.0204, lgd=0.7)


def random_params(rng: np.random.Generator) -> IntensityParams:
    """Draws roughly spanning the published parameter ranges."""
    return IntensityParams(
        y0=float(rng.uniform(1e-4, 0.02)),
        kappa=float(rng.uniform(0.15, 0.6)),
        mu=float(rng.uniform(0.01, 0.08)),
        nu=float(rng.uniform(0.05, 0.25)),
        alpha=float(rng.uniform(0.0, 2.0)),
        gamma=float(rng.uniform(0.003, 0.03)),
    )
