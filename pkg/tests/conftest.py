import warnings

import pytest

from redzone import (
    BathtubModel,
    LifetimeDistribution,
    SystemConfig,
    ValidationWarning,
    WeibullTerm,
)


def make_bathtub(useful_rate=0.01, burnin=(0.05, 0.5), wearout=(1e-6, 3.0),
                 th1=20.0, th2=80.0, th3=40.0) -> BathtubModel:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidationWarning)
        return BathtubModel(
            useful_rate=useful_rate,
            burnin=WeibullTerm(*burnin),
            wearout=WeibullTerm(*wearout),
            th1=th1, th2=th2, th3=th3,
        )


def make_flat_bathtub(useful_rate=0.01, th1=20.0, th2=180.0, th3=40.0) -> BathtubModel:
    """Constant-rate model: burn-in and wear-out amplitudes zero."""
    return BathtubModel(
        useful_rate=useful_rate,
        burnin=WeibullTerm(0.0, 0.5),
        wearout=WeibullTerm(0.0, 3.0),
        th1=th1, th2=th2, th3=th3,
    )


def make_redzone_system(delta: float, lab: float = 2.0, mean: float = 208.0) -> SystemConfig:
    """End-of-life study configuration with a slowly decaying burn-in term."""
    model = make_bathtub(useful_rate=0.01, burnin=(0.9, 0.1), wearout=(1e-6, 3.0),
                         th1=20.0, th2=180.0, th3=10.0)
    return SystemConfig(hazard=model, unit_lifetime=LifetimeDistribution(mean, delta),
                        lab_burnin=lab)


@pytest.fixture
def example_bathtub() -> BathtubModel:
    return make_bathtub()


@pytest.fixture
def flat_bathtub() -> BathtubModel:
    return make_flat_bathtub()
