import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import interfpdf as ip

settings.register_profile(
    "ci",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


DB_GRID = np.linspace(-10.0, 20.0, 16)
THRESHOLDS = tuple(10.0 ** (db / 10.0) for db in DB_GRID)

FADING_COMBOS = {
    "nak-sig/nak-int": (ip.Nakagami(m=10.0, pr=1.0), ip.Nakagami(m=10.0, pr=1.0)),
    "ray-sig/ray-int": (ip.Rayleigh(mu=1.0), ip.Rayleigh(mu=1.0)),
    "ray-sig/nak-int": (ip.Rayleigh(mu=1.0), ip.Nakagami(m=10.0, pr=1.0)),
    "nak-sig/ray-int": (ip.Nakagami(m=10.0, pr=1.0), ip.Rayleigh(mu=1.0)),
}


def _run_scenario(eta: int, seed: int):
    net = ip.NetworkParams(lam=2.0, eta=eta)
    out = {}
    for name, (signal, interference) in FADING_COMBOS.items():
        sim = ip.SimConfig(
            net=net,
            interference_fading=interference,
            signal_fading=signal,
            window_km=40.0,
            trials=2000,
            seed=seed,
            serving_distance_km=0.25,
            noise=0.0,
        )
        out[name] = (sim, ip.run_trials(sim))
    return net, out


@pytest.fixture(scope="session")
def fig2_runs():
    """eta=3 scenario: all four fading combinations, 2000 trials each."""
    return _run_scenario(3, seed=2026)


@pytest.fixture(scope="session")
def fig3_runs():
    """eta=6 scenario: all four fading combinations, 2000 trials each."""
    return _run_scenario(6, seed=2027)


@pytest.fixture(scope="session")
def eta4_rayleigh_run():
    """The exactly-solvable benchmark field: eta=4, Rayleigh, lam=2."""
    net = ip.NetworkParams(lam=2.0, eta=4)
    sim = ip.SimConfig(
        net=net,
        interference_fading=ip.Rayleigh(mu=1.0),
        signal_fading=ip.Rayleigh(mu=1.0),
        window_km=40.0,
        trials=2000,
        seed=424242,
        serving_distance_km=0.25,
        noise=0.0,
    )
    return net, sim, ip.run_trials(sim)
