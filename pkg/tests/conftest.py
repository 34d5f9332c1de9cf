import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tsverify.timescale import Box3, TimeScale

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def unit_box(points=(0.0, 1.0, 2.0)):
    """Same finite scale on all three axes, full span, base at the min."""
    ts = TimeScale.finite(points)
    lo, hi = float(min(points)), float(max(points))
    return Box3([ts, ts, ts], (lo,) * 3, (hi,) * 3, (lo,) * 3)


def random_scale(rng, max_points=12):
    """One random scale of a random kind, kept at desk-scale magnitudes."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        count = int(rng.integers(4, max_points + 1))
        pts = np.unique(np.round(rng.uniform(-2.0, 2.0, size=count), 2))
        if pts.size < 2:
            pts = np.array([-1.0, 1.0])
        return TimeScale.finite(pts)
    if kind == 1:
        start = round(float(rng.uniform(-1.0, 0.0)), 2)
        step = float(rng.choice([0.125, 0.25, 0.5]))
        n = int(rng.integers(4, 11))
        return TimeScale.uniform(start, start + step * (n - 1), step)
    start = float(rng.uniform(0.5, 1.0))
    ratio = float(rng.uniform(1.05, 1.25))
    count = int(rng.integers(4, 9))
    return TimeScale.geometric(start, ratio, count)


def random_box(rng, max_points=12):
    """Full-span box over three random scales, base strictly below max."""
    scales = [random_scale(rng, max_points) for _ in range(3)]
    a = tuple(ts.min for ts in scales)
    b = tuple(ts.max for ts in scales)
    base = tuple(
        float(ts.points[int(rng.integers(0, len(ts) - 1))]) for ts in scales
    )
    return Box3(scales, a, b, base)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240819))
