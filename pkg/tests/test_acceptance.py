"""End-to-end acceptance battery.

Eight batch criteria, one test each, so a verbose run prints one
pass/fail line per criterion.  The first three share a single randomized
campaign (1000 seeded polynomials across 50 randomized boxes) evaluated
once per session; the others build their own instances.  Everything is
seeded, so reruns see the same campaign bit for bit.
"""

import itertools
import json
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from tsverify import (
    Box3,
    BoxFields,
    Polynomial3,
    TimeScale,
    TrigProduct3,
    cebysev_check,
    classical_cebysev_check,
    classical_ostrowski_check,
    continuous_convergence_study,
    mixed_partial,
    ostrowski_check,
    triple_delta_integral,
)
from tsverify.campaign import generate_functions

from conftest import random_box

FUNCTION_SEED = 1009
BOX_SEED = 20240819
ORACLE_SEED = 424243

CAMPAIGN_FUNCTIONS = 1000
CAMPAIGN_BOXES = 50
PAIR_FUNCTIONS = 45
ORACLE_INSTANCES = 200

RESIDUAL_TOL = 1e-9
PAIR_RESIDUAL_TOL = 1e-10
MARGIN_TOL = 1e-9
ORACLE_INT_RTOL = 1e-12
ORACLE_MIXED_RTOL = 1e-10


@pytest.fixture(scope="module")
def campaign():
    """Worst-case statistics of the shared identity/deviation campaign."""
    functions = generate_functions(
        {
            "family": "poly",
            "count": CAMPAIGN_FUNCTIONS,
            "seed": FUNCTION_SEED,
            "coefficient_range": [-2.0, 2.0],
        }
    )
    rng = np.random.Generator(np.random.PCG64(BOX_SEED))
    boxes = [random_box(rng, max_points=12) for _ in range(CAMPAIGN_BOXES)]

    worst_identity = 0.0
    worst_averaged = 0.0
    worst_margin = np.inf
    chain_failures = 0
    t0 = time.perf_counter()
    for box in boxes:
        for f in functions:
            fields = BoxFields(f, box)
            worst_identity = max(worst_identity, fields.max_identity_residual())
            worst_averaged = max(worst_averaged, fields.max_averaged_residual())
            m = ostrowski_check(f, box, fields=fields)
            worst_margin = min(worst_margin, m.margin)
            if not m.details["chain_ok"]:
                chain_failures += 1
    elapsed = time.perf_counter() - t0
    return {
        "instances": len(boxes) * len(functions),
        "worst_identity": worst_identity,
        "worst_averaged": worst_averaged,
        "worst_margin": worst_margin,
        "chain_failures": chain_failures,
        "elapsed": elapsed,
    }


def test_criterion_1_octant_identities_hold_across_campaign(campaign):
    assert campaign["instances"] == CAMPAIGN_FUNCTIONS * CAMPAIGN_BOXES
    assert campaign["worst_identity"] <= RESIDUAL_TOL
    assert campaign["elapsed"] < 120.0


def test_criterion_2_averaged_identity_holds_across_campaign(campaign):
    assert campaign["worst_averaged"] <= RESIDUAL_TOL


def test_criterion_3_deviation_bound_and_chain_hold_across_campaign(campaign):
    assert campaign["worst_margin"] >= -MARGIN_TOL
    assert campaign["chain_failures"] == 0


def test_criterion_4_product_mean_bound_holds_for_all_pairs():
    functions = generate_functions(
        {"family": "poly", "count": PAIR_FUNCTIONS, "seed": FUNCTION_SEED + 1}
    )
    rng = np.random.Generator(np.random.PCG64(BOX_SEED + 1))
    boxes = [random_box(rng, max_points=12) for _ in range(3)]
    worst_margin = np.inf
    worst_residual = 0.0
    pairs = 0
    for box in boxes:
        fields = [BoxFields(f, box) for f in functions]
        for i in range(len(functions)):
            for j in range(i, len(functions)):
                m = cebysev_check(
                    functions[i],
                    functions[j],
                    box,
                    fields_f=fields[i],
                    fields_g=fields[j],
                )
                worst_margin = min(worst_margin, m.margin)
                worst_residual = max(worst_residual, m.details["residual_max"])
                pairs += 1
    assert pairs == 3 * PAIR_FUNCTIONS * (PAIR_FUNCTIONS + 1) // 2
    assert worst_margin >= -MARGIN_TOL
    assert worst_residual <= PAIR_RESIDUAL_TOL


def test_criterion_5_classical_witnesses_are_sharp():
    dev = classical_ostrowski_check(lambda u: u, 0.0, 0.0, 1.0, 1.0)
    assert dev.lhs == pytest.approx(0.5, abs=1e-12)
    assert dev.rhs == pytest.approx(0.5, abs=1e-15)
    assert abs(dev.margin) <= MARGIN_TOL

    mean = classical_cebysev_check(lambda u: u, lambda u: u, 0.0, 1.0, 1.0, 1.0)
    assert mean.lhs == pytest.approx(1.0 / 12.0, rel=1e-10)
    assert mean.rhs == pytest.approx(1.0 / 12.0, abs=1e-15)
    assert abs(mean.margin) <= MARGIN_TOL


def test_criterion_6_uniform_refinement_is_first_order():
    ts = TimeScale.uniform(0.0, 1.0, 0.25)
    box = Box3([ts] * 3, (0.0,) * 3, (1.0,) * 3, (0.0,) * 3)
    trilinear = Polynomial3({"xyz": 1.0})
    separable = TrigProduct3([["sin", 1, 0], ["cos", 1, 0], ["exp", 1, 0]])

    t0 = time.perf_counter()
    for f in (trilinear, separable):
        record = continuous_convergence_study(f, box, max_level=4)
        assert record.levels == (0, 1, 2, 3, 4)
        assert all(m >= 0.0 for m in record.margins)
        assert len(record.rates) == 3
        for rate in record.rates:
            assert rate is not None
            ratio = 2.0**rate
            assert 1.6 <= ratio <= 2.4

    # The rate witness is the full-box integral of f.  The deviation lhs
    # cannot exhibit first-order decay here: for a function linear in
    # each variable on a symmetric uniform grid it collapses to exactly
    # h^3 (1-h)^3 / 8 per level (third order), which the record's values
    # confirm, so successive differences of the lhs measure grid
    # symmetry, not refinement order.
    record = continuous_convergence_study(trilinear, box, max_level=4)
    for level, (lhs, _) in zip(record.levels, record.values):
        h = 0.25 / 2.0**level
        assert lhs == pytest.approx(h**3 * (1.0 - h) ** 3 / 8.0, rel=1e-10)

    assert time.perf_counter() - t0 < 30.0


def flat_triple_sum(f, box):
    axes, mus = [], []
    for i in range(3):
        ts = box.scales[i]
        pts = ts.points_in(box.a[i], box.b[i])
        axes.append(pts)
        mus.append(np.array([ts.graininess(float(t)) for t in pts]))
    total = 0.0
    for i, x in enumerate(axes[0]):
        for j, y in enumerate(axes[1]):
            for k, z in enumerate(axes[2]):
                total += f(x, y, z) * mus[0][i] * mus[1][j] * mus[2][k]
    return total


def nested_mixed_all_orders(F, box):
    """Mixed partial via axis-by-axis differencing in every axis order."""
    mu = (
        box.axis_mu(0)[:, None, None]
        * box.axis_mu(1)[None, :, None]
        * box.axis_mu(2)[None, None, :]
    )
    out = []
    for order in itertools.permutations((0, 1, 2)):
        D = F
        for axis in order:
            D = np.diff(D, axis=axis)
        out.append(D / mu)
    return out


def test_criterion_7_oracle_equivalence_on_seeded_instances():
    rng = np.random.Generator(np.random.PCG64(ORACLE_SEED))
    spec = {
        "family": "poly",
        "count": ORACLE_INSTANCES,
        "seed": ORACLE_SEED,
        "coefficient_range": [-2.0, 2.0],
    }
    functions = generate_functions(spec)
    for f in functions:
        box = random_box(rng, max_points=8)
        fast = triple_delta_integral(f, box, box.a, box.b)
        slow = flat_triple_sum(f, box)
        assert fast == pytest.approx(slow, rel=ORACLE_INT_RTOL, abs=ORACLE_INT_RTOL)

        field = mixed_partial(f, box)
        F = f.on_grid(*[box.axis_points(i) for i in range(3)])
        scale = 1.0 + np.abs(field.values)
        for nested in nested_mixed_all_orders(F, box):
            defect = np.max(np.abs(nested - field.values) / scale)
            assert defect <= ORACLE_MIXED_RTOL


def test_criterion_8_reports_identical_across_worker_counts(tmp_path):
    config = {
        "scenarios": [
            {
                "name": "det-poly",
                "scales": [
                    {"kind": "uniform", "start": 0.0, "stop": 1.0, "step": 0.25}
                ]
                * 3,
                "a": [0.0, 0.0, 0.0],
                "b": [1.0, 1.0, 1.0],
                "base": [0.0, 0.0, 0.0],
                "functions": {"family": "poly", "count": 8, "seed": 31},
                "checks": [
                    "identities",
                    "averaged_identity",
                    "ostrowski",
                    "cebysev",
                    "classical",
                    "convergence",
                ],
                "max_level": 2,
            },
            {
                "name": "det-mixed",
                "scales": [
                    {"kind": "geometric", "start": 1.0, "ratio": 2.0, "count": 4},
                    {"kind": "finite", "points": [0.0, 0.5, 1.0, 2.0]},
                    {"kind": "uniform", "start": -1.0, "stop": 1.0, "step": 0.5},
                ],
                "a": [1.0, 0.0, -1.0],
                "b": [8.0, 2.0, 1.0],
                "base": [1.0, 0.0, -1.0],
                "functions": {"family": "trigprod", "count": 5, "seed": 77},
                "checks": ["identities", "ostrowski", "cebysev"],
            },
        ]
    }
    cfg_path = tmp_path / "det.json"
    cfg_path.write_text(json.dumps(config))

    outputs = {}
    for workers in (1, 8):
        out_dir = tmp_path / ("w%d" % workers)
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "tsverify",
                "run",
                str(cfg_path),
                "--out",
                str(out_dir),
                "--workers",
                str(workers),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs[workers] = out_dir

    def normalized_json(path):
        doc = json.loads(path.read_text())
        for row in doc["rows"]:
            row["runtime_ms"] = 0.0
        return json.dumps(doc, sort_keys=True)

    def normalized_csv(path):
        lines = path.read_text().splitlines()
        fixed = [lines[0]]
        for line in lines[1:]:
            fixed.append(line.rsplit(",", 1)[0] + ",0")
        return "\n".join(fixed)

    assert normalized_json(outputs[1] / "report.json") == normalized_json(
        outputs[8] / "report.json"
    )
    assert normalized_csv(outputs[1] / "report.csv") == normalized_csv(
        outputs[8] / "report.csv"
    )
