"""Canonical regression instances, computed by the slow routes only.

Every quantity here is produced by the literal constructions: pointwise
corner sums, iterated one-axis integrals, Romberg for nothing (no
classical cases live here).  The fast prefix-sum engine is deliberately
not imported, so a regenerated fixture file is an independent anchor
the production code is tested against.
"""

import json
import math
import os

from .calculus import mixed_partial, triple_delta_integral
from .functions import from_literal
from .identities import OCTANTS, functional_A, functional_B, octant_identity_rhs
from .timescale import Box3, TimeScale

FIXTURE_FILE = "core_instances.json"

#: Small instances with pencil-checkable structure.
INSTANCES = (
    {
        "name": "unit-xyz",
        "scales": [{"kind": "finite", "points": [0, 1, 2]}] * 3,
        "a": [0, 0, 0],
        "b": [2, 2, 2],
        "base": [0, 0, 0],
        "f": {"family": "poly", "coeffs": {"xyz": 1.0}},
        "g": {"family": "poly", "coeffs": {"x": 1.0, "y": 1.0, "z": 1.0}},
        "probes": [[1, 1, 1], [2, 2, 2], [1, 1, 2]],
    },
    {
        "name": "integer-from-one",
        "scales": [{"kind": "finite", "points": [1, 2, 3, 4]}] * 3,
        "a": [1, 1, 1],
        "b": [4, 4, 4],
        "base": [1, 1, 1],
        "f": {"family": "poly", "coeffs": {"xyz": 1.0}},
        "g": {"family": "poly", "coeffs": {"x^2": 1.0, "z": -1.0}},
        "probes": [[2, 2, 2], [3, 3, 3], [2, 3, 4]],
    },
    {
        "name": "mixed-kinds",
        "scales": [
            {"kind": "geometric", "start": 1.0, "ratio": 2.0, "count": 4},
            {"kind": "uniform", "start": 0.0, "stop": 1.0, "step": 0.25},
            {"kind": "finite", "points": [-1.0, 0.0, 0.5, 2.0]},
        ],
        "a": [1.0, 0.0, -1.0],
        "b": [8.0, 1.0, 2.0],
        "base": [1.0, 0.0, -1.0],
        "f": {"family": "poly", "coeffs": {"x^2y": 0.5, "xyz": 1.0, "z": 2.0}},
        "g": {"family": "poly", "coeffs": {"xy": 1.0, "1": 0.5}},
        "probes": [[2.0, 0.5, 0.0], [4.0, 1.0, 2.0], [8.0, 0.25, 0.5]],
    },
    {
        "name": "trig-uniform",
        "scales": [{"kind": "uniform", "start": 0.0, "stop": 1.0, "step": 0.25}] * 3,
        "a": [0, 0, 0],
        "b": [1, 1, 1],
        "base": [0, 0, 0],
        "f": {
            "family": "trigprod",
            "params": [["sin", 1.0, 0.0], ["cos", 1.0, 0.0], ["exp", 1.0, 0.0]],
        },
        "g": {"family": "poly", "coeffs": {"xyz": 1.0}},
        "probes": [[0.5, 0.5, 0.5], [1.0, 0.25, 0.75]],
    },
)


def _build(inst):
    scales = []
    for lit in inst["scales"]:
        if lit["kind"] == "finite":
            scales.append(TimeScale.finite(lit["points"]))
        elif lit["kind"] == "uniform":
            scales.append(TimeScale.uniform(lit["start"], lit["stop"], lit["step"]))
        else:
            scales.append(TimeScale.geometric(lit["start"], lit["ratio"], lit["count"]))
    box = Box3(scales, inst["a"], inst["b"], inst["base"])
    f = from_literal(inst["f"], box=box)
    g = from_literal(inst["g"], box=box)
    return box, f, g


def _sigma_base(box):
    return tuple(box.sigma_base(i) for i in range(3))


def _slow_deviation_values(f, box):
    """lhs and the three rhs variants, via iterated integrals only."""
    field = mixed_partial(f, box)
    S = _sigma_base(box)
    b = box.b

    lhs = abs(
        triple_delta_integral(
            lambda x, y, z: f(x, y, z) - functional_A(f, (x, y, z), box), box, S, b
        )
    )
    rhs_tight = (
        triple_delta_integral(
            lambda x, y, z: abs(functional_B(f, (x, y, z), box, field=field)),
            box,
            S,
            b,
        )
        / 8.0
    )
    wprod = 1.0
    for i in range(3):
        wprod *= b[i] - S[i]
    abs_mixed = triple_delta_integral(
        lambda x, y, z: abs(field(x, y, z)), box, S, b
    )
    rhs_integral = wprod * abs_mixed / 8.0
    rhs = wprod * wprod * field.sup_norm / 8.0
    return {
        "lhs": lhs,
        "rhs_tight": rhs_tight,
        "rhs_integral": rhs_integral,
        "rhs": rhs,
    }


def _slow_pair_values(f, g, box):
    """Product-mean lhs and rhs via iterated integrals only."""
    field_f = mixed_partial(f, box)
    field_g = mixed_partial(g, box)
    S = _sigma_base(box)
    b = box.b

    def integrand(x, y, z):
        p = (x, y, z)
        return f(x, y, z) * g(x, y, z) - 0.5 * (
            f(x, y, z) * functional_A(g, p, box)
            + g(x, y, z) * functional_A(f, p, box)
        )

    lhs = abs(triple_delta_integral(integrand, box, S, b))
    wprod = 1.0
    for i in range(3):
        wprod *= b[i] - S[i]
    bound = triple_delta_integral(
        lambda x, y, z: abs(g(x, y, z)) * field_f.sup_norm
        + abs(f(x, y, z)) * field_g.sup_norm,
        box,
        S,
        b,
    )
    rhs = wprod * bound / 16.0
    return {"lhs": lhs, "rhs": rhs}


def compute_instance(inst):
    """All slow-route quantities for one canonical instance."""
    box, f, g = _build(inst)
    field = mixed_partial(f, box)
    probes = {}
    for p in inst["probes"]:
        p = tuple(float(v) for v in p)
        key = ",".join("%g" % v for v in p)
        probes[key] = {
            "f": f(*p),
            "A": functional_A(f, p, box),
            "B": functional_B(f, p, box, field=field),
            "identity_rhs": {
                octant.label: octant_identity_rhs(f, octant, p, box, field=field)
                for octant in OCTANTS
            },
        }
    return {
        "name": inst["name"],
        "probes": probes,
        "deviation": _slow_deviation_values(f, box),
        "pair": _slow_pair_values(f, g, box),
        "sup_norm_mixed": field.sup_norm,
    }


def compute_all():
    return {inst["name"]: compute_instance(inst) for inst in INSTANCES}


def write_fixtures(directory):
    """Recompute all instances and rewrite the fixture file."""
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, FIXTURE_FILE)
    with open(path, "w") as fh:
        json.dump(compute_all(), fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


def _walk_compare(stored, fresh, path, mismatches, rtol):
    if isinstance(stored, dict) and isinstance(fresh, dict):
        for key in sorted(set(stored) | set(fresh)):
            if key not in stored or key not in fresh:
                mismatches.append("%s.%s: missing on one side" % (path, key))
                continue
            _walk_compare(stored[key], fresh[key], "%s.%s" % (path, key), mismatches, rtol)
    elif isinstance(stored, float) or isinstance(fresh, float):
        a, b = float(stored), float(fresh)
        if not math.isclose(a, b, rel_tol=rtol, abs_tol=rtol):
            mismatches.append("%s: stored %r, recomputed %r" % (path, a, b))
    elif stored != fresh:
        mismatches.append("%s: stored %r, recomputed %r" % (path, stored, fresh))


def diff_fixtures(directory, rtol=1e-12):
    """Compare the stored fixture file against a fresh recomputation.

    Returns a list of mismatch descriptions; empty means clean.
    """
    path = os.path.join(directory, FIXTURE_FILE)
    if not os.path.exists(path):
        return ["%s: fixture file does not exist (run with --regenerate)" % path]
    with open(path) as fh:
        stored = json.load(fh)
    mismatches = []
    _walk_compare(stored, compute_all(), "", mismatches, rtol)
    return mismatches
