"""Campaign orchestration: seeded function generation, task fan-out,
and deterministic row assembly.

Workers recompute everything from the raw config document, so results
never depend on what traveled through the pool; rows are sorted by
(scenario, check, function_id) at the end, making reports byte-stable
across worker counts apart from the timing column.

The generator PRNG is numpy's PCG64, seeded with the generator spec's
integer seed.  The algorithm is part of the compatibility contract: fixtures
and reports are regression anchors, so changing it is a breaking
change.
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .config import ScenarioConfig, load_scenarios
from .errors import TsverifyError, UnknownFamily, ValidationError
from .functions import Polynomial3, TrigProduct3, from_literal
from .identities import BoxFields
from .inequalities import (
    DEFAULT_TOL_COEFF,
    cebysev_check,
    classical_cebysev_check,
    classical_ostrowski_check,
    continuous_convergence_study,
    discrete_instance_check,
    ostrowski_check,
)
from .report import Row, build_report, config_digest

#: Exponent triples of all monomials up to total degree 4, fixed order.
MONOMIALS_DEG4 = tuple(
    (i, j, k)
    for d in range(5)
    for i in range(d + 1)
    for j in range(d - i + 1)
    for k in (d - i - j,)
)

_TRIG_KINDS = ("sin", "cos", "exp")

SINGLE_FUNCTION_CHECKS = (
    "identities",
    "averaged_identity",
    "ostrowski",
    "convergence",
    "discrete",
)


def generate_functions(spec):
    """Deterministic seeded function list from a generator spec.

    ``spec`` holds family ("poly" or "trigprod"), count, seed, and an
    optional coefficient_range [lo, hi] (default [-1, 1]).  The same
    spec always yields bit-identical parameter tables.

    Raises
    ------
    UnknownFamily
        For families the generator does not provide.
    ValidationError
        If the seed is missing.
    """
    family = spec.get("family")
    if family not in ("poly", "trigprod"):
        raise UnknownFamily("generator family must be 'poly' or 'trigprod'")
    if "seed" not in spec or spec["seed"] is None:
        raise ValidationError("generator spec needs a seed")
    count = int(spec.get("count", 0))
    lo, hi = spec.get("coefficient_range", [-1.0, 1.0])
    rng = np.random.Generator(np.random.PCG64(int(spec["seed"])))
    out = []
    for _ in range(count):
        if family == "poly":
            coeffs = rng.uniform(lo, hi, size=len(MONOMIALS_DEG4))
            out.append(Polynomial3(dict(zip(MONOMIALS_DEG4, coeffs))))
        else:
            params = []
            for _axis in range(3):
                kind = _TRIG_KINDS[int(rng.integers(0, 3))]
                u = rng.uniform(0.0, 1.0, size=2)
                if kind == "exp":
                    # modest rates keep values within the float comfort zone
                    params.append([kind, 0.2 + 0.6 * u[0], 0.0])
                else:
                    params.append([kind, 0.3 + 0.9 * u[0], 1.5 * u[1]])
            out.append(TrigProduct3(params))
    return out


def _id_width(n):
    return max(3, len(str(max(n - 1, 0))))


def function_ids(cfg):
    """Stable per-scenario function identifiers."""
    if cfg.generator is not None:
        n = cfg.generator["count"]
        prefix = cfg.generator["family"]
    else:
        n = len(cfg.functions)
        prefix = "lit"
    w = _id_width(n)
    return ["%s-%0*d" % (prefix, w, i) for i in range(n)]


def materialize_functions(cfg, seed_override=None):
    """(id, function, error) triples for one scenario.

    A function whose literal cannot be realized (for example tabulated
    values with a NaN cell) is carried as (id, None, error) so the
    campaign can mark its rows errored and continue.
    """
    ids = function_ids(cfg)
    out = []
    if cfg.generator is not None:
        gen = dict(cfg.generator)
        if seed_override is not None:
            gen["seed"] = seed_override
        for fid, fn in zip(ids, generate_functions(gen)):
            out.append((fid, fn, None))
        return out
    box = cfg.box()
    for fid, lit in zip(ids, cfg.functions):
        try:
            out.append((fid, from_literal(lit, box=box), None))
        except TsverifyError as e:
            out.append((fid, None, e))
    return out


# ----------------------------------------------------------------------
# worker state and task execution

_STATE = {}


def _init_worker(config_text, tol_abs, seed_override):
    _STATE.clear()
    _STATE["scenarios"] = load_scenarios(config_text)
    _STATE["tol_abs"] = tol_abs
    _STATE["seed_override"] = seed_override
    _STATE["functions"] = {}
    _STATE["fields"] = {}
    _STATE["boxes"] = {}


def _scenario(s_idx):
    return _STATE["scenarios"][s_idx]


def _functions(s_idx):
    if s_idx not in _STATE["functions"]:
        _STATE["functions"][s_idx] = materialize_functions(
            _scenario(s_idx), _STATE["seed_override"]
        )
    return _STATE["functions"][s_idx]


def _box(s_idx):
    if s_idx not in _STATE["boxes"]:
        _STATE["boxes"][s_idx] = _scenario(s_idx).box()
    return _STATE["boxes"][s_idx]


def _fields(s_idx, f_idx):
    key = (s_idx, f_idx)
    if key not in _STATE["fields"]:
        fn = _functions(s_idx)[f_idx][1]
        _STATE["fields"][key] = BoxFields(fn, _box(s_idx))
    return _STATE["fields"][key]


def _tol_abs(cfg):
    override = _STATE["tol_abs"]
    return override if override is not None else cfg.tol_abs


def _passes(lhs, rhs, tol_abs):
    tol = tol_abs if tol_abs is not None else DEFAULT_TOL_COEFF * (1.0 + abs(rhs))
    return (rhs - lhs) >= -tol


def _row(cfg, check, fid, t0, **kw):
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    return Row(
        scenario=cfg.name,
        check=check,
        function_id=fid,
        runtime_ms=runtime_ms,
        **kw,
    )


def _error_row(cfg, check, fid, t0):
    return _row(
        cfg,
        check,
        fid,
        t0,
        lhs=None,
        rhs=None,
        margin=None,
        residual_max=None,
        passed=False,
    )


def _function_task(s_idx, f_idx):
    cfg = _scenario(s_idx)
    fid, fn, err = _functions(s_idx)[f_idx]
    checks = [c for c in cfg.checks if c in SINGLE_FUNCTION_CHECKS]
    rows, notes = [], []

    def fail(check, exc, key=None):
        t0 = time.perf_counter()
        rows.append(_error_row(cfg, check, key or fid, t0))
        notes.append("%s/%s/%s: %s" % (cfg.name, check, key or fid, exc))

    if err is not None:
        for check in checks:
            fail(check, err)
        return rows, notes

    fields = None
    if any(c in checks for c in ("identities", "averaged_identity", "ostrowski")):
        t0 = time.perf_counter()
        try:
            fields = _fields(s_idx, f_idx)
        except TsverifyError as e:
            for check in checks:
                fail(check, e)
            return rows, notes

    tol_abs = _tol_abs(cfg)
    for check in checks:
        t0 = time.perf_counter()
        try:
            if check == "identities":
                resid = fields.max_identity_residual()
                rows.append(
                    _row(
                        cfg, check, fid, t0,
                        lhs=resid,
                        rhs=cfg.tol_rel,
                        margin=cfg.tol_rel - resid,
                        residual_max=resid,
                        passed=resid <= cfg.tol_rel,
                    )
                )
            elif check == "averaged_identity":
                resid = fields.max_averaged_residual()
                rows.append(
                    _row(
                        cfg, check, fid, t0,
                        lhs=resid,
                        rhs=cfg.tol_rel,
                        margin=cfg.tol_rel - resid,
                        residual_max=resid,
                        passed=resid <= cfg.tol_rel,
                    )
                )
            elif check == "ostrowski":
                m = ostrowski_check(fn, _box(s_idx), tol_abs=tol_abs, fields=fields)
                rows.append(
                    _row(
                        cfg, check, fid, t0,
                        lhs=m.lhs,
                        rhs=m.rhs,
                        margin=m.margin,
                        residual_max=m.details["residual_max"],
                        passed=m.passed and m.details["chain_ok"],
                    )
                )
            elif check == "discrete":
                m = discrete_instance_check(fn, _box(s_idx), tol_abs=tol_abs)
                rows.append(
                    _row(
                        cfg, check, fid, t0,
                        lhs=m.lhs,
                        rhs=m.rhs,
                        margin=m.margin,
                        residual_max=m.details["residual_max"],
                        passed=m.passed and m.details["chain_ok"],
                    )
                )
            elif check == "convergence":
                record = continuous_convergence_study(
                    fn, _box(s_idx), cfg.max_level, tol_abs=tol_abs
                )
                for level, (lhs, rhs) in zip(record.levels, record.values):
                    rows.append(
                        _row(
                            cfg, check, "%s:L%d" % (fid, level), t0,
                            lhs=lhs,
                            rhs=rhs,
                            margin=rhs - lhs,
                            residual_max=None,
                            passed=_passes(lhs, rhs, tol_abs),
                        )
                    )
        except TsverifyError as e:
            fail(check, e)
    return rows, notes


def _pair_task(s_idx, i, j):
    cfg = _scenario(s_idx)
    funcs = _functions(s_idx)
    fid_i, fn_i, err_i = funcs[i]
    fid_j, fn_j, err_j = funcs[j]
    pair_id = "%s,%s" % (fid_i, fid_j)
    t0 = time.perf_counter()
    err = err_i or err_j
    if err is None:
        try:
            m = cebysev_check(
                fn_i,
                fn_j,
                _box(s_idx),
                tol_abs=_tol_abs(cfg),
                fields_f=_fields(s_idx, i),
                fields_g=_fields(s_idx, j),
            )
            row = _row(
                cfg, "cebysev", pair_id, t0,
                lhs=m.lhs,
                rhs=m.rhs,
                margin=m.margin,
                residual_max=m.details["residual_max"],
                passed=m.passed,
            )
            return [row], []
        except TsverifyError as e:
            err = e
    note = "%s/cebysev/%s: %s" % (cfg.name, pair_id, err)
    return [_error_row(cfg, "cebysev", pair_id, t0)], [note]


#: Fixed one-variable baseline battery: identifier, check arguments.
_CLASSICAL_CASES = (
    ("dev:u@x=0", "ostrowski", (lambda u: u, 0.0, 0.0, 1.0, 1.0)),
    ("dev:u@x=1/2", "ostrowski", (lambda u: u, 0.5, 0.0, 1.0, 1.0)),
    ("dev:u^2@x=1", "ostrowski", (lambda u: u * u, 1.0, 0.0, 1.0, 2.0)),
    ("mean:u,u", "cebysev", (lambda u: u, lambda u: u, 0.0, 1.0, 1.0, 1.0)),
    ("mean:u,u^2", "cebysev", (lambda u: u, lambda u: u * u, 0.0, 1.0, 1.0, 2.0)),
)


def _classical_task(s_idx):
    cfg = _scenario(s_idx)
    tol_abs = _tol_abs(cfg)
    rows, notes = [], []
    for cid, kind, args in _CLASSICAL_CASES:
        t0 = time.perf_counter()
        try:
            if kind == "ostrowski":
                f1, x, a, b, dsup = args
                m = classical_ostrowski_check(f1, x, a, b, dsup, tol_abs=tol_abs)
            else:
                f1, g1, a, b, fsup, gsup = args
                m = classical_cebysev_check(f1, g1, a, b, fsup, gsup, tol_abs=tol_abs)
            rows.append(
                _row(
                    cfg, "classical", cid, t0,
                    lhs=m.lhs,
                    rhs=m.rhs,
                    margin=m.margin,
                    residual_max=None,
                    passed=m.passed,
                )
            )
        except TsverifyError as e:
            rows.append(_error_row(cfg, "classical", cid, t0))
            notes.append("%s/classical/%s: %s" % (cfg.name, cid, e))
    return rows, notes


def _run_task(task):
    kind = task[0]
    if kind == "function":
        return _function_task(task[1], task[2])
    if kind == "pair":
        return _pair_task(task[1], task[2], task[3])
    return _classical_task(task[1])


def _make_tasks(scenarios):
    tasks = []
    for s_idx, cfg in enumerate(scenarios):
        if cfg.generator is not None:
            n = cfg.generator["count"]
        else:
            n = len(cfg.functions)
        if any(c in SINGLE_FUNCTION_CHECKS for c in cfg.checks):
            for f_idx in range(n):
                tasks.append(("function", s_idx, f_idx))
        if "cebysev" in cfg.checks:
            for i in range(n):
                for j in range(i, n):
                    tasks.append(("pair", s_idx, i, j))
        if "classical" in cfg.checks:
            tasks.append(("classical", s_idx))
    return tasks


def _canonical_text(scenarios):
    doc = {"scenarios": [cfg.raw for cfg in scenarios]}
    return json.dumps(doc, sort_keys=True)


def run_campaign(source, workers=1, tol_abs=None, seed_override=None):
    """Run every requested check of every scenario and build the report.

    ``source`` is a config document (str or bytes) or an already parsed
    :class:`ScenarioConfig` (or list of them).  ``workers`` > 1 fans
    tasks out to a process pool; results are identical to a single
    worker run apart from the timing column.  ``tol_abs`` overrides the
    scenarios' absolute tolerance; ``seed_override`` replaces generator
    seeds.

    Returns (report, notes): the :class:`VerificationReport` plus
    human-readable messages for every errored row.
    """
    if isinstance(source, ScenarioConfig):
        scenarios = [source]
        text = _canonical_text(scenarios)
    elif isinstance(source, (list, tuple)):
        scenarios = list(source)
        text = _canonical_text(scenarios)
    else:
        text = source
        scenarios = load_scenarios(text)

    tasks = _make_tasks(scenarios)
    results = []
    if workers <= 1:
        _init_worker(text, tol_abs, seed_override)
        for task in tasks:
            results.append(_run_task(task))
    else:
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(text, tol_abs, seed_override),
        ) as ex:
            results = list(ex.map(_run_task, tasks))

    rows, notes = [], []
    for task_rows, task_notes in results:
        rows.extend(task_rows)
        notes.extend(task_notes)
    notes.sort()

    seed = seed_override
    if seed is None:
        for cfg in scenarios:
            if cfg.generator is not None:
                seed = cfg.generator["seed"]
                break
    report = build_report(rows, config_digest(text), seed)
    return report, notes
