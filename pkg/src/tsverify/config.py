"""Scenario configuration parsing and validation.

A scenario document is JSON.  A file holds either one scenario object or
``{"scenarios": [...]}``.  Scenario fields:

- ``name``: string (optional; defaults to scenario-<index>).
- ``scales``: three scale literals, e.g. ``{"kind": "uniform",
  "start": 0, "stop": 1, "step": 0.25}``, ``{"kind": "finite",
  "points": [...]}``, ``{"kind": "geometric", "start": .., "ratio": ..,
  "count": ..}``.
- ``a``, ``b``, ``base``: per-axis endpoints and base point; every value
  must be a member of its scale.
- ``functions``: either a list of function family literals or a
  generator spec ``{"family": .., "count": .., "seed": ..,
  "coefficient_range": [lo, hi]}``.
- ``checks``: subset of {identities, averaged_identity, ostrowski,
  cebysev, classical, convergence, discrete}.
- ``tolerances``: optional ``{"tol_abs": .., "tol_rel": ..}``; when
  tol_abs is omitted the adaptive default 1e-9 * (1 + |rhs|) applies.
- ``max_level``: refinement depth for convergence checks (default 4).

Structural problems raise :class:`ParseError`; constraint violations
raise :class:`ValidationError` naming the offending field.
"""

import json
from dataclasses import dataclass

from .errors import (
    NotInScale,
    OutOfRange,
    ParseError,
    ReversedInterval,
    ValidationError,
)
from .timescale import Box3, TimeScale

CHECK_NAMES = (
    "identities",
    "averaged_identity",
    "ostrowski",
    "cebysev",
    "classical",
    "convergence",
    "discrete",
)

GENERATOR_FAMILIES = ("poly", "trigprod")
LITERAL_FAMILIES = ("poly", "trigprod", "tabulated")

DEFAULT_TOL_REL = 1e-9
DEFAULT_MAX_LEVEL = 4


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    scales: tuple
    a: tuple
    b: tuple
    base: tuple
    functions: tuple
    generator: dict
    checks: tuple
    tol_abs: float
    tol_rel: float
    max_level: int
    #: the validated source object, kept for canonical reserialization
    raw: dict = None

    def box(self):
        return Box3(self.scales, self.a, self.b, self.base)


def _fail(path, msg):
    raise ValidationError("%s: %s" % (path, msg))


def _require(obj, key, path):
    if not isinstance(obj, dict) or key not in obj:
        _fail("%s.%s" % (path, key) if path else key, "required field is missing")
    return obj[key]


def _as_number(v, path):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(path, "expected a number, got %r" % (v,))
    return float(v)


def _as_triple(v, path):
    if not isinstance(v, list) or len(v) != 3:
        _fail(path, "expected a list of three numbers")
    return tuple(_as_number(x, "%s[%d]" % (path, i)) for i, x in enumerate(v))


def _build_scale(lit, path):
    if not isinstance(lit, dict) or "kind" not in lit:
        _fail(path, "expected a scale literal with a 'kind' field")
    kind = lit["kind"]
    try:
        if kind == "finite":
            pts = _require(lit, "points", path)
            if not isinstance(pts, list):
                _fail("%s.points" % path, "expected a list of numbers")
            return TimeScale.finite(
                [_as_number(p, "%s.points[%d]" % (path, i)) for i, p in enumerate(pts)]
            )
        if kind == "uniform":
            return TimeScale.uniform(
                _as_number(_require(lit, "start", path), "%s.start" % path),
                _as_number(_require(lit, "stop", path), "%s.stop" % path),
                _as_number(_require(lit, "step", path), "%s.step" % path),
            )
        if kind == "geometric":
            count = _require(lit, "count", path)
            if isinstance(count, bool) or not isinstance(count, int):
                _fail("%s.count" % path, "expected an integer")
            return TimeScale.geometric(
                _as_number(_require(lit, "start", path), "%s.start" % path),
                _as_number(_require(lit, "ratio", path), "%s.ratio" % path),
                count,
            )
    except ValueError as e:
        _fail(path, str(e))
    _fail("%s.kind" % path, "unknown scale kind %r" % (kind,))


def _validate_function_literal(lit, path):
    if not isinstance(lit, dict) or "family" not in lit:
        _fail(path, "expected a function literal with a 'family' field")
    family = lit["family"]
    if family not in LITERAL_FAMILIES:
        _fail("%s.family" % path, "unknown function family %r" % (family,))
    if family == "poly":
        coeffs = lit.get("coeffs", {})
        if not isinstance(coeffs, dict):
            _fail("%s.coeffs" % path, "expected an object of monomial: coefficient")
        for key, val in coeffs.items():
            _as_number(val, "%s.coeffs[%r]" % (path, key))
    elif family == "trigprod":
        params = lit.get("params", [])
        if not isinstance(params, list) or len(params) != 3:
            _fail("%s.params" % path, "expected three [kind, freq, phase] entries")
    else:
        values = lit.get("values", None)
        if not isinstance(values, list):
            _fail("%s.values" % path, "expected a nested list of grid values")
    return lit


def _validate_generator(gen, path):
    family = _require(gen, "family", path)
    if family not in GENERATOR_FAMILIES:
        _fail("%s.family" % path, "unknown generator family %r" % (family,))
    if "seed" not in gen:
        _fail("%s.seed" % path, "a generator spec must carry a seed")
    seed = gen["seed"]
    if isinstance(seed, bool) or not isinstance(seed, int):
        _fail("%s.seed" % path, "expected an integer seed")
    count = _require(gen, "count", path)
    if isinstance(count, bool) or not isinstance(count, int) or count < 0:
        _fail("%s.count" % path, "expected a non-negative integer count")
    rng = gen.get("coefficient_range", [-1.0, 1.0])
    if not isinstance(rng, list) or len(rng) != 2:
        _fail("%s.coefficient_range" % path, "expected [lo, hi]")
    lo = _as_number(rng[0], "%s.coefficient_range[0]" % path)
    hi = _as_number(rng[1], "%s.coefficient_range[1]" % path)
    if not lo < hi:
        _fail("%s.coefficient_range" % path, "lo must be below hi")
    return {
        "family": family,
        "count": count,
        "seed": seed,
        "coefficient_range": [lo, hi],
    }


def scenario_from_dict(obj, default_name="scenario"):
    """Validate one scenario object into a :class:`ScenarioConfig`."""
    if not isinstance(obj, dict):
        raise ValidationError("scenario: expected an object")
    name = obj.get("name", default_name)
    if not isinstance(name, str) or not name:
        _fail("name", "expected a non-empty string")

    raw_scales = _require(obj, "scales", "")
    if not isinstance(raw_scales, list) or len(raw_scales) != 3:
        _fail("scales", "expected exactly three scale literals")
    scales = tuple(
        _build_scale(lit, "scales[%d]" % i) for i, lit in enumerate(raw_scales)
    )

    a = _as_triple(_require(obj, "a", ""), "a")
    b = _as_triple(_require(obj, "b", ""), "b")
    base = _as_triple(_require(obj, "base", ""), "base")
    for field_name, triple in (("a", a), ("b", b), ("base", base)):
        for i, v in enumerate(triple):
            if v not in scales[i]:
                _fail(
                    "%s[%d]" % (field_name, i),
                    "%g is not a point of scale %d" % (v, i),
                )
    try:
        Box3(scales, a, b, base)
    except ReversedInterval as e:
        _fail("a/b", str(e))
    except OutOfRange as e:
        _fail("base", str(e))
    except NotInScale as e:
        _fail("a/b/base", str(e))

    raw_functions = _require(obj, "functions", "")
    functions = ()
    generator = None
    if isinstance(raw_functions, dict):
        generator = _validate_generator(raw_functions, "functions")
    elif isinstance(raw_functions, list):
        functions = tuple(
            _validate_function_literal(lit, "functions[%d]" % i)
            for i, lit in enumerate(raw_functions)
        )
    else:
        _fail("functions", "expected a list of literals or a generator spec")

    raw_checks = _require(obj, "checks", "")
    if not isinstance(raw_checks, list) or not raw_checks:
        _fail("checks", "expected a non-empty list of check names")
    for i, c in enumerate(raw_checks):
        if c not in CHECK_NAMES:
            _fail("checks[%d]" % i, "unknown check name %r" % (c,))
    checks = tuple(dict.fromkeys(raw_checks))

    tol = obj.get("tolerances", {})
    if not isinstance(tol, dict):
        _fail("tolerances", "expected an object")
    tol_abs = tol.get("tol_abs", None)
    if tol_abs is not None:
        tol_abs = _as_number(tol_abs, "tolerances.tol_abs")
        if tol_abs <= 0:
            _fail("tolerances.tol_abs", "must be positive")
    tol_rel = tol.get("tol_rel", DEFAULT_TOL_REL)
    tol_rel = _as_number(tol_rel, "tolerances.tol_rel")
    if tol_rel <= 0:
        _fail("tolerances.tol_rel", "must be positive")

    max_level = obj.get("max_level", DEFAULT_MAX_LEVEL)
    if isinstance(max_level, bool) or not isinstance(max_level, int):
        _fail("max_level", "expected an integer")
    if not 0 <= max_level <= 9:
        _fail("max_level", "must be between 0 and 9")

    return ScenarioConfig(
        name=name,
        scales=scales,
        a=a,
        b=b,
        base=base,
        functions=functions,
        generator=generator,
        checks=checks,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
        max_level=max_level,
        raw=obj,
    )


def _load_document(text):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError("config is not valid UTF-8: %s" % e) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            "config is not valid JSON: %s (line %d, column %d)"
            % (e.msg, e.lineno, e.colno)
        ) from e


def load_scenarios(text):
    """All scenarios in a config document, in file order."""
    doc = _load_document(text)
    if isinstance(doc, dict) and "scenarios" in doc:
        raw = doc["scenarios"]
        if not isinstance(raw, list) or not raw:
            raise ValidationError("scenarios: expected a non-empty list")
        out = []
        names = set()
        for i, obj in enumerate(raw):
            cfg = scenario_from_dict(obj, default_name="scenario-%d" % i)
            if cfg.name in names:
                raise ValidationError("scenarios[%d].name: duplicate %r" % (i, cfg.name))
            names.add(cfg.name)
            out.append(cfg)
        return out
    return [scenario_from_dict(doc)]


def parse_config(text):
    """Parse a document holding exactly one scenario.

    Raises
    ------
    ParseError
        If the document is not UTF-8 JSON.
    ValidationError
        If a field violates a constraint, or the document holds more
        than one scenario.
    """
    scenarios = load_scenarios(text)
    if len(scenarios) != 1:
        raise ValidationError(
            "document holds %d scenarios; expected exactly one" % len(scenarios)
        )
    return scenarios[0]
