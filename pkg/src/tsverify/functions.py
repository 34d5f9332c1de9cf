"""Evaluatable functions of three variables.

Three families cover the harness: multivariate polynomials, separable
trig/exponential products, and dense tabulated grids.  Every family
offers scalar evaluation through ``__call__`` and vectorized evaluation
on a coordinate grid through ``on_grid``; the two routes agree to
rounding because they share coefficient ordering.
"""

import numpy as np

from .errors import InvalidFunction, NotInScale, UnknownFamily

_AXES = "xyz"


class Function3:
    """Base class: a real-valued function on a product of three scales."""

    def __call__(self, x, y, z):
        raise NotImplementedError

    def on_grid(self, xs, ys, zs):
        """Values on the grid ``{xs} x {ys} x {zs}`` as an (n1,n2,n3) array.

        Subclasses override this with vectorized versions; the base
        implementation loops and is only meant for ad-hoc subclasses.
        """
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        zs = np.asarray(zs, dtype=float)
        out = np.empty((xs.size, ys.size, zs.size))
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                for k, z in enumerate(zs):
                    out[i, j, k] = self(x, y, z)
        return out


def parse_monomial(key):
    """Exponent triple for a monomial key such as ``"x^2yz"`` or ``"1"``.

    The grammar is a sequence of ``x``/``y``/``z`` factors, each with an
    optional ``^<int>`` exponent; repeated variables add exponents.  The
    keys ``""`` and ``"1"`` denote the constant monomial.
    """
    key = key.strip()
    if key in ("", "1"):
        return (0, 0, 0)
    exps = [0, 0, 0]
    i = 0
    while i < len(key):
        ch = key[i]
        if ch not in _AXES:
            raise ValueError("bad monomial %r: unexpected %r" % (key, ch))
        axis = _AXES.index(ch)
        i += 1
        e = 1
        if i < len(key) and key[i] == "^":
            i += 1
            j = i
            while j < len(key) and (key[j].isdigit() or (j == i and key[j] == "-")):
                j += 1
            if j == i:
                raise ValueError("bad monomial %r: missing exponent" % key)
            e = int(key[i:j])
            if e < 0:
                raise ValueError("bad monomial %r: negative exponent" % key)
            i = j
        exps[axis] += e
    return tuple(exps)


def format_monomial(exps):
    """Inverse of :func:`parse_monomial` for non-negative exponent triples."""
    if exps == (0, 0, 0):
        return "1"
    parts = []
    for ch, e in zip(_AXES, exps):
        if e == 1:
            parts.append(ch)
        elif e > 1:
            parts.append("%s^%d" % (ch, e))
    return "".join(parts)


class Polynomial3(Function3):
    """Polynomial with a coefficient table keyed by exponent triples.

    Parameters
    ----------
    coeffs : dict
        Maps monomials to coefficients.  Keys may be ``(i, j, k)`` tuples
        or strings such as ``"x^2yz"``.  Zero coefficients are dropped.
    """

    def __init__(self, coeffs):
        table = {}
        for key, c in coeffs.items():
            exps = parse_monomial(key) if isinstance(key, str) else tuple(int(e) for e in key)
            if len(exps) != 3 or any(e < 0 for e in exps):
                raise ValueError("bad exponent triple %r" % (key,))
            c = float(c)
            if c != 0.0:
                table[exps] = table.get(exps, 0.0) + c
        # fixed term order so scalar and grid evaluation sum identically
        self.terms = tuple(sorted(table.items()))

    @property
    def coeffs(self):
        return {format_monomial(e): c for e, c in self.terms}

    def __repr__(self):
        body = " + ".join("%g*%s" % (c, format_monomial(e)) for e, c in self.terms)
        return "Polynomial3(%s)" % (body or "0")

    def __call__(self, x, y, z):
        acc = 0.0
        for (i, j, k), c in self.terms:
            acc += c * x**i * y**j * z**k
        return acc

    def on_grid(self, xs, ys, zs):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        zs = np.asarray(zs, dtype=float)
        out = np.zeros((xs.size, ys.size, zs.size))
        for (i, j, k), c in self.terms:
            out += c * (xs**i)[:, None, None] * (ys**j)[None, :, None] * (zs**k)[None, None, :]
        return out


_FACTORS = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
}


class TrigProduct3(Function3):
    """Separable product of per-axis factors ``kind(freq * t + phase)``.

    ``params`` holds three ``[kind, freq, phase]`` entries, one per axis,
    with ``kind`` in ``{"sin", "cos", "exp"}``.  For example
    ``[["sin", 1, 0], ["cos", 1, 0], ["exp", 1, 0]]`` is
    ``sin(x) cos(y) e^z``.
    """

    def __init__(self, params):
        params = list(params)
        if len(params) != 3:
            raise ValueError("trig product needs exactly three axis factors")
        parsed = []
        for entry in params:
            kind, freq, phase = entry
            if kind not in _FACTORS:
                raise ValueError("unknown factor kind %r" % (kind,))
            parsed.append((str(kind), float(freq), float(phase)))
        self.params = tuple(parsed)

    def __repr__(self):
        body = " * ".join(
            "%s(%g*%s%+g)" % (k, f, v, p) for (k, f, p), v in zip(self.params, _AXES)
        )
        return "TrigProduct3(%s)" % body

    def _factor(self, axis, t):
        kind, freq, phase = self.params[axis]
        return _FACTORS[kind](freq * np.asarray(t, dtype=float) + phase)

    def __call__(self, x, y, z):
        return float(self._factor(0, x) * self._factor(1, y) * self._factor(2, z))

    def on_grid(self, xs, ys, zs):
        fx = self._factor(0, np.asarray(xs, dtype=float))
        fy = self._factor(1, np.asarray(ys, dtype=float))
        fz = self._factor(2, np.asarray(zs, dtype=float))
        return fx[:, None, None] * fy[None, :, None] * fz[None, None, :]


def _axis_index(points, t):
    i = int(np.searchsorted(points, t))
    tol = 1e-12 * max(1.0, abs(t))
    for j in (i - 1, i):
        if 0 <= j < points.size and abs(points[j] - t) <= tol:
            return j
    raise NotInScale("%r is not a tabulated coordinate" % (t,))


class Tabulated3(Function3):
    """Dense grid of values over explicit axis point arrays.

    Evaluation is lookup: coordinates must match tabulated axis points to
    the membership tolerance.  Values must be finite everywhere.
    """

    def __init__(self, axes, values):
        axes = tuple(np.array(a, dtype=float) for a in axes)
        if len(axes) != 3:
            raise ValueError("three axis arrays required")
        try:
            values = np.array(values, dtype=float)
        except (TypeError, ValueError) as e:
            raise InvalidFunction("tabulated values are not numeric: %s" % e) from e
        shape = tuple(a.size for a in axes)
        if values.shape != shape:
            raise InvalidFunction(
                "values shape %r does not match axes %r" % (values.shape, shape)
            )
        if not np.all(np.isfinite(values)):
            raise InvalidFunction("tabulated values contain NaN or infinity")
        self.axes = axes
        self.values = values

    @classmethod
    def from_function(cls, f, box):
        """Sample ``f`` on the closed grid of ``box``."""
        axes = [box.axis_points(i) for i in range(3)]
        vals = f.on_grid(*axes)
        if not np.all(np.isfinite(vals)):
            raise InvalidFunction("function is not finite on the box grid")
        return cls(axes, vals)

    def __repr__(self):
        return "Tabulated3(shape=%r)" % (self.values.shape,)

    def __call__(self, x, y, z):
        i = _axis_index(self.axes[0], x)
        j = _axis_index(self.axes[1], y)
        k = _axis_index(self.axes[2], z)
        return float(self.values[i, j, k])

    def on_grid(self, xs, ys, zs):
        ix = [_axis_index(self.axes[0], t) for t in np.asarray(xs, dtype=float)]
        iy = [_axis_index(self.axes[1], t) for t in np.asarray(ys, dtype=float)]
        iz = [_axis_index(self.axes[2], t) for t in np.asarray(zs, dtype=float)]
        return self.values[np.ix_(ix, iy, iz)]


def from_literal(obj, box=None):
    """Build a function from a family literal.

    ``{"family": "poly", "coeffs": {...}}`` and
    ``{"family": "trigprod", "params": [...]}`` are self-contained;
    ``{"family": "tabulated", "values": [...]}`` needs ``box`` to supply
    the axis points its values are indexed by.
    """
    if not isinstance(obj, dict) or "family" not in obj:
        raise UnknownFamily("function literal must be an object with a 'family' key")
    family = obj["family"]
    if family == "poly":
        return Polynomial3(obj.get("coeffs", {}))
    if family == "trigprod":
        return TrigProduct3(obj.get("params", []))
    if family == "tabulated":
        if box is None:
            raise ValueError("tabulated literals need a box for their axis points")
        axes = [box.axis_points(i) for i in range(3)]
        return Tabulated3(axes, obj.get("values", []))
    raise UnknownFamily("unknown function family %r" % (family,))
