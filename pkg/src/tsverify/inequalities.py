"""Both sides of the deviation and product-mean bounds, plus baselines.

The three-variable checks integrate over the admissible region
[sigma(base), b) on each axis.  For the deviation bound the left side is
|triple integral of (f - A(f))| and the right side is the sup-norm
product bound; two intermediate right sides are carried along so the
full chain

    LHS <= (1/8) * int |B|  <=  (1/8) * prod(widths) * int |mixed|
        <= (1/8) * prod(widths)^2 * sup |mixed|  =  RHS

is checkable on every instance (the link between the first two is that
at any fixed point the eight octant sub-boxes tile the admissible
region, so |B| is bounded by the integral of |mixed| over all of it).

Classical one-variable baselines and uniform-grid refinement studies
live here too; they need only the hand-rolled Romberg integrator below.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import box_delta_integral
from .errors import BadInterval, NotUnitIntegerScale, OutOfRange, UnsupportedKind
from .identities import BoxFields
from .timescale import Box3

#: Default coefficient of the adaptive tolerance 1e-9 * (1 + |rhs|).
DEFAULT_TOL_COEFF = 1e-9

#: Slack per link when verifying the right-side chain.
CHAIN_RTOL = 1e-12


@dataclass(frozen=True)
class Margin:
    """Outcome of one inequality check.

    ``margin = rhs - lhs``; the check passes when ``margin >= -tol_abs``.
    ``tol_abs`` is the resolved absolute tolerance; by default it is
    adaptive, ``1e-9 * (1 + |rhs|)``.  ``details`` carries check-specific
    extras such as the tighter right-side variants.
    """

    lhs: float
    rhs: float
    margin: float
    passed: bool
    tol_abs: float
    details: dict = field(default_factory=dict)


def _make_margin(lhs, rhs, tol_abs, details=None):
    if tol_abs is None:
        tol_abs = DEFAULT_TOL_COEFF * (1.0 + abs(rhs))
    margin = rhs - lhs
    return Margin(
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        passed=bool(margin >= -tol_abs),
        tol_abs=float(tol_abs),
        details=details or {},
    )


def _chain_ok(links):
    for lo, hi in zip(links, links[1:]):
        if lo > hi + CHAIN_RTOL * (1.0 + abs(hi)):
            return False
    return True


def ostrowski_check(f, box, tol_abs=None, fields=None):
    """Deviation bound for one function on one box.

    LHS is |integral over the admissible region of (f - A(f))|, RHS the
    sup-norm product bound.  ``details`` reports ``rhs_tight`` (the
    integral of |B| / 8), ``rhs_integral`` (the width product times the
    integral of the absolute mixed partial, / 8), ``chain_ok`` (whether
    LHS <= rhs_tight <= rhs_integral <= rhs held), and
    ``residual_max`` (the worst relative pointwise defect of the
    averaged identity the bound rests on).
    """
    if fields is None:
        fields = BoxFields(f, box)
    box = fields.box
    diff = fields.values - fields.a_field()
    lhs = abs(fields.integrate(diff))
    rhs_tight = fields.integrate(np.abs(fields.b_field())) / 8.0
    wprod = 1.0
    for w in box.widths():
        wprod *= w
    rhs_integral = wprod * fields.abs_mixed_integral() / 8.0
    rhs = wprod * wprod * fields.sup_norm_mixed / 8.0
    details = {
        "rhs_tight": float(rhs_tight),
        "rhs_integral": float(rhs_integral),
        "chain_ok": _chain_ok((lhs, rhs_tight, rhs_integral, rhs)),
        "residual_max": fields.max_averaged_residual(),
    }
    return _make_margin(lhs, rhs, tol_abs, details)


def cebysev_check(f, g, box, tol_abs=None, fields_f=None, fields_g=None):
    """Product-mean bound for a pair of functions on one box.

    LHS is |integral of (f*g - (f*A(g) + g*A(f)) / 2)|; RHS is
    (1/16) * prod(widths) * integral of (|g|*sup|mixed f| +
    |f|*sup|mixed g|).  Before bounding, the exact pointwise identity
    underlying the proof - the LHS integrand equals
    (g*B(f) + f*B(g)) / 16 - is evaluated everywhere; its worst relative
    defect is reported as ``details["residual_max"]``.  The whole check
    is symmetric in (f, g) down to the last bit.
    """
    if fields_f is None:
        fields_f = BoxFields(f, box)
    if fields_g is None:
        fields_g = BoxFields(g, box)
    box = fields_f.box
    fv = fields_f.values
    gv = fields_g.values
    integrand = fv * gv - 0.5 * (fv * fields_g.a_field() + gv * fields_f.a_field())
    lhs = abs(fields_f.integrate(integrand))
    alt = (gv * fields_f.b_field() + fv * fields_g.b_field()) / 16.0
    residual = np.abs(integrand - alt) / (1.0 + np.abs(integrand))
    wprod = 1.0
    for w in box.widths():
        wprod *= w
    bound = (
        np.abs(gv) * fields_f.sup_norm_mixed + np.abs(fv) * fields_g.sup_norm_mixed
    )
    rhs = wprod * fields_f.integrate(bound) / 16.0
    details = {"residual_max": float(np.max(residual))}
    return _make_margin(lhs, rhs, tol_abs, details)


# ----------------------------------------------------------------------
# classical one-variable baselines


def romberg(func, a, b, tol=1e-10, max_levels=24):
    """Romberg quadrature of ``func`` over [a, b] by trapezoid halving.

    Deterministic, dependency-free, and exact (immediately converged)
    for low-degree polynomials; refinement stops when two successive
    diagonal entries agree to ``tol`` relative.
    """
    if not b > a:
        raise BadInterval("quadrature interval [%g, %g] is empty" % (a, b))
    h = b - a
    prev = [0.5 * h * (func(a) + func(b))]
    for k in range(1, max_levels + 1):
        h *= 0.5
        tail = sum(func(a + (2 * i - 1) * h) for i in range(1, 2 ** (k - 1) + 1))
        row = [0.5 * prev[0] + h * tail]
        for j in range(1, k + 1):
            row.append(row[j - 1] + (row[j - 1] - prev[j - 1]) / (4.0**j - 1.0))
        if k >= 2 and abs(row[-1] - prev[-1]) <= tol * (1.0 + abs(row[-1])):
            return row[-1]
        prev = row
    return prev[-1]


def classical_ostrowski_check(f1, x, a, b, deriv_sup, tol_abs=None):
    """Continuous one-variable deviation bound on [a, b].

    LHS = |f(x) - mean of f|; RHS = [1/4 + (x - midpoint)^2 / (b-a)^2]
    * (b-a) * deriv_sup, with the mean computed by Romberg quadrature.
    ``deriv_sup`` must dominate sup|f'| and is supplied analytically by
    the caller.
    """
    if not b > a:
        raise BadInterval("interval [%g, %g] is empty" % (a, b))
    if not a <= x <= b:
        raise OutOfRange("evaluation point %g outside [%g, %g]" % (x, a, b))
    mean = romberg(f1, a, b) / (b - a)
    lhs = abs(f1(x) - mean)
    rhs = (0.25 + (x - 0.5 * (a + b)) ** 2 / (b - a) ** 2) * (b - a) * deriv_sup
    return _make_margin(lhs, rhs, tol_abs)


def classical_cebysev_check(f1, g1, a, b, fsup, gsup, tol_abs=None):
    """Continuous one-variable product-mean bound on [a, b].

    LHS = |mean(f*g) - mean(f)*mean(g)|; RHS = (1/12)(b-a)^2 fsup gsup,
    where fsup and gsup dominate the derivative sup-norms.
    """
    if not b > a:
        raise BadInterval("interval [%g, %g] is empty" % (a, b))
    width = b - a
    mean_fg = romberg(lambda u: f1(u) * g1(u), a, b) / width
    mean_f = romberg(f1, a, b) / width
    mean_g = romberg(g1, a, b) / width
    lhs = abs(mean_fg - mean_f * mean_g)
    rhs = width * width * fsup * gsup / 12.0
    return _make_margin(lhs, rhs, tol_abs)


# ----------------------------------------------------------------------
# refinement studies and integer instances


@dataclass(frozen=True)
class ConvergenceRecord:
    """Per-level inequality values under uniform grid refinement.

    ``values[k]`` is the (lhs, rhs) pair at level ``levels[k]`` and
    ``integrals[k]`` is the delta integral of ``f`` over the full box at
    that level, the quantity whose continuous limit the refinement is
    chasing.  ``rates[k]`` is log2 of the ratio of successive integral
    differences |I_{k+1} - I_k| / |I_{k+2} - I_{k+1}|, or None where a
    difference vanishes and the ratio is undefined (constants integrate
    exactly at every level).  Left-endpoint sums refine at first order,
    so rates sit near 1 (difference ratios near 2).  The deviation lhs
    itself is not used for rates: its leading error terms cancel on
    symmetric grids (exactly so for functions linear in each variable),
    which pushes it to higher order, and the absolute value folds sign
    crossings into spurious kinks.
    """

    levels: tuple
    values: tuple
    integrals: tuple
    rates: tuple

    @property
    def margins(self):
        return tuple(rhs - lhs for lhs, rhs in self.values)


def _difference_rates(series):
    diffs = [abs(series[i + 1] - series[i]) for i in range(len(series) - 1)]
    rates = []
    for d0, d1 in zip(diffs, diffs[1:]):
        if d0 > 0.0 and d1 > 0.0:
            rates.append(math.log2(d0 / d1))
        else:
            rates.append(None)
    return tuple(rates)


def continuous_convergence_study(f, box, max_level, g=None, tol_abs=None):
    """Run the deviation check (or the pair check when ``g`` is given)
    on ``box`` and on ``max_level`` successive halvings of its grids.

    All three scales must be uniform.  Returns a
    :class:`ConvergenceRecord` over levels 0..max_level.
    """
    for i, ts in enumerate(box.scales):
        if ts.kind != "uniform":
            raise UnsupportedKind("axis %d: refinement study needs uniform scales" % i)
    levels = []
    values = []
    integrals = []
    current = box
    for level in range(max_level + 1):
        if level > 0:
            scales = tuple(ts.refine() for ts in current.scales)
            current = Box3(scales, box.a, box.b, box.base)
        if g is None:
            m = ostrowski_check(f, current, tol_abs=tol_abs)
        else:
            m = cebysev_check(f, g, current, tol_abs=tol_abs)
        levels.append(level)
        values.append((m.lhs, m.rhs))
        integrals.append(box_delta_integral(f, current))
    rates = _difference_rates(integrals)
    return ConvergenceRecord(
        levels=tuple(levels),
        values=tuple(values),
        integrals=tuple(integrals),
        rates=rates,
    )


def _is_unit_integer(ts):
    pts = ts.points
    if abs(pts[0] - 1.0) > 1e-12:
        return False
    if np.any(np.abs(pts - np.round(pts)) > 1e-12):
        return False
    return bool(np.all(np.abs(np.diff(pts) - 1.0) <= 1e-12))


def discrete_instance_check(f, box, tol_abs=None):
    """Deviation check on unit-step integer scales starting at 1.

    The delta integrals then reduce to plain finite sums.  Any scale
    whose points are not 1, 2, ..., n is rejected.
    """
    for i, ts in enumerate(box.scales):
        if not _is_unit_integer(ts):
            raise NotUnitIntegerScale(
                "axis %d: points must be the integers 1..n with unit step" % i
            )
    return ostrowski_check(f, box, tol_abs=tol_abs)
