"""Delta derivatives and delta integrals on products of three scales.

On a materialized bounded scale every point below the maximum is right
scattered, so the delta derivative is the forward difference quotient
(f(sigma(u)) - f(u)) / mu(u), exact with no limit process.  Integrals
are Cauchy sums: sum of h(u) * mu(u) over the half-open interval.

The third-order mixed partial is computed on whole boxes at once via the
kernels package; ``triple_delta_integral`` is the literal iterated
construction and serves as the slow reference for everything the fast
path produces.
"""

import numpy as np

from . import kernels
from .errors import (
    AtScaleMax,
    BadInterval,
    DomainTooSmall,
    InvalidFunction,
    NotInScale,
    ReversedInterval,
)


def partial_delta(f, axis, p, scales):
    """First partial delta derivative of ``f`` along ``axis`` at point ``p``.

    Parameters
    ----------
    f : Function3
    axis : int
        1, 2, or 3.
    p : tuple of three reals
        A grid point; every coordinate must lie on its scale.
    scales : sequence of three TimeScale

    Raises
    ------
    AtScaleMax
        If the axis coordinate is the scale maximum, where no forward
        step exists.
    """
    i = axis - 1
    ts = scales[i]
    u = p[i]
    mu = ts.graininess(u)
    if mu <= 0.0:
        raise AtScaleMax("axis %d: derivative undefined at scale maximum %g" % (axis, u))
    q = list(p)
    q[i] = ts.sigma(u)
    return (f(*q) - f(*p)) / mu


class MixedPartialField:
    """Values of the mixed third-order delta partial over a box.

    The field lives on the half-open grid: axis ``i`` runs over the box
    points in ``[a_i, b_i)``, since the forward step from ``b_i`` leaves
    the box.  ``sup_norm`` is the exact maximum of the absolute values,
    taken by full enumeration.

    ``weighted`` holds the same data premultiplied by the graininess
    product ``mu1*mu2*mu3``.  It is the raw third-order forward
    difference of the value grid, so summing it over an index box gives
    the triple delta integral of the field with no rounding from a
    divide-multiply round trip; the fast integral paths consume it.
    """

    __slots__ = ("box", "values", "weighted", "sup_norm")

    def __init__(self, box, values, weighted):
        self.box = box
        self.values = values
        self.weighted = weighted
        self.values.setflags(write=False)
        self.weighted.setflags(write=False)
        self.sup_norm = float(np.max(np.abs(values)))

    def __call__(self, alpha, beta, gamma):
        """Field value at a grid point, looked up by coordinates."""
        i = self.box.axis_index(0, alpha)
        j = self.box.axis_index(1, beta)
        k = self.box.axis_index(2, gamma)
        return float(self.values[i, j, k])


def grid_values(f, box):
    """``f`` evaluated on the closed grid of ``box``, checked finite.

    Raises
    ------
    InvalidFunction
        If any grid value is NaN or infinite.
    """
    F = np.asarray(
        f.on_grid(box.axis_points(0), box.axis_points(1), box.axis_points(2)),
        dtype=float,
    )
    if not np.all(np.isfinite(F)):
        raise InvalidFunction("function has non-finite values on the box grid")
    return F


def mixed_partial_from_values(F, box):
    """Mixed-partial field from precomputed closed-grid values."""
    if any(n < 2 for n in box.grid_shape()):
        raise DomainTooSmall("mixed partial needs at least 2 points per axis")
    W = kernels.forward_diff3(F)
    mu_prod = (
        box.axis_mu(0)[:, None, None]
        * box.axis_mu(1)[None, :, None]
        * box.axis_mu(2)[None, None, :]
    )
    return MixedPartialField(box, W / mu_prod, W)


def mixed_partial(f, box):
    """Mixed third-order delta partial of ``f`` over ``box``.

    Equivalent to nesting :func:`partial_delta` once per axis, in any
    axis order; the grid form divides by the graininess product once
    instead of stepwise, which changes nothing beyond last-bit rounding.

    Raises
    ------
    DomainTooSmall
        If some axis has fewer than 2 points in the box.
    """
    return mixed_partial_from_values(grid_values(f, box), box)


def sup_norm_mixed(f, box):
    """Exact maximum of the absolute mixed partial over the box grid."""
    return mixed_partial(f, box).sup_norm


def delta_integral_1d(h, ts, a, b):
    """Cauchy delta integral of ``h`` over ``[a, b)`` on scale ``ts``.

    Computes ``sum of h(u) * mu(u)`` over the scale points in ``[a, b)``.
    Summation is ascending-index pairwise (numpy), so results are
    reproducible across runs and worker counts.

    Raises
    ------
    BadInterval
        If either endpoint is not a scale point.
    ReversedInterval
        If ``a > b``.
    """
    try:
        a = ts.snap(a)
        b = ts.snap(b)
    except NotInScale as e:
        raise BadInterval("endpoints %g, %g must both lie on the scale" % (a, b)) from e
    if b < a:
        raise ReversedInterval("interval [%g, %g) is reversed" % (a, b))
    pts = ts.points_in(a, b)
    if pts.size == 0:
        return 0.0
    i0 = ts.index_of(pts[0])
    mu = ts.points[i0 + 1 : i0 + 1 + pts.size] - pts
    vals = np.array([h(u) for u in pts], dtype=float)
    return float(np.sum(vals * mu))


def triple_delta_integral(h, box, lo, hi):
    """Iterated triple delta integral of ``h(alpha, beta, gamma)``.

    Integrates axis 3 innermost, then axis 2, then axis 1, each stage a
    :func:`delta_integral_1d` over ``[lo_i, hi_i)``.  Equals the flat sum
    ``sum h(alpha,beta,gamma) * mu1 * mu2 * mu3`` up to rounding; the
    flat sum is kept as an independent oracle in the test suite.
    """
    s1, s2, s3 = box.scales

    def inner(alpha, beta):
        return delta_integral_1d(lambda gamma: h(alpha, beta, gamma), s3, lo[2], hi[2])

    def middle(alpha):
        return delta_integral_1d(lambda beta: inner(alpha, beta), s2, lo[1], hi[1])

    return delta_integral_1d(middle, s1, lo[0], hi[0])


def box_delta_integral(f, box):
    """Delta integral of ``f`` over the whole box ``[a, b)`` cubed.

    Grid-evaluates ``f`` once and contracts against the per-axis
    graininess, so it is the vectorized equivalent of
    :func:`triple_delta_integral` of ``f`` from ``a`` to ``b``.
    """
    pts, mus = [], []
    for i in range(3):
        ts = box.scales[i]
        p = ts.points_in(box.a[i], box.b[i])
        i0 = ts.index_of(p[0])
        pts.append(p)
        mus.append(ts.points[i0 + 1 : i0 + 1 + p.size] - p)
    vals = f.on_grid(*pts)
    return float(np.einsum("ijk,i,j,k->", vals, *mus))
