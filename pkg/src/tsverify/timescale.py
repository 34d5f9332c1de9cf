"""Bounded time scales and product boxes.

A time scale here is a finite, nonempty set of reals held in sorted order.
Three constructions cover everything the harness needs: explicit finite
sets, uniform grids, and geometric grids.  The jump operators and the
graininess follow the usual conventions, with ``sigma(max) == max`` and
``rho(min) == min``.
"""

import numpy as np

from .errors import NotInScale, OutOfRange, ReversedInterval, UnsupportedKind

# Relative snap tolerance for deciding that a float names a scale point.
MEMBER_RTOL = 1e-12


def _tol(t):
    return MEMBER_RTOL * max(1.0, abs(t))


class TimeScale:
    """A bounded time scale backed by a sorted array of points.

    Parameters
    ----------
    kind : str
        One of ``"finite"``, ``"uniform"``, ``"geometric"``.  Construction
        through the classmethods is preferred; the kind only matters for
        :meth:`refine` and for config round-trips.
    points : array_like
        Strictly increasing 1-D collection of at least two reals.
    """

    __slots__ = ("kind", "points")

    def __init__(self, kind, points):
        pts = np.array(points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a time scale needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("time scale points must be finite")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("time scale points must be strictly increasing")
        self.kind = kind
        self.points = pts
        self.points.setflags(write=False)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def finite(cls, points):
        """Scale from an explicit collection of reals (sorted, deduplicated)."""
        pts = np.unique(np.asarray(points, dtype=float))
        return cls("finite", pts)

    @classmethod
    def uniform(cls, start, stop, step):
        """Scale ``start, start + step, ..., stop`` with a uniform step.

        ``stop`` must be reachable from ``start`` in a whole number of
        steps, up to the membership tolerance.
        """
        if step <= 0:
            raise ValueError("step must be positive")
        if stop <= start:
            raise ValueError("stop must exceed start")
        count = int(round((stop - start) / step)) + 1
        if count < 2 or abs(start + (count - 1) * step - stop) > _tol(stop):
            raise ValueError("stop is not start plus a whole number of steps")
        pts = start + step * np.arange(count)
        # guard against accumulated rounding on the last point
        pts[-1] = stop
        return cls("uniform", pts)

    @classmethod
    def geometric(cls, start, ratio, count):
        """Scale ``start * ratio**k`` for ``k = 0, ..., count - 1``."""
        if start <= 0:
            raise ValueError("start must be positive")
        if ratio <= 0 or ratio == 1.0:
            raise ValueError("ratio must be positive and different from 1")
        if count < 2:
            raise ValueError("count must be at least 2")
        pts = start * ratio ** np.arange(count)
        return cls("geometric", np.sort(pts))

    # ------------------------------------------------------------------
    # basic queries

    @property
    def min(self):
        return float(self.points[0])

    @property
    def max(self):
        return float(self.points[-1])

    def __len__(self):
        return self.points.size

    def __repr__(self):
        return "TimeScale(%s, %d points on [%g, %g])" % (
            self.kind,
            len(self),
            self.min,
            self.max,
        )

    def __eq__(self, other):
        if not isinstance(other, TimeScale):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.points, other.points)

    def index_of(self, t):
        """Index of the scale point equal to ``t`` within the snap tolerance.

        Raises
        ------
        NotInScale
            If no point of the scale matches ``t``.
        """
        i = int(np.searchsorted(self.points, t))
        for j in (i - 1, i):
            if 0 <= j < self.points.size and abs(self.points[j] - t) <= _tol(t):
                return j
        raise NotInScale("%r is not a point of %r" % (t, self))

    def __contains__(self, t):
        try:
            self.index_of(t)
        except NotInScale:
            return False
        return True

    def snap(self, t):
        """The stored point equal to ``t`` within tolerance."""
        return float(self.points[self.index_of(t)])

    # ------------------------------------------------------------------
    # jump operators

    def sigma(self, t):
        """Forward jump: the next scale point, or ``t`` itself at the maximum."""
        i = self.index_of(t)
        if i + 1 < self.points.size:
            return float(self.points[i + 1])
        return float(self.points[i])

    def rho(self, t):
        """Backward jump: the previous scale point, or ``t`` itself at the minimum."""
        i = self.index_of(t)
        if i > 0:
            return float(self.points[i - 1])
        return float(self.points[i])

    def graininess(self, t):
        """Forward graininess ``sigma(t) - t`` (zero at the maximum)."""
        i = self.index_of(t)
        if i + 1 < self.points.size:
            return float(self.points[i + 1] - self.points[i])
        return 0.0

    mu = graininess

    # ------------------------------------------------------------------
    # ranges and refinement

    def points_in(self, a, b):
        """Scale points in the half-open interval ``[a, b)``.

        Endpoint comparisons use the snap tolerance, so a point within
        tolerance of ``a`` is included and one within tolerance of ``b``
        is excluded.  Returns an empty array when ``a >= b``.
        """
        if b <= a:
            return self.points[0:0]
        i0 = int(np.searchsorted(self.points, a - _tol(a)))
        i1 = int(np.searchsorted(self.points, b - _tol(b)))
        return self.points[i0:i1]

    def refine(self):
        """Halve the step of a uniform scale, keeping the endpoints.

        Raises
        ------
        UnsupportedKind
            For finite and geometric scales, which have no canonical
            refinement.
        """
        if self.kind != "uniform":
            raise UnsupportedKind("refine is only defined for uniform scales")
        step = float(self.points[1] - self.points[0])
        return TimeScale.uniform(self.min, self.max, step / 2.0)


class Box3:
    """A product of closed intervals on three time scales, with a base point.

    The box is the region ``[a1, b1] x [a2, b2] x [a3, b3]`` where each
    ``[ai, bi]`` is cut out of scale ``i``, together with a base point
    ``(base1, base2, base3)`` inside it.  Everything downstream evaluates
    on the grid of scale points inside the box, so endpoints and base are
    snapped to exact stored points at construction.

    The admissible region for evaluation points starts at
    ``sigma_i(base_i)`` on each axis; construction fails if that exceeds
    ``b_i``, which would make the region empty.
    """

    __slots__ = ("scales", "a", "b", "base", "_lo", "_hi", "_base_idx")

    def __init__(self, scales, a, b, base):
        scales = tuple(scales)
        if len(scales) != 3:
            raise ValueError("a Box3 needs exactly three scales")
        a = tuple(float(v) for v in a)
        b = tuple(float(v) for v in b)
        base = tuple(float(v) for v in base)
        lo, hi, bi = [], [], []
        for i, ts in enumerate(scales):
            ilo = ts.index_of(a[i])
            ihi = ts.index_of(b[i])
            if ihi <= ilo:
                raise ReversedInterval(
                    "axis %d: endpoints %g, %g are not increasing" % (i, a[i], b[i])
                )
            ib = ts.index_of(base[i])
            if not ilo <= ib <= ihi:
                raise OutOfRange(
                    "axis %d: base %g lies outside [%g, %g]" % (i, base[i], a[i], b[i])
                )
            # sigma(base) past b would leave no admissible points on this axis
            if ib + 1 <= ihi:
                pass
            elif ts.graininess(base[i]) > 0.0:
                raise OutOfRange(
                    "axis %d: sigma(base) exceeds %g, admissible region is empty"
                    % (i, b[i])
                )
            lo.append(ilo)
            hi.append(ihi)
            bi.append(ib)
        self.scales = scales
        self._lo = tuple(lo)
        self._hi = tuple(hi)
        self._base_idx = tuple(bi)
        self.a = tuple(float(scales[i].points[lo[i]]) for i in range(3))
        self.b = tuple(float(scales[i].points[hi[i]]) for i in range(3))
        self.base = tuple(float(scales[i].points[bi[i]]) for i in range(3))

    def __repr__(self):
        return "Box3(a=%r, b=%r, base=%r)" % (self.a, self.b, self.base)

    def axis_points(self, i):
        """Scale points of axis ``i`` in the closed interval ``[a_i, b_i]``."""
        return self.scales[i].points[self._lo[i] : self._hi[i] + 1]

    def axis_mu(self, i):
        """Graininess of the axis-``i`` points in ``[a_i, b_i)``, length n-1."""
        return np.diff(self.axis_points(i))

    def grid_shape(self):
        """Number of closed-box grid points per axis."""
        return tuple(self._hi[i] - self._lo[i] + 1 for i in range(3))

    def base_offset(self, i):
        """Index of ``base_i`` within :meth:`axis_points`."""
        return self._base_idx[i] - self._lo[i]

    def axis_index(self, i, t):
        """Index of coordinate ``t`` within :meth:`axis_points`.

        Raises
        ------
        NotInScale
            If ``t`` is not a point of scale ``i``.
        OutOfRange
            If ``t`` lies outside ``[a_i, b_i]``.
        """
        j = self.scales[i].index_of(t)
        if not self._lo[i] <= j <= self._hi[i]:
            raise OutOfRange(
                "axis %d: %g lies outside [%g, %g]" % (i, t, self.a[i], self.b[i])
            )
        return j - self._lo[i]

    def s_offset(self, i):
        """Index of ``sigma_i(base_i)`` within :meth:`axis_points`.

        Equals ``base_offset(i)`` when the base is right-dense at the box
        maximum, i.e. when ``sigma(base) == base == b_i``.
        """
        off = self._base_idx[i] - self._lo[i]
        if self._base_idx[i] + 1 <= self._hi[i]:
            return off + 1 if self.scales[i].graininess(self.base[i]) > 0.0 else off
        return off

    def sigma_base(self, i):
        """The point ``sigma_i(base_i)``, clipped to the box by construction."""
        return float(self.axis_points(i)[self.s_offset(i)])

    def widths(self):
        """Tuple of ``b_i - sigma_i(base_i)`` across the three axes."""
        return tuple(self.b[i] - self.sigma_base(i) for i in range(3))
