"""Octant representation identities and the A and B functionals.

For a base point with per-axis corners ``S_i = sigma_i(base_i)`` and
``b_i``, the value f(p) at any admissible point decomposes, for each of
the eight octants, into seven boundary evaluations plus a signed triple
delta integral of the mixed partial over the octant's sub-box.  All
eight identities are generated from one parametric expansion of the
telescoping construction: integrating the mixed partial over a product
of intervals telescopes, per axis, to a difference of evaluations at the
interval ends, and solving the resulting eight-corner alternating sum
for f(p) yields the corner combination.  One octant is pinned against a
hand-written formula in the tests as the golden cross-check.

Averaging the eight identities gives ``f - A(f) = (1/8) B(f)`` with A a
fixed corner/edge/face weighting and B the signed sum of the eight
octant integrals.

Two evaluation routes exist.  The pointwise functions below follow the
construction literally (explicit corner terms, iterated integrals) and
are the slow reference.  :class:`BoxFields` evaluates everything at all
admissible points at once through the prefix-sum kernels; the test suite
holds the two routes together.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .calculus import (
    grid_values,
    mixed_partial,
    mixed_partial_from_values,
    triple_delta_integral,
)
from .errors import OutOfOctantRange, OutOfRange


@dataclass(frozen=True)
class Octant:
    """Per-axis direction flags; ``high[i]`` means the integral on axis i
    runs from the coordinate up to ``b_i``, low means from ``sigma_i(base_i)``
    up to the coordinate."""

    high: tuple

    @classmethod
    def from_label(cls, label):
        if len(label) != 3 or any(ch not in "LH" for ch in label):
            raise ValueError("octant label must be three letters from {L, H}")
        return cls(tuple(ch == "H" for ch in label))

    @property
    def label(self):
        return "".join("H" if h else "L" for h in self.high)

    @property
    def sign(self):
        """Sign of the octant's integral term: -1 for an odd number of
        high axes, +1 otherwise."""
        return -1 if sum(self.high) % 2 else 1

    @property
    def binary_index(self):
        """Index into kernel octant output (bit weights 4, 2, 1)."""
        return self.high[0] * 4 + self.high[1] * 2 + self.high[2]

    def low(self, i):
        return not self.high[i]


#: The eight octants in canonical order.
OCTANTS = tuple(
    Octant.from_label(s)
    for s in ("LLL", "LLH", "LHL", "HLL", "LHH", "HHL", "HLH", "HHH")
)


@dataclass(frozen=True)
class CornerCombination:
    """The boundary part of one octant identity.

    ``terms`` holds (sign, point) pairs: four positive and three
    negative evaluations at points mixing the coordinates of p with the
    octant's corners.  ``integral_sign`` is the sign carried by the
    octant's triple integral.
    """

    terms: tuple
    integral_sign: int

    def __post_init__(self):
        pos = sum(1 for s, _ in self.terms if s > 0)
        neg = sum(1 for s, _ in self.terms if s < 0)
        if (pos, neg) != (4, 3):
            raise ValueError("corner combination must have 4 positive and 3 negative terms")

    def evaluate(self, f):
        acc = 0.0
        for sign, pt in self.terms:
            acc += sign * f(*pt)
        return acc


def _require_admissible(p, box, err):
    idx = []
    for i in range(3):
        j = box.axis_index(i, p[i])
        if j < box.s_offset(i):
            raise err(
                "axis %d: coordinate %g lies below sigma(base) = %g"
                % (i, p[i], box.sigma_base(i))
            )
        idx.append(j)
    return tuple(idx)


def corner_combination(octant, p, box):
    """The seven signed boundary terms of one octant identity at ``p``.

    For each nonempty subset of axes, the point moves those coordinates
    of p to the octant's corner (``sigma(base)`` on low axes, ``b`` on
    high axes); the term's sign is + for odd subsets and - for even
    ones, independent of the octant's directions.
    """
    _require_admissible(p, box, OutOfOctantRange)
    c = tuple(
        box.sigma_base(i) if octant.low(i) else box.b[i] for i in range(3)
    )
    terms = []
    for mask in range(1, 8):
        pt = tuple(c[i] if (mask >> i) & 1 else p[i] for i in range(3))
        sign = 1 if bin(mask).count("1") % 2 else -1
        terms.append((sign, pt))
    return CornerCombination(terms=tuple(terms), integral_sign=octant.sign)


def octant_ranges(octant, p, box):
    """Integration bounds (lo, hi) per axis for the octant's sub-box."""
    lo, hi = [], []
    for i in range(3):
        if octant.low(i):
            lo.append(box.sigma_base(i))
            hi.append(p[i])
        else:
            lo.append(p[i])
            hi.append(box.b[i])
    return tuple(lo), tuple(hi)


def octant_identity_rhs(f, octant, p, box, field=None):
    """Right side of one octant identity: corner combination plus the
    signed triple delta integral of the mixed partial over the octant's
    sub-box.  Equals f(p) up to rounding; that equality is the module's
    core contract.

    Pass a precomputed ``field`` (from :func:`mixed_partial`) when
    evaluating many points of the same function.

    Raises
    ------
    OutOfOctantRange
        If some coordinate of ``p`` leaves [sigma(base), b].
    """
    cc = corner_combination(octant, p, box)
    if field is None:
        field = mixed_partial(f, box)
    lo, hi = octant_ranges(octant, p, box)
    integral = triple_delta_integral(field, box, lo, hi)
    return cc.evaluate(f) + cc.integral_sign * integral


def identity_residual(f, octant, p, box, field=None):
    """Absolute defect |f(p) - octant_identity_rhs(...)| at one point."""
    return abs(f(*p) - octant_identity_rhs(f, octant, p, box, field=field))


def functional_A(f, p, box):
    """The corner/edge/face weighting of f at ``p``.

    One eighth of the sum over the eight corners built from
    ``{sigma_i(base_i), b_i}``, plus half the six single-axis
    substitutions, minus a quarter of the twelve double substitutions.
    Algebraically equal to the average over the eight octants of their
    corner combinations, which the tests assert.
    """
    _require_admissible(p, box, OutOfRange)
    x, y, z = (float(v) for v in p)
    S = tuple(box.sigma_base(i) for i in range(3))
    b = box.b
    corners = 0.0
    for c1 in (S[0], b[0]):
        for c2 in (S[1], b[1]):
            for c3 in (S[2], b[2]):
                corners += f(c1, c2, c3)
    singles = (
        f(S[0], y, z)
        + f(b[0], y, z)
        + f(x, S[1], z)
        + f(x, b[1], z)
        + f(x, y, S[2])
        + f(x, y, b[2])
    )
    doubles = 0.0
    for c1 in (S[0], b[0]):
        for c2 in (S[1], b[1]):
            doubles += f(c1, c2, z)
    for c1 in (S[0], b[0]):
        for c3 in (S[2], b[2]):
            doubles += f(c1, y, c3)
    for c2 in (S[1], b[1]):
        for c3 in (S[2], b[2]):
            doubles += f(x, c2, c3)
    return corners / 8.0 + singles / 2.0 - doubles / 4.0


def functional_B(f, p, box, field=None):
    """Signed sum over the eight octants of the triple delta integral of
    the mixed partial over that octant's sub-box, signs alternating with
    the parity of high axes.  Satisfies f(p) - A(f)(p) = B(f)(p) / 8."""
    _require_admissible(p, box, OutOfRange)
    if field is None:
        field = mixed_partial(f, box)
    total = 0.0
    for octant in OCTANTS:
        lo, hi = octant_ranges(octant, p, box)
        total += octant.sign * triple_delta_integral(field, box, lo, hi)
    return total


def averaged_identity_residual(f, p, box, field=None):
    """Absolute defect |f(p) - A(f)(p) - B(f)(p)/8| at one point."""
    a = functional_A(f, p, box)
    bb = functional_B(f, p, box, field=field)
    return abs(f(*p) - a - bb / 8.0)


class BoxFields:
    """All identity and functional values of one function over one box,
    evaluated on the full admissible grid through the prefix-sum kernels.

    The admissible grid on axis i is the box points in
    ``[sigma_i(base_i), b_i]``; fields below are arrays over its product,
    shape ``(m1, m2, m3)``.  Octant integrals are exact box sums of the
    weighted third-order difference, so no graininess division enters
    the identity route.
    """

    def __init__(self, f, box):
        self.box = box
        self.F = grid_values(f, box)
        self.field = mixed_partial_from_values(self.F, box)
        self.offsets = tuple(box.s_offset(i) for i in range(3))
        P = kernels.prefix_sum3(self.field.weighted)
        self._sums = kernels.octant_sums(P, *self.offsets)
        s1, s2, s3 = self.offsets
        self.values = self.F[s1:, s2:, s3:]
        self._mu = None
        self._corner_cache = {}

    # ------------------------------------------------------------------
    # per-octant fields

    def octant_integral(self, octant):
        """Triple delta integral of the mixed partial over the octant
        sub-box, as a field over all admissible points."""
        return self._sums[octant.binary_index]

    def corner_field(self, octant):
        """The octant's corner combination at all admissible points."""
        if octant.label in self._corner_cache:
            return self._corner_cache[octant.label]
        n1, n2, n3 = self.F.shape
        s1, s2, s3 = self.offsets
        adm = (slice(s1, n1), slice(s2, n2), slice(s3, n3))
        cidx = []
        for i, n in enumerate((n1, n2, n3)):
            c = self.offsets[i] if octant.low(i) else n - 1
            cidx.append(slice(c, c + 1))
        out = np.zeros(self.values.shape)
        for mask in range(1, 8):
            sel = tuple(
                cidx[i] if (mask >> i) & 1 else adm[i] for i in range(3)
            )
            sign = 1.0 if bin(mask).count("1") % 2 else -1.0
            out += sign * self.F[sel[0], sel[1], sel[2]]
        self._corner_cache[octant.label] = out
        return out

    def identity_rhs_field(self, octant):
        return self.corner_field(octant) + octant.sign * self.octant_integral(octant)

    def identity_residual_field(self, octant):
        """Relative residual |f - rhs| / (1 + |f|) over the admissible grid."""
        r = np.abs(self.values - self.identity_rhs_field(octant))
        return r / (1.0 + np.abs(self.values))

    def max_identity_residual(self):
        """Worst relative identity residual over all octants and points."""
        return max(
            float(np.max(self.identity_residual_field(octant)))
            for octant in OCTANTS
        )

    # ------------------------------------------------------------------
    # functionals

    def a_field(self):
        """functional_A at all admissible points (octant-average form)."""
        acc = np.zeros(self.values.shape)
        for octant in OCTANTS:
            acc += self.corner_field(octant)
        return acc / 8.0

    def b_field(self):
        """functional_B at all admissible points."""
        acc = np.zeros(self.values.shape)
        for octant in OCTANTS:
            if octant.sign > 0:
                acc += self.octant_integral(octant)
            else:
                acc -= self.octant_integral(octant)
        return acc

    def averaged_residual_field(self):
        """Relative residual of f - A - B/8 over the admissible grid."""
        r = np.abs(self.values - self.a_field() - self.b_field() / 8.0)
        return r / (1.0 + np.abs(self.values))

    def max_averaged_residual(self):
        return float(np.max(self.averaged_residual_field()))

    # ------------------------------------------------------------------
    # integration over the admissible region

    def admissible_mu(self):
        """Graininess product over [sigma(base), b) per axis, outer form."""
        if self._mu is None:
            m1 = self.box.axis_mu(0)[self.offsets[0] :]
            m2 = self.box.axis_mu(1)[self.offsets[1] :]
            m3 = self.box.axis_mu(2)[self.offsets[2] :]
            self._mu = m1[:, None, None] * m2[None, :, None] * m3[None, None, :]
        return self._mu

    def integrate(self, G):
        """Triple delta integral over [sigma(base), b)^3 of a field given
        on the admissible grid."""
        return float(np.sum(G[:-1, :-1, :-1] * self.admissible_mu()))

    def abs_mixed_integral(self):
        """Integral of |mixed partial| over [sigma(base), b)^3, summed
        directly from the weighted differences."""
        s1, s2, s3 = self.offsets
        return float(np.sum(np.abs(self.field.weighted[s1:, s2:, s3:])))

    @property
    def sup_norm_mixed(self):
        return self.field.sup_norm
