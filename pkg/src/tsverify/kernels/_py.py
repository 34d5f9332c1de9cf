"""Reference numpy backend for the hot kernels.

The compiled backend replicates these routines operation for operation:
identical expression trees, identical accumulation order.  Any change
here must be mirrored there, or backend parity tests will fail.
"""

import numpy as np


def forward_diff3(F):
    """Third-order forward difference of a 3-D array.

    Output cell (i,j,k) is the signed sum of the 8 cube corners
    F[i..i+1, j..j+1, k..k+1], positive where an odd number of indices
    step forward.  Shape shrinks by one along each axis.

    For a grid of function values this equals the mixed third-order
    delta partial times the graininess product mu1*mu2*mu3, so box sums
    of the output are triple delta integrals of the mixed partial.
    """
    return (
        F[1:, 1:, 1:]
        - F[:-1, 1:, 1:]
        - F[1:, :-1, 1:]
        - F[1:, 1:, :-1]
        + F[:-1, :-1, 1:]
        + F[:-1, 1:, :-1]
        + F[1:, :-1, :-1]
        - F[:-1, :-1, :-1]
    )


def prefix_sum3(W):
    """Zero-padded 3-D inclusive prefix sums.

    P has one extra cell per axis; P[i,j,k] is the sum of W over the
    index box [0,i) x [0,j) x [0,k).  Accumulation is sequential along
    axis 0, then 1, then 2.
    """
    m1, m2, m3 = W.shape
    P = np.zeros((m1 + 1, m2 + 1, m3 + 1))
    P[1:, 1:, 1:] = W.cumsum(0).cumsum(1).cumsum(2)
    return P


def _corner(P, sel1, sel2, sel3):
    return P[sel1, sel2, sel3]


def octant_sums(P, s1, s2, s3):
    """Box sums of W over all 8 octant ranges at every admissible point.

    ``P`` is the padded prefix array of W with per-axis size n (so W had
    n-1 cells per axis).  The admissible points run over indices
    [s_i, n_i - 1] on each axis.  For octant bit b on axis i the summed
    W range at point p is [s_i, p_i) when b=0 (low side) and
    [p_i, n_i - 1) when b=1 (high side).

    Returns an (8, m1, m2, m3) array, octants in binary order with bit
    weights (4, 2, 1) for axes (1, 2, 3) and bit value 1 meaning high.
    """
    ns = P.shape
    offs = (s1, s2, s3)
    out = np.empty((8, ns[0] - s1, ns[1] - s2, ns[2] - s3))
    for idx in range(8):
        bits = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1)
        sel = []
        for i in range(3):
            var = slice(offs[i], ns[i])
            if bits[i]:
                sel.append((var, slice(ns[i] - 1, ns[i])))
            else:
                sel.append((slice(offs[i], offs[i] + 1), var))

        def T(c1, c2, c3):
            return _corner(P, sel[0][c1], sel[1][c2], sel[2][c3])

        out[idx] = ((T(1, 1, 1) - T(0, 1, 1)) - (T(1, 0, 1) - T(0, 0, 1))) - (
            (T(1, 1, 0) - T(0, 1, 0)) - (T(1, 0, 0) - T(0, 0, 0))
        )
    return out
