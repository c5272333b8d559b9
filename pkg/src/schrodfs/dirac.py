"""Four-component first-order difference operators on the spatial window.

Two mixed-sign operators act on quaternion-valued fields from the left or
the right; composing the two (in either order, either side) reproduces the
negated 7-point Laplacian on each component at interior points.  The
operators are hard-coded from their 4-row component formulas; no general
hypercomplex algebra is involved.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError
from .explicit_fs import shifted
from .lattice import ComplexField3D, QuaternionField3D

VARIANTS = ("-+", "+-")


def forward_diff(u: ComplexField3D, s: int, sign: int) -> ComplexField3D:
    """One-sided difference along axis s (1-based), zero-padded.

    sign=+1: (u(m + e_s) - u(m)) / h.  sign=-1: (u(m) - u(m - e_s)) / h.
    The pair composes to the one-dimensional second difference, which is
    what makes the operator factorization below exact.
    """
    if s not in (1, 2, 3):
        raise ConfigurationError(f"axis must be 1, 2 or 3, got {s}")
    if sign not in (1, -1):
        raise ConfigurationError(f"sign must be +1 or -1, got {sign}")
    axis = s - 1
    h = u.spec.h
    if sign == 1:
        vals = (shifted(u.values, axis, +1, "zero") - u.values) / h
    else:
        vals = (u.values - shifted(u.values, axis, -1, "zero")) / h
    return ComplexField3D(u.spec, vals)


def _diffs(u: QuaternionField3D, sign: int) -> list[list[np.ndarray]]:
    # _diffs(u, sign)[i][axis] = difference of component i along axis+1
    return [[forward_diff(u[i], s, sign).values for s in (1, 2, 3)] for i in range(4)]


def _assemble(u: QuaternionField3D, variant: str, curl_sign: float) -> QuaternionField3D:
    """Shared core of the left/right actions.

    variant picks which sign carries the divergence/gradient rows ("-+"
    puts the backward difference on them), the opposite sign carries the
    cross terms; curl_sign +1 gives the left action, -1 the right one.
    """
    if variant not in VARIANTS:
        raise ConfigurationError(f"variant must be one of {VARIANTS}, got {variant!r}")
    grad_sign = -1 if variant == "-+" else 1
    d_grad = _diffs(u, grad_sign)
    d_curl = _diffs(u, -grad_sign)
    c = curl_sign
    out0 = -d_grad[1][0] - d_grad[2][1] - d_grad[3][2]
    out1 = d_grad[0][0] + c * (-d_curl[2][2] + d_curl[3][1])
    out2 = d_grad[0][1] + c * (d_curl[1][2] - d_curl[3][0])
    out3 = d_grad[0][2] + c * (-d_curl[1][1] + d_curl[2][0])
    spec = u.spec
    return QuaternionField3D(
        spec, tuple(ComplexField3D(spec, v) for v in (out0, out1, out2, out3))
    )


def dirac_left(u: QuaternionField3D, variant: str) -> QuaternionField3D:
    """Left action.  For variant "-+" the rows read:

        out0 = -d(-1)u1 - d(-2)u2 - d(-3)u3
        out1 =  d(-1)u0 - d(+3)u2 + d(+2)u3
        out2 =  d(-2)u0 + d(+3)u1 - d(+1)u3
        out3 =  d(-3)u0 - d(+2)u1 + d(+1)u2

    where d(+s)/d(-s) are the one-sided differences along axis s.  Variant
    "+-" swaps every forward difference with its backward partner.
    """
    return _assemble(u, variant, +1.0)


def dirac_right(u: QuaternionField3D, variant: str) -> QuaternionField3D:
    """Right action: same rows as dirac_left with the cross terms negated."""
    return _assemble(u, variant, -1.0)


def interior_slice() -> tuple[slice, slice, slice]:
    """Index mask for points one cell away from every window face."""
    s = slice(1, -1)
    return (s, s, s)
