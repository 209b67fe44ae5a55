"""Numerical checks of the abelian model pair on a root line bundle.

On the bundle of degree d with mass pairing m the model is the Dirac monopole

    A = (d/2)(+-1 - cos theta) dphi,   Phi = m - d/(2r),   F = (d/2) sin theta dtheta^dphi,

written in two patches (North: +1, valid for theta < pi; South: -1, valid for
theta > 0). This is the only module that uses floating point.
"""
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)


class PatchError(ValueError): pass
class GridError(ValueError): pass


class Patch(enum.Enum):
    NORTH = 1
    SOUTH = -1


def _connection(d, patch, theta):
    return 0.5 * d * (patch.value - np.cos(theta))


def model_fields(d, m, patch, r, theta, phi=0.0):
    """(A_phi, Phi, F_thetaphi) at a point (r, theta, phi) of the patch."""
    patch = Patch[patch.upper()] if isinstance(patch, str) else patch
    if r <= 0:
        raise ValueError("the model is only defined for r > 0")
    if not 0 <= theta <= math.pi:
        raise PatchError(f"theta={theta} outside [0, pi]")
    if (patch is Patch.NORTH and theta == math.pi) or (patch is Patch.SOUTH and theta == 0):
        raise PatchError(f"theta={theta} is the excluded pole of the {patch.name.lower()} patch")
    a_phi = float(_connection(d, patch, theta))
    higgs = float(m) - d / (2.0 * r)
    curvature = 0.5 * d * math.sin(theta)
    return a_phi, higgs, curvature


@dataclass(frozen=True)
class GridSpec:
    r_range: tuple = (1.0, 10.0)
    n_r: int = 32
    n_theta: int = 32
    n_phi: int = 32
    # keeps clear of both poles so that either patch can be used
    theta_range: tuple = (math.pi / 12, 11 * math.pi / 12)

    def __post_init__(self):
        r_min, r_max = self.r_range
        if r_min < 1:
            raise GridError(f"r_min={r_min}: the model is only exact outside the unit ball")
        if r_max <= r_min:
            raise GridError("r_max must exceed r_min")
        if min(self.n_r, self.n_theta, self.n_phi) < 3:
            raise GridError("need at least 3 points in every direction")
        lo, hi = self.theta_range
        if not 0 < lo < hi < math.pi:
            raise GridError("theta range must lie strictly between the poles")

    @property
    def spacings(self):
        r_min, r_max = self.r_range
        lo, hi = self.theta_range
        return (
            (r_max - r_min) / (self.n_r - 1),
            (hi - lo) / (self.n_theta - 1),
            2 * math.pi / self.n_phi,
        )

    def refined(self):
        """Halves every spacing; the refined grid contains this one."""
        return GridSpec(self.r_range, 2 * self.n_r - 1, 2 * self.n_theta - 1,
                        2 * self.n_phi, self.theta_range)

    def axes(self):
        r = np.linspace(*self.r_range, self.n_r)
        theta = np.linspace(*self.theta_range, self.n_theta)
        phi = np.arange(self.n_phi) * (2 * math.pi / self.n_phi)
        return r, theta, phi


def chern_number(d, n_theta, n_phi, rule="gauss"):
    """(1/2pi) times the integral of F over the sphere.

    ``midpoint`` is the composite midpoint rule in both angles (second
    order); ``gauss`` uses Gauss-Legendre nodes in theta and converges
    spectrally.
    """
    if min(n_theta, n_phi) < 8:
        raise GridError("chern_number needs at least 8 nodes per angle")
    phi_weight = 2 * math.pi / n_phi
    if rule == "midpoint":
        h = math.pi / n_theta
        theta = (np.arange(n_theta) + 0.5) * h
        theta_weights = np.full(n_theta, h)
    elif rule == "gauss":
        nodes, weights = np.polynomial.legendre.leggauss(n_theta)
        theta = 0.5 * math.pi * (nodes + 1)
        theta_weights = 0.5 * math.pi * weights
    else:
        raise ValueError(f"unknown quadrature rule {rule!r}")
    integrand = 0.5 * d * np.sin(theta)
    # the integrand does not depend on phi; summing over the phi nodes keeps the 2D rule literal
    flux = np.sum(np.outer(integrand * theta_weights, np.full(n_phi, phi_weight)))
    return float(flux / (2 * math.pi))


def transition_winding(d, n_phi=64):
    """(1/2pi) times the loop integral of A_N - A_S around the equator."""
    phi_weight = 2 * math.pi / n_phi
    theta = np.full(n_phi, 0.5 * math.pi)
    jump = _connection(d, Patch.NORTH, theta) - _connection(d, Patch.SOUTH, theta)
    return float(np.sum(jump) * phi_weight / (2 * math.pi))


def residual_field(d, m, grid, patch=Patch.NORTH):
    """|(*F)_r - dPhi/dr| on the interior nodes, from central differences.

    Shape is (n_r - 2, n_theta - 2, n_phi); phi is periodic so every phi node
    is interior.
    """
    h_r, h_theta, h_phi = grid.spacings
    r, theta, phi = grid.axes()
    R, T, P = np.meshgrid(r, theta, phi, indexing="ij")

    a_theta = np.zeros_like(R)
    a_phi = _connection(d, patch, T)
    higgs = m - d / (2.0 * R)

    da_phi = (a_phi[:, 2:, :] - a_phi[:, :-2, :]) / (2 * h_theta)
    da_theta = (np.roll(a_theta, -1, axis=2) - np.roll(a_theta, 1, axis=2))[:, 1:-1, :] / (2 * h_phi)
    f_theta_phi = da_phi - da_theta
    # Hodge star of dtheta^dphi is dr / (r^2 sin theta)
    star_f_r = f_theta_phi / (R[:, 1:-1, :] ** 2 * np.sin(T[:, 1:-1, :]))
    dphi_dr = (higgs[2:, :, :] - higgs[:-2, :, :]) / (2 * h_r)

    return np.abs(star_f_r[1:-1, :, :] - dphi_dr[:, 1:-1, :])


def bogomolny_residual(d, m, grid, patch=Patch.NORTH):
    residual = residual_field(d, m, grid, patch)
    logger.debug("bogomolny residual on %dx%dx%d grid: %.3e",
                 grid.n_r, grid.n_theta, grid.n_phi, residual.max())
    return float(residual.max())


def convergence_ratio(d, m, grid, patch=Patch.NORTH):
    """residual(h) / residual(h/2), both measured on the coarse interior nodes.

    Returns nan when the fine residual vanishes (d = 0).
    """
    coarse = residual_field(d, m, grid, patch)
    fine = residual_field(d, m, grid.refined(), patch)[1::2, 1::2, ::2]
    if fine.shape != coarse.shape:
        raise GridError("refined grid does not nest the coarse grid")
    fine_max = float(fine.max())
    if fine_max == 0.0:
        return math.nan
    return float(coarse.max()) / fine_max


def truncation_estimate(d, grid):
    """Closed-form residual of the central-difference scheme at the first
    interior radius, where it is largest."""
    h_r, h_theta, _ = grid.spacings
    r1 = grid.r_range[0] + h_r
    theta_part = 1 - math.sin(h_theta) / h_theta
    radial_part = h_r ** 2 / (r1 ** 2 - h_r ** 2)
    return abs(d) / (2 * r1 ** 2) * (theta_part + radial_part)


def field_profile(d, m, patch, radii, thetas):
    """Rows (r, theta, A_phi, F_thetaphi, Phi) for plotting."""
    rows = []
    for r in radii:
        for theta in thetas:
            a_phi, higgs, curvature = model_fields(d, m, patch, r, theta)
            rows.append((r, theta, a_phi, curvature, higgs))
    return rows
