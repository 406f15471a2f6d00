"""Numerical checks of multivalued 1-forms near a branch point in the plane.

Forms live on an annulus ``r0 <= r <= r1`` sampled on the double cover
``theta in [0, 4*pi)``: nodes with ``theta >= 2*pi`` are the second sheet.
A multivalued form changes sign when carried once around the origin, so
``samples(theta + 2*pi) == -samples(theta)``.

Samples are complex. A :class:`MultivaluedForm` stores a complex 1-form
``omega = a dr + b r dtheta``; the real form it represents is ``Re(omega)``.
Keeping ``omega`` complex lets holomorphic models such as ``z^(k-1/2) dz``
be compared up to complex phases, which is what the rotation argument needs.

Expansion coefficients follow the potential basis
``a[k, nu] * r^(2k) * z^(nu + 1/2)``, i.e. angular factor
``exp(i (nu + 1/2) theta)`` and radial power ``r^(nu + 1/2 + 2k)``. The
leading two, ``A = a[0, 0]`` and ``B = a[0, 1]``, are the coefficients in
``Re(d(A z^(1/2)) + d(B z^(3/2)))``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import IO, Mapping

import numpy as np

__all__ = [
    "PolarGrid",
    "MultivaluedForm",
    "ModeExpansion",
    "LocalModelError",
    "NotInvariantError",
    "sample_vk",
    "synthesize",
    "harmonic_residual",
    "rotate_pullback",
    "multivalued_distance",
    "extract_modes",
    "a_term_vanishes_under_z3",
    "read_samples_csv",
    "write_samples_csv",
]

MONODROMY_TOL = 1e-12


class LocalModelError(ValueError):
    pass


class NotInvariantError(LocalModelError):
    """The form is not invariant under the order-3 rotation."""


@dataclass(frozen=True)
class PolarGrid:
    r0: float = 0.5
    r1: float = 1.0
    n_r: int = 64
    n_theta: int = 384

    def __post_init__(self):
        if not 0 < self.r0 < self.r1:
            raise LocalModelError(f"need 0 < r0 < r1, got r0={self.r0}, r1={self.r1}")
        if self.n_r < 8 or self.n_theta < 8:
            raise LocalModelError("grid too coarse: n_r and n_theta must be >= 8")
        if self.n_theta % 2:
            raise LocalModelError("n_theta must be even (two sheets)")

    @property
    def radii(self) -> np.ndarray:
        return np.linspace(self.r0, self.r1, self.n_r)

    @property
    def thetas(self) -> np.ndarray:
        return np.arange(self.n_theta) * self.dtheta

    @property
    def dr(self) -> float:
        return (self.r1 - self.r0) / (self.n_r - 1)

    @property
    def dtheta(self) -> float:
        return 4 * math.pi / self.n_theta

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.radii, self.thetas, indexing="ij")

    def refined(self) -> PolarGrid:
        """Grid with both spacings halved."""
        return PolarGrid(self.r0, self.r1, 2 * self.n_r - 1, 2 * self.n_theta)


@dataclass(frozen=True)
class MultivaluedForm:
    """Complex samples of shape ``(2, n_r, n_theta)``: dr and r*dtheta components."""

    grid: PolarGrid
    samples: np.ndarray
    sheet_flip: bool = True

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        shape = (2, self.grid.n_r, self.grid.n_theta)
        if s.shape != shape:
            raise LocalModelError(f"samples have shape {s.shape}, expected {shape}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        err = self.monodromy_error()
        if err > MONODROMY_TOL:
            kind = "sign flip" if self.sheet_flip else "single-valuedness"
            raise LocalModelError(f"samples violate {kind} across sheets (error {err:.3g})")

    def monodromy_error(self) -> float:
        h = self.grid.n_theta // 2
        s = self.samples
        sign = -1.0 if self.sheet_flip else 1.0
        scale = max(float(np.max(np.abs(s))), 1e-300)
        return float(np.max(np.abs(s[..., h:] - sign * s[..., :h]))) / scale

    @property
    def real(self) -> np.ndarray:
        return self.samples.real

    def __neg__(self) -> MultivaluedForm:
        return MultivaluedForm(self.grid, -self.samples, self.sheet_flip)

    def scaled(self, c: complex) -> MultivaluedForm:
        return MultivaluedForm(self.grid, c * self.samples, self.sheet_flip)

    def __add__(self, other: MultivaluedForm) -> MultivaluedForm:
        if other.grid != self.grid or other.sheet_flip != self.sheet_flip:
            raise LocalModelError("cannot add forms on different grids or monodromies")
        return MultivaluedForm(self.grid, self.samples + other.samples, self.sheet_flip)


@dataclass(frozen=True)
class ModeExpansion:
    A: complex
    B: complex
    modes: Mapping[tuple[int, int], complex] = field(default_factory=dict)
    fit_residual: float = 0.0

    def to_dict(self) -> dict:
        def pair(c):
            return [float(c.real), float(c.imag)]

        return {
            "A": pair(self.A),
            "B": pair(self.B),
            "modes": {f"{k},{nu}": pair(c) for (k, nu), c in sorted(self.modes.items())},
            "fit_residual": float(self.fit_residual),
        }


def _check_grid(f: MultivaluedForm, grid: PolarGrid | None) -> PolarGrid:
    if grid is not None and grid != f.grid:
        raise LocalModelError("form was sampled on a different grid")
    return f.grid


def _first_sheet_then_flip(grid: PolarGrid, a0: np.ndarray, b0: np.ndarray) -> np.ndarray:
    # exact monodromy: second sheet is the negated first sheet
    return np.stack([np.concatenate([a0, -a0], axis=1), np.concatenate([b0, -b0], axis=1)])


def sample_vk(k: int, grid: PolarGrid) -> MultivaluedForm:
    """Samples of ``z^(k - 1/2) dz``; the local model is its real part."""
    if k < 0:
        raise LocalModelError("k must be non-negative")
    h = grid.n_theta // 2
    r, th = np.meshgrid(grid.radii, grid.thetas[:h], indexing="ij")
    # z^(k-1/2) dz = r^(k-1/2) e^{i(k+1/2)theta} (dr + i r dtheta)
    a = r ** (k - 0.5) * np.exp(1j * (k + 0.5) * th)
    return MultivaluedForm(grid, _first_sheet_then_flip(grid, a, 1j * a), True)


def synthesize(modes: Mapping[tuple[int, int], complex], grid: PolarGrid) -> MultivaluedForm:
    """``d`` of the potential ``sum a[k, nu] r^(2k) z^(nu + 1/2)``."""
    h = grid.n_theta // 2
    r, th = np.meshgrid(grid.radii, grid.thetas[:h], indexing="ij")
    a = np.zeros_like(r, dtype=complex)
    b = np.zeros_like(r, dtype=complex)
    for (k, nu), c in sorted(modes.items()):
        if k < 0 or nu < 0:
            raise LocalModelError(f"mode indices must be non-negative, got {(k, nu)}")
        mu = nu + 0.5
        m = 2 * k + mu
        psi_over_r = c * r ** (m - 1) * np.exp(1j * mu * th)
        a += m * psi_over_r
        b += 1j * mu * psi_over_r
    return MultivaluedForm(grid, _first_sheet_then_flip(grid, a, b), True)


def harmonic_residual(f: MultivaluedForm, grid: PolarGrid | None = None) -> tuple[float, float]:
    """Max |dv| and |d*v| over interior nodes, flat metric, centered differences.

    With ``v = P dr + Q r dtheta``::

        dv  = (d_r(r Q) - d_theta P) / r
        d*v = (d_r(r P) + d_theta Q) / r
    """
    grid = _check_grid(f, grid)
    if grid.n_r < 8 or grid.n_theta < 8:
        raise LocalModelError("grid too coarse")
    P, Q = f.samples
    r = grid.radii[:, None]

    def d_r(x):
        return (x[2:] - x[:-2]) / (2 * grid.dr)

    def d_theta(x):
        return (np.roll(x, -1, axis=1) - np.roll(x, 1, axis=1))[1:-1] / (2 * grid.dtheta)

    ri = r[1:-1]
    curl = (d_r(r * Q) - d_theta(P)) / ri
    div = (d_r(r * P) + d_theta(Q)) / ri
    return float(np.max(np.abs(curl))), float(np.max(np.abs(div)))


def rotate_pullback(f: MultivaluedForm, grid: PolarGrid | None = None) -> MultivaluedForm:
    """Pullback under ``z -> exp(2 pi i / 3) z``, lifted as ``theta -> theta + 2 pi / 3``."""
    grid = _check_grid(f, grid)
    if grid.n_theta % 6:
        raise LocalModelError("rotation by 2*pi/3 needs n_theta divisible by 6")
    shift = grid.n_theta // 6
    # polar components are rotation invariant, so only the node moves
    return MultivaluedForm(grid, np.roll(f.samples, -shift, axis=-1), f.sheet_flip)


def multivalued_distance(f: MultivaluedForm, g: MultivaluedForm) -> float:
    """Relative max-norm distance, identifying a form with its sheet swap."""
    if f.grid != g.grid:
        raise LocalModelError("forms live on different grids")
    scale = max(float(np.max(np.abs(f.samples))), float(np.max(np.abs(g.samples))), 1e-300)
    diff = float(np.max(np.abs(f.samples - g.samples)))
    if f.sheet_flip and g.sheet_flip:
        diff = min(diff, float(np.max(np.abs(f.samples + g.samples))))
    return diff / scale


def angular_modes(f: MultivaluedForm, nu_max: int) -> np.ndarray:
    """Circle projections of the real form onto ``exp(i (nu + 1/2) theta)``.

    Returns an array of shape ``(nu_max + 1, n_r)``. For ``v = Re(d phi)``
    with ``phi`` holomorphic, ``v_r - i v_theta`` equals ``phi' exp(i theta)``.
    """
    grid = f.grid
    v = f.real
    w = v[0] - 1j * v[1]
    nus = np.arange(nu_max + 1)
    kernel = np.exp(-1j * np.outer(grid.thetas, nus + 0.5))  # (n_theta, nu)
    return (w @ kernel).T / grid.n_theta


def extract_modes(
    f: MultivaluedForm,
    grid: PolarGrid | None = None,
    nu_max: int = 3,
    k_max: int = 2,
) -> ModeExpansion:
    grid = _check_grid(f, grid)
    if nu_max < 0 or k_max < 0:
        raise LocalModelError("nu_max and k_max must be non-negative")
    nu_fit = max(nu_max, 1)
    radii = grid.radii
    if len(np.unique(radii)) < max(3, k_max + 1):
        raise LocalModelError("too few radii for the requested radial fit")
    proj = angular_modes(f, nu_fit)
    modes: dict[tuple[int, int], complex] = {}
    resid2 = 0.0
    norm2 = 0.0
    ks = np.arange(k_max + 1)
    for nu in range(nu_fit + 1):
        # dz-coefficient of r^(2k) z^(nu+1/2) carries radial power r^(nu - 1/2 + 2k)
        V = radii[:, None] ** (nu - 0.5 + 2 * ks[None, :])
        col = np.linalg.norm(V, axis=0)
        coef, _, rank, _ = np.linalg.lstsq(V / col, proj[nu], rcond=None)
        if rank < V.shape[1]:
            raise LocalModelError(f"rank-deficient radial fit for nu={nu}")
        coef = coef / col
        resid2 += float(np.sum(np.abs(V @ coef - proj[nu]) ** 2))
        norm2 += float(np.sum(np.abs(proj[nu]) ** 2))
        for k in ks:
            modes[(int(k), nu)] = complex(coef[k] / (k + nu + 0.5))
    fit_residual = math.sqrt(resid2 / norm2) if norm2 > 0 else 0.0
    return ModeExpansion(
        A=modes[(0, 0)],
        B=modes[(0, 1)],
        modes={key: c for key, c in modes.items() if key[1] <= nu_max},
        fit_residual=fit_residual,
    )


def a_term_vanishes_under_z3(
    f: MultivaluedForm,
    grid: PolarGrid | None = None,
    tol: float = 1e-6,
) -> bool:
    """Check that an order-3 invariant form has no ``z^(1/2)`` term.

    Raises :class:`NotInvariantError` when ``f`` is not invariant (up to the
    sheet swap) under the rotation.
    """
    grid = _check_grid(f, grid)
    dist = multivalued_distance(rotate_pullback(f), f)
    if dist > tol:
        raise NotInvariantError(f"form is not Z3-invariant: distance {dist:.3g} > tol {tol:g}")
    exp = extract_modes(f)
    scale = max(abs(exp.A), abs(exp.B), 1.0)
    return abs(exp.A) <= tol * scale


# CSV exchange ---------------------------------------------------------------

CSV_COLUMNS = ["r", "theta", "sheet", "re_dr", "im_dr", "re_dtheta", "im_dtheta"]


def write_samples_csv(f: MultivaluedForm, stream: IO[str]) -> None:
    """One row per node; ``theta`` is the angle within its sheet, in [0, 2*pi)."""
    grid = f.grid
    h = grid.n_theta // 2
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for i, r in enumerate(grid.radii):
        for j, th in enumerate(grid.thetas):
            sheet = 0 if j < h else 1
            a, b = f.samples[0, i, j], f.samples[1, i, j]
            w.writerow([repr(float(r)), repr(float(grid.thetas[j - sheet * h])), sheet,
                        repr(float(a.real)), repr(float(a.imag)),
                        repr(float(b.real)), repr(float(b.imag))])


def read_samples_csv(stream: IO[str] | str) -> MultivaluedForm:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.DictReader(stream)
    missing = set(CSV_COLUMNS) - set(reader.fieldnames or [])
    if missing:
        raise LocalModelError(f"samples file lacks columns {sorted(missing)}")
    rows = list(reader)
    if not rows:
        raise LocalModelError("samples file is empty")
    data = np.array([[float(row[c]) for c in CSV_COLUMNS] for row in rows])
    r = data[:, 0]
    ang = data[:, 1] + 2 * math.pi * data[:, 2]
    radii = np.unique(r)
    n_r = len(radii)
    if n_r < 2 or not np.allclose(np.diff(radii), radii[1] - radii[0], rtol=1e-9):
        raise LocalModelError("radii must be uniformly spaced")
    n_theta = len(rows) // n_r
    if n_theta * n_r != len(rows):
        raise LocalModelError("samples do not form a full tensor grid")
    grid = PolarGrid(float(radii[0]), float(radii[-1]), n_r, n_theta)
    ri = np.rint((r - grid.r0) / grid.dr).astype(int)
    ti = np.rint(ang / grid.dtheta).astype(int) % n_theta
    samples = np.full((2, n_r, n_theta), np.nan, dtype=complex)
    samples[0, ri, ti] = data[:, 3] + 1j * data[:, 4]
    samples[1, ri, ti] = data[:, 5] + 1j * data[:, 6]
    if np.isnan(samples).any():
        raise LocalModelError("samples do not cover every grid node")
    try:
        return MultivaluedForm(grid, samples, True)
    except LocalModelError:
        return MultivaluedForm(grid, samples, False)
