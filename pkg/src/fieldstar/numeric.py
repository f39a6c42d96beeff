"""Floating-point oracles for the symbolic calculus.

Random band-limited periodic field profiles are sampled on a uniform grid
over the 2*pi torus (any session dimension; jets evaluate spectrally, so
derivatives of band-limited data are exact up to rounding).  Function
symbols evaluate as shifted sines, whose derivative tower is closed and
which vanish at zero as condition B requires.
"""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from .jets import FieldExpr, FieldSystem, mi_order


DEFAULT_CONSTANTS = {"m": 1.25, "kappa": 0.75}


def default_function(order: int, values: np.ndarray) -> np.ndarray:
    """U(z) = sin(z); the order-k derivative is sin(z + k*pi/2)."""
    return np.sin(values + order * math.pi / 2)


class GridSampler:
    """Random trigonometric field profiles on a periodic grid."""

    def __init__(self, dim: int, points: int = 256, max_mode: int = 3,
                 rng: random.Random | None = None):
        self.dim = dim
        self.points = points
        self.max_mode = max_mode
        self.rng = rng or random.Random(0)
        axes = [np.arange(points) * (2 * math.pi / points) for _ in range(dim)]
        self.grids = np.meshgrid(*axes, indexing="ij") if dim > 1 else \
            [axes[0]]

    def profile(self) -> np.ndarray:
        """A random real band-limited profile."""
        out = np.zeros_like(self.grids[0])
        for _ in range(4):
            amp = self.rng.uniform(-1.0, 1.0)
            phase = self.rng.uniform(0, 2 * math.pi)
            wave = np.zeros_like(out) + phase
            for axis in range(self.dim):
                k = self.rng.randint(-self.max_mode, self.max_mode)
                wave = wave + k * self.grids[axis]
            out = out + amp * np.sin(wave)
        return out


def spectral_derivative(values: np.ndarray, index) -> np.ndarray:
    """Mixed partial d^index of a periodic grid sample, exact for
    band-limited data."""
    if mi_order(tuple(index)) == 0:
        return values
    spec = np.fft.fftn(values)
    for axis, order in enumerate(index):
        if not order:
            continue
        n = values.shape[axis]
        k = np.fft.fftfreq(n, d=1.0 / n)
        shape = [1] * values.ndim
        shape[axis] = n
        spec = spec * (1j * k.reshape(shape)) ** order
    return np.fft.ifftn(spec).real


def eval_field_expr(expr: FieldExpr, profiles: dict,
                    constants: dict | None = None,
                    functions: dict | None = None) -> np.ndarray:
    """Evaluate on the grid given per-sort profiles.

    profiles: sort -> real grid array; jets are derived spectrally and
    cached.  constants: name -> float.  functions: name -> callable
    (order, values) -> values.
    """
    constants = DEFAULT_CONSTANTS if constants is None else constants
    functions = {"U": default_function} if functions is None else functions
    cache: dict = {}

    def jet_values(sort: str, index) -> np.ndarray:
        key = (sort, index)
        if key not in cache:
            cache[key] = spectral_derivative(profiles[sort], index)
        return cache[key]

    shape = next(iter(profiles.values())).shape
    total = np.zeros(shape, dtype=complex)
    for mon, c in expr.terms.items():
        term = np.full(shape, complex(c))
        for atom in mon:
            if atom[0] == "c":
                term = term * constants[atom[1]]
            elif atom[0] == "f":
                _, name, order, arg_sort, _v = atom
                term = term * functions[name](order, profiles[arg_sort])
            else:
                term = term * jet_values(atom[1], atom[2])
        total = total + term
    return total


def grid_integral(values: np.ndarray) -> complex:
    """Trapezoidal = exact spectral integral over the torus."""
    cell = (2 * math.pi) ** values.ndim / values.size
    return complex(values.sum() * cell)


def gateaux_derivative(density: FieldExpr, sort: str, profiles: dict,
                       direction: np.ndarray, eps: float = 1e-3,
                       constants: dict | None = None,
                       functions: dict | None = None) -> float:
    """Fourth-order central finite difference of eps -> integral of the
    density along profiles[sort] + eps*direction."""

    def integral(e: float) -> float:
        shifted = dict(profiles)
        shifted[sort] = profiles[sort] + e * direction
        return grid_integral(eval_field_expr(density, shifted,
                                             constants, functions)).real

    return (8 * (integral(eps) - integral(-eps))
            - (integral(2 * eps) - integral(-2 * eps))) / (12 * eps)


def variational_pairing(gradient: FieldExpr, profiles: dict,
                        direction: np.ndarray,
                        constants: dict | None = None,
                        functions: dict | None = None) -> float:
    """Integral of the symbolic variational derivative against the
    perturbation direction."""
    vals = eval_field_expr(gradient, profiles, constants, functions)
    return grid_integral(vals.real * direction).real


def variational_oracle_error(density: FieldExpr, sort: str,
                             system: FieldSystem, sampler: GridSampler,
                             constants: dict | None = None,
                             functions: dict | None = None) -> float:
    """Relative disagreement between the symbolic variational derivative and
    the finite-difference Gateaux derivative on random profiles."""
    from .euler_lagrange import variational_derivative

    profiles = {s: sampler.profile() for s in system.sort_names()}
    direction = sampler.profile()
    numeric = gateaux_derivative(density, sort, profiles, direction,
                                 constants=constants, functions=functions)
    symbolic = variational_pairing(variational_derivative(density, sort),
                                   profiles, direction, constants, functions)
    scale = max(abs(numeric), abs(symbolic), 1.0)
    return abs(numeric - symbolic) / scale
