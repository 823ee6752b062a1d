"""Diagonal-compression maps on M_n built from a permutation and weights.

The family implemented here is parameterized by a permutation sigma of
{1, ..., n}, a scalar a > 0 and weights c = (c_1, ..., c_n):

* the diagonal compression  Delta(X) = diag(a*x_ii + c_i * x_{sigma(i), sigma(i)}),
* the shifted map           Theta(X) = Delta(X) - X.

Theta acts on the diagonal of X through the n x n matrix
D = a*I + sum_i c_i E_{sigma(i), i} and subtracts X wholesale, which makes the
whole family tractable: positivity, complete positivity and the finer
structure all reduce to statements about (n, sigma, a, c).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .matlin import matrix_unit
from .perm import Permutation, identity

_REL_TOL = 1e-12


@dataclass(frozen=True)
class MapParams:
    """Parameters (n, sigma, a, c) of one map in the family.

    The general constructor requires strictly positive a and c entries;
    the weight-free map with c = 0 exists only through :func:`delta_n`.
    """

    n: int
    sigma: Permutation
    a: float
    c: tuple[float, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer (got {self.n!r})")
        if self.sigma.n != self.n:
            raise ParameterError(
                f"sigma has degree {self.sigma.n}, which does not match n={self.n}"
            )
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "c", tuple(float(ci) for ci in self.c))
        if not np.isfinite(self.a) or self.a <= 0:
            raise ParameterError(f"a must be positive and finite (got {self.a})")
        if len(self.c) != self.n:
            raise ParameterError(f"c must have length n={self.n} (got {len(self.c)})")
        for i, ci in enumerate(self.c, start=1):
            if not np.isfinite(ci) or ci <= 0:
                raise ParameterError(f"c[{i}] must be positive and finite (got {ci})")

    @property
    def uniform_c(self) -> bool:
        return max(self.c) - min(self.c) <= _REL_TOL * max(1.0, abs(self.c[0]))


def delta_n(n: int) -> MapParams:
    """The map X -> n*diag(X) - X, i.e. Theta with a = n and all weights zero.

    This is the one member of the family with c = 0; the general constructor
    rejects zero weights, so it is built here through a validated back door.
    """
    if not isinstance(n, int) or n < 2:
        raise ParameterError(f"delta_n needs an integer n >= 2 (got {n!r})")
    p = object.__new__(MapParams)
    object.__setattr__(p, "n", n)
    object.__setattr__(p, "sigma", identity(n))
    object.__setattr__(p, "a", float(n))
    object.__setattr__(p, "c", (0.0,) * n)
    return p


def _require_square_input(p: MapParams, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (p.n, p.n):
        raise ParameterError(f"input matrix must have shape ({p.n}, {p.n}); got {x.shape}")
    return x


def delta_apply(p: MapParams, x: np.ndarray) -> np.ndarray:
    """Apply the diagonal compression Delta to one matrix."""
    x = _require_square_input(p, x)
    d = np.diagonal(x)
    perm = np.array([p.sigma(i) - 1 for i in range(1, p.n + 1)])
    out = p.a * d + np.asarray(p.c) * d[perm]
    return np.diag(out)


def theta_apply(p: MapParams, x: np.ndarray) -> np.ndarray:
    """Apply the shifted map Theta(X) = Delta(X) - X."""
    x = _require_square_input(p, x)
    return delta_apply(p, x) - x


def d_matrix(p: MapParams) -> np.ndarray:
    """The n x n matrix D = a*I + sum_i c_i E_{sigma(i), i} driving the diagonal action.

    Feeding the row vector of diagonal entries of X through D reproduces the
    diagonal of Delta(X): Delta(X) = diag((x_11, ..., x_nn) . D).
    """
    d = p.a * np.eye(p.n, dtype=complex)
    for i in range(1, p.n + 1):
        d += p.c[i - 1] * matrix_unit(p.n, p.sigma(i), i)
    return d


@dataclass(frozen=True)
class ChoiMatrix:
    """The block matrix sum_ij E_ij (x) psi(E_ij) for psi = Theta or T.Theta.

    ``transposed_composition`` records whether the blocks went through an
    extra transpose (psi = transposition composed with Theta).  The matrix is
    Hermitian either way and its trace equals n*(a - 1) + sum(c).
    """

    n: int
    matrix: np.ndarray
    transposed_composition: bool


def choi(p: MapParams, compose_transpose: bool = False) -> ChoiMatrix:
    """Assemble the Choi matrix of Theta (or of transposition-then-Theta)."""
    n = p.n
    out = np.zeros((n * n, n * n), dtype=complex)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            block = theta_apply(p, matrix_unit(n, i, j))
            if compose_transpose:
                block = block.T
            out[(i - 1) * n : i * n, (j - 1) * n : j * n] = block
    return ChoiMatrix(n=n, matrix=out, transposed_composition=compose_transpose)
