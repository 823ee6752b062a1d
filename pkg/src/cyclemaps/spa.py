"""Structural physical approximation (SPA): mix the normalized Choi matrix
with white noise until it turns PSD, and certify separability at a = n - 1.

For W = C / Tr(C) the noisy family is W(lam) = (1 - lam)/n^2 * I + lam * W.
The first PSD point is lam* = 1 / (1 + n^2 ||W^-||), equivalently
SPA = (||C^-|| I + C) / (Tr(C) + n^2 ||C^-||).  ||C^-|| always comes from the
full spectral split here; claimed closed-form values (such as ||C^-|| = 1 at
a = n - 1) are asserted against it in the tests, never assumed.

At a = n - 1 with every cycle of sigma of length >= 2 the SPA is separable
outright: n^2 * SPA splits into the two-level blocks sigma_ij plus weighted
diagonal product terms, and each sigma_ij factors through a 4 x 4 seed R as
(D_ij (x) D_ij) R (D_ij (x) D_ij)* with R and its partial transpose PSD.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import NO, YES, positivity_verdict
from .dmap import MapParams, choi
from .errors import ParameterError, PreconditionError
from .matlin import (
    DEFAULT_PSD_TOL,
    kron,
    matrix_unit,
    min_eigenvalue,
    negative_part,
    partial_transpose,
    require_hermitian,
)
from .perm import cycle_decompose


@dataclass(frozen=True)
class SpaState:
    """The SPA density matrix with the mixing data that produced it."""

    matrix: np.ndarray
    lambda_star: float
    w_minus_norm: float
    trace_choi: float
    positivity_warning: bool


@dataclass(frozen=True)
class SpaTerm:
    """One separable ingredient: its kind, the 1-based indices it lives on,
    the raw (unweighted) matrix and its weight in the convex combination."""

    kind: str
    indices: tuple[int, ...]
    weight: float
    matrix: np.ndarray


@dataclass(frozen=True)
class SeparableDecomposition:
    """SPA = sum_t weight_t * matrix_t with every term manifestly separable."""

    terms: tuple[SpaTerm, ...]
    normalization: float
    residual: float


def r_matrix() -> np.ndarray:
    """The 4 x 4 seed of the two-level blocks: identity with -1 in the
    (1, 4) / (4, 1) corners.  PSD with spectrum {0, 1, 1, 2}, and so is its
    partial transpose."""
    r = np.eye(4, dtype=complex)
    r[0, 3] = -1.0
    r[3, 0] = -1.0
    return r


def pair_embedding(n: int, i: int, j: int) -> np.ndarray:
    """The n x 2 isometry sending the 2-level basis onto coordinates i, j."""
    if i == j:
        raise ParameterError(f"pair embedding needs two distinct indices (got i = j = {i})")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ParameterError(f"pair indices ({i}, {j}) outside {{1, ..., {n}}}")
    d = np.zeros((n, 2), dtype=complex)
    d[i - 1, 0] = 1.0
    d[j - 1, 1] = 1.0
    return d


def pair_block(n: int, i: int, j: int) -> np.ndarray:
    """The two-level block sigma_ij = E_ii(x)E_ii + E_jj(x)E_jj + E_ii(x)E_jj
    + E_jj(x)E_ii - E_ij(x)E_ij - E_ji(x)E_ji, separable and PPT."""
    e = lambda a, b: matrix_unit(n, a, b)
    return (
        kron(e(i, i), e(i, i))
        + kron(e(j, j), e(j, j))
        + kron(e(i, i), e(j, j))
        + kron(e(j, j), e(i, i))
        - kron(e(i, j), e(i, j))
        - kron(e(j, i), e(j, i))
    )


def spa_state(p: MapParams) -> SpaState:
    """Compute the SPA of the map's witness direction from the Choi spectrum."""
    c = choi(p).matrix
    trace = float(np.trace(c).real)
    _, neg_norm = negative_part(c)
    w_minus_norm = neg_norm / trace
    lambda_star = 1.0 / (1.0 + p.n**2 * w_minus_norm)
    matrix = (neg_norm * np.eye(p.n**2, dtype=complex) + c) / (trace + p.n**2 * neg_norm)
    warning = positivity_verdict(p).status == NO
    return SpaState(
        matrix=matrix,
        lambda_star=lambda_star,
        w_minus_norm=w_minus_norm,
        trace_choi=trace,
        positivity_warning=warning,
    )


def spa_interpolation(p: MapParams, lam: float) -> np.ndarray:
    """The noisy family W(lam) = (1 - lam)/n^2 * I + lam * C/Tr(C)."""
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lam must lie in [0, 1] (got {lam})")
    c = choi(p).matrix
    trace = float(np.trace(c).real)
    return (1.0 - lam) / p.n**2 * np.eye(p.n**2, dtype=complex) + lam * c / trace


def separable_decomposition(p: MapParams) -> SeparableDecomposition:
    """Write the SPA at a = n - 1 as an explicit convex mix of separable terms.

    Preconditions: a = n - 1 (within 1e-12), every cycle of sigma of length
    >= 2, and positivity established by a decisive criterion.  Each two-level
    term is verified in place against its (D (x) D) R (D (x) D)* factorization.
    """
    n = p.n
    if abs(p.a - (n - 1.0)) > 1e-12:
        raise PreconditionError(f"requires a = n - 1 = {n - 1} (got a = {p.a})")
    l_min = cycle_decompose(p.sigma).l_min
    if l_min < 2:
        raise PreconditionError(
            f"requires every cycle of sigma of length >= 2 (got a cycle of length {l_min})"
        )
    pos = positivity_verdict(p)
    if pos.status != YES:
        raise PreconditionError(
            f"requires established positivity; the verdict here is '{pos.status}'"
        )

    state = spa_state(p)
    normalization = 1.0 / (state.trace_choi + n**2 * state.w_minus_norm * state.trace_choi)

    r = r_matrix()
    inv = p.sigma.inverse()
    terms: list[SpaTerm] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            block = pair_block(n, i, j)
            d = pair_embedding(n, i, j)
            dd = kron(d, d)
            factored = dd @ r @ dd.conj().T
            if float(np.max(np.abs(block - factored))) > 1e-12:
                raise RuntimeError(
                    f"internal consistency failure: sigma_{i}{j} does not match its R factorization"
                )
            terms.append(SpaTerm(kind="pair", indices=(i, j), weight=normalization, matrix=block))
    for i in range(1, n + 1):
        j = inv(i)
        diag = kron(matrix_unit(n, i, i), matrix_unit(n, j, j))
        terms.append(
            SpaTerm(
                kind="diagonal",
                indices=(i, j),
                weight=p.c[j - 1] * normalization,
                matrix=diag,
            )
        )

    total = sum((t.weight * t.matrix for t in terms), start=np.zeros_like(state.matrix))
    residual = float(np.max(np.abs(total - state.matrix)))
    return SeparableDecomposition(
        terms=tuple(terms), normalization=normalization, residual=residual
    )


def ppt_check(m: np.ndarray, k: int, n: int, tol: float = DEFAULT_PSD_TOL) -> tuple[bool, float]:
    """Is the partial transpose of a Hermitian matrix on C^k (x) C^n PSD?
    Returns the verdict and the minimum eigenvalue of the partial transpose."""
    m = require_hermitian(m)
    pt_min = min_eigenvalue(partial_transpose(m, k, n))
    return pt_min >= -tol, pt_min
