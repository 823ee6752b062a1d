"""Verdicts on the map family: positivity, 2-positivity, complete positivity,
atomicity and decomposability.

Every verdict is a :class:`Verdict` with status ``"yes"``, ``"no"`` or
``"unknown"``, the criterion that produced it, and numeric evidence.  Numeric
sampling is always reported as evidence; it never upgrades a verdict to "yes"
on its own where a decisive criterion exists, and where no criterion applies
the status stays "unknown" with the measured worst-case data attached.

The decisive criteria implemented here:

* a >= max(n-1, n - geomean(c)) makes the map positive for every sigma, and
  that bound is sharp when sigma is one full n-cycle;
* with every cycle of sigma of length >= 2, complete positivity, 2-positivity
  and a >= n coincide (the Choi spectrum is known in closed form);
* at sigma = id the map is an entrywise multiplier, so positivity and complete
  positivity both reduce to one n x n PSD test;
* on the uniform family a = n - c, positivity holds exactly for c <= n/l_max;
* a positive, not completely positive map whose cycles all have length >= 3 is
  atomic (no split into a 2-positive part plus a transposed 2-positive part);
* when sigma is an involution and a >= n-1, c_i >= 1 at fixed points,
  c_i * c_sigma(i) >= 1 on the 2-cycles, the Choi matrix splits explicitly
  into a PSD block plus blocks whose partial transposes are PSD, so the map
  is decomposable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dmap import MapParams, choi
from .errors import ParameterError, PreconditionError
from .matlin import (
    DEFAULT_PSD_TOL,
    kron,
    matrix_unit,
    min_eigenvalue,
    partial_transpose,
)
from .perm import cycle_decompose, fixed_points, is_involution, is_single_cycle

# Boundary cases a == threshold are resolved inclusively at this tolerance.
BOUNDARY_TOL = 1e-9

# Tolerance for the sampled quantity S(xi) when used as positivity evidence.
S_ORACLE_TOL = 1e-7

_LAMBDA_GRID = (4.0, 32.0, 256.0, 1e4, 1e8)

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """One classification answer: status, deciding criterion, numeric evidence."""

    status: str
    criterion: str
    evidence: dict


@dataclass(frozen=True)
class PositivityEvidence:
    """Worst cases found by sampling S(xi) and the spectra of Theta(xi xi*).

    ``max_s <= 1 + tol`` is evidence of positivity (S(xi) <= 1 for every unit
    vector characterizes it); ``max_s > 1 + tol`` exhibits a concrete witness
    vector against positivity.
    """

    max_s: float
    worst_vector: np.ndarray
    min_theta_eig: float
    num_vectors: int
    tol: float

    @property
    def consistent_with_positive(self) -> bool:
        return self.max_s <= 1.0 + self.tol


@dataclass(frozen=True)
class DecomposabilityCertificate:
    """Explicit Choi split C = P + sum_i Q_i for involutions.

    ``P`` is PSD, each ``Q`` block has a PSD partial transpose, and the sum
    reproduces the Choi matrix up to ``reconstruction_residual``.  ``q_blocks``
    maps each 2-cycle (i, sigma(i)) with i < sigma(i) to its block.
    """

    P: np.ndarray
    q_blocks: tuple[tuple[tuple[int, int], np.ndarray], ...]
    reconstruction_residual: float
    p_min_eigenvalue: float
    q_pt_min_eigenvalues: tuple[float, ...]


@dataclass(frozen=True)
class ClassificationReport:
    """All five verdicts for one parameter point, plus any split certificate."""

    params: MapParams
    positive: Verdict
    two_positive: Verdict
    completely_positive: Verdict
    atomic: Verdict
    decomposable: Verdict
    decomposition: Optional[DecomposabilityCertificate]


def geometric_mean_c(p: MapParams) -> float:
    c = np.asarray(p.c, dtype=float)
    if np.any(c == 0.0):
        return 0.0
    return float(np.exp(np.mean(np.log(c))))


def positivity_threshold(p: MapParams) -> float:
    """max(n-1, n - geomean(c)): at or above it the map is positive for any sigma."""
    return max(p.n - 1.0, p.n - geometric_mean_c(p))


def schur_matrix(p: MapParams) -> np.ndarray:
    """The entrywise-multiplier matrix representing the map when sigma = id:
    diagonal a + c_i - 1, off-diagonal -1."""
    m = -np.ones((p.n, p.n), dtype=complex)
    for i in range(p.n):
        m[i, i] = p.a + p.c[i] - 1.0
    return m


def elementary_symmetric(xs) -> list[float]:
    """e_0, e_1, ..., e_n of the given reals, by the product recurrence."""
    e = [1.0]
    for x in xs:
        x = float(x)
        e.append(0.0)
        for k in range(len(e) - 1, 0, -1):
            e[k] += x * e[k - 1]
    return e


def symmetric_F(a: float, xs) -> float:
    """The symmetric polynomial sum_m a^(m-1) (a - m) e_{n-m}(xs).

    Its sign characterizes sum_i 1/(a + x_i) <= 1: the two are equivalent for
    every a > 0 and positive xs (multiply the inequality through by
    prod_i (a + x_i)).
    """
    xs = tuple(float(x) for x in xs)
    a = float(a)
    if not np.isfinite(a) or a <= 0:
        raise ParameterError(f"a must be positive and finite (got {a})")
    if any(x <= 0 or not np.isfinite(x) for x in xs):
        raise ParameterError(f"xs entries must be positive and finite (got {xs})")
    e = elementary_symmetric(xs)
    n = len(xs)
    total = e[n]  # the m = 0 term a^(m-1) (a - m) e_n collapses to e_n
    for m in range(1, n + 1):
        total += a ** (m - 1) * (a - m) * e[n - m]
    return float(total)


def _sigma_index(p: MapParams) -> np.ndarray:
    return np.array([p.sigma(i) - 1 for i in range(1, p.n + 1)])


def _adversarial_amplitudes(p: MapParams) -> np.ndarray:
    """Structured |x_i|^2 assignments that press hardest on S(xi).

    Two families, laid cycle by cycle along sigma's orbits: geometrically
    decaying weights ratio lambda (their S tends to (L-1)/a per cycle of
    length L as lambda grows), and weights balancing c_i alpha_sigma(i) /
    alpha_i to the in-cycle geometric mean d of c (their S is exactly
    sum_cycles L / (a + d)).
    """
    n = p.n
    cycles = cycle_decompose(p.sigma).cycles
    rows = [np.ones(n)]
    for lam in _LAMBDA_GRID:
        alpha = np.empty(n)
        for cycle in cycles:
            length = len(cycle)
            cur = cycle[0]
            for s in range(1, length + 1):
                cur = p.sigma(cur)
                alpha[cur - 1] = lam ** (length - s)
        rows.append(alpha)
    if all(ci > 0 for ci in p.c):
        alpha = np.empty(n)
        for cycle in cycles:
            length = len(cycle)
            cs = [p.c[i - 1] for i in cycle]
            d = float(np.exp(np.mean(np.log(cs))))
            running = 1.0
            for k in range(1, length + 1):
                running *= d / cs[k - 1]
                alpha[cycle[k % length] - 1] = running
        rows.append(alpha)
    return np.asarray(rows)


def verify_positivity_numeric(
    p: MapParams,
    samples: int = 2000,
    tol: float = S_ORACLE_TOL,
    seed: int = 0,
    include_adversarial: bool = True,
) -> PositivityEvidence:
    """Sample S(xi) = sum_i |x_i|^2 / (a |x_i|^2 + c_i |x_sigma(i)|^2) and the
    spectra of Theta(xi xi*) over random unit vectors plus the structured
    adversarial families.

    Counter-based (Philox) seeding keeps runs reproducible for a given seed.
    """
    if samples < 0:
        raise ParameterError(f"samples must be >= 0 (got {samples})")
    n = p.n
    rng = np.random.Generator(np.random.Philox(key=seed))
    blocks: list[np.ndarray] = []
    if samples > 0:
        z = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
        blocks.append(z)
    if include_adversarial:
        blocks.append(np.sqrt(_adversarial_amplitudes(p)).astype(complex))
    if not blocks:
        raise ParameterError("nothing to sample: samples = 0 and adversarial families disabled")
    zs = np.concatenate(blocks, axis=0)
    zs = zs / np.linalg.norm(zs, axis=1, keepdims=True)

    amps = np.abs(zs) ** 2
    perm = _sigma_index(p)
    c = np.asarray(p.c, dtype=float)
    den = p.a * amps + c[None, :] * amps[:, perm]
    terms = np.divide(amps, den, out=np.zeros_like(amps), where=den > 0)
    s_vals = terms.sum(axis=1)
    worst = int(np.argmax(s_vals))

    outer = np.einsum("mi,mj->mij", zs, zs.conj())
    mats = -outer
    idx = np.arange(n)
    mats[:, idx, idx] += den  # den holds exactly the diagonal of Delta(xi xi*)
    min_eig = float(np.linalg.eigvalsh(mats)[:, 0].min())

    return PositivityEvidence(
        max_s=float(s_vals[worst]),
        worst_vector=zs[worst].copy(),
        min_theta_eig=min_eig,
        num_vectors=int(zs.shape[0]),
        tol=float(tol),
    )


def _evidence_dict(p: MapParams, evidence: Optional[PositivityEvidence]) -> dict:
    out = {
        "a": p.a,
        "threshold": positivity_threshold(p),
        "geometric_mean_c": geometric_mean_c(p),
    }
    if evidence is not None:
        out.update(
            max_s=evidence.max_s,
            min_theta_eig=evidence.min_theta_eig,
            sampled_vectors=evidence.num_vectors,
            s_tol=evidence.tol,
        )
    return out


def positivity_verdict(p: MapParams, evidence: Optional[PositivityEvidence] = None) -> Verdict:
    """Decide positivity where a criterion exists; otherwise unknown with evidence."""
    n, a = p.n, p.a
    ev = _evidence_dict(p, evidence)
    if a >= positivity_threshold(p) - BOUNDARY_TOL:
        return Verdict(YES, "a >= max(n-1, n-geomean(c)): sufficient for every sigma", ev)
    if is_single_cycle(p.sigma):
        return Verdict(
            NO, "a below max(n-1, n-geomean(c)): that bound is necessary for a full n-cycle", ev
        )
    if p.sigma.is_identity():
        ev["schur_min_eigenvalue"] = min_eigenvalue(schur_matrix(p))
        status = YES if ev["schur_min_eigenvalue"] >= -DEFAULT_PSD_TOL else NO
        return Verdict(status, "entrywise-multiplier matrix PSD test (sigma = id)", ev)
    if p.uniform_c and abs(a - (n - p.c[0])) <= BOUNDARY_TOL:
        l_max = cycle_decompose(p.sigma).l_max
        ev["cycle_bound"] = n / l_max
        status = YES if p.c[0] <= n / l_max + BOUNDARY_TOL else NO
        return Verdict(status, "uniform family a = n - c: positive iff c <= n/l_max(sigma)", ev)
    return Verdict(UNKNOWN, "no positivity criterion applies below the threshold for this sigma", ev)


def cp_verdict(p: MapParams, psd_tol: float = DEFAULT_PSD_TOL) -> Verdict:
    """Complete positivity: closed-form cutoff when cycles are long enough,
    entrywise test at sigma = id, Choi PSD check (decisive) otherwise."""
    n, a = p.n, p.a
    dec = cycle_decompose(p.sigma)
    choi_min = min_eigenvalue(choi(p).matrix)
    ev = {"a": a, "l_min": dec.l_min, "choi_min_eigenvalue": choi_min}
    if dec.l_min >= 2:
        status = YES if a >= n - BOUNDARY_TOL else NO
        return Verdict(status, "a >= n cutoff (every cycle of sigma has length >= 2)", ev)
    if p.sigma.is_identity():
        ev["schur_min_eigenvalue"] = min_eigenvalue(schur_matrix(p))
        status = YES if ev["schur_min_eigenvalue"] >= -psd_tol else NO
        return Verdict(status, "entrywise-multiplier matrix PSD test (sigma = id)", ev)
    status = YES if choi_min >= -psd_tol else NO
    return Verdict(status, "Choi matrix PSD (numeric eigenvalue check)", ev)


def two_positive_verdict(
    p: MapParams, cp: Optional[Verdict] = None, psd_tol: float = DEFAULT_PSD_TOL
) -> Verdict:
    """2-positivity; it collapses onto complete positivity except in the mixed
    fixed-point cases, which stay unknown unless complete positivity holds."""
    if cp is None:
        cp = cp_verdict(p, psd_tol)
    dec = cycle_decompose(p.sigma)
    ev = dict(cp.evidence)
    if dec.l_min >= 2:
        return Verdict(
            cp.status, "2-positivity and complete positivity coincide when every cycle has length >= 2", ev
        )
    if p.sigma.is_identity():
        return Verdict(
            cp.status, "at sigma = id positivity and complete positivity coincide, squeezing 2-positivity", ev
        )
    if cp.status == YES:
        return Verdict(YES, "implied by complete positivity", ev)
    return Verdict(
        UNKNOWN, "no 2-positivity criterion when sigma mixes fixed points with longer cycles", ev
    )


def _involution_split_applies(p: MapParams) -> bool:
    if not is_involution(p.sigma):
        return False
    if p.a < p.n - 1 - BOUNDARY_TOL:
        return False
    fixed = fixed_points(p.sigma)
    for i in fixed:
        if p.c[i - 1] < 1.0 - BOUNDARY_TOL:
            return False
    for i in range(1, p.n + 1):
        si = p.sigma(i)
        if i < si and p.c[i - 1] * p.c[si - 1] < 1.0 - BOUNDARY_TOL:
            return False
    return True


def decompose_involution(p: MapParams) -> DecomposabilityCertificate:
    """Split the Choi matrix of an involution-driven map into a PSD block plus
    one block per 2-cycle whose partial transpose is PSD.

    Preconditions (each failure is reported by name): sigma an involution,
    a >= n-1, c_i >= 1 at fixed points, c_i * c_sigma(i) >= 1 on 2-cycles.
    """
    n = p.n
    if not is_involution(p.sigma):
        raise PreconditionError("sigma is not an involution: sigma(sigma(i)) != i for some i")
    if p.a < n - 1 - BOUNDARY_TOL:
        raise PreconditionError(f"requires a >= n - 1 = {n - 1} (got a = {p.a})")
    fixed = sorted(fixed_points(p.sigma))
    for i in fixed:
        if p.c[i - 1] < 1.0 - BOUNDARY_TOL:
            raise PreconditionError(
                f"requires c[{i}] >= 1 at the fixed point {i} (got c[{i}] = {p.c[i - 1]})"
            )
    pairs = [(i, p.sigma(i)) for i in range(1, n + 1) if i < p.sigma(i)]
    for i, si in pairs:
        product = p.c[i - 1] * p.c[si - 1]
        if product < 1.0 - BOUNDARY_TOL:
            raise PreconditionError(
                f"requires c[{i}]*c[{si}] >= 1 for the 2-cycle ({i}, {si}) (got {product})"
            )

    fixed_set = set(fixed)
    P = np.zeros((n * n, n * n), dtype=complex)
    for i in range(1, n + 1):
        coeff = p.a + p.c[i - 1] - 1.0 if i in fixed_set else p.a - 1.0
        P += coeff * kron(matrix_unit(n, i, i), matrix_unit(n, i, i))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and p.sigma(i) != j:
                P -= kron(matrix_unit(n, i, j), matrix_unit(n, i, j))

    q_blocks = []
    for i, si in pairs:
        q = (
            p.c[si - 1] * kron(matrix_unit(n, i, i), matrix_unit(n, si, si))
            + p.c[i - 1] * kron(matrix_unit(n, si, si), matrix_unit(n, i, i))
            - kron(matrix_unit(n, i, si), matrix_unit(n, i, si))
            - kron(matrix_unit(n, si, i), matrix_unit(n, si, i))
        )
        q_blocks.append(((i, si), q))

    total = P + sum((q for _, q in q_blocks), start=np.zeros_like(P))
    residual = float(np.max(np.abs(total - choi(p).matrix)))
    p_min = min_eigenvalue(P)
    q_pt_mins = tuple(float(min_eigenvalue(partial_transpose(q, n, n))) for _, q in q_blocks)

    cert = DecomposabilityCertificate(
        P=P,
        q_blocks=tuple(q_blocks),
        reconstruction_residual=residual,
        p_min_eigenvalue=p_min,
        q_pt_min_eigenvalues=q_pt_mins,
    )
    if residual > 1e-10 or p_min < -DEFAULT_PSD_TOL or any(m < -DEFAULT_PSD_TOL for m in q_pt_mins):
        raise RuntimeError(
            "internal consistency failure: involution split does not certify "
            f"(residual {residual:.3e}, min eig P {p_min:.3e}, min eig Q^PT {min(q_pt_mins, default=0.0):.3e})"
        )
    return cert


def atomic_verdict(p: MapParams, psd_tol: float = DEFAULT_PSD_TOL) -> Verdict:
    """Atomicity: positive, not completely positive, every cycle length >= 3
    gives yes; complete positivity or a decomposability certificate gives no."""
    pos = positivity_verdict(p)
    cp = cp_verdict(p, psd_tol)
    dec = cycle_decompose(p.sigma)
    ev = {"l_min": dec.l_min, "positive": pos.status, "completely_positive": cp.status}
    if cp.status == YES:
        return Verdict(NO, "completely positive maps are not atomic", ev)
    if dec.l_min >= 3 and pos.status == YES and cp.status == NO:
        return Verdict(
            YES, "positive, not completely positive, every cycle of length >= 3", ev
        )
    if _involution_split_applies(p):
        return Verdict(NO, "decomposable by the involution splitting", ev)
    return Verdict(UNKNOWN, "no atomicity criterion applies", ev)


def atomic_uniform_c(p: MapParams) -> Verdict:
    """Atomicity on the uniform family a = n - c, where positivity is an iff."""
    n = p.n
    if not p.uniform_c:
        raise ParameterError(
            f"requires uniform weights: c ranges over [{min(p.c)}, {max(p.c)}]"
        )
    c0 = p.c[0]
    if abs(p.a - (n - c0)) > BOUNDARY_TOL:
        raise ParameterError(f"requires a = n - c (got a = {p.a}, n - c = {n - c0})")
    dec = cycle_decompose(p.sigma)
    ev = {"c": c0, "l_min": dec.l_min, "l_max": dec.l_max, "cycle_bound": n / dec.l_max}
    if c0 == 0.0:
        return Verdict(NO, "c = 0 is the completely positive map n*diag(X) - X", ev)
    if c0 > n / dec.l_max + BOUNDARY_TOL:
        return Verdict(NO, "not positive: uniform family requires c <= n/l_max(sigma)", ev)
    if dec.l_min >= 3:
        return Verdict(YES, "uniform family, every cycle of length >= 3, 0 < c <= n/l_max", ev)
    return Verdict(UNKNOWN, "uniform-family criterion needs every cycle length >= 3", ev)


def classify_map(
    p: MapParams,
    samples: int = 2000,
    psd_tol: float = DEFAULT_PSD_TOL,
    seed: int = 0,
) -> ClassificationReport:
    """Produce all five verdicts, with sampling evidence and cross-checked closure."""
    evidence = (
        verify_positivity_numeric(p, samples=samples, seed=seed) if samples > 0 else None
    )
    pos = positivity_verdict(p, evidence)
    cp = cp_verdict(p, psd_tol)
    two = two_positive_verdict(p, cp=cp, psd_tol=psd_tol)
    if pos.status == UNKNOWN and cp.status == YES:
        pos = Verdict(YES, "implied by complete positivity", pos.evidence)

    decomposition = None
    if cp.status == YES:
        decomposable = Verdict(
            YES, "completely positive (trivial split with no transposed part)", {}
        )
    elif _involution_split_applies(p):
        decomposition = decompose_involution(p)
        decomposable = Verdict(
            YES,
            "involution splitting into a PSD block plus 2-cycle blocks with PSD partial transposes",
            {
                "reconstruction_residual": decomposition.reconstruction_residual,
                "p_min_eigenvalue": decomposition.p_min_eigenvalue,
            },
        )
    else:
        decomposable = None

    dec = cycle_decompose(p.sigma)
    atomic_ev = {"l_min": dec.l_min, "positive": pos.status, "completely_positive": cp.status}
    if cp.status == YES:
        atomic = Verdict(NO, "completely positive maps are not atomic", atomic_ev)
    elif decomposable is not None and decomposable.status == YES:
        atomic = Verdict(NO, "decomposable by the involution splitting", atomic_ev)
    elif dec.l_min >= 3 and pos.status == YES and cp.status == NO:
        atomic = Verdict(
            YES, "positive, not completely positive, every cycle of length >= 3", atomic_ev
        )
    else:
        atomic = Verdict(UNKNOWN, "no atomicity criterion applies", atomic_ev)

    if decomposable is None:
        if atomic.status == YES:
            decomposable = Verdict(NO, "atomic maps are not decomposable", {})
        else:
            decomposable = Verdict(UNKNOWN, "no decomposability criterion applies", {})

    _check_closure(pos, two, cp, atomic, decomposable)
    return ClassificationReport(
        params=p,
        positive=pos,
        two_positive=two,
        completely_positive=cp,
        atomic=atomic,
        decomposable=decomposable,
        decomposition=decomposition,
    )


def _check_closure(pos, two, cp, atomic, decomposable) -> None:
    """Implication closure between verdicts; a violation is an internal bug."""
    broken = (
        (cp.status == YES and two.status != YES)
        or (two.status == YES and pos.status == NO)
        or (cp.status == YES and pos.status == NO)
        or (atomic.status == YES and cp.status != NO)
        or (atomic.status == YES and decomposable.status != NO)
        or (decomposable.status == YES and atomic.status == YES)
        or (atomic.status == YES and pos.status != YES)
    )
    if broken:
        raise RuntimeError(
            "internal consistency failure between verdicts: "
            f"positive={pos.status}, two_positive={two.status}, cp={cp.status}, "
            f"atomic={atomic.status}, decomposable={decomposable.status}"
        )
