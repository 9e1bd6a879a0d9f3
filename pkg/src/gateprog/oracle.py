"""Brute-force verification machinery, independent of the score-matrix path.

Class functions on SU(d) are integrated with a torus quadrature: a uniform
periodic grid per eigenphase direction, weighted by the squared Vandermonde of
the eigenvalues and renormalized numerically so the weights sum to one.  The
integrands of interest are trigonometric polynomials, so a sufficiently fine
grid is exact to rounding; normalizing numerically means the measure constant
is verified by the identity integral instead of being trusted.

Also provides a Monte-Carlo reconstruction of the implemented channel's Choi
state from Haar samples (uniform unit quaternions for SU(2)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .protocol import DiagramSet, WeightVector
from .young import YoungDiagram, irrep_dimension


@dataclass(eq=False)
class TorusGrid:
    """Quadrature nodes on the eigenphase torus of SU(d).

    ``angles`` has one row per node holding the d-1 free eigenphases (the last
    phase is minus their sum); ``weights`` are normalized to sum to one.
    """

    d: int
    angles: np.ndarray
    weights: np.ndarray
    nodes_per_dim: int

    def __post_init__(self) -> None:
        total = float(self.weights.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, not 1")

    def resolves(self, max_boxes: int) -> bool:
        return self.nodes_per_dim >= 4 * (max_boxes + 2)


def su2_grid(max_boxes: int) -> TorusGrid:
    """Uniform rotation-angle grid on SU(2) with sin^2(theta/2) class weights.

    8 (max_boxes + 2) nodes integrate every character product of total degree
    up to ``max_boxes`` exactly (to rounding).
    """
    if max_boxes < 0:
        raise ValueError(f"degree must be non-negative, got {max_boxes}")
    count = 8 * (max_boxes + 2)
    thetas = 2.0 * math.pi * np.arange(count) / count
    weights = np.sin(thetas / 2.0) ** 2
    weights /= weights.sum()
    return TorusGrid(d=2, angles=thetas[:, None], weights=weights, nodes_per_dim=count)


def su_torus_grid(d: int, max_boxes: int) -> TorusGrid:
    """Product eigenphase grid for SU(d) with squared-Vandermonde weights.

    Implemented for d in {2, 3}.  The d = 3 grid uses 4 (max_boxes + 8)
    nodes per direction, enough for character products of the sets built here.
    """
    if d == 2:
        return su2_grid(max_boxes)
    if d != 3:
        raise ValueError(f"torus grid implemented for d in {{2, 3}}, got {d}")
    count = 4 * (max_boxes + 8)
    line = 2.0 * math.pi * np.arange(count) / count
    p1, p2 = np.meshgrid(line, line, indexing="ij")
    angles = np.column_stack([p1.ravel(), p2.ravel()])
    full = np.column_stack([angles[:, 0], angles[:, 1], -angles.sum(axis=1)])
    x = np.exp(1j * full)
    delta = (x[:, 0] - x[:, 1]) * (x[:, 0] - x[:, 2]) * (x[:, 1] - x[:, 2])
    weights = np.abs(delta) ** 2
    weights /= weights.sum()
    return TorusGrid(d=3, angles=angles, weights=weights, nodes_per_dim=count)


def schur_character(diagram: YoungDiagram, phases: Sequence[complex]) -> complex:
    """Character of the irrep ``diagram`` at the given eigenvalues.

    Bialternant ratio det(x_i^(rows_j + d - j)) / det(x_i^(d - j)).  Coincident
    eigenvalues are nudged apart by a 1e-9 phase jitter, except the fully
    degenerate point, which returns dim * (common phase)^boxes exactly.
    """
    d = diagram.d
    if len(phases) != d:
        raise ValueError(f"need {d} eigenvalues, got {len(phases)}")
    x = [complex(p) for p in phases]

    if all(abs(x[i] - x[0]) < 1e-12 for i in range(1, d)):
        return irrep_dimension(diagram) * x[0] ** diagram.boxes()

    if any(
        abs(x[i] - x[j]) < 1e-9 for i in range(d) for j in range(i + 1, d)
    ):
        x = [xi * cmath.exp(1j * 1e-9 * (k + 1)) for k, xi in enumerate(x)]

    exps = [diagram.rows[j] + d - (j + 1) for j in range(d)]
    num = np.array([[xi**e for e in exps] for xi in x], dtype=complex)
    den = np.array([[xi ** (d - (j + 1)) for j in range(d)] for xi in x], dtype=complex)
    return complex(np.linalg.det(num) / np.linalg.det(den))


def su2_character(diagram: YoungDiagram, theta: float) -> float:
    """SU(2) character sin(k theta / 2) / sin(theta / 2) with k = rows[0] - rows[1] + 1.

    The removable singularities at theta = 0 and 2 pi are filled with the
    analytic limit.
    """
    if diagram.d != 2:
        raise ValueError(f"expected a two-row diagram, got d={diagram.d}")
    k = diagram.rows[0] - diagram.rows[1] + 1
    half = theta / 2.0
    s = math.sin(half)
    if abs(s) < 1e-9:
        return k * math.cos(k * half) / math.cos(half)
    return math.sin(k * half) / s


def _su2_character_table(diagrams: Sequence[YoungDiagram], thetas: np.ndarray) -> np.ndarray:
    half = thetas / 2.0
    s = np.sin(half)
    regular = np.abs(s) > 1e-9
    out = np.empty((len(diagrams), len(thetas)))
    for row, lam in enumerate(diagrams):
        k = lam.rows[0] - lam.rows[1] + 1
        out[row, regular] = np.sin(k * half[regular]) / s[regular]
        out[row, ~regular] = k * np.cos(k * half[~regular]) / np.cos(half[~regular])
    return out


def _schur_character_table(
    diagrams: Sequence[YoungDiagram], grid: TorusGrid
) -> np.ndarray:
    """Characters of ``diagrams`` at every grid node, as a complex (L, M) array.

    Nodes with (numerically) coincident eigenvalues carry zero Weyl weight;
    their character values are masked to zero, which leaves the quadrature
    unchanged.
    """
    d = grid.d
    full = np.column_stack([grid.angles, -grid.angles.sum(axis=1)])
    x = np.exp(1j * full)

    den = np.ones(len(x), dtype=complex)
    for i in range(d):
        for j in range(i + 1, d):
            den *= x[:, i] - x[:, j]
    degenerate = np.abs(den) < 1e-9

    out = np.empty((len(diagrams), len(x)), dtype=complex)
    for row, lam in enumerate(diagrams):
        exps = np.array([lam.rows[j] + d - (j + 1) for j in range(d)])
        mats = np.exp(1j * full[:, :, None] * exps[None, None, :])
        vals = np.linalg.det(mats)
        vals[~degenerate] /= den[~degenerate]
        vals[degenerate] = 0.0
        out[row] = vals
    return out


def _character_table(diagrams: Sequence[YoungDiagram], grid: TorusGrid) -> np.ndarray:
    if grid.d == 2:
        return _su2_character_table(diagrams, grid.angles[:, 0]).astype(complex)
    return _schur_character_table(diagrams, grid)


def haar_fidelity(diagram_set: DiagramSet, q: WeightVector, grid: TorusGrid) -> float:
    """Entanglement fidelity from first principles, by Haar quadrature.

    F = (1/d^2) * integral over the group of
    |chi_defining(U) * sum_lam sqrt(q_lam) chi_lam(U)|^2,
    which for class functions reduces to the torus integral on ``grid``.
    """
    if grid.d != diagram_set.d:
        raise ValueError(f"grid is for d={grid.d}, set is for d={diagram_set.d}")
    if not q.diagram_set.same_as(diagram_set):
        raise ValueError("weight vector belongs to a different diagram set")
    if not grid.resolves(diagram_set.n + 1):
        raise ValueError(
            f"under-resolved grid: {grid.nodes_per_dim} nodes per direction cannot "
            f"integrate degree-{diagram_set.n + 1} characters exactly"
        )

    defining = YoungDiagram((1,) + (0,) * (diagram_set.d - 1))
    table = _character_table(list(diagram_set.members), grid)
    amps = np.sqrt(np.asarray(q.probabilities))
    probe = amps @ table
    chi_def = _character_table([defining], grid)[0]
    integrand = np.abs(chi_def * probe) ** 2
    d = diagram_set.d
    return float(grid.weights @ integrand) / (d * d)


def character_orthonormality_check(
    grid: TorusGrid, diagrams: Sequence[YoungDiagram]
) -> float:
    """Max deviation of quadrature character inner products from orthonormality.

    Two diagrams label the same SU(d) irrep exactly when they differ by full
    columns, so the target inner product is 1 for equal reduced rows and 0
    otherwise.
    """
    if any(lam.d != grid.d for lam in diagrams):
        raise ValueError("all diagrams must match the grid dimension")
    max_boxes = max((lam.boxes() for lam in diagrams), default=0)
    if not grid.resolves(max_boxes):
        raise ValueError(
            f"under-resolved grid: {grid.nodes_per_dim} nodes per direction for "
            f"degree-{max_boxes} characters"
        )
    table = _character_table(diagrams, grid)
    gram = (table * grid.weights) @ table.conj().T
    worst = 0.0
    for i, lam in enumerate(diagrams):
        for j, mu in enumerate(diagrams):
            target = 1.0 if lam.reduced_rows() == mu.reduced_rows() else 0.0
            worst = max(worst, float(abs(gram[i, j] - target)))
    return worst


class ChoiFit(NamedTuple):
    """Least-squares fit of the Monte-Carlo Choi state to the covariant form."""

    a: float
    residual: float


def choi_monte_carlo_su2(
    n: int, q: WeightVector, samples: int, seed: int
) -> ChoiFit:
    """Monte-Carlo Choi state of the measure-and-operate channel at the identity.

    Draws Haar SU(2) elements as uniform unit quaternions, weights each by the
    class-function outcome density |sum_lam sqrt(q_lam) chi_lam|^2, accumulates
    the 4x4 Choi matrix, and fits the one-parameter covariant form
    (1 - a) * Phi+ + a * (I - Phi+) / 3.  Returns the fitted a and the
    Frobenius residual of the fit.

    The channel is trace preserving, so its Choi state has unit trace; the
    accumulated matrix is renormalized to unit trace before fitting (the
    self-normalized form of the importance estimator), which cancels the
    common-mode sampling noise of the density weights.

    One call consumes one deterministic stream keyed by ``seed``; parallel
    callers must use distinct seeds.
    """
    diagram_set = q.diagram_set
    if diagram_set.d != 2:
        raise ValueError(f"Monte-Carlo check implemented for d=2, got d={diagram_set.d}")
    if diagram_set.n != n:
        raise ValueError(f"weight vector is for n={diagram_set.n}, not n={n}")
    if samples < 10**5:
        raise ValueError(f"need at least 1e5 samples for a stable fit, got {samples}")

    # each member has a distinct character label k = rows[0] - rows[1] + 1
    amp_by_k: dict[int, float] = {}
    for lam, prob in zip(diagram_set.members, q.probabilities):
        k = lam.rows[0] - lam.rows[1] + 1
        amp_by_k[k] = amp_by_k.get(k, 0.0) + math.sqrt(prob)
    max_k = max(amp_by_k)

    rng = np.random.default_rng(seed)
    acc = np.zeros((4, 4), dtype=complex)
    remaining = samples
    chunk_size = 250_000
    while remaining:
        count = min(chunk_size, remaining)
        remaining -= count
        quat = rng.standard_normal((count, 4))
        quat /= np.linalg.norm(quat, axis=1, keepdims=True)
        w, xq, yq, zq = quat.T

        # Chebyshev recurrence gives chi_k(U) = U_{k-1}(cos(theta/2)), cos = w
        s = np.zeros(count)
        u_prev = np.ones(count)
        u_cur = 2.0 * w
        if 1 in amp_by_k:
            s += amp_by_k[1] * u_prev
        if 2 in amp_by_k:
            s += amp_by_k[2] * u_cur
        for k in range(3, max_k + 1):
            u_prev, u_cur = u_cur, 2.0 * w * u_cur - u_prev
            if k in amp_by_k:
                s += amp_by_k[k] * u_cur
        p = s * s

        v = np.empty((count, 4), dtype=complex)
        v[:, 0] = w + 1j * zq
        v[:, 1] = yq + 1j * xq
        v[:, 2] = -yq + 1j * xq
        v[:, 3] = w - 1j * zq
        v /= math.sqrt(2.0)
        acc += (v * p[:, None]).T @ v.conj()

    choi = acc / samples
    choi /= np.real(np.trace(choi))

    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    proj = np.outer(phi, phi.conj())
    rho_perp = (np.eye(4) - proj) / 3.0
    direction = rho_perp - proj
    a_fit = float(
        np.real(np.vdot(direction, choi - proj)) / np.real(np.vdot(direction, direction))
    )
    model = (1.0 - a_fit) * proj + a_fit * rho_perp
    residual = float(np.linalg.norm(choi - model))
    return ChoiFit(a=a_fit, residual=residual)
