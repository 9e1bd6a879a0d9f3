"""Score matrix over a diagram lattice and the fidelity quadratic form.

The score matrix has diagonal d and off-diagonal 1 exactly between diagrams at
Young distance 2; on the viable lattice those are the unit moves +/-e_i and the
exchange moves +/-(e_i - e_j).  The entanglement fidelity of a weight vector q
is (1/d^2) sqrt(q)^T S sqrt(q), and the optimum over weights is the largest
eigenvalue of S divided by d^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .protocol import DiagramSet, WeightVector, _check_uses, _lattice_parameters
from .young import young_distance


class ConvergenceError(RuntimeError):
    """The eigensolver failed to reach the requested residual."""


@dataclass(eq=False)
class ScoreMatrix:
    """Sparse symmetric score matrix stored as per-row adjacency lists."""

    diagram_set: DiagramSet
    neighbors: tuple[tuple[int, ...], ...]
    _gather: np.ndarray = field(init=False, repr=False)
    _mask: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dim = len(self.neighbors)
        degree = max((len(row) for row in self.neighbors), default=0)
        gather = np.zeros((dim, max(degree, 1)), dtype=np.intp)
        mask = np.zeros((dim, max(degree, 1)))
        for i, row in enumerate(self.neighbors):
            gather[i, : len(row)] = row
            mask[i, : len(row)] = 1.0
        self._gather = gather
        self._mask = mask

    @property
    def dimension(self) -> int:
        return len(self.neighbors)

    @property
    def diagonal(self) -> int:
        return self.diagram_set.d

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return self.diagram_set.d
        return 1 if j in self.neighbors[i] else 0

    def matvec(self, v: np.ndarray) -> np.ndarray:
        # fixed gather order per row keeps results independent of threading
        return self.diagram_set.d * v + (v[self._gather] * self._mask).sum(axis=1)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.dimension, self.dimension))
        np.fill_diagonal(out, float(self.diagram_set.d))
        for i, row in enumerate(self.neighbors):
            for j in row:
                out[i, j] = 1.0
        return out


def score_matrix(diagram_set: DiagramSet) -> ScoreMatrix:
    """Build the score matrix from lattice adjacency (unit and exchange moves)."""
    d, big_n = diagram_set.d, diagram_set.N
    moves: list[tuple[int, ...]] = []
    for i in range(d - 1):
        e_i = tuple(1 if k == i else 0 for k in range(d - 1))
        moves.append(e_i)
        moves.append(tuple(-x for x in e_i))
    for i in range(d - 1):
        for j in range(i + 1, d - 1):
            f_ij = tuple(1 if k == i else -1 if k == j else 0 for k in range(d - 1))
            moves.append(f_ij)
            moves.append(tuple(-x for x in f_ij))

    rows: list[tuple[int, ...]] = []
    for t in diagram_set.coords:
        adjacent = []
        for mv in moves:
            target = tuple(c + m for c, m in zip(t, mv))
            if all(0 <= c < big_n for c in target):
                adjacent.append(diagram_set.index_of(target))
        rows.append(tuple(sorted(adjacent)))
    return ScoreMatrix(diagram_set=diagram_set, neighbors=tuple(rows))


def score_matrix_by_distance(diagram_set: DiagramSet) -> ScoreMatrix:
    """Alternative construction from pairwise Young distances; used for cross-checks."""
    members = diagram_set.members
    rows = []
    for i, lam in enumerate(members):
        adjacent = tuple(
            j for j, mu in enumerate(members)
            if j != i and young_distance(lam, mu) == 2
        )
        rows.append(adjacent)
    return ScoreMatrix(diagram_set=diagram_set, neighbors=tuple(rows))


@dataclass(frozen=True, eq=False)
class FidelityResult:
    """Entanglement fidelity, its complement, and the weights that produced it."""

    fidelity: float
    error: float
    weights_used: WeightVector


def entanglement_fidelity(q: WeightVector, s: ScoreMatrix) -> FidelityResult:
    """(1/d^2) a^T S a with a = sqrt(q); the quadratic form is in amplitudes."""
    if not q.diagram_set.same_as(s.diagram_set):
        raise ValueError("weight vector and score matrix use different diagram sets")
    amp = np.sqrt(np.asarray(q.probabilities))
    d = s.diagram_set.d
    fid = float(amp @ s.matvec(amp)) / (d * d)
    return FidelityResult(fidelity=fid, error=1.0 - fid, weights_used=q)


def optimal_fidelity(
    s: ScoreMatrix,
    *,
    tol: float = 1e-12,
    max_iterations: int = 10**6,
) -> FidelityResult:
    """Largest eigenvalue of S over d^2, with the principal weights.

    Symmetric power iteration from the all-ones vector.  S is non-negative and
    irreducible on the connected lattice, so the principal eigenvector is
    strictly positive and the iteration converges; we stop when the residual
    ||S v - theta v|| drops below ``tol * theta``.
    """
    if max_iterations < 1:
        raise ValueError(f"iteration cap must be positive, got {max_iterations}")
    dim = s.dimension
    v = np.full(dim, 1.0 / math.sqrt(dim))
    theta = 0.0
    for _ in range(max_iterations):
        w = s.matvec(v)
        theta = float(v @ w)
        residual = float(np.linalg.norm(w - theta * v))
        if residual <= tol * theta:
            break
        v = w / np.linalg.norm(w)
    else:
        raise ConvergenceError(
            f"power iteration hit the {max_iterations}-step cap with residual "
            f"{residual:.3e} (target {tol * theta:.3e})"
        )

    if float(v.min()) < -1e-10:
        raise ConvergenceError("principal eigenvector came out with negative entries")
    v = np.abs(v)
    probs = v * v
    probs /= probs.sum()
    d = s.diagram_set.d
    fid = theta / (d * d)
    weights = WeightVector(
        diagram_set=s.diagram_set, probabilities=tuple(float(p) for p in probs)
    )
    return FidelityResult(fidelity=fid, error=1.0 - fid, weights_used=weights)


def qstar_score_closed_form(d: int, eps_g: float) -> float:
    """Closed form of the sine-weight quadratic form:
    d + (d-1)(d-2)(1-eps_g)^2 + 2(d-1)(1-eps_g).
    """
    if d < 2:
        raise ValueError(f"gate dimension must be at least 2, got {d}")
    if not 0.0 <= eps_g <= 1.0:
        raise ValueError(f"coherence deficit must lie in [0, 1], got {eps_g}")
    c = 1.0 - eps_g
    return d + (d - 1) * (d - 2) * c * c + 2 * (d - 1) * c


def lemma3_bound(d: int, n: int) -> float:
    """Guaranteed fidelity floor 1 - 2 (pi (d-1) / (d c_min n))^2 for the sine weights.

    c_min n = 2 (n - d(d-1)) / ((3d-2)(d-1)).  Negative values are returned
    as-is; callers flag them as vacuous rather than clamping.
    """
    _check_uses(n, d)
    _lattice_parameters(n, d)
    c_min_n = 2.0 * (n - d * (d - 1)) / ((3 * d - 2) * (d - 1))
    return 1.0 - 2.0 * (math.pi * (d - 1) / (d * c_min_n)) ** 2
