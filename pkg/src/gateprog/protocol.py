"""Construction of the estimation protocol's probe support and weights.

Builds the capacity parameter N, the flat base diagram, the viable lattice of
strictly-decreasing diagrams with n boxes, and the product sine-squared weight
distribution over that lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .young import YoungDiagram


class ProtocolError(ValueError):
    """A precondition of the protocol construction is violated."""


def _check_uses(n: int, d: int) -> None:
    if d < 2:
        raise ProtocolError(f"gate dimension must be at least 2, got d={d}")
    least = 2 * d * (d - 1)
    if n < least:
        raise ProtocolError(
            f"insufficient uses: n={n} is below the required minimum of "
            f"2*d*(d-1) = {least} for d={d}"
        )


def _lattice_parameters(n: int, d: int) -> tuple[int, int]:
    """Raw (N, n0) pair, exact integer arithmetic, no N >= 2 guard."""
    big_n = (2 * n + (d - 2) * (d - 1)) // ((3 * d - 2) * (d - 1))
    twice_offset = ((3 * d - 2) * big_n - d + 2) * (d - 1)
    if twice_offset % 2:
        raise ProtocolError(f"lattice offset is not an integer for n={n}, d={d}")
    n0 = n - twice_offset // 2
    if n0 < 0:
        raise ProtocolError(f"negative residual box count n0={n0} for n={n}, d={d}")
    return big_n, n0


def capacity_parameter(n: int, d: int) -> int:
    """Lattice width N for n gate uses in dimension d.

    N = floor((2n/(d-1) + d - 2) / (3d-2)), computed exactly in integers.
    Requires n >= 2d(d-1); rejects N < 2 because the sine weights are only
    normalized for at least two lattice points per axis.
    """
    _check_uses(n, d)
    big_n, _ = _lattice_parameters(n, d)
    if big_n < 2:
        raise ProtocolError(
            f"degenerate weight regime: N={big_n} < 2 at n={n}, d={d}; "
            "the weight profile needs at least two lattice points per axis"
        )
    return big_n


def flat_diagram(n0: int, d: int) -> YoungDiagram:
    """Most balanced diagram with n0 boxes in d rows; rows differ by at most one."""
    if n0 < 0:
        raise ValueError(f"box count must be non-negative, got {n0}")
    if d < 1:
        raise ValueError(f"row budget must be positive, got {d}")
    q, r = divmod(n0, d)
    return YoungDiagram((q + 1,) * r + (q,) * (d - r))


@dataclass(frozen=True, eq=False)
class DiagramSet:
    """The viable lattice: N^(d-1) strictly-decreasing diagrams of n boxes.

    ``members[k]`` corresponds to ``coords[k]``, the lattice coordinate tuple
    in {0..N-1}^(d-1).  Ordering is row-major with the first coordinate most
    significant, so ``index_of`` is plain mixed-radix arithmetic.
    """

    d: int
    n: int
    N: int
    n0: int
    mu0: YoungDiagram
    members: tuple[YoungDiagram, ...]
    coords: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, coord: tuple[int, ...]) -> int:
        if len(coord) != self.d - 1:
            raise ValueError(f"coordinate needs {self.d - 1} entries, got {len(coord)}")
        idx = 0
        for c in coord:
            if not 0 <= c < self.N:
                raise ValueError(f"coordinate {coord} outside the {self.N}-wide lattice")
            idx = idx * self.N + c
        return idx

    def same_as(self, other: "DiagramSet") -> bool:
        return self is other or (
            (self.d, self.n, self.N, self.n0) == (other.d, other.n, other.N, other.n0)
            and self.members == other.members
        )


def viable_set(n: int, d: int) -> DiagramSet:
    """Build the full viable lattice of diagrams for n uses in dimension d.

    Row i (1-based, i < d) of the member at coordinate t is
    mu0[i] + N(2d-3) + 1 - (N+1)(i-1) + t[i]; the last row absorbs the
    remaining boxes.  Every member must come out strictly decreasing with a
    non-negative last row, otherwise the construction is inconsistent.
    """
    big_n = capacity_parameter(n, d)
    _, n0 = _lattice_parameters(n, d)
    mu0 = flat_diagram(n0, d)
    base = tuple(
        mu0.rows[i - 1] + big_n * (2 * d - 3) + 1 - (big_n + 1) * (i - 1)
        for i in range(1, d)
    )

    members: list[YoungDiagram] = []
    coords: list[tuple[int, ...]] = []
    for t in product(range(big_n), repeat=d - 1):
        head = tuple(base[i] + t[i] for i in range(d - 1))
        last = n - sum(head)
        rows = head + (last,)
        if last < 0 or any(rows[i] <= rows[i + 1] for i in range(d - 1)):
            raise RuntimeError(
                f"internal consistency error: lattice point {t} yields rows {rows}"
            )
        members.append(YoungDiagram(rows))
        coords.append(t)

    return DiagramSet(
        d=d, n=n, N=big_n, n0=n0, mu0=mu0,
        members=tuple(members), coords=tuple(coords),
    )


@dataclass(frozen=True, eq=False)
class WeightVector:
    """A probability distribution over the members of a DiagramSet."""

    diagram_set: DiagramSet
    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.probabilities) != len(self.diagram_set):
            raise ValueError(
                f"{len(self.probabilities)} probabilities for "
                f"{len(self.diagram_set)} diagrams"
            )
        if any(p < 0.0 for p in self.probabilities):
            raise ValueError("probabilities must be non-negative")
        total = math.fsum(self.probabilities)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")


def sine_profile(big_n: int) -> list[float]:
    """The 1-D weight profile g_k = (2/N) sin^2(pi (2k+1) / (2N)), k = 0..N-1."""
    if big_n < 2:
        raise ProtocolError(
            f"weight profile undefined for N={big_n}: it is only normalized for N >= 2"
        )
    return [
        (2.0 / big_n) * math.sin(math.pi * (2 * k + 1) / (2 * big_n)) ** 2
        for k in range(big_n)
    ]


def sine_weights(diagram_set: DiagramSet) -> WeightVector:
    """Product of the 1-D sine profile over the lattice coordinates."""
    g = sine_profile(diagram_set.N)
    probs = []
    for t in diagram_set.coords:
        p = 1.0
        for c in t:
            p *= g[c]
        probs.append(p)
    return WeightVector(diagram_set=diagram_set, probabilities=tuple(probs))


def epsilon_g(big_n: int) -> float:
    """Nearest-neighbour coherence deficit 1 - sum_k sqrt(g_k g_{k+1}).

    Lies in (0, 1) and is bounded above by pi^2 / N^2.
    """
    g = sine_profile(big_n)
    return 1.0 - math.fsum(
        math.sqrt(g[k] * g[k + 1]) for k in range(big_n - 1)
    )
