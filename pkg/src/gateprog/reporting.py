"""Protocol reports over (n, d) points, inequality checks, and persistence.

Reports carry both achieved quantities (fidelities, exact program dimension)
and the guaranteed bounds they must satisfy; each bound gets a pass flag.  The
exact program dimension is an arbitrary-precision integer carried alongside
its log2 view and serialized as a decimal string.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from .protocol import sine_weights, viable_set
from .scoring import entanglement_fidelity, lemma3_bound, optimal_fidelity, score_matrix
from .young import irrep_dimension


@dataclass(frozen=True)
class ProtocolReport:
    """All achieved values and bound checks for one (n, d) protocol instance."""

    d: int
    n: int
    N: int
    n0: int
    set_size: int
    fidelity_qstar: float
    fidelity_optimal: float
    epsilon_qstar: float
    epsilon_optimal: float
    dP_exact: int
    dP_exact_log2: float
    cP_bits: float
    bound_eq5: float
    bound_eq6_log2: float
    bound_lemma3: float
    bound_lemma4_log2: float
    corollary_bits: float
    pass_flags: dict[str, bool]


def protocol_report(n: int, d: int) -> ProtocolReport:
    """Run the full pipeline at one point and evaluate every guarantee.

    Bounds checked: the achieved error against 2 (pi (d-1)^2 (3d-2) / (d n))^2;
    the exact dimension against both (9n/(3d-2))^(d^2-1) and the sharper
    (2(d-1) c_max n + 3)^(d^2-1); the sine-weight fidelity against its closed
    floor; and the cost in bits against the achievable-cost curve evaluated at
    the achieved error.
    """
    diagram_set = viable_set(n, d)
    weights = sine_weights(diagram_set)
    matrix = score_matrix(diagram_set)
    qstar = entanglement_fidelity(weights, matrix)
    optimal = optimal_fidelity(matrix)

    dim_exact = sum(irrep_dimension(lam) ** 2 for lam in diagram_set.members)
    dim_log2 = math.log2(dim_exact)

    nu = d * d - 1
    bound_eq5 = 2.0 * (math.pi * (d - 1) ** 2 * (3 * d - 2) / (d * n)) ** 2
    bound_eq6_log2 = nu * math.log2(9.0 * n / (3 * d - 2))
    bound_l3 = lemma3_bound(d, n)
    c_max_n = (2.0 * n + (d - 2) * (d - 1)) / ((3 * d - 2) * (d - 1))
    bound_l4_log2 = nu * math.log2(2.0 * (d - 1) * c_max_n + 3.0)
    corollary = bounds_mod.upper_bound_cost(d, qstar.error)

    flags = {
        "eq5": qstar.error <= bound_eq5,
        "eq6": dim_log2 <= bound_eq6_log2,
        "lemma3": qstar.fidelity >= bound_l3,
        "lemma4": dim_log2 <= bound_l4_log2,
        "corollary": dim_log2 <= corollary,
    }

    return ProtocolReport(
        d=d,
        n=n,
        N=diagram_set.N,
        n0=diagram_set.n0,
        set_size=len(diagram_set),
        fidelity_qstar=qstar.fidelity,
        fidelity_optimal=optimal.fidelity,
        epsilon_qstar=qstar.error,
        epsilon_optimal=optimal.error,
        dP_exact=dim_exact,
        dP_exact_log2=dim_log2,
        cP_bits=dim_log2,
        bound_eq5=bound_eq5,
        bound_eq6_log2=bound_eq6_log2,
        bound_lemma3=bound_l3,
        bound_lemma4_log2=bound_l4_log2,
        corollary_bits=corollary,
        pass_flags=flags,
    )


@dataclass(frozen=True)
class SweepResult:
    """Reports over an n-grid plus the fitted log-log error slope."""

    reports: tuple[ProtocolReport, ...]
    slope: float
    residual: float


def sweep(d: int, n_values: list[int]) -> SweepResult:
    """Evaluate a grid of n values and fit the log-log slope of the error.

    Needs at least three points for a meaningful fit; reports are ordered by n.
    """
    if len(n_values) < 3:
        raise ValueError(f"need at least 3 points for a slope fit, got {len(n_values)}")
    reports = tuple(protocol_report(n, d) for n in sorted(n_values))
    log_n = np.log([r.n for r in reports])
    log_eps = np.log([r.epsilon_qstar for r in reports])
    slope, intercept = np.polyfit(log_n, log_eps, 1)
    fitted = slope * log_n + intercept
    residual = float(np.sqrt(np.mean((log_eps - fitted) ** 2)))
    return SweepResult(reports=reports, slope=float(slope), residual=residual)


def format_float(x: float) -> str:
    """Fixed 12-significant-digit rendering used for all floating output."""
    return f"{x:.12g}"


def _round12(x: float) -> float:
    return float(format_float(x))


REPORT_FIELDS = (
    "d", "n", "N", "n0", "set_size",
    "fidelity_qstar", "fidelity_optimal", "epsilon_qstar", "epsilon_optimal",
    "dP_exact", "dP_exact_log2", "cP_bits",
    "bound_eq5", "bound_eq6_log2", "bound_lemma3", "bound_lemma4_log2",
    "corollary_bits",
)

PASS_FLAG_FIELDS = ("eq5", "eq6", "lemma3", "lemma4", "corollary")

CSV_COLUMNS = REPORT_FIELDS + tuple(f"pass_{k}" for k in PASS_FLAG_FIELDS)


def report_to_dict(report: ProtocolReport) -> dict:
    """Stable-key mapping; exact dimension as a decimal string, floats at 12 digits."""
    out: dict = {}
    for key in REPORT_FIELDS:
        value = getattr(report, key)
        if key == "dP_exact":
            out[key] = str(value)
        elif isinstance(value, float):
            out[key] = _round12(value)
        else:
            out[key] = value
    out["pass_flags"] = {k: report.pass_flags[k] for k in PASS_FLAG_FIELDS}
    return out


def sweep_to_dict(result: SweepResult) -> dict:
    return {
        "reports": [report_to_dict(r) for r in result.reports],
        "slope": _round12(result.slope),
        "residual": _round12(result.residual),
    }


def reports_to_csv(reports: list[ProtocolReport] | tuple[ProtocolReport, ...]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        row = []
        for key in REPORT_FIELDS:
            value = getattr(report, key)
            if key == "dP_exact":
                row.append(str(value))
            elif isinstance(value, float):
                row.append(format_float(value))
            else:
                row.append(value)
        row.extend(report.pass_flags[k] for k in PASS_FLAG_FIELDS)
        writer.writerow(row)
    return buf.getvalue()


def write_text_atomic(text: str, path: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def write_json(payload: dict, path: str) -> None:
    write_text_atomic(json.dumps(payload, indent=2) + "\n", path)


def write_csv(reports: list[ProtocolReport] | tuple[ProtocolReport, ...], path: str) -> None:
    write_text_atomic(reports_to_csv(reports), path)
