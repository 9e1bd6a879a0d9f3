"""Protocol reports, sweeps, and the JSON/CSV persistence layer."""

import json
import math
import os

import numpy as np
import pytest

from gateprog.reporting import (
    CSV_COLUMNS,
    protocol_report,
    report_to_dict,
    reports_to_csv,
    sweep,
    sweep_to_dict,
    write_csv,
    write_json,
)
from gateprog.young import irrep_dimension
from gateprog.protocol import viable_set


class TestProtocolReport:
    def test_n4_d2(self):
        r = protocol_report(4, 2)
        assert r.fidelity_qstar == pytest.approx(0.75, abs=1e-14)
        assert r.epsilon_qstar == pytest.approx(0.25, abs=1e-14)
        assert r.set_size == 2
        assert r.dP_exact == 34  # dimensions 3 and 5
        assert all(r.pass_flags.values())

    def test_n8_d2(self):
        r = protocol_report(8, 2)
        assert r.epsilon_qstar == pytest.approx(0.10983495705504442, abs=1e-13)
        assert r.bound_eq5 == pytest.approx(2.0 * (math.pi * 4.0 / 16.0) ** 2, abs=1e-12)
        assert r.pass_flags["eq5"]

    def test_n26_d3(self):
        r = protocol_report(26, 3)
        assert r.set_size == 9
        assert all(r.pass_flags.values())

    def test_error_is_exact_complement(self):
        r = protocol_report(16, 2)
        assert r.epsilon_qstar == 1.0 - r.fidelity_qstar
        assert r.epsilon_optimal == 1.0 - r.fidelity_optimal

    def test_exact_dimension_and_log(self):
        r = protocol_report(8, 2)
        expected = sum(irrep_dimension(m) ** 2 for m in viable_set(8, 2).members)
        assert r.dP_exact == expected
        assert r.dP_exact_log2 == pytest.approx(math.log2(expected), abs=1e-13)
        assert r.cP_bits == r.dP_exact_log2

    def test_propagates_preconditions(self):
        with pytest.raises(Exception, match="degenerate weight regime"):
            protocol_report(12, 3)


class TestSweep:
    def test_heisenberg_slope(self):
        result = sweep(2, [32, 64, 128, 256])
        assert result.slope == pytest.approx(-2.0, abs=0.05)
        assert result.residual < 0.05
        assert [r.n for r in result.reports] == [32, 64, 128, 256]

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            sweep(2, [8, 16])

    def test_cost_slope_stays_under_scaled_limit(self):
        result = sweep(2, [32, 64, 128, 256])
        xs = [math.log2(1.0 / r.epsilon_qstar) for r in result.reports]
        ys = [r.cP_bits for r in result.reports]
        slope = float(np.polyfit(xs, ys, 1)[0])
        assert slope <= 1.5 * 1.05


class TestSerialization:
    def test_report_dict_layout(self):
        payload = report_to_dict(protocol_report(8, 2))
        assert payload["dP_exact"] == "164"
        assert isinstance(payload["pass_flags"], dict)
        assert payload["fidelity_qstar"] == pytest.approx(0.890165042945, abs=1e-12)

    def test_csv_layout(self):
        text = reports_to_csv([protocol_report(8, 2)])
        header, row = text.strip().splitlines()
        assert header == ",".join(CSV_COLUMNS)
        cells = row.split(",")
        assert cells[0] == "2" and cells[1] == "8"
        assert cells[CSV_COLUMNS.index("dP_exact")] == "164"

    def test_json_roundtrip_and_determinism(self, tmp_path):
        result = sweep(2, [8, 12, 16])
        path_a = tmp_path / "a.json"
        path_b = tmp_path / "b.json"
        write_json(sweep_to_dict(result), str(path_a))
        write_json(sweep_to_dict(sweep(2, [8, 12, 16])), str(path_b))
        assert path_a.read_bytes() == path_b.read_bytes()
        parsed = json.loads(path_a.read_text())
        assert len(parsed["reports"]) == 3
        assert parsed["reports"][0]["dP_exact"] == "164"

    def test_atomic_write_leaves_no_temp_files(self, tmp_path):
        write_csv([protocol_report(4, 2)], str(tmp_path / "out.csv"))
        assert sorted(os.listdir(tmp_path)) == ["out.csv"]
        text = (tmp_path / "out.csv").read_text()
        assert text.startswith(",".join(CSV_COLUMNS))
