import pytest

from ordlift.errors import InputError
from ordlift.models import AuditReport, Report, RunConfig
from ordlift.reports import build_header, emit_plot, render_csv, write_report


def make_report() -> Report:
    section = AuditReport(name="demo", columns=["row", "value"])
    section.add_row("value", "1/2")
    return Report(header=build_header(RunConfig(command="tau", seed=4)), sections=[section])


def test_render_csv_layout():
    lines = render_csv(make_report()).splitlines()
    header = [line for line in lines if line.startswith("# ")]
    assert header == sorted(header)
    assert "# seed=4" in header
    assert any(line.startswith("# mpmath_version=") for line in header)
    assert lines[len(header):] == ["section,demo", "row,value", "value,1/2", "verdict,pass"]


def test_violations_are_listed():
    report = make_report()
    report.sections[0].flag("bound", "x=1", "too large")
    assert render_csv(report).splitlines()[-2:] == ["violation,bound,x=1,too large", "verdict,fail"]


def test_write_report(tmp_path):
    out = tmp_path / "report.csv"
    text = write_report(make_report(), str(out))
    assert out.read_text() == text
    assert write_report(make_report(), "-") == text


def test_svg_plots_are_deterministic(tmp_path):
    series = [(1.0, 2.0), (2.0, 1.5), (3.0, 4.0 / 3.0)]
    first = emit_plot(series, tmp_path / "a.svg", title="growth", reference=1.5).read_bytes()
    second = emit_plot(series, tmp_path / "b.svg", title="growth", reference=1.5).read_bytes()
    assert first == second
    assert b"<svg" in first


def test_empty_series_is_rejected(tmp_path):
    with pytest.raises(InputError):
        emit_plot([], tmp_path / "empty.svg")
