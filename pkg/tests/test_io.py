import csv

import numpy as np
import pytest

from amar.estimation import amar_fit
from amar.exceptions import CsvParseError, DataGapError
from amar.io import emit_plot_data, ingest_csv
from amar.models import AmarModel, InnovationSpec, spectral_density_single_scale
from amar.simulate import simulate


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_ingest_difference(tmp_path):
    path = write(tmp_path, "t,x\n1,1.0\n2,2.0\n3,4.0\n")
    x, meta = ingest_csv(path, "x", difference=True)
    assert np.allclose(x, [1.0, 2.0])
    assert meta["difference"] and meta["last_level"] == 4.0


def test_ingest_demean(tmp_path):
    path = write(tmp_path, "t,x\n1,1\n2,2\n3,3\n")
    x, meta = ingest_csv(path, "x", demean=True)
    assert np.allclose(x, [-1.0, 0.0, 1.0])
    assert meta["mean"] == 2.0


def test_ingest_by_index_and_edge_missing(tmp_path):
    path = write(tmp_path, "a,b\n,1\n2,2\n3,\n")
    x, _ = ingest_csv(path, 0)
    assert np.allclose(x, [2.0, 3.0])
    y, _ = ingest_csv(path, "b")
    assert np.allclose(y, [1.0, 2.0])


def test_ingest_interior_gap(tmp_path):
    path = write(tmp_path, "t,x\n1,1.0\n2,\n3,3.0\n")
    with pytest.raises(DataGapError):
        ingest_csv(path, "x")


def test_ingest_malformed_cell_names_row(tmp_path):
    path = write(tmp_path, "t,x\n1,1.0\n2,oops\n")
    with pytest.raises(CsvParseError) as err:
        ingest_csv(path, "x")
    assert err.value.row == 3  # header is row 1


def test_ingest_unknown_column(tmp_path):
    path = write(tmp_path, "t,x\n1,1.0\n")
    with pytest.raises(CsvParseError):
        ingest_csv(path, "y")
    with pytest.raises(CsvParseError):
        ingest_csv(path, 5)


def test_path_round_trip(tmp_path):
    x = simulate(AmarModel((1, 3), (0.3, 0.6), InnovationSpec(seed=8)), 64)
    out = tmp_path / "path.csv"
    emit_plot_data("path", x, out)
    back, _ = ingest_csv(out, "x")
    assert np.array_equal(back, x)


def test_coeffs_plot_data(tmp_path):
    x = simulate(AmarModel((1, 3), (0.3, 0.6), InnovationSpec(seed=44)), 1500)
    report = amar_fit(x)
    out = tmp_path / "coeffs.csv"
    emit_plot_data("coeffs-with-scales", report, out)
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["lag", "beta_hat", "beta_constrained", "is_scale_boundary"]
    assert len(rows) - 1 == report.chosen_p
    flagged = [int(r[0]) for r in rows[1:] if r[3] == "1"]
    assert tuple(flagged) == report.scales


def test_spectral_plot_data(tmp_path):
    out = tmp_path / "spec.csv"
    emit_plot_data("spectral", (0.7, 10, 512), out)
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))[1:]
    assert len(rows) == 512
    freqs = [float(r[0]) for r in rows]
    assert all(0 < f < 0.5 for f in freqs)
    # values agree with the closed form
    for f, s in [(float(r[0]), float(r[1])) for r in rows[::101]]:
        assert s == pytest.approx(spectral_density_single_scale(0.7, 10, f))


def test_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        emit_plot_data("heatmap", None, tmp_path / "x.csv")
