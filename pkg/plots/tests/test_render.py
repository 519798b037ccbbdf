from pathlib import Path

import numpy as np
import pytest

from uaplots.cli import main
from uaplots.render import build_figure, render
from uaplots.schema import PanelSpec, SchemaError, aggregate, load_columns

DATA = Path(__file__).parent / "data"


class TestSchema:
    def test_load_columns(self):
        cols = load_columns(DATA / "panel_a.csv", ("N", "tvd_ua"))
        assert set(cols) == {"N", "tvd_ua"}
        assert cols["N"].min() == 1.0
        assert cols["N"].max() == 8.0

    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("run,N,nu\n0,1,0.01\n")
        with pytest.raises(SchemaError, match="p_post"):
            load_columns(path, ("N", "p_post"))

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("run,N,nu,tvd_ua\n")
        with pytest.raises(SchemaError, match="no data"):
            load_columns(path, ("N",))

    def test_unknown_kind_rejected(self):
        with pytest.raises(SchemaError, match="panel kind"):
            PanelSpec(csv_path="x.csv", panel_kind="mystery", output_image_path="x.png")

    def test_aggregate(self):
        x = np.array([1.0, 1.0, 2.0, 2.0])
        y = np.array([0.1, 0.3, 0.5, 0.5])
        xs, mean, stderr = aggregate(x, y)
        assert np.array_equal(xs, [1.0, 2.0])
        assert mean[0] == pytest.approx(0.2)
        assert stderr[1] == 0.0


class TestRender:
    @pytest.mark.parametrize(
        "csv_name,kind",
        [
            ("panel_a.csv", "tvd_vs_N"),
            ("panel_b.csv", "tvd_vs_nu"),
            ("panel_a.csv", "p_vs_N"),
            ("panel_b.csv", "p_vs_nu"),
            ("success_grid.csv", "grid"),
        ],
    )
    def test_render_all_kinds(self, tmp_path, csv_name, kind):
        out = tmp_path / f"{kind}.png"
        render(PanelSpec(str(DATA / csv_name), kind, str(out)))
        assert out.exists() and out.stat().st_size > 0

    def test_marker_conventions(self):
        fig = build_figure(PanelSpec(str(DATA / "panel_a.csv"), "tvd_vs_N", "x.png"))
        markers = [line.get_marker() for line in fig.axes[0].get_lines()]
        assert "o" in markers
        assert "*" in markers

    def test_zero_noise_panel_uses_linear_scale(self):
        fig = build_figure(
            PanelSpec(str(DATA / "panel_a_zero.csv"), "tvd_vs_N", "x.png")
        )
        assert fig.axes[0].get_yscale() == "linear"

    def test_noisy_panel_uses_log_scale(self):
        fig = build_figure(PanelSpec(str(DATA / "panel_a.csv"), "tvd_vs_N", "x.png"))
        assert fig.axes[0].get_yscale() == "log"

    def test_style_override(self, tmp_path):
        style_file = tmp_path / "style.json"
        style_file.write_text('{"logy": false, "dpi": 72}')
        out = tmp_path / "styled.png"
        code = main(
            ["render", "--csv", str(DATA / "panel_a.csv"), "--kind", "tvd_vs_N",
             "--out", str(out), "--style", str(style_file)]
        )
        assert code == 0
        assert out.exists()

    def test_deterministic_output(self, tmp_path):
        spec1 = PanelSpec(str(DATA / "panel_a.csv"), "tvd_vs_N", str(tmp_path / "a.png"))
        spec2 = PanelSpec(str(DATA / "panel_a.csv"), "tvd_vs_N", str(tmp_path / "b.png"))
        render(spec1)
        render(spec2)
        assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


class TestCli:
    def test_render_ok(self, tmp_path):
        out = tmp_path / "grid.png"
        code = main(
            ["render", "--csv", str(DATA / "success_grid.csv"), "--kind", "grid",
             "--out", str(out)]
        )
        assert code == 0
        assert out.stat().st_size > 0

    def test_schema_violation_names_column(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("run,N,nu,tvd_ua,tvd_da,bound_ua,bound_da,p_uni\n0,1,0.01,0,0,0,0,1\n")
        code = main(
            ["render", "--csv", str(bad), "--kind", "p_vs_N", "--out", str(tmp_path / "x.png")]
        )
        assert code == 2
        assert "p_post" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        code = main(
            ["render", "--csv", str(tmp_path / "nope.csv"), "--kind", "grid",
             "--out", str(tmp_path / "x.png")]
        )
        assert code == 2
