import csv
import io

import pytest

from fpmih.cli import main
from fpmih.config import load_config, parse_config
from fpmih.figures import FIGURES, figure_rows
from fpmih.simulator import ConfigInvalid

from helpers import TESTDATA


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


# -- config ----------------------------------------------------------------------


def test_config_defaults_and_overrides():
    cfg = parse_config("rho_f = 0.2  # frame errors\n\nh_mag_mag = 4\nscheme = fast_mih\n")
    assert cfg.delay.rho_f == 0.2
    assert cfg.topology.h_mag_mag == 4
    assert cfg.scenario().scheme == "fast_mih"
    assert cfg.cost.p_f == 0.5 and cfg.mobility.r == 100


def test_config_unknown_keys_reported_with_line():
    with pytest.raises(ConfigInvalid) as exc:
        parse_config("rho_f = 0.1\nrhof = 0.2\nsize.M_42 = 3\n", "x.cfg")
    assert exc.value.problems == ["x.cfg:2: unknown key 'rhof'", "x.cfg:3: unknown message 'M_42'"]


def test_config_domain_errors():
    with pytest.raises(ConfigInvalid) as exc:
        parse_config("rho_f = 1.5\n")
    assert "rho_f" in str(exc.value)
    with pytest.raises(ConfigInvalid):
        parse_config("seed = -1\n")


def test_config_one_sweep_axis():
    cfg = parse_config("sweep.p_f = 0.1:0.1:0.5\n")
    assert cfg.sweep.typed() == [0.1, 0.2, 0.3, 0.4, 0.5]
    assert len(cfg.scenarios()) == 5
    with pytest.raises(ConfigInvalid):
        parse_config("sweep.p_f = 0.1:0.1:0.5\nsweep.r = 1:1:2\n")
    with pytest.raises(ConfigInvalid):
        parse_config("sweep.p_f = 0.5:0.1:0.1\n")


def test_config_sizes_and_booleans():
    cfg = parse_config("size.M_PBU = 77\nforward = no\ncandidate_ok = 1, 0, 1, 1, 1, 1\n")
    assert cfg.catalog.size("M_PBU") == 77
    sc = cfg.scenario()
    assert sc.forward is False and sc.candidate_ok == (True, False, True, True, True, True)


def test_missing_config_names_path(tmp_path):
    path = tmp_path / "absent.cfg"
    with pytest.raises(ConfigInvalid) as exc:
        load_config(path)
    assert str(path) in str(exc.value)


# -- figures ------------------------------------------------------------------------


def test_figure_headers():
    for fid, spec in FIGURES.items():
        want = "x,x2,standard,fast,proposed" if fid == "fig12" else "x,standard,fast,proposed"
        assert ",".join(spec.header) == want


def test_fig10_monotone_columns():
    table = figure_rows("fig10")
    assert float(table[0][0]) == 0 and float(table[-1][0]) == pytest.approx(0.3)
    for col in (1, 2, 3):
        vals = [r[col] for r in table]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_fig14_row_at_half(capsys):
    code, out, _ = run(["figure", "fig14"], capsys)
    assert code == 0
    row = [r for r in rows(out) if r[0] == "0.5"][0]
    assert float(row[3]) == pytest.approx(3.4036e-4 * 63515, rel=1e-3)


def test_fig12_grid_row():
    row = [r for r in figure_rows("fig12") if (float(r[0]), float(r[1])) == (100, 10)][0]
    assert row[2] == pytest.approx(3.4036e-4, rel=1e-3)


def test_fig15_range():
    xs = [float(r[0]) for r in figure_rows("fig15")]
    assert xs[0] == 1 and xs[-1] == 36


def test_figure_sweep_override(capsys, tmp_path):
    cfg = tmp_path / "f.cfg"
    cfg.write_text("sweep.D_wl = 5:5:15\n")
    code, out, _ = run(["figure", "fig11", "--config", str(cfg)], capsys)
    assert code == 0 and [r[0] for r in rows(out)[1:]] == ["5", "10", "15"]
    cfg.write_text("sweep.r = 5:5:15\n")
    code, _, err = run(["figure", "fig11", "--config", str(cfg)], capsys)
    assert code == 1 and "sweeps D_wl" in err


def test_figure_rows_do_not_leak_between_points():
    cfg = parse_config("p_f = 0.3\n")
    table = figure_rows("fig13", cfg)
    again = figure_rows("fig13", cfg)
    assert table == again


def test_unknown_figure_is_usage_error(capsys):
    code, _, err = run(["figure", "fig9"], capsys)
    assert code == 1 and "fig9" in err


# -- simulate ------------------------------------------------------------------------


def test_simulate_writes_metrics_and_transcript(capsys, tmp_path):
    out = tmp_path / "m.csv"
    code, _, _ = run(["simulate", "--out", str(out), "--seed", "5"], capsys)
    assert code == 0
    table = rows(out.read_text())
    assert table[1][0] == "proposed" and table[1][2] == "5"
    transcript = (tmp_path / "m.transcript.txt").read_text()
    kinds = [line.split(" | ")[3] for line in transcript.splitlines()]
    assert "HI" not in kinds and "HACK" not in kinds


def test_simulate_byte_identical(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("mode = sampled\nscheme = fpmip_predictive\n")
    outs = []
    for name in ("a", "b"):
        out = tmp_path / f"{name}.csv"
        assert run(["simulate", "--config", str(cfg), "--seed", "11", "--out", str(out)], capsys)[0] == 0
        outs.append((out.read_bytes(), (tmp_path / f"{name}.transcript.txt").read_bytes()))
    assert outs[0] == outs[1]


def test_simulate_sweep_rows(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("sweep.rho_f = 0:0.1:0.3\n")
    code, out, _ = run(["simulate", "--config", str(cfg)], capsys)
    assert code == 0 and len(rows(out)) == 5


def test_simulate_missing_config(capsys, tmp_path):
    code, _, err = run(["simulate", "--config", str(tmp_path / "nope.cfg")], capsys)
    assert code == 1 and "nope.cfg" in err


def test_bad_seed_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--seed", "-4"])
    assert exc.value.code == 1


# -- validate -------------------------------------------------------------------------


def test_validate_defaults_pass(capsys):
    code, out, _ = run(["validate"], capsys)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 8
    assert all(line.startswith("PASS") for line in lines)


def test_validate_detects_tampered_catalog(capsys, tmp_path):
    cfg = tmp_path / "t.cfg"
    cfg.write_text("size.M_PBU = 77\n")
    code, out, _ = run(["validate", "--config", str(cfg)], capsys)
    assert code == 2
    assert any(line.startswith("FAIL") and "signaling" in line for line in out.splitlines())


# -- codec ----------------------------------------------------------------------------


def test_codec_decode_status_meaning(capsys):
    code, out, _ = run(["codec", "decode", str(TESTDATA / "commit_response_ext_130.hex")], capsys)
    assert code == 0 and "Insufficient resources" in out


def test_codec_roundtrip_listing(capsys, tmp_path):
    code, listing, _ = run(["codec", "decode", str(TESTDATA / "commit_request_ext.hex")], capsys)
    assert code == 0
    spec = tmp_path / "m.txt"
    spec.write_text(listing)
    code, hex_out, _ = run(["codec", "encode", str(spec)], capsys)
    assert code == 0
    dump = tmp_path / "m.hex"
    dump.write_text(hex_out)
    code, again, _ = run(["codec", "decode", str(dump)], capsys)
    assert again == listing


def test_codec_truncated_reports_offset(capsys):
    code, _, err = run(["codec", "decode", str(TESTDATA / "truncated.hex")], capsys)
    assert code == 2 and "Truncated" in err and "offset 9" in err


def test_codec_bad_spec_reports_line(capsys, tmp_path):
    spec = tmp_path / "bad.txt"
    spec.write_text("kind = MIH_N2N_HO_Commit_response_ext\ntlv STATUS = 999\n")
    code, _, err = run(["codec", "encode", str(spec)], capsys)
    assert code == 2 and "line 2" in err


def test_codec_missing_input_file(capsys, tmp_path):
    code, _, err = run(["codec", "decode", str(tmp_path / "none.hex")], capsys)
    assert code == 1
