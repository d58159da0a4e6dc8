import json

import pytest

from beamsel.channel import load_channel
from beamsel.cli import main


@pytest.fixture
def fixture_file(tmp_path, hand):
    path = tmp_path / "hand.json"
    entries = [[z.real, z.imag] for z in hand.ravel()]
    path.write_text(json.dumps({"n_U": 2, "n_B": 3, "entries": entries}))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGen:
    def test_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for p in (a, b):
            assert run(capsys, "gen", "--n-B", 16, "--n-U", 4, "--seed", 42, "-o", p)[0] == 0
        assert a.read_bytes() == b.read_bytes()
        assert load_channel(a).shape == (4, 16)

    def test_validation(self, capsys):
        assert run(capsys, "gen", "--n-B", 4, "--n-U", 5)[0] == 1

    def test_bad_flag_exit_code(self, capsys):
        assert run(capsys, "gen", "--bogus")[0] == 1

    def test_round_trip_through_select(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        run(capsys, "gen", "--n-B", 16, "--n-U", 4, "-o", path)
        code, out, _ = run(capsys, "select", path, "-K", 6)
        assert code == 0 and len(json.loads(out)["selection"]["selected"]) == 6


class TestSelect:
    def test_hand(self, fixture_file, capsys):
        code, out, _ = run(capsys, "select", fixture_file, "-K", 2)
        d = json.loads(out)
        assert code == 0
        assert d["selection"]["selected"] == [0, 1]
        assert d["selection"]["final_norm_sq"] == pytest.approx(2.0)
        assert d["bounds"]["theorem1_bound"] == pytest.approx(8 / 3)

    def test_keep_all(self, fixture_file, capsys):
        d = json.loads(run(capsys, "select", fixture_file, "-K", 3)[1])
        assert d["selection"]["final_norm_sq"] == pytest.approx(d["bounds"]["full_norm_sq"])

    def test_naive_matches(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        run(capsys, "gen", "--n-B", 14, "--n-U", 3, "--seed", 7, "-o", path)
        fast = json.loads(run(capsys, "select", path, "-K", 5)[1])
        slow = json.loads(run(capsys, "select", path, "-K", 5, "--naive")[1])
        assert fast["selection"]["selected"] == slow["selection"]["selected"]

    def test_preselect_maps_indices(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        run(capsys, "gen", "--n-B", 64, "--n-U", 8, "-o", path)
        d = json.loads(run(capsys, "select", path, "-K", 16, "--preselect", "top")[1])
        assert set(d["selection"]["selected"]) <= set(d["preselect"]["candidates"])
        assert d["bounds"]["improved_bound"] is not None
        assert d["rates"]["r_s"] >= d["bounds"]["rate_lower_bound"]

    def test_bad_K(self, fixture_file, capsys):
        assert run(capsys, "select", fixture_file, "-K", 1)[0] == 1

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "select", tmp_path / "nope.json", "-K", 1)[0] == 1

    def test_singular_channel(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"n_U": 2, "n_B": 2,
                                    "entries": [[1, 0], [1, 0], [1, 0], [1, 0]]}))
        assert run(capsys, "select", path, "-K", 2)[0] == 2


class TestBound:
    def test_reference_profile(self, capsys):
        code, out, _ = run(capsys, "bound", 256, 32)
        lines = out.strip().split("\n")
        assert code == 0 and lines[0] == "K,factor"
        rows = lines[1:-1]
        assert len(rows) == 225
        assert rows[0] == "32,225" and rows[-1] == "256,1"
        assert lines[-1] == "# vertex,46,15"

    def test_invalid(self, capsys):
        assert run(capsys, "bound", 4, 4)[0] == 1


class TestSweep:
    def test_csv_and_overrides(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"params": {"n_B": 20, "n_U": 4}, "K_values": [4, 8],
                                   "trials": 50}))
        out = tmp_path / "o.csv"
        code, _, _ = run(capsys, "sweep", "--config", cfg, "--trials", 3,
                         "--snr-db", 0, 10, "-o", out)
        lines = out.read_text().strip().split("\n")
        assert code == 0 and len(lines) == 1 + 2 * 2
        assert lines[0].startswith("K,snr_db,r_full_mean")

    def test_worker_determinism(self, tmp_path, capsys):
        outs = []
        for w in (1, 4):
            p = tmp_path / f"w{w}.csv"
            run(capsys, "sweep", "--n-B", 20, "--n-U", 4, "--K", 4, 20, "--trials", 4,
                "--workers", w, "-o", p)
            outs.append(p.read_bytes())
        assert outs[0] == outs[1]

    def test_full_K_equals_full_rate(self, tmp_path, capsys):
        p = tmp_path / "o.json"
        run(capsys, "sweep", "--n-B", 12, "--n-U", 3, "--K", 12, "--trials", 1,
            "--format", "json", "-o", p)
        for c in json.loads(p.read_text())["cells"]:
            assert c["r_s_mean"] == c["r_full_mean"]

    def test_invalid_K(self, capsys):
        assert run(capsys, "sweep", "--n-B", 12, "--n-U", 3, "--K", 2)[0] == 1


class TestVerify:
    def test_default(self, capsys):
        code, out, _ = run(capsys, "verify", "--count", 20)
        assert code == 0 and "FAIL" not in out

    def test_hand_values(self, fixture_file, capsys):
        code, out, _ = run(capsys, "verify", "--channel", fixture_file)
        assert code == 0
        assert "q_norm_sum 2 " in out
        assert "trace_sum 1.333333333333333" in out
        assert "weighted_sum 2.66666666666666" in out
        assert "min_cost 2 <=" in out

    def test_broken_bound(self, capsys):
        code, out, _ = run(capsys, "verify", "--count", 3, "--break-bound")
        assert code == 3 and "FAIL theorem1_bound" in out
