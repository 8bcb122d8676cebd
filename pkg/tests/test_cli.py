import json
from fractions import Fraction

import pytest

from hnnlat import jsonio
from hnnlat.cli import main
from hnnlat.coarse import FiniteCoarseSpace
from hnnlat.cyclic import standard_order
from hnnlat.tree import expand_ball, stabilization_sequence
from hnnlat.words import GroupWord


@pytest.fixture()
def workdir(tmp_path):
    (tmp_path / "matrix.json").write_text('[["3/5", "-4/5"], ["4/5", "3/5"]]\n')
    (tmp_path / "group.json").write_text(
        json.dumps({"n": 1, "A": [["2/1"]], "L_prime": [["1"]]})
    )
    (tmp_path / "word.json").write_text(
        json.dumps({"head": ["0"], "tail": [{"eps": 1, "c": ["1"]}, {"eps": -1, "c": ["0"]}]})
    )
    (tmp_path / "perms.json").write_text("[[1, 2, 3, 4, 0]]")
    (tmp_path / "space.json").write_text(
        json.dumps({"points": 5, "edges": [[0, 1, "1/1"], [1, 2, "1/1"], [2, 3, "1/1"], [3, 4, "1/1"]]})
    )
    (tmp_path / "subset.json").write_text("[2]")
    (tmp_path / "order.json").write_text(
        json.dumps(jsonio.encode_order(standard_order(4)))
    )
    return tmp_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestCommands:
    def test_classify(self, workdir, capsys):
        code, out = run_cli(capsys, "classify", str(workdir / "matrix.json"))
        assert code == 0
        payload = json.loads(out)
        assert payload["orthogonal_conjugate"] is True
        assert payload["order"] == "infinite"

    def test_classify_quarter_turn(self, workdir, capsys, tmp_path):
        (tmp_path / "q.json").write_text('[["0/1","-1/1"],["1/1","0/1"]]')
        code, out = run_cli(capsys, "classify", str(tmp_path / "q.json"))
        assert code == 0
        assert json.loads(out)["order"] == {"finite": "4"}

    def test_group_validate(self, workdir, capsys):
        code, out = run_cli(capsys, "group", "validate", str(workdir / "group.json"))
        assert code == 0
        payload = json.loads(out)
        assert payload["index_domain"] == "1" and payload["index_image"] == "2"

    def test_word(self, workdir, capsys):
        code, out = run_cli(
            capsys,
            "word",
            "--group",
            str(workdir / "group.json"),
            "--word",
            str(workdir / "word.json"),
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["t_length"] == 0
        assert payload["normal_form"]["head"] == ["2"]

    def test_tree_expand(self, workdir, capsys):
        code, out = run_cli(
            capsys, "tree", "expand", "--group", str(workdir / "group.json"), "--radius", "2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["vertex_count"] == 10
        assert len(payload["edges"]) == 9

    def test_tree_act(self, workdir, capsys):
        code, out = run_cli(
            capsys,
            "tree",
            "act",
            "--group",
            str(workdir / "group.json"),
            "--word",
            str(workdir / "word.json"),
            "--radius",
            "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["map"]) == 4

    def test_tree_stabilize(self, workdir, capsys):
        code, out = run_cli(
            capsys,
            "tree",
            "stabilize",
            "--group",
            str(workdir / "group.json"),
            "--element",
            "1",
            "--depth",
            "5",
        )
        assert code == 0
        assert json.loads(out)["n"] == ["2", "4", "8", "16", "32"]

    def test_coarse_analyze(self, workdir, capsys):
        code, out = run_cli(
            capsys,
            "coarse",
            "analyze",
            "--space",
            str(workdir / "space.json"),
            "--subset",
            str(workdir / "subset.json"),
            "--r",
            "1",
            "--s",
            "1",
            "--r-deep",
            "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["deep_count"] == 2 and payload["class_dimension"] == 1

    def test_order_check(self, workdir, capsys):
        code, out = run_cli(capsys, "order", "check", str(workdir / "order.json"))
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_order_solve(self, workdir, capsys):
        code, out = run_cli(
            capsys, "order", "solve", "--perms", str(workdir / "perms.json"), "--mode", "preserve-only"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["satisfiable"] is True
        assert payload["witness"] is not None

    def test_order_replay_chain(self, capsys):
        code, out = run_cli(capsys, "order", "replay-chain", "--length", "8")
        assert code == 0
        payload = json.loads(out)
        assert payload["consistent"] is True
        assert len(payload["derived_targets"]) == 7
        assert payload["traces"]

    def test_order_replay_contradiction(self, capsys):
        code, out = run_cli(capsys, "order", "replay-chain", "--length", "8", "--contradict")
        assert code == 0
        payload = json.loads(out)
        assert payload["consistent"] is False and payload["clash"] is not None

    def test_selftest_smoke(self, capsys):
        # the full selftest runs in the acceptance suite; smoke-check wiring here
        from hnnlat import selftest

        assert any(name == "json_roundtrips" for _, name, _ in selftest.CHECKS)


class TestExitCodes:
    def test_parse_failure(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        assert main(["classify", str(bad)]) == 2

    def test_missing_file(self, capsys):
        assert main(["classify", "/nonexistent/matrix.json"]) == 2

    def test_singular_matrix(self, tmp_path, capsys):
        f = tmp_path / "singular.json"
        f.write_text('[["1/1","1/1"],["1/1","1/1"]]')
        assert main(["classify", str(f)]) == 3

    def test_invalid_group(self, tmp_path, capsys):
        f = tmp_path / "group.json"
        f.write_text(json.dumps({"n": 1, "A": [["1/2"]], "L_prime": [["1"]]}))
        assert main(["group", "validate", str(f)]) == 3

    def test_radius_cap(self, workdir, capsys):
        assert (
            main(["tree", "expand", "--group", str(workdir / "group.json"), "--radius", "9"]) == 3
        )


class TestDemoCommand:
    def test_demo_runs_and_is_deterministic(self, configs_dir, capsys):
        code1, out1 = run_cli(capsys, "demo", "--config", str(configs_dir / "bs12.json"))
        code2, out2 = run_cli(capsys, "demo", "--config", str(configs_dir / "bs12.json"))
        assert code1 == code2 == 0
        assert out1 == out2

    def test_demo_text_format(self, configs_dir, capsys):
        code, out = run_cli(
            capsys, "demo", "--config", str(configs_dir / "finite_order.json"), "--format", "text"
        )
        assert code == 0
        assert "no growth; obstruction machinery vacuous" in out

    def test_demo_writes_output(self, configs_dir, tmp_path, capsys):
        code, out = run_cli(
            capsys,
            "demo",
            "--config",
            str(configs_dir / "finite_order.json"),
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert (tmp_path / "demo_report.json").read_text() == out


class TestRoundTrips:
    def test_matrix(self, flagship_matrix):
        assert jsonio.decode_matrix(jsonio.encode_matrix(flagship_matrix)) == flagship_matrix

    def test_rationals(self):
        for v in (Fraction(3, 5), Fraction(-7, 2), Fraction(4)):
            assert jsonio.decode_rational(jsonio.encode_rational(v)) == v
        assert jsonio.decode_rational("5") == Fraction(5)

    def test_group(self, flagship):
        assert jsonio.decode_group(jsonio.encode_group(flagship)) == flagship

    def test_word(self):
        w = GroupWord((3, -1), ((1, (0, 2)), (-1, (5, 7))))
        assert jsonio.decode_word(jsonio.encode_word(w)) == w

    def test_classification(self, flagship):
        c = flagship.classification
        assert jsonio.decode_classification(jsonio.encode_classification(c)) == c

    def test_ball(self, flagship):
        ball = expand_ball(flagship, 2)
        parsed = jsonio.decode_ball_structure(jsonio.encode_ball(ball))
        assert parsed["group"] == flagship
        assert [k for k, _ in parsed["vertices"]] == list(ball.vertices)
        assert all(parsed["stabilizers"][k] == ball.stabilizers[k] for k in ball.vertices)
        assert len(parsed["edges"]) == ball.vertex_count - 1

    def test_stabilization(self, flagship):
        report = stabilization_sequence(flagship, (1, 0), 3)
        assert jsonio.decode_stabilization(jsonio.encode_stabilization(report)) == report

    def test_space(self):
        space = FiniteCoarseSpace.from_graph(
            4, [(0, 1, 1), (1, 2, Fraction(1, 2)), (2, 3, 2)]
        )
        rebuilt = jsonio.decode_space(jsonio.encode_space(space))
        assert rebuilt.points == 4
        for i in range(4):
            for j in range(4):
                assert rebuilt.distance(i, j) == space.distance(i, j)

    def test_order(self):
        order = standard_order(6)
        assert jsonio.decode_order(jsonio.encode_order(order)) == order

    def test_key_strings(self, flagship):
        ball = expand_ball(flagship, 2)
        for key in ball.vertices:
            assert jsonio.parse_key(jsonio.key_str(key)) == key


class TestConfigHandling:
    def test_group_file_resolved_relative_to_config(self, tmp_path, capsys):
        (tmp_path / "group.json").write_text(
            json.dumps({"n": 1, "A": [["2/1"]], "L_prime": [["1"]]})
        )
        (tmp_path / "cfg.json").write_text(
            json.dumps(
                {
                    "group_file": "group.json",
                    "radius": 2,
                    "stabilization_depth": 2,
                    "coarse": {"tree_radius": 1, "box_length": 3, "r_deep": "1"},
                }
            )
        )
        code = main(["demo", "--config", str(tmp_path / "cfg.json")])
        out = capsys.readouterr().out
        assert code == 0
        assert json.loads(out)["group"]["tree_degree"] == "3"

    def test_coarse_point_cap_enforced(self, tmp_path, capsys):
        (tmp_path / "cfg.json").write_text(
            json.dumps(
                {
                    "group": {"n": 1, "A": [["2/1"]], "L_prime": [["1"]]},
                    "radius": 2,
                    "coarse": {"tree_radius": 2, "box_length": 5, "point_cap": 10},
                }
            )
        )
        code = main(["demo", "--config", str(tmp_path / "cfg.json")])
        assert code == 4  # the coarse stage aborts
