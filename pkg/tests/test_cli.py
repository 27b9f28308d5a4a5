import json

import pytest

from cli import dump_instance, main, parse_instance
from errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInstanceFile:
    def test_worked_file(self, instance_path, worked_instance):
        loaded = parse_instance(instance_path.read_text())
        assert loaded.instance.ts == worked_instance.ts
        assert loaded.instance.target == (1, 0)
        assert loaded.seeds == {'noise': 7}

    def test_round_trip(self, worked_instance):
        assert parse_instance(dump_instance(worked_instance)).instance == worked_instance

    def test_json_error_has_position(self):
        with pytest.raises(ParseError) as info:
            parse_instance('{"maps": [}')
        assert info.value.position.startswith("line 1")

    def test_float_rejected_with_path(self):
        text = '{"maps": [{"a": [[0.5, "0"], ["0", "1/2"]], "b": ["1", "0"]}], "epsilon": "1/2", "n": 1, "x0": [0, 0]}'
        with pytest.raises(ParseError) as info:
            parse_instance(text)
        assert info.value.position == "$.maps[0].a[0][0]"

    @pytest.mark.parametrize('value', ["abc", [1], None, 4096.7, True, 0])
    def test_bad_noise_denominator(self, instance_path, value):
        doc = json.loads(instance_path.read_text())
        doc['noise_denominator'] = value
        with pytest.raises(ParseError) as info:
            parse_instance(json.dumps(doc))
        assert info.value.position == "$.noise_denominator"

    def test_bad_noise_denominator_exits_one(self, capsys, instance_path, tmp_path):
        doc = json.loads(instance_path.read_text())
        doc['noise_denominator'] = "abc"
        path = tmp_path / 'bad.instance'
        path.write_text(json.dumps(doc))
        code, _, _ = run(capsys, 'count', '--instance', str(path))
        assert code == 1

    def test_non_contractive_map(self):
        text = '{"maps": [{"a": [["1", "0"], ["0", "1"]], "b": ["0", "0"]}], "epsilon": "0", "n": 1, "x0": [0, 0]}'
        with pytest.raises(ParseError) as info:
            parse_instance(text)
        assert info.value.position == "$.maps[0]"


class TestSimulate:
    def test_worked_replay(self, capsys, instance_path):
        code, out, _ = run(capsys, 'simulate', '--instance', str(instance_path), '--code', '1,2,1',
                           '--deltas', '3/10,-2/5;-1/5,1/5;1/10,2/5')
        assert code == 0
        assert json.loads(out)['states'] == [[0, 0], [1, -1], [0, 0], [1, 0]]

    def test_same_seed_same_lines(self, capsys, instance_path):
        argv = ('simulate', '--instance', str(instance_path), '--trials', '2', '--seed', '5')
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        assert len(first.splitlines()) == 2

    def test_bad_symbol(self, capsys, instance_path):
        code, _, _ = run(capsys, 'simulate', '--instance', str(instance_path), '--code', '1,3,1')
        assert code == 1

    def test_missing_seed_is_printed(self, capsys, instance_path, tmp_path):
        doc = json.loads(instance_path.read_text())
        del doc['seeds']
        path = tmp_path / 'unseeded.instance'
        path.write_text(json.dumps(doc))
        code, _, err = run(capsys, 'simulate', '--instance', str(path))
        assert code == 0
        assert 'seed: ' in err


class TestSearchCommands:
    def test_count_matches_enumerate(self, capsys, instance_path):
        _, counted, _ = run(capsys, 'count', '--instance', str(instance_path))
        _, census, _ = run(capsys, 'enumerate', '--instance', str(instance_path))
        endpoints = {(x, y): int(c) for x, y, c in json.loads(census)['endpoints']}
        assert int(counted) == endpoints[(1, 0)]

    def test_cap_exit_code(self, capsys, instance_path):
        code, _, _ = run(capsys, 'enumerate', '--instance', str(instance_path), '--cap', '10')
        assert code == 2

    def test_invert_methods_agree(self, capsys, instance_path):
        _, dfs, _ = run(capsys, 'invert', '--instance', str(instance_path))
        _, mitm, _ = run(capsys, 'invert', '--instance', str(instance_path), '--method', 'mitm')
        assert sorted(dfs.splitlines()) == sorted(mitm.splitlines())

    def test_enumerate_is_thread_independent(self, capsys, instance_path):
        outputs = {run(capsys, 'enumerate', '--instance', str(instance_path), '--threads', str(t))[1]
                   for t in (1, 4, 8)}
        assert len(outputs) == 1

    def test_usage_error(self, capsys):
        code, _, _ = run(capsys, 'invert', '--method', 'sat')
        assert code == 1

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, 'count', '--instance', str(tmp_path / 'nope.instance'))
        assert code == 1


class TestOtherCommands:
    def test_sweep(self, capsys):
        code, out, _ = run(capsys, 'sweep', '--n-range', '1:2', '--eps-range', '0.1', '-m', '10')
        assert code == 0
        assert out.splitlines() == ["n,epsilon,log2_space", "1,0.1,3.321928", "2,0.1,6.643856"]

    def test_grover(self, capsys):
        _, out, _ = run(capsys, 'grover', '-m', '2', '-k', '4', '-n', '3')
        assert json.loads(out) == {'log2_space': 9.0, 'log2_grover': 4.5}

    def test_reduce_diamond(self, capsys, diamond_path, tmp_path):
        report = tmp_path / 'report.json'
        code, out, _ = run(capsys, 'reduce', '--dag', str(diamond_path), '--report', str(report))
        assert code == 0
        assert out.strip() == "PASS total=2"
        assert json.loads(report.read_text())['passed'] is True

    def test_stats_writes_csv(self, capsys, tmp_path):
        target = tmp_path / 'suite.csv'
        code, _, _ = run(capsys, 'stats', '--trials', '20', '--seed', '1', '--out', str(target))
        assert code == 0
        assert len(target.read_text().splitlines()) == 9

    def test_out_in_missing_folder(self, capsys, tmp_path):
        code, _, _ = run(capsys, 'grover', '-m', '2', '-k', '4', '-n', '3',
                         '--out', str(tmp_path / 'missing' / 'cost.json'))
        assert code == 1

    def test_random_dags_need_three_vertices(self, capsys):
        code, _, _ = run(capsys, 'reduce', '--random-dags', '2', '--vertices', '2')
        assert code == 1

    def test_reach_needs_two_states(self, capsys):
        code, _, _ = run(capsys, 'reach', '--systems', '1', '--states', '1')
        assert code == 1

    def test_reach_agrees(self, capsys):
        code, out, _ = run(capsys, 'reach', '--systems', '5', '--seed', '3')
        assert code == 0
        assert all(line.endswith('AGREE') and 'DISAGREE' not in line for line in out.splitlines())
