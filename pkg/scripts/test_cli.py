"""
Tests for the command line surface and output rendering
"""
import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import numpy as np
import pytest

from topoising.exceptions import InvalidArgument
from topoising.utils.export import render, to_json


def diagnostic(result):
    """The JSON error line is the last line written to stderr."""
    return json.loads(result.stderr.strip().splitlines()[-1])


def test_lattice_with_coloring(runner):
    result = runner.invoke(args=['lattice', 'honeycomb', '3', '3', '--color'])
    assert result.exit_code == 0, result.stderr
    data = json.loads(result.stdout)
    assert data['schema'] == 'topoising/v1'
    assert data['command'] == 'lattice'
    assert data['counts'] == {'V': 18, 'E': 27, 'F': 9}
    assert data['color_counts'] == {'red': 3, 'green': 3, 'blue': 3}


def test_lattice_square_counts(runner):
    result = runner.invoke(args=['lattice', 'square', '3', '3'])
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)['counts'] == {'V': 9, 'E': 18, 'F': 9}


def test_uncolorable_lattice_exits_with_code(runner):
    result = runner.invoke(args=['lattice', 'honeycomb', '2', '2', '--color'])
    assert result.exit_code == 3
    error = diagnostic(result)
    assert error['error'] == 'NotThreeColorable'
    assert error['exit_code'] == 3
    assert result.stdout == ''


def test_map_color_honeycomb(runner):
    result = runner.invoke(args=['map', '--code', 'color', '--lattice', 'honeycomb', '--L1', '3', '--L2', '3'])
    assert result.exit_code == 0, result.stderr
    data = json.loads(result.stdout)
    assert data['transition']['full_display'] == '0.209'
    assert len(data['virtual_model']['components']) == 3


def test_map_toric_triangular(runner):
    result = runner.invoke(args=['map', '--code', 'toric', '--lattice', 'triangular', '--L1', '3', '--L2', '3'])
    assert result.exit_code == 0, result.stderr
    transition = json.loads(result.stdout)['transition']
    assert transition['full_display'] == '0.104'
    assert [c['multiplicity'] for c in transition['components']] == [2]


def test_map_toric_square_is_unsupported(runner):
    result = runner.invoke(args=['map', '--code', 'toric', '--lattice', 'square', '--L1', '3', '--L2', '3'])
    assert result.exit_code == 4
    assert diagnostic(result)['error'] == 'UnsupportedCombination'


def test_table_json_and_csv(runner):
    result = runner.invoke(args=['table'])
    assert result.exit_code == 0, result.stderr
    rows = json.loads(result.stdout)['rows']
    assert [r['K/J'] for r in rows] == ['0.209', '0.333', '0.166', '0.209', '0.104']

    result = runner.invoke(args=['table', '--format', 'csv'])
    assert result.exit_code == 0, result.stderr
    header = result.stdout.splitlines()[0]
    assert 'K/J' in header and 'mapped_lattice' in header
    assert len(result.stdout.splitlines()) == 6


def test_dictionary_csv_is_flat(runner):
    result = runner.invoke(args=['dictionary', '--code', 'toric', '--lattice', 'honeycomb',
                                 '--L1', '2', '--L2', '2', '--format', 'csv'])
    assert result.exit_code == 0, result.stderr
    header = result.stdout.splitlines()[0].split(',')
    assert 'virtual_x' in header and 'real_z' in header
    assert '{' not in result.stdout


def test_equivalence_on_small_torus(runner):
    result = runner.invoke(args=['equiv', '--code', 'toric', '--lattice', 'honeycomb', '--L1', '2', '--L2', '2'])
    assert result.exit_code == 0, result.stderr
    data = json.loads(result.stdout)
    assert data['verdict'] is True
    assert data['couplings'] == {'J': 1.0, 'K': 0.1}


def test_degeneracy_of_color_code(runner):
    result = runner.invoke(args=['degeneracy', '--code', 'color', '--lattice', 'square_octagonal',
                                 '--L1', '2', '--L2', '2'])
    assert result.exit_code == 0, result.stderr
    data = json.loads(result.stdout)
    assert data['degeneracy'] == 16
    assert data['splitting']['gap'] == pytest.approx(4.0)
    assert len(data['logical_sectors']) == 16


def test_spectrum_text_output(runner):
    result = runner.invoke(args=['spectrum', '--code', 'toric', '--lattice', 'square', '--L1', '2', '--L2', '2',
                                 '--num-eigs', '5', '--format', 'text'])
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert lines[0].split() == ['energy', 'level']
    assert len(lines) == 6


def test_dimension_guard(runner):
    result = runner.invoke(args=['spectrum', '--code', 'color', '--lattice', 'honeycomb', '--L1', '6', '--L2', '6'])
    assert result.exit_code == 6
    error = diagnostic(result)
    assert error['error'] == 'DimensionGuardError'
    assert '--force' in error['message']


def test_unknown_format(runner):
    result = runner.invoke(args=['table', '--format', 'xml'])
    assert result.exit_code == 2
    assert diagnostic(result)['error'] == 'InvalidArgument'


def test_scan_writes_output_file(runner, tmp_path):
    target = tmp_path / 'gap.csv'
    result = runner.invoke(args=['scan', '--observable', 'gap', '--lattice', 'triangular', '--L1', '3', '--L2', '3',
                                 '--variable', 'K/J', '--start', '0', '--stop', '0.2', '--step', '0.1',
                                 '--allow-boundary', '--format', 'csv', '--output', str(target)])
    assert result.exit_code == 0, result.stderr
    assert result.stdout == ''
    lines = target.read_text().splitlines()
    assert lines[0] == 'gap,ratio'
    assert len(lines) == 4


def test_scan_rejects_bad_grid(runner):
    result = runner.invoke(args=['scan', '--lattice', 'triangular', '--L1', '3', '--L2', '3',
                                 '--start', '2', '--stop', '1', '--step', '0.5'])
    assert result.exit_code == 2


def test_json_export_cleans_numpy_values():
    text = to_json({'values': np.array([1.0, np.nan]), 'count': np.int64(3)})
    data = json.loads(text)
    assert data == {'schema': 'topoising/v1', 'values': [1.0, None], 'count': 3}


def test_tabular_formats_need_rows():
    with pytest.raises(InvalidArgument):
        render({'a': 1}, 'csv')
    with pytest.raises(InvalidArgument):
        render({'a': 1}, 'jsonl')
    assert render({'b': [1, 2], 'a': 1}, 'text') == 'a: 1\nb: [1, 2]\n'


def test_json_lines_carry_schema():
    lines = render({}, 'jsonl', [{'x': 1}, {'x': 2}]).splitlines()
    assert [json.loads(line) for line in lines] == [
        {'schema': 'topoising/v1', 'x': 1}, {'schema': 'topoising/v1', 'x': 2},
    ]


@pytest.mark.parametrize('args', [
    ['table'],
    ['map', '--code', 'color', '--lattice', 'honeycomb', '--L1', '3', '--L2', '3'],
    ['spectrum', '--code', 'toric', '--lattice', 'honeycomb', '--L1', '2', '--L2', '2',
     '--K', '0.3', '--method', 'iterative', '--num-eigs', '3'],
])
def test_repeated_runs_write_identical_output(runner, args):
    first = runner.invoke(args=args)
    second = runner.invoke(args=args)
    assert first.exit_code == 0, first.stderr
    assert second.exit_code == 0, second.stderr
    assert first.stdout == second.stdout


def test_table_size_four_rounds_color_rows(runner):
    result = runner.invoke(args=['table', '--size', '4'])
    assert result.exit_code == 0, result.stderr
    rows = {(r['code'], r['lattice']): r for r in json.loads(result.stdout)['rows']}
    assert rows[('color', 'honeycomb')]['source'] == 'derived at 6x6'
    assert rows[('toric', 'triangular')]['source'] == 'derived at 4x4'
