"""Tests for the fano_defect management commands."""
import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from fano_defect.selfcheck import CheckResult


def run(*args):
    """Call a command and return its stdout and stderr."""
    stdout, stderr = StringIO(), StringIO()
    call_command(*args, stdout=stdout, stderr=stderr)
    return stdout.getvalue(), stderr.getvalue()


def run_failing(*args):
    """Call a command that must fail and return the error and its stderr."""
    stderr = StringIO()
    with pytest.raises(CommandError) as exc_info:
        call_command(*args, stdout=StringIO(), stderr=stderr)
    return exc_info.value, stderr.getvalue()


class TestLinks:
    """Tests for the links command."""

    def test_csv(self):
        stdout, _ = run('links', '--genus', '3', '--format', 'csv')
        lines = stdout.splitlines()
        assert lines[0].startswith('row,z1,z1_tilde,pa_gamma')
        assert len(lines) == 32

    def test_alpha_filter_keeps_published_rows(self):
        stdout, _ = run('links', '--genus', '3', '--alpha', 'cb', '--format', 'json')
        rows = json.loads(stdout)['rows']
        assert {row['published_row'] for row in rows} - {None} == {4, 9, 26}

    def test_hodge_filter(self):
        stdout, _ = run('links', '--genus', '3', '--hodge', '--format', 'json')
        document = json.loads(stdout)
        published_rows = {row['published_row'] for row in document['rows']}
        assert document['hodge_filter'] is True
        assert not published_rows & {16, 25, 32}
        assert {1, 4, 21, 30} <= published_rows

    def test_markdown_is_the_default(self):
        stdout, _ = run('links', '--genus', '12')
        assert stdout.startswith('| row | z1 |')

    def test_invalid_genus(self):
        error, _ = run_failing('links', '--genus', '11')
        assert error.returncode == 2
        assert 'Genus 11 is out of range' in str(error)


class TestBound:
    """Tests for the bound command."""

    @pytest.mark.parametrize('args, expected, usecase', [
        (('--genus', '3'), ['bound: 8'], 'no plane or quadric'),
        (('--genus', '3', '--contains', 'quadric'), ['bound: 11'], 'quadric'),
        (('--genus', '3', '--contains', 'plane'), ['bound: 15', 'maximizer (N, M): (4, 0)'], 'plane'),
        (
            ('--index2', '--h3', '2'),
            ['bound: 5', 'rank cap: 6', 'max e2 steps: 3', 'max disjoint planes: 5'],
            'index two',
        ),
    ])
    def test_bounds(self, args, expected, usecase):
        stdout, _ = run('bound', *args)
        assert stdout.splitlines() == expected, f'failed for usecase: {usecase}'

    def test_witness(self):
        stdout, _ = run('bound', '--genus', '12', '--witness')
        assert stdout.splitlines() == [
            'bound: 4',
            'start: X22',
            '  1. endpoint: X22 -> Q',
            '  2. endpoint: Q -> P3',
            'fibre space term: conic bundle over F0 or F2 (rank 3)',
            'defect: 2 steps + rank 3 - 1 = 4',
        ]

    def test_witness_above_closed_form(self):
        stdout, stderr = run('bound', '--genus', '10', '--contains', 'quadric', '--witness')
        assert stdout.splitlines()[:2] == ['bound: 5', 'closed form: 4']
        assert 'note: search reaches 5, above the closed form 4' in stderr

    @pytest.mark.parametrize('args, message, usecase', [
        (('--genus', '4', '--contains', 'plane'), '--contains plane is only valid with --genus 3', 'plane off genus 3'),
        (('--genus', '3', '--contains', 'plane', '--witness'), '--witness is not available', 'plane witness'),
        (('--index2', '--genus', '3', '--h3', '2'), '--index2 cannot be combined', 'index two with genus'),
        (('--index2',), '--index2 requires --h3', 'index two without degree'),
        (('--genus', '3', '--h3', '2'), '--h3 requires --index2', 'degree without index two'),
        ((), '--genus is required', 'missing genus'),
        (('--genus', '11'), 'Genus 11 is out of range', 'invalid genus'),
        (('--index2', '--h3', '6'), 'h3=6 is out of range', 'invalid degree'),
    ])
    def test_usage_errors(self, args, message, usecase):
        error, _ = run_failing('bound', *args)
        assert error.returncode == 2, f'failed for usecase: {usecase}'
        assert message in str(error), f'failed for usecase: {usecase}'

    def test_no_color(self, monkeypatch):
        monkeypatch.setenv('NO_COLOR', '1')
        assert run('bound', '--genus', '3')[0] == 'bound: 8\n'
        stdout = StringIO()
        call_command('bound', '--genus', '3', force_color=True, stdout=stdout)
        assert stdout.getvalue() == 'bound: 8\n'


class TestNodal:
    """Tests for the nodal command."""

    def test_unverified(self, data_dir):
        stdout, _ = run('nodal', '--nodes', str(data_dir / 'cayley_bacharach9.csv'))
        lines = stdout.splitlines()
        assert lines[:5] == ['field: rational', 'N: 9', 'rank: 8', 'defect: 1', 'lower bound: 0']
        assert lines[5].startswith('nodes not verified')

    def test_float_field(self, data_dir):
        stdout, _ = run(
            'nodal', '--nodes', str(data_dir / 'cayley_bacharach9.csv'), '--field', 'float', '--tol', '1e-8',
        )
        assert 'field: float' in stdout
        assert 'defect: 1' in stdout

    def test_burkhardt(self, data_dir):
        stdout, _ = run(
            'nodal', '--nodes', str(data_dir / 'burkhardt.csv'), '--quartic', str(data_dir / 'burkhardt.poly'),
            '--b2', '1',
        )
        lines = stdout.splitlines()
        assert lines == [
            'field: eisenstein',
            'N: 45',
            'rank: 30',
            'defect: 15',
            'lower bound: 15',
            'b3: 30',
            'b2 (small resolution): 16',
            'b2 (blow-up): 61',
            'verified: all 45 nodes are ordinary double points',
        ]

    def test_verification_failure(self, data_dir):
        error, stderr = run_failing(
            'nodal', '--nodes', str(data_dir / 'one_node.csv'), '--quartic', str(data_dir / 'burkhardt.poly'),
        )
        assert error.returncode == 3
        assert '1 of 1 nodes failed verification' in str(error)
        assert 'node 1: on quartic=False' in stderr

    def test_missing_file(self, tmp_path):
        error, _ = run_failing('nodal', '--nodes', str(tmp_path / 'absent.csv'))
        assert error.returncode == 2
        assert 'absent.csv' in str(error)

    def test_malformed_file(self, tmp_path):
        nodes = tmp_path / 'nodes.csv'
        nodes.write_text('# field: rational\n1,0,0,x,0\n', encoding='utf-8')
        error, _ = run_failing('nodal', '--nodes', str(nodes))
        assert error.returncode == 2
        assert str(error) == f"{nodes}:2:7: invalid rational 'x'"

    def test_malformed_quartic(self, data_dir, tmp_path):
        quartic = tmp_path / 'cubic.poly'
        quartic.write_text('x0^4 + x1^3\n', encoding='utf-8')
        error, _ = run_failing('nodal', '--nodes', str(data_dir / 'general5.csv'), '--quartic', str(quartic))
        assert error.returncode == 2
        assert str(error).startswith(f'{quartic}:1:8:')

    @pytest.mark.parametrize('nodes_text, quartic_text, location, message, usecase', [
        ('# field: rational\n1/0,0,0,0,1\n', None, 'nodes.csv:2:1:', "zero denominator in '1/0'", 'zero denominator'),
        ('# field: float\nnan,0,0,0,1\n', None, 'nodes.csv:2:1:', "non-finite float 'nan'", 'nan coordinate'),
        (
            '# field: rational\n1,0,0,0,0\n', 'x0^4 + 1/0*x1^4\n', 'quartic.poly:1:8:', "zero denominator in '1/0'",
            'zero denominator in the quartic',
        ),
    ])
    def test_invalid_numbers(self, tmp_path, nodes_text, quartic_text, location, message, usecase):
        nodes = tmp_path / 'nodes.csv'
        nodes.write_text(nodes_text, encoding='utf-8')
        args = ['nodal', '--nodes', str(nodes)]
        if quartic_text is not None:
            quartic = tmp_path / 'quartic.poly'
            quartic.write_text(quartic_text, encoding='utf-8')
            args += ['--quartic', str(quartic)]
        error, _ = run_failing(*args)
        assert error.returncode == 2, f'failed for usecase: {usecase}'
        assert str(error) == f'{tmp_path}/{location} {message}', f'failed for usecase: {usecase}'

    @pytest.mark.parametrize('quartic_text, returncode, message, usecase', [
        ('x0^2*(x1^2 + x2^2 + x3^2 + x4^2) + x1^4 + x2^4 + x3^4 + x4^4', None, None, 'single node'),
        (
            'x0^2*(x1^2 + x2^2 + x3^2 + x4^2) + x1^4 + x2^4', 3, 'singular locus is not finite on chart x3 = 1',
            'singular line',
        ),
    ])
    def test_complete(self, data_dir, tmp_path, quartic_text, returncode, message, usecase):
        quartic = tmp_path / 'quartic.poly'
        quartic.write_text(quartic_text + '\n', encoding='utf-8')
        args = ['nodal', '--nodes', str(data_dir / 'one_node.csv'), '--quartic', str(quartic), '--complete']
        if returncode is None:
            stdout, _ = run(*args)
            assert stdout.splitlines()[-1] == 'complete: the 1 nodes are the whole singular locus', \
                f'failed for usecase: {usecase}'
        else:
            error, _ = run_failing(*args)
            assert (error.returncode, str(error)) == (returncode, message), f'failed for usecase: {usecase}'

    def test_complete_needs_a_quartic(self, data_dir):
        error, _ = run_failing('nodal', '--nodes', str(data_dir / 'general5.csv'), '--complete')
        assert error.returncode == 2
        assert 'requires a quartic' in str(error)


class TestSelfcheck:
    """Tests for the selfcheck command."""

    def test_pass(self, monkeypatch):
        monkeypatch.setenv('NO_COLOR', '1')
        monkeypatch.setattr(
            'fano_defect.management.commands.selfcheck.run_selfcheck',
            lambda mutation: [CheckResult('bounds', True, 'agree'), CheckResult('burkhardt', True, 'rank=30')],
        )
        stdout, _ = run('selfcheck')
        assert stdout.splitlines() == ['bounds     PASS  agree', 'burkhardt  PASS  rank=30']

    def test_mutation_fails(self):
        error, _ = run_failing('selfcheck', '--mutation', 'hodge-inverted')
        assert error.returncode == 1
        assert 'hodge filter' in str(error)
