from click.testing import CliRunner
from main import EXIT_COMPATIBILITY
from main import EXIT_LOOKUP
from main import EXIT_USAGE
from main import kge
from training import TrainHistory
import json
import os
import pytest


def run(tmp_path, *args):
    ini = str(tmp_path / 'missing.ini')
    return CliRunner().invoke(kge, ['--ini', ini, '--log-level', 'ERROR'] + list(args))


@pytest.fixture
def trained(toy_dataset, tmp_path):
    out = str(tmp_path / 'model')
    result = run(
        tmp_path, 'train', '--data', toy_dataset, '--out', out,
        '--dim', '4', '--epochs', '3', '--eval-every', '1', '--batch', '50', '--seed', '1')
    assert result.exit_code == 0, result.output
    return out


def test_preprocess(toy_dataset, tmp_path):
    out = str(tmp_path / 'vocab')
    result = run(tmp_path, 'preprocess', '--data', toy_dataset, '--out', out)
    assert result.exit_code == 0, result.output
    assert 'entities\t20' in result.output
    assert 'relations\t4' in result.output
    assert os.path.exists(os.path.join(out, 'entities.tsv'))
    assert os.path.exists(os.path.join(out, 'relations.tsv'))


def test_train_then_evaluate(trained, toy_dataset, tmp_path):
    for name in ('meta.json', 'checksum.txt', 'history.csv', 'config.json'):
        assert os.path.exists(os.path.join(trained, name))
    with open(os.path.join(trained, 'config.json')) as fp:
        assert json.load(fp)['dim'] == 4

    report = str(tmp_path / 'report.json')
    result = run(
        tmp_path, 'evaluate', '--checkpoint', trained, '--data', toy_dataset,
        '--split', 'valid', '--report', report)
    assert result.exit_code == 0, result.output
    assert 'MRR' in result.output

    with open(report) as fp:
        mrr = json.load(fp)['mrr_filtered']
    history = TrainHistory.load_csv(os.path.join(trained, 'history.csv'))
    assert abs(mrr - history.best_mrr) <= 1e-12


def test_evaluate_json_and_per_triple(trained, toy_dataset, tmp_path):
    ranks = str(tmp_path / 'ranks.csv')
    result = run(
        tmp_path, 'evaluate', '--checkpoint', trained, '--data', toy_dataset,
        '--format', 'json', '--per-triple', ranks)
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)['n_test'] == 38
    with open(ranks) as fp:
        assert len(fp.read().splitlines()) == 39


def test_train_needs_data(tmp_path):
    result = run(tmp_path, 'train', '--out', str(tmp_path / 'model'))
    assert result.exit_code == EXIT_USAGE


def test_train_rejects_bad_values(toy_dataset, tmp_path):
    result = run(
        tmp_path, 'train', '--data', toy_dataset, '--out', str(tmp_path / 'model'), '--lr', '0')
    assert result.exit_code == EXIT_USAGE


def test_evaluate_on_another_dataset(trained, tmp_path):
    other = tmp_path / 'other'
    other.mkdir()
    for split in ('train', 'valid', 'test'):
        (other / '{}.txt'.format(split)).write_text('e00\tpartner\tstranger\n')
    result = run(tmp_path, 'evaluate', '--checkpoint', trained, '--data', str(other))
    assert result.exit_code == EXIT_COMPATIBILITY


def test_score(trained, tmp_path):
    result = run(tmp_path, 'score', '--checkpoint', trained, 'e00', 'partner', 'e05')
    assert result.exit_code == 0, result.output
    lines = dict(line.split('\t') for line in result.output.splitlines())
    assert 0.0 < float(lines['sigmoid']) < 1.0


def test_score_unknown_name(trained, tmp_path):
    result = run(tmp_path, 'score', '--checkpoint', trained, 'e00', 'partnr', 'e05')
    assert result.exit_code == EXIT_LOOKUP
    assert 'partner' in result.output


def test_score_wrong_model_kind(trained, tmp_path):
    result = run(
        tmp_path, 'score', '--checkpoint', trained, '--model-kind', 'cp', 'e00', 'partner', 'e05')
    assert result.exit_code == EXIT_COMPATIBILITY


def test_oracle_from_file(tmp_path):
    path = tmp_path / 'truth.txt'
    path.write_text('2 1\n0 0 1\n')
    result = run(tmp_path, 'oracle', '--ground-truth', str(path), '--method', 'grid')
    assert result.exit_code == 0, result.output
    assert 'dimension\t2' in result.output
    assert 'verification\tpass' in result.output


def test_oracle_random(tmp_path):
    result = run(tmp_path, 'oracle', '--random', '5', '3', '--method', 'grid', '--seed', '7')
    assert result.exit_code == 0, result.output
    assert 'dimension\t15' in result.output
    assert 'verification\tpass' in result.output


def test_oracle_needs_one_source(tmp_path):
    assert run(tmp_path, 'oracle').exit_code == EXIT_USAGE


def test_dedupe_without_rules(toy_dataset, tmp_path):
    rules = tmp_path / 'empty.rules'
    rules.write_text('# nothing\n')
    train = os.path.join(toy_dataset, 'train.txt')
    out = str(tmp_path / 'deduped.txt')
    result = run(tmp_path, 'dedupe', '--train', train, '--rules', str(rules), '--out', out)

    assert result.exit_code == 0, result.output
    assert 'reduction\t0.00%' in result.output
    with open(train) as a, open(out) as b:
        assert a.read() == b.read()


def test_dedupe_symmetric_rule(toy_dataset, tmp_path):
    rules = tmp_path / 'toy.rules'
    rules.write_text('symmetric partner\n')
    out = str(tmp_path / 'deduped.txt')
    result = run(
        tmp_path, 'dedupe', '--train', os.path.join(toy_dataset, 'train.txt'),
        '--rules', str(rules), '--out', out)
    assert result.exit_code == 0, result.output
    lines = dict(line.split('\t') for line in result.output.splitlines())
    assert int(lines['after']) < int(lines['before'])


def test_dataset_without_train_split(toy_dataset, tmp_path):
    os.remove(os.path.join(toy_dataset, 'train.txt'))
    result = run(tmp_path, 'preprocess', '--data', toy_dataset, '--out', str(tmp_path / 'vocab'))
    assert result.exit_code == 1
    assert 'Error:' in result.output
    assert 'train.txt' in result.output
