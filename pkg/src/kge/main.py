#!/usr/bin/env python

from background import parse_rules
from background import ties_from_rules
from configparser import ConfigParser
from dataset import Vocabulary
from dataset import load_dataset
from dataset import load_triples
from dataset import remove_redundant
from dataset import write_triples
from evaluation import evaluate as evaluate_ranks
from exceptions import CheckpointError
from exceptions import CompatibilityError
from exceptions import ConfigError
from exceptions import KGEError
from exceptions import VocabularyError
from functools import partial
from model import ModelKind
from model import load_params
from model import save_params
from model import score_triple
from oracle import construct_grid
from oracle import construct_incremental
from oracle import construct_minimal
from oracle import load_ground_truth
from oracle import random_ground_truth
from oracle import verify
from training import TrainConfig
from training import train as train_model
from utils import rng_stream
from utils import sigmoid
import click
import json
import logging
import os


LOG = logging.getLogger(__name__)


CONFIG_FILE = os.path.join(os.getcwd(), 'config/kge.ini')

HISTORY_FILE = 'history.csv'
TRAIN_CONFIG_FILE = 'config.json'

EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_COMPATIBILITY = 3
EXIT_LOOKUP = 4

#: Values used for every key missing from the INI file.
DEFAULTS = {
    'Logging': {
        'Level': 'INFO',
        'Modules': '',
    },
    'Dataset': {
        'TrainFile': 'train.txt',
        'ValidFile': 'valid.txt',
        'TestFile': 'test.txt',
    },
    'Training': {
        'LearningRate': '0.1',
        'Lambda': '0.03',
        'BatchSize': '100',
        'NegRatio': '1',
        'MaxEpochs': '1000',
        'EvalEvery': '50',
        'Seed': '0',
        'ModelKind': 'simple',
        'Dim': '200',
    },
    'Evaluation': {
        'Threads': '1',
    },
}

MODEL_CHOICES = [kind.value for kind in ModelKind]


def filter_modules(modules, record):
    """Filter function for log modules.

    If modules is not empty, we filter out every logger that is not in the
    specified modules (or below one of them).

    Except for the modules argument that is binded at runtime, the record
    parameter and the return value are compliant to the logging.Filter.filter
    API.

    :param modules: List of enabled modules
    :type modules: list
    """
    if not modules:
        return True
    else:
        path = record.name.split('.')
        for i in range(len(path)):
            if '.'.join(path[:i + 1]) in modules:
                return True
        return False


def setup_logging(config, level=None):
    """Setups the logging module

    :param config: the logging section of the config object
    :type config: :class:`configparser.SectionProxy`

    :param level: level name overriding the configured one
    :type level: str or None
    """
    modules = []
    filter_str = config.get('Modules')
    if filter_str:
        modules = list(map(lambda x: x.strip(), filter_str.split(',')))

    level = (level or config['Level']).upper()
    numeric_level = getattr(logging, level, None)
    if not isinstance(numeric_level, int):
        raise ConfigError('Invalid log level: {}'.format(level))

    # Configure the logging module
    logging.basicConfig(
        level=numeric_level,
        format='[%(asctime)s - %(levelname)s:%(name)s] %(msg)s',
        force=True)

    # Add the filter to all the handlers
    for handler in logging.root.handlers:
        handler.addFilter(partial(filter_modules, modules))


def load_config(path):
    """Reads the INI configuration on top of :data:`DEFAULTS`."""
    config = ConfigParser()
    config.optionxform = str
    config.read_dict(DEFAULTS)
    if path and os.path.exists(path):
        config.read(path)
    return config


def dataset_files(config):
    section = config['Dataset']
    return {
        'train': section['TrainFile'],
        'valid': section['ValidFile'],
        'test': section['TestFile'],
    }


def exit_code(err):
    """Maps a library error to the process exit status."""
    if isinstance(err, CompatibilityError):
        return EXIT_COMPATIBILITY
    if isinstance(err, VocabularyError):
        return EXIT_LOOKUP
    if isinstance(err, ConfigError):
        return EXIT_USAGE
    return EXIT_ERROR


class KGEGroup(click.Group):
    """Command group turning library errors into exit codes."""

    def invoke(self, ctx):
        try:
            return super(KGEGroup, self).invoke(ctx)
        except KGEError as err:
            click.echo('Error: {}'.format(err), err=True)
            ctx.exit(exit_code(err))


def load_checkpoint(path):
    """Loads checkpoint parameters together with their vocabulary."""
    params = load_params(path)
    try:
        vocab = Vocabulary.load(path)
    except FileNotFoundError as err:
        raise CheckpointError('{} has no vocabulary: {}'.format(path, err))
    if (vocab.num_entities, vocab.num_relations) != (params.num_entities, params.num_relations):
        raise CheckpointError('vocabulary of {} does not match its embeddings'.format(path))
    return params, vocab


@click.group(cls=KGEGroup)
@click.option(
    '--ini',
    default=CONFIG_FILE,
    show_default=True,
    help='INI configuration file')
@click.option(
    '--log-level',
    default=None,
    help='Overrides [Logging] Level')
@click.pass_context
def kge(ctx, ini, log_level):
    """Knowledge graph embeddings with SimplE and related factorization models."""
    config = load_config(ini)
    setup_logging(config['Logging'], log_level)
    LOG.debug('Loaded config file {}'.format(ini))
    ctx.obj = config


@kge.command()
@click.option('--data', required=True, type=click.Path(exists=True, file_okay=False))
@click.option('--out', required=True, type=click.Path(file_okay=False))
@click.pass_obj
def preprocess(config, data, out):
    """Loads a dataset, reports on it and writes its vocabulary."""
    triples, vocab = load_dataset(data, dataset_files(config))
    vocab.save(out)
    click.echo('entities\t{}'.format(vocab.num_entities))
    click.echo('relations\t{}'.format(vocab.num_relations))
    for split in ('train', 'valid', 'test'):
        click.echo('{}\t{}'.format(split, len(triples.split(split))))
    for pair, count in sorted(triples.overlaps.items()):
        click.echo('overlap {}\t{}'.format(pair, count))


@kge.command()
@click.option('--data', required=True, type=click.Path(exists=True, file_okay=False))
@click.option('--out', required=True, type=click.Path(file_okay=False))
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False),
              help='JSON file with training fields')
@click.option('--model', 'model_kind', type=click.Choice(MODEL_CHOICES))
@click.option('--dim', type=int)
@click.option('--lr', 'learning_rate', type=float)
@click.option('--lambda', 'lam', type=float)
@click.option('--neg', 'neg_ratio', type=int)
@click.option('--batch', 'batch_size', type=int)
@click.option('--epochs', 'max_epochs', type=int)
@click.option('--eval-every', type=int)
@click.option('--seed', type=int)
@click.option('--rules', type=click.Path(exists=True, dir_okay=False),
              help='Background rules turned into parameter ties')
@click.option('--threads', type=int, help='Worker processes for validation')
@click.option('--snapshot', is_flag=True, help='Write every new best model while training')
@click.pass_obj
def train(config, data, out, config_file, model_kind, dim, learning_rate, lam,
          neg_ratio, batch_size, max_epochs, eval_every, seed, rules, threads, snapshot):
    """Trains embeddings and writes checkpoint, history and config to OUT."""
    train_config = TrainConfig.from_ini(config['Training'])
    if config_file:
        train_config = train_config.updated(TrainConfig.read_json(config_file))
    train_config = train_config.updated({
        'model_kind': model_kind,
        'dim': dim,
        'learning_rate': learning_rate,
        'lambda': lam,
        'neg_ratio': neg_ratio,
        'batch_size': batch_size,
        'max_epochs': max_epochs,
        'eval_every': eval_every,
        'seed': seed,
    })
    if threads is None:
        threads = config['Evaluation'].getint('Threads')
    LOG.info('Training configuration: {}'.format(train_config))

    triples, vocab = load_dataset(data, dataset_files(config))
    ties = ties_from_rules(parse_rules(rules), vocab) if rules else None

    os.makedirs(out, exist_ok=True)
    params, history = train_model(
        train_config, triples, vocab, ties, threads,
        snapshot_dir=out if snapshot else None)

    save_params(params, out, vocab)
    history.save_csv(os.path.join(out, HISTORY_FILE))
    train_config.to_json(os.path.join(out, TRAIN_CONFIG_FILE))

    if history.best_epoch is not None:
        click.echo('best epoch {} valid filtered MRR {:.6f}'.format(
            history.best_epoch, history.best_mrr))
    click.echo('checkpoint written to {}'.format(out))


@kge.command()
@click.option('--checkpoint', required=True, type=click.Path(exists=True, file_okay=False))
@click.option('--data', required=True, type=click.Path(exists=True, file_okay=False))
@click.option('--split', type=click.Choice(['test', 'valid']), default='test', show_default=True)
@click.option('--per-triple', type=click.Path(dir_okay=False), help='Per-triple rank CSV')
@click.option('--report', type=click.Path(dir_okay=False), help='JSON report file')
@click.option('--format', 'fmt', type=click.Choice(['table', 'json']), default='table',
              show_default=True)
@click.option('--threads', type=int, help='Worker processes')
@click.pass_obj
def evaluate(config, checkpoint, data, split, per_triple, report, fmt, threads):
    """Ranks a dataset split with a trained checkpoint."""
    params, vocab = load_checkpoint(checkpoint)
    try:
        triples, _ = load_dataset(data, dataset_files(config), vocab=vocab)
    except VocabularyError as err:
        raise CompatibilityError('dataset does not match checkpoint {}: {}'.format(
            checkpoint, err))
    testset = triples.split(split)
    if not testset:
        raise KGEError('the {} split of {} is empty'.format(split, data))
    if threads is None:
        threads = config['Evaluation'].getint('Threads')

    result = evaluate_ranks(params, testset, triples, threads=threads)
    if report:
        with open(report, 'w') as fp:
            json.dump(result.to_json(), fp, indent=2)
            fp.write('\n')
    if per_triple:
        result.save_per_triple_csv(per_triple, vocab)

    if fmt == 'json':
        click.echo(json.dumps(result.to_json(), indent=2))
    else:
        click.echo(result.table())


@kge.command()
@click.option('--checkpoint', required=True, type=click.Path(exists=True, file_okay=False))
@click.option('--model-kind', type=click.Choice(MODEL_CHOICES),
              help='Expected model kind of the checkpoint')
@click.argument('head')
@click.argument('relation')
@click.argument('tail')
@click.pass_obj
def score(config, checkpoint, model_kind, head, relation, tail):
    """Prints the score of HEAD RELATION TAIL and its logistic value."""
    params, vocab = load_checkpoint(checkpoint)
    if model_kind and ModelKind(model_kind) is not params.kind:
        raise CompatibilityError('checkpoint holds a {} model, not {}'.format(
            params.kind.value, model_kind))
    triple = (
        vocab.entities.lookup(head),
        vocab.relations.lookup(relation),
        vocab.entities.lookup(tail))
    value = score_triple(params, triple)
    click.echo('score\t{!r}'.format(value))
    click.echo('sigmoid\t{!r}'.format(sigmoid(value)))


CONSTRUCTIONS = {
    'grid': construct_grid,
    'incremental': construct_incremental,
    'min': construct_minimal,
}


@kge.command()
@click.option('--ground-truth', type=click.Path(exists=True, dir_okay=False))
@click.option('--random', 'random_size', type=int, nargs=2, default=None,
              help='Random ground truth with |E| entities and |R| relations')
@click.option('--density', type=float, default=0.1, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--method', type=click.Choice(sorted(CONSTRUCTIONS)), default='min',
              show_default=True)
def oracle(ground_truth, random_size, density, seed, method):
    """Builds embeddings that separate a ground truth and verifies them."""
    if bool(ground_truth) == bool(random_size):
        raise click.UsageError('exactly one of --ground-truth and --random is required')
    if ground_truth:
        gt = load_ground_truth(ground_truth)
    else:
        gt = random_ground_truth(
            random_size[0], random_size[1], density, rng_stream(seed, 'oracle'))

    params = CONSTRUCTIONS[method](gt)
    passed, violations = verify(params, gt)
    click.echo('entities\t{}'.format(gt.num_entities))
    click.echo('relations\t{}'.format(gt.num_relations))
    click.echo('true triples\t{}'.format(gt.gamma))
    click.echo('dimension\t{}'.format(params.dim))
    click.echo('verification\t{}'.format('pass' if passed else 'FAIL'))
    if not passed:
        raise KGEError('{} sign violations, first {}'.format(len(violations), violations[0]))


@kge.command()
@click.option('--train', 'train_file', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--rules', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', required=True, type=click.Path(dir_okay=False))
@click.option('--seed', type=int, default=0, show_default=True)
def dedupe(train_file, rules, out, seed):
    """Removes training triples implied by another one under the rules."""
    triples, vocab = load_triples(train_file)
    kept = remove_redundant(triples, parse_rules(rules), vocab, seed)
    write_triples(out, kept, vocab)

    before, after = len(triples), len(kept)
    reduction = 100.0 * (before - after) / before if before else 0.0
    click.echo('before\t{}'.format(before))
    click.echo('after\t{}'.format(after))
    click.echo('reduction\t{:.2f}%'.format(reduction))


if __name__ == '__main__':
    kge()
