import numpy as np
import os
import pytest
import sys


# Modules import each other by top-level name, as when run as src/kge/main.py
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def pytest_addoption(parser):
    parser.addoption(
        '--runslow', action='store_true', default=False,
        help='run the long training checks')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long running training check')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)


NUM_CLUSTERS = 4
CLUSTER_SIZE = 5


def toy_triples():
    """Triples of a 20 entity graph made of 4 clusters of 5.

    `partner` is symmetric (clusters 0 <-> 1 and 2 <-> 3), `next` is
    antisymmetric (cluster c -> c + 1), `forth` (c -> c + 1 mod 4) and
    `back` (c -> c + 3 mod 4) are inverse of each other.
    """
    entities = ['e{:02d}'.format(i) for i in range(NUM_CLUSTERS * CLUSTER_SIZE)]

    def cluster(name):
        return int(name[1:]) // CLUSTER_SIZE

    triples = []
    for a in entities:
        for b in entities:
            ca, cb = cluster(a), cluster(b)
            if cb == ca ^ 1:
                triples.append((a, 'partner', b))
            if cb == ca + 1:
                triples.append((a, 'next', b))
            if cb == (ca + 1) % NUM_CLUSTERS:
                triples.append((a, 'forth', b))
            if cb == (ca + 3) % NUM_CLUSTERS:
                triples.append((a, 'back', b))
    return triples


def write_split(path, triples):
    with open(path, 'w', encoding='utf8') as fp:
        for h, r, t in triples:
            fp.write('{}\t{}\t{}\n'.format(h, r, t))


@pytest.fixture
def toy_dataset(tmp_path):
    """Directory holding the toy graph split 80/10/10."""
    triples = toy_triples()
    order = np.random.default_rng(0).permutation(len(triples))
    shuffled = [triples[i] for i in order]
    n_train = int(0.8 * len(shuffled))
    n_valid = int(0.1 * len(shuffled))
    write_split(str(tmp_path / 'train.txt'), shuffled[:n_train])
    write_split(str(tmp_path / 'valid.txt'), shuffled[n_train:n_train + n_valid])
    write_split(str(tmp_path / 'test.txt'), shuffled[n_train + n_valid:])
    return str(tmp_path)
