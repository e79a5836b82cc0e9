from dataset.redundancy import redundant_pairs  # noqa
from dataset.redundancy import remove_redundant  # noqa
from dataset.triples import SPLITS  # noqa
from dataset.triples import Triple  # noqa
from dataset.triples import TripleSet  # noqa
from dataset.triples import as_array  # noqa
from dataset.triples import build_filter_index  # noqa
from dataset.triples import collapse_duplicates  # noqa
from dataset.triples import load_dataset  # noqa
from dataset.triples import load_triples  # noqa
from dataset.triples import parse_triples  # noqa
from dataset.triples import write_triples  # noqa
from dataset.vocabulary import Vocabulary  # noqa
