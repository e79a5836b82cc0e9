from collections import namedtuple
import csv
import math
import numpy as np


HITS_AT = (1, 3, 10)

PER_TRIPLE_HEADER = (
    'head', 'relation', 'tail',
    'rank_head_raw', 'rank_tail_raw', 'rank_head_filtered', 'rank_tail_filtered',
)


RankPair = namedtuple('RankPair', 'head tail')


def _mrr(ranks):
    # fsum is exactly rounded, so the result does not depend on triple order
    return math.fsum(1.0 / r for r in ranks) / len(ranks)


def _hits(ranks, k):
    return float(np.count_nonzero(np.asarray(ranks) <= k)) / len(ranks)


class EvalReport:
    """Link prediction metrics over a set of test triples.

    Each triple contributes two ranking events (head and tail replacement)
    to the MRR and to hit@k. The headline `hits` use filtered ranks,
    `hits_raw` the raw ones.
    """

    def __init__(self, per_triple):
        """Constructor.

        :param per_triple: (triple, raw ranks, filtered ranks) per test triple
        :type per_triple: list
        """
        if not per_triple:
            raise ValueError('cannot report on an empty test set')
        self.per_triple = list(per_triple)

        raw = [rank for _, pair, _ in self.per_triple for rank in pair]
        filtered = [rank for _, _, pair in self.per_triple for rank in pair]
        self.mrr_raw = _mrr(raw)
        self.mrr_filtered = _mrr(filtered)
        self.hits = {k: _hits(filtered, k) for k in HITS_AT}
        self.hits_raw = {k: _hits(raw, k) for k in HITS_AT}

    @property
    def n_test(self):
        return len(self.per_triple)

    def to_json(self):
        return {
            'mrr_raw': self.mrr_raw,
            'mrr_filtered': self.mrr_filtered,
            'hits': {str(k): v for k, v in sorted(self.hits.items())},
            'hits_raw': {str(k): v for k, v in sorted(self.hits_raw.items())},
            'n_test': self.n_test,
        }

    def table(self):
        """Human readable summary."""
        lines = [
            '{:<10} {:>8} {:>8}'.format('metric', 'raw', 'filtered'),
            '{:<10} {:>8.4f} {:>8.4f}'.format('MRR', self.mrr_raw, self.mrr_filtered),
        ]
        for k in HITS_AT:
            lines.append('{:<10} {:>8.4f} {:>8.4f}'.format(
                'hit@{}'.format(k), self.hits_raw[k], self.hits[k]))
        lines.append('{} test triples'.format(self.n_test))
        return '\n'.join(lines)

    def save_per_triple_csv(self, path, vocab=None):
        """Writes one row of ranks per test triple, names resolved when a
        vocabulary is given."""
        with open(path, 'w', newline='', encoding='utf8') as fp:
            writer = csv.writer(fp)
            writer.writerow(PER_TRIPLE_HEADER)
            for (h, r, t), raw, filtered in self.per_triple:
                if vocab is not None:
                    h, r, t = (
                        vocab.entities.name_of(h),
                        vocab.relations.name_of(r),
                        vocab.entities.name_of(t))
                writer.writerow((h, r, t, raw.head, raw.tail, filtered.head, filtered.tail))

    def __repr__(self):
        return '<EvalReport(n={}, mrr_raw={:.4f}, mrr_filtered={:.4f})>'.format(
            self.n_test, self.mrr_raw, self.mrr_filtered)
