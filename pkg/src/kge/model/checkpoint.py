"""Checkpoint directories.

See CHECKPOINT_FORMAT.md at the repository root for the layout.
"""
from background.ties import TieSpec
from exceptions import CheckpointError
from exceptions import RuleError
from model.params import ModelKind
from model.params import ModelParams
from utils import crc32_hex
import json
import logging
import numpy as np
import os


LOG = logging.getLogger(__name__)

MAGIC = 'simple-kge-checkpoint'
FORMAT_VERSION = 1

META_FILE = 'meta.json'
CHECKSUM_FILE = 'checksum.txt'
ARRAY_FILES = {
    'head': 'head.bin',
    'tail': 'tail.bin',
    'rel_fwd': 'rel_fwd.bin',
    'rel_inv': 'rel_inv.bin',
}
DTYPE = np.dtype('<f8')


def save_params(params, path, vocab=None):
    """Writes a checkpoint directory.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param path: Target directory, created if missing
    :type path: str

    :param vocab: Vocabulary stored next to the arrays
    :type vocab: :class:`dataset.Vocabulary` or None
    """
    os.makedirs(path, exist_ok=True)
    meta = {
        'format': MAGIC,
        'format_version': FORMAT_VERSION,
        'model_kind': params.kind.value,
        'dim': params.dim,
        'num_entities': params.num_entities,
        'num_relations': params.num_relations,
        'tie_table': params.ties.to_json(),
    }

    checksums = {}
    blob = json.dumps(meta, indent=2, sort_keys=True).encode('utf8')
    with open(os.path.join(path, META_FILE), 'wb') as fp:
        fp.write(blob)
    checksums[META_FILE] = crc32_hex(blob)

    for name, filename in sorted(ARRAY_FILES.items()):
        blob = np.ascontiguousarray(getattr(params, name), dtype=DTYPE).tobytes()
        with open(os.path.join(path, filename), 'wb') as fp:
            fp.write(blob)
        checksums[filename] = crc32_hex(blob)

    with open(os.path.join(path, CHECKSUM_FILE), 'w') as fp:
        for filename, crc in sorted(checksums.items()):
            fp.write('{}\t{}\n'.format(filename, crc))

    if vocab is not None:
        vocab.save(path)
    LOG.info('Saved {} checkpoint to {}'.format(params.kind.label, path))


def read_checksums(path):
    checksums = {}
    try:
        with open(os.path.join(path, CHECKSUM_FILE), 'r') as fp:
            for line in fp:
                fields = line.split()
                if not fields:
                    continue
                if len(fields) != 2:
                    raise CheckpointError('malformed checksum line {!r}'.format(line))
                checksums[fields[0]] = fields[1].lower()
    except FileNotFoundError:
        raise CheckpointError('{} has no {}'.format(path, CHECKSUM_FILE))
    return checksums


def read_verified(path, filename, checksums):
    """Reads a checkpoint file and checks its CRC32."""
    try:
        with open(os.path.join(path, filename), 'rb') as fp:
            blob = fp.read()
    except FileNotFoundError:
        raise CheckpointError('{} has no {}'.format(path, filename))
    expected = checksums.get(filename)
    if expected is None:
        raise CheckpointError('no checksum recorded for {}'.format(filename))
    if crc32_hex(blob) != expected:
        raise CheckpointError('checksum mismatch for {}'.format(filename))
    return blob


def load_meta(path):
    """Reads and validates `meta.json` of a checkpoint directory."""
    checksums = read_checksums(path)
    try:
        meta = json.loads(read_verified(path, META_FILE, checksums).decode('utf8'))
    except ValueError as err:
        raise CheckpointError('invalid {}: {}'.format(META_FILE, err))
    if meta.get('format') != MAGIC:
        raise CheckpointError('{} is not a checkpoint (format {!r})'.format(
            path, meta.get('format')))
    if meta.get('format_version') != FORMAT_VERSION:
        raise CheckpointError('unsupported checkpoint version {!r}'.format(
            meta.get('format_version')))
    return meta, checksums


def load_params(path):
    """Reads a checkpoint directory.

    :param path: The checkpoint directory
    :type path: str

    :returns: The embeddings, bit-identical to the saved ones
    :rtype: :class:`model.ModelParams`

    :raises: :class:`exceptions.CheckpointError`
    """
    meta, checksums = load_meta(path)
    try:
        kind = ModelKind(meta['model_kind'])
        dim = int(meta['dim'])
        rows = {
            'head': int(meta['num_entities']),
            'tail': int(meta['num_entities']),
            'rel_fwd': int(meta['num_relations']),
            'rel_inv': int(meta['num_relations']),
        }
        ties = TieSpec.from_json(meta.get('tie_table', []))
    except (KeyError, ValueError, RuleError) as err:
        raise CheckpointError('invalid {}: {}'.format(META_FILE, err))

    arrays = {}
    for name, filename in ARRAY_FILES.items():
        blob = read_verified(path, filename, checksums)
        expected = rows[name] * dim * DTYPE.itemsize
        if len(blob) != expected:
            raise CheckpointError('{} holds {} bytes, expected {} (truncated?)'.format(
                filename, len(blob), expected))
        arrays[name] = np.frombuffer(blob, dtype=DTYPE).reshape(rows[name], dim).astype(np.float64)

    LOG.info('Loaded {} checkpoint from {}'.format(kind.label, path))
    return ModelParams(
        kind, arrays['head'], arrays['tail'], arrays['rel_fwd'], arrays['rel_inv'], ties)
