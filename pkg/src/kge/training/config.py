from exceptions import ConfigError
from model.params import ModelKind
import json
import logging


LOG = logging.getLogger(__name__)

#: (field, type, INI key) of every training setting, in file order.
FIELDS = (
    ('learning_rate', float, 'LearningRate'),
    ('lambda', float, 'Lambda'),
    ('batch_size', int, 'BatchSize'),
    ('neg_ratio', int, 'NegRatio'),
    ('max_epochs', int, 'MaxEpochs'),
    ('eval_every', int, 'EvalEvery'),
    ('seed', int, 'Seed'),
    ('model_kind', str, 'ModelKind'),
    ('dim', int, 'Dim'),
)
FIELD_NAMES = tuple(f[0] for f in FIELDS)


class TrainConfig:
    """Training hyper-parameters.

    Field names are the JSON keys; `lambda` is exposed as :attr:`lam`.
    """

    def __init__(self, learning_rate=0.1, lam=0.03, batch_size=100, neg_ratio=1,
                 max_epochs=1000, eval_every=50, seed=0, model_kind=ModelKind.simple,
                 dim=200):
        self.learning_rate = learning_rate
        self.lam = lam
        self.batch_size = batch_size
        self.neg_ratio = neg_ratio
        self.max_epochs = max_epochs
        self.eval_every = eval_every
        self.seed = seed
        self.model_kind = model_kind
        self.dim = dim
        self.validate()

    def validate(self):
        """Checks types and ranges, normalizing where possible.

        :raises: :class:`exceptions.ConfigError`
        """
        try:
            self.model_kind = ModelKind(self.model_kind)
        except ValueError:
            raise ConfigError('unknown model kind {!r}'.format(self.model_kind))
        for name, kind, _ in FIELDS:
            if name == 'model_kind':
                continue
            attr = 'lam' if name == 'lambda' else name
            value = getattr(self, attr)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError('{} must be a number, got {!r}'.format(name, value))
            if kind is int and int(value) != value:
                raise ConfigError('{} must be an integer, got {!r}'.format(name, value))
            setattr(self, attr, kind(value))

        if self.learning_rate <= 0:
            raise ConfigError('learning_rate must be positive')
        if self.lam < 0:
            raise ConfigError('lambda must be non-negative')
        for name in ('batch_size', 'neg_ratio', 'eval_every', 'dim'):
            if getattr(self, name) < 1:
                raise ConfigError('{} must be a positive integer'.format(name))
        if self.max_epochs < 0:
            raise ConfigError('max_epochs must be non-negative')
        return self

    def to_dict(self):
        data = {}
        for name in FIELD_NAMES:
            value = getattr(self, 'lam' if name == 'lambda' else name)
            data[name] = value.value if isinstance(value, ModelKind) else value
        return data

    def updated(self, overrides):
        """Returns a copy with the given fields replaced.

        :param overrides: field name -> value; None values are ignored
        :type overrides: dict

        :raises: :class:`exceptions.ConfigError` on unknown field names
        """
        unknown = set(overrides) - set(FIELD_NAMES)
        if unknown:
            raise ConfigError('unknown training fields: {}'.format(', '.join(sorted(unknown))))
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return TrainConfig.from_dict(data)

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(FIELD_NAMES)
        if unknown:
            raise ConfigError('unknown training fields: {}'.format(', '.join(sorted(unknown))))
        kwargs = {('lam' if k == 'lambda' else k): v for k, v in data.items()}
        return cls(**kwargs)

    @classmethod
    def from_ini(cls, section):
        """Reads the `[Training]` section of the INI configuration.

        :param section: The section
        :type section: :class:`configparser.SectionProxy`
        """
        data = {}
        for name, kind, key in FIELDS:
            if key not in section:
                continue
            try:
                if kind is int:
                    data[name] = section.getint(key)
                elif kind is float:
                    data[name] = section.getfloat(key)
                else:
                    data[name] = section[key].strip()
            except ValueError as err:
                raise ConfigError('[{}] {}: {}'.format(section.name, key, err))
        return cls.from_dict(data)

    @classmethod
    def read_json(cls, path):
        """Raw field dict of a JSON config file (not yet validated)."""
        try:
            with open(path, 'r', encoding='utf8') as fp:
                data = json.load(fp)
        except ValueError as err:
            raise ConfigError('{}: invalid JSON: {}'.format(path, err))
        if not isinstance(data, dict):
            raise ConfigError('{}: expected a JSON object'.format(path))
        return data

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(cls.read_json(path))

    def to_json(self, path):
        with open(path, 'w', encoding='utf8') as fp:
            json.dump(self.to_dict(), fp, indent=2)
            fp.write('\n')

    def __eq__(self, other):
        return isinstance(other, TrainConfig) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return '<TrainConfig({})>'.format(', '.join(
            '{}={}'.format(k, v) for k, v in self.to_dict().items()))
