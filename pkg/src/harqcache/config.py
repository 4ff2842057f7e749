"""Experiment configuration: packaged defaults, an optional INI file, flag overrides.

Later sources win: defaults < ``--config`` file < command-line flags. SNRs are
given in dB and converted as soon as the config is resolved.
"""
import configparser
import math
from dataclasses import dataclass
from importlib import resources

from .errors import ConfigError

MODES = ("delay-curve", "sweep-gamma", "allocation", "validate")
SINGLE_USER_MODES = ("delay-curve", "validate")
CELL_KEYS = ("cell_radius", "cell_levels", "pathloss_k_db", "pathloss_mu")


@dataclass(frozen=True)
class CellParams:
    radius: float
    levels: int
    k_db: float
    mu: float


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str
    file_size: int
    rate: float
    snr1_db: tuple
    snr2_db: float = None
    cell: CellParams = None
    num_files: int = None
    gamma: tuple = ()
    capacity: int = None
    cached: tuple = ()
    runs: int = None
    seed: int = None
    workers: int = 1


def _defaults_text():
    return resources.files("harqcache").joinpath("defaults.ini").read_text()


def read_sections(path=None):
    """Parse the defaults and, if given, a user file into one ConfigParser."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read_string(_defaults_text(), source="<defaults>")
    if path is not None:
        try:
            with open(path) as fh:
                parser.read_file(fh, source=str(path))
        except OSError as exc:
            raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from exc
        except configparser.Error as exc:
            raise ConfigError("--config", str(exc).replace("\n", " ")) from exc
        for section in parser.sections():
            if section not in MODES:
                raise ConfigError(f"[{section}]", f"unknown section; expected one of {', '.join(MODES)}")
    return parser


def _int(field, text, minimum=None):
    try:
        value = int(str(text).strip())
    except ValueError:
        raise ConfigError(field, f"expected an integer, got {text!r}") from None
    if minimum is not None and value < minimum:
        raise ConfigError(field, f"must be >= {minimum}, got {value}")
    return value


def _float(field, text, positive=False, nonnegative=False):
    try:
        value = float(str(text).strip())
    except ValueError:
        raise ConfigError(field, f"expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(field, f"must be finite, got {text!r}")
    if positive and value <= 0:
        raise ConfigError(field, f"must be > 0, got {value}")
    if nonnegative and value < 0:
        raise ConfigError(field, f"must be >= 0, got {value}")
    return value


def _list(field, text, conv):
    items = [t for t in str(text).replace(";", ",").split(",") if t.strip()]
    if not items:
        raise ConfigError(field, "list must not be empty")
    return tuple(sorted(set(conv(field, t) for t in items)))


def resolve(mode, path=None, overrides=None):
    """Build an ExperimentConfig for ``mode`` from all sources.

    ``overrides`` maps config keys to raw string (or numeric) values coming
    from flags; ``None`` entries are ignored.
    """
    if mode not in MODES:
        raise ConfigError("mode", f"unknown mode {mode!r}")
    parser = read_sections(path)
    raw = dict(parser[mode])
    flags = {k: v for k, v in (overrides or {}).items() if v is not None}
    single_user = mode in SINGLE_USER_MODES

    for key in flags:
        if single_user and key in CELL_KEYS + ("num_files", "gamma", "capacity"):
            raise ConfigError("--" + key.replace("_", "-"), f"not used by {mode} (single-user mode takes snr2_db)")
        if not single_user and key in ("snr2_db", "cached", "runs", "seed"):
            raise ConfigError("--" + key.replace("_", "-"), f"not used by {mode}")
    raw.update({k: str(v) for k, v in flags.items()})

    def label(key):
        if key in flags:
            return "--" + key.replace("_", "-")
        return f"{path or '<defaults>'} [{mode}] {key}"

    def need(key):
        if key not in raw or not str(raw[key]).strip():
            raise ConfigError(key, f"required by {mode} but missing")
        return label(key), raw[key]

    common = dict(
        mode=mode,
        file_size=_int(*need("file_size"), minimum=1),
        rate=_float(*need("rate"), positive=True),
        snr1_db=_list(*need("snr1_db"), _float),
        workers=_int(label("workers"), raw.get("workers", "1"), minimum=1),
    )
    if single_user:
        cfg = dict(common, snr2_db=_float(*need("snr2_db")))
        if mode == "validate":
            cached = _list(*need("cached"), lambda f, t: _int(f, t, minimum=0))
            if cached[-1] > cfg["file_size"]:
                raise ConfigError(label("cached"), f"values must not exceed file_size = {cfg['file_size']}")
            cfg.update(
                cached=cached,
                runs=_int(*need("runs"), minimum=1),
                seed=_int(*need("seed"), minimum=0),
            )
            if cfg["seed"] >= 2**64:
                raise ConfigError(label("seed"), "must fit in an unsigned 64-bit integer")
        return ExperimentConfig(**cfg)

    cell = CellParams(
        radius=_float(*need("cell_radius"), positive=True),
        levels=_int(*need("cell_levels"), minimum=1),
        k_db=_float(*need("pathloss_k_db")),
        mu=_float(*need("pathloss_mu"), nonnegative=True),
    )
    return ExperimentConfig(
        **common,
        cell=cell,
        num_files=_int(*need("num_files"), minimum=1),
        gamma=_list(*need("gamma"), lambda f, t: _float(f, t, nonnegative=True)),
        capacity=_int(*need("capacity"), minimum=0),
    )
