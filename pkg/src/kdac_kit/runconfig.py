"""RunConfig: flat ``key = value`` sections, CLI overrides, header echo.

The effective config (file values, then flag overrides, then resolved
defaults) is echoed as ``#``-prefixed comment lines at the top of every
output file; re-parsing that echo reproduces the RunConfig exactly.
"""

from dataclasses import dataclass, field, replace

from .activations import (
    ActivationKind,
    format_activation_spec,
    list_registry,
    parse_activation_spec,
)
from .errors import ConfigurationError
from .harness.train import TrainConfig

COMMANDS = ("gradcheck", "curves", "bench", "timing")
TASKS = ("regression", "tagging")


@dataclass(frozen=True)
class RunConfig:
    command: str
    task: str = "regression"
    seeds: tuple = ()
    repeats: int = 5
    out: str = ""
    activations: tuple = ()
    calls: int = 10_000_000
    learning_rate: float = 1e-3
    epochs: int = 20
    batch_size: int = 32
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    beta1: float = 1.2
    beta2: float = 0.8
    mu: float = 0.01
    x_min: float = -5.0
    x_max: float = 5.0
    steps: int = 1001

    def train_config(self, seed: int) -> TrainConfig:
        return TrainConfig(
            seed=seed,
            learning_rate=self.learning_rate,
            epochs=self.epochs,
            batch_size=self.batch_size,
            adam_beta1=self.adam_beta1,
            adam_beta2=self.adam_beta2,
            adam_eps=self.adam_eps,
        )


# (section, key) -> (attribute, value type)
_SCHEMA = {
    ("run", "command"): ("command", "str"),
    ("run", "task"): ("task", "str"),
    ("run", "seeds"): ("seeds", "int_list"),
    ("run", "repeats"): ("repeats", "int"),
    ("run", "out"): ("out", "str"),
    ("run", "activations"): ("activations", "activation_list"),
    ("run", "calls"): ("calls", "int"),
    ("train", "learning_rate"): ("learning_rate", "float"),
    ("train", "epochs"): ("epochs", "int"),
    ("train", "batch_size"): ("batch_size", "int"),
    ("train", "adam_beta1"): ("adam_beta1", "float"),
    ("train", "adam_beta2"): ("adam_beta2", "float"),
    ("train", "adam_eps"): ("adam_eps", "float"),
    ("curves", "beta1"): ("beta1", "float"),
    ("curves", "beta2"): ("beta2", "float"),
    ("curves", "mu"): ("mu", "float"),
    ("curves", "x_min"): ("x_min", "float"),
    ("curves", "x_max"): ("x_max", "float"),
    ("curves", "steps"): ("steps", "int"),
}

_SECTIONS = ("run", "train", "curves")


def _convert(kind, raw, where):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "str":
            return raw
        if kind == "int_list":
            return tuple(int(v) for v in raw.replace(",", " ").split())
        if kind == "activation_list":
            return tuple(parse_activation_spec(s) for s in raw.split())
    except ConfigurationError:
        raise
    except ValueError:
        raise ConfigurationError(f"{where}: cannot parse {raw!r} as {kind}") from None
    raise AssertionError(kind)


def _parse_file_values(text, source="config"):
    """key/value pairs per section; errors carry the 1-based line number."""
    values = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigurationError(
                    f"{source} line {lineno}: unknown section [{section}]"
                )
            continue
        if "=" not in stripped:
            raise ConfigurationError(
                f"{source} line {lineno}: expected 'key = value', got {stripped!r}"
            )
        if section is None:
            raise ConfigurationError(
                f"{source} line {lineno}: key outside any [section]"
            )
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if (section, key) not in _SCHEMA:
            raise ConfigurationError(
                f"{source} line {lineno}: unknown key {key!r} in section [{section}]"
            )
        attr, kind = _SCHEMA[(section, key)]
        values[attr] = _convert(kind, raw, f"{source} line {lineno}")
    return values


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.command not in COMMANDS:
        raise ConfigurationError(
            f"unknown command {cfg.command!r}; known: {', '.join(COMMANDS)}"
        )
    if cfg.task not in TASKS:
        raise ConfigurationError(f"unknown task {cfg.task!r}; known: {', '.join(TASKS)}")
    if cfg.repeats < 1:
        raise ConfigurationError(f"repeats must be >= 1, got {cfg.repeats}")
    if cfg.calls < 1:
        raise ConfigurationError(f"calls must be >= 1, got {cfg.calls}")
    # resolve the effective values so the echoed config is fully explicit
    seeds = cfg.seeds if cfg.seeds else tuple(range(cfg.repeats))
    activations = cfg.activations if cfg.activations else tuple(list_registry())
    cfg = replace(cfg, seeds=seeds, activations=activations)
    cfg.train_config(seed=0)  # surfaces invalid training hyperparameters now
    return cfg


def parse_config(command: str, path=None, overrides=None) -> RunConfig:
    """Effective RunConfig from defaults, an optional file, and flag overrides."""
    values = {"command": command}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        file_values = _parse_file_values(text, source=str(path))
        file_values.pop("command", None)  # the subcommand on the CLI wins
        values.update(file_values)
    if overrides:
        for attr, value in overrides.items():
            if value is None:
                continue
            values[attr] = value
    return _validate(RunConfig(**values))


def parse_config_text(text: str) -> RunConfig:
    """Parse a full config (including command) from config-file text."""
    values = _parse_file_values(text)
    if "command" not in values:
        raise ConfigurationError("config text does not set command")
    return _validate(RunConfig(**values))


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def echo_config(cfg: RunConfig) -> list:
    """Config-file lines reproducing ``cfg`` exactly when re-parsed."""
    lines = ["[run]"]
    lines.append(f"command = {cfg.command}")
    lines.append(f"task = {cfg.task}")
    lines.append(f"seeds = {','.join(str(s) for s in cfg.seeds)}")
    lines.append(f"repeats = {cfg.repeats}")
    if cfg.out:
        lines.append(f"out = {cfg.out}")
    specs = " ".join(format_activation_spec(kind) for kind in cfg.activations)
    lines.append(f"activations = {specs}")
    lines.append(f"calls = {cfg.calls}")
    lines.append("[train]")
    for key in ("learning_rate", "epochs", "batch_size", "adam_beta1", "adam_beta2", "adam_eps"):
        lines.append(f"{key} = {_fmt(getattr(cfg, key))}")
    lines.append("[curves]")
    for key in ("beta1", "beta2", "mu", "x_min", "x_max", "steps"):
        lines.append(f"{key} = {_fmt(getattr(cfg, key))}")
    return lines


_ECHO_END = "# ---"


def comment_header(cfg: RunConfig) -> list:
    """Echo block for output files; ends with a sentinel so later comment
    lines (column notes, breakpoints) are not mistaken for config."""
    return [f"# {line}" for line in echo_config(cfg)] + [_ECHO_END]


def read_echoed_config(path) -> RunConfig:
    """Recover the RunConfig from an output file's comment header."""
    lines = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line == _ECHO_END:
                break
            if line.startswith("# "):
                lines.append(line[2:])
            else:
                break
    return parse_config_text("\n".join(lines))
