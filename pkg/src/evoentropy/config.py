"""Experiment configuration: schema, validation, and YAML loading.

A config file declares a list of experiments, optionally layered on a
shared ``defaults`` block. Every key must match an ``ExperimentConfig``
field name; anything else is rejected so typos cannot silently fall
back to defaults. Experiments without an explicit ``seed`` get one
derived deterministically from ``master_seed`` and their position, so
a sweep is reproducible from a single number.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

from .genome import DEFAULT_A_MAX, DistanceMode, PhenotypeModel

_U64 = 2**64


class ConfigError(ValueError):
    """Malformed or out-of-range configuration input."""


@dataclass(frozen=True, kw_only=True)
class ExperimentConfig:
    """Complete, self-contained description of one simulation run.

    Attributes:
        population_size: fixed cap N on generation size.
        generations: number of generations to record.
        loci: loci per genome.
        phenotype_model: genotype-to-trait collapse rule.
        mu: per-allele-slot mutation probability.
        alpha: choosiness of the mate-acceptance curve.
        sc: strength of the fecundity penalty on mating-success deviation.
        p_opt: mating-success proportion that maximizes fecundity.
        b_max: fecundity ceiling (offspring per female).
        n_encounters: males sampled (with replacement) per female per round.
        distance_mode: genetic or phenotypic mate distance.
        seed: 64-bit unsigned RNG seed for the whole run.
        a_max: allele magnitude clamp; must stay within int16.
        label: unique human-readable experiment name.
    """

    population_size: int = 1000
    generations: int = 10000
    loci: int
    phenotype_model: PhenotypeModel
    mu: float = 5e-5
    alpha: float = 0.005
    sc: float
    p_opt: float
    b_max: float = 5.0
    n_encounters: int = 20
    distance_mode: DistanceMode = DistanceMode.GENETIC
    seed: int = 0
    a_max: int = DEFAULT_A_MAX
    label: str

    def __post_init__(self) -> None:
        _validate_fields(dataclasses.asdict(self), context=f"experiment {self.label!r}")

    def to_dict(self) -> dict[str, Any]:
        """Plain-value dict (enums as strings), losslessly re-loadable."""
        d = dataclasses.asdict(self)
        d["phenotype_model"] = self.phenotype_model.value
        d["distance_mode"] = self.distance_mode.value
        return d


_INT_FIELDS = {
    "population_size": (2, None),
    "generations": (1, None),
    "loci": (1, None),
    "n_encounters": (1, None),
    "seed": (0, _U64 - 1),
    "a_max": (1, DEFAULT_A_MAX),
}

_FLOAT_FIELDS = {
    "mu": (0.0, 1.0),
    "alpha": (0.0, None),
    "sc": (0.0, None),
    "b_max": (None, None),  # checked > 0 separately: the bound is strict
    "p_opt": (0.0, 1.0),
}

_ENUM_FIELDS = {
    "phenotype_model": PhenotypeModel,
    "distance_mode": DistanceMode,
}

_REQUIRED = ("loci", "phenotype_model", "sc", "p_opt", "label")

_ALL_FIELDS = frozenset(f.name for f in dataclasses.fields(ExperimentConfig))


def _validate_fields(values: dict[str, Any], context: str) -> None:
    for name, (lo, hi) in _INT_FIELDS.items():
        v = values[name]
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{context}: {name} must be an integer, got {v!r}")
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise ConfigError(f"{context}: {name}={v} outside [{lo}, {hi}]")
    for name, (lo, hi) in _FLOAT_FIELDS.items():
        v = values[name]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{context}: {name} must be a number, got {v!r}")
        v = float(v)
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise ConfigError(f"{context}: {name}={v} outside [{lo}, {hi}]")
    if float(values["b_max"]) <= 0.0:
        raise ConfigError(f"{context}: b_max must be positive")
    if not isinstance(values["label"], str) or not values["label"]:
        raise ConfigError(f"{context}: label must be a nonempty string")


def _coerce(name: str, raw: Any, context: str) -> Any:
    """Casts one raw YAML value to its field type, rejecting lookalikes."""
    if name in _ENUM_FIELDS:
        enum_cls = _ENUM_FIELDS[name]
        try:
            return enum_cls(raw)
        except ValueError:
            options = ", ".join(m.value for m in enum_cls)
            raise ConfigError(
                f"{context}: {name}={raw!r} is not one of: {options}"
            ) from None
    if name in _FLOAT_FIELDS:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ConfigError(f"{context}: {name} must be a number, got {raw!r}")
        return float(raw)
    if name in _INT_FIELDS:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ConfigError(f"{context}: {name} must be an integer, got {raw!r}")
        return raw
    if name == "label":
        if not isinstance(raw, str):
            raise ConfigError(f"{context}: label must be a string, got {raw!r}")
        return raw
    raise ConfigError(f"{context}: unknown key {name!r}")


def derive_seed(master_seed: int, index: int) -> int:
    """Derives the seed for experiment ``index`` from a master seed.

    Uses the splitmix64 output function on master_seed advanced by
    (index + 1) increments of the golden-ratio constant. Consecutive
    indices therefore get statistically unrelated 64-bit seeds, and the
    mapping is stable across runs and platforms.
    """
    z = (master_seed + (index + 1) * 0x9E3779B97F4A7C15) % _U64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % _U64
    return (z ^ (z >> 31)) % _U64


def _check_known_keys(block: dict[str, Any], context: str) -> None:
    for key in block:
        if key not in _ALL_FIELDS:
            known = ", ".join(sorted(_ALL_FIELDS))
            raise ConfigError(f"{context}: unknown key {key!r} (known keys: {known})")


def load_config(path: str | Path) -> list[ExperimentConfig]:
    """Loads and validates a YAML experiment file.

    Args:
        path: YAML file with optional ``defaults`` and ``master_seed``
            blocks and a required nonempty ``experiments`` list.

    Returns:
        Fully resolved configs in declaration order, each with a
        concrete seed.

    Raises:
        ConfigError: on parse failure, unknown keys, missing required
            fields, type mismatches, or out-of-range values; the message
            names the file and the offending experiment.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}" if mark is not None else str(path)
        raise ConfigError(f"{where}: invalid YAML: {exc}") from exc

    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    allowed_top = {"defaults", "experiments", "master_seed"}
    for key in doc:
        if key not in allowed_top:
            raise ConfigError(
                f"{path}: unknown top-level key {key!r} "
                f"(allowed: {', '.join(sorted(allowed_top))})"
            )

    master_seed = doc.get("master_seed", 0)
    if isinstance(master_seed, bool) or not isinstance(master_seed, int):
        raise ConfigError(f"{path}: master_seed must be an integer")
    if not 0 <= master_seed < _U64:
        raise ConfigError(f"{path}: master_seed outside the 64-bit range")

    defaults = doc.get("defaults", {})
    if not isinstance(defaults, dict):
        raise ConfigError(f"{path}: defaults must be a mapping")
    _check_known_keys(defaults, f"{path}: defaults")

    experiments = doc.get("experiments")
    if not isinstance(experiments, list) or not experiments:
        raise ConfigError(f"{path}: experiments must be a nonempty list")

    configs: list[ExperimentConfig] = []
    labels: set[str] = set()
    for i, entry in enumerate(experiments):
        context = f"{path}: experiment #{i}"
        if not isinstance(entry, dict):
            raise ConfigError(f"{context}: must be a mapping")
        _check_known_keys(entry, context)
        merged = {**defaults, **entry}
        if "label" in merged:
            context = f"{path}: experiment {merged['label']!r}"
        for name in _REQUIRED:
            if name not in merged:
                raise ConfigError(f"{context}: missing required key {name!r}")
        if "seed" not in merged:
            merged["seed"] = derive_seed(master_seed, i)
        kwargs = {k: _coerce(k, v, context) for k, v in merged.items()}
        try:
            cfg = ExperimentConfig(**kwargs)
        except ConfigError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        if cfg.label in labels:
            raise ConfigError(f"{context}: duplicate label {cfg.label!r}")
        labels.add(cfg.label)
        configs.append(cfg)
    return configs
