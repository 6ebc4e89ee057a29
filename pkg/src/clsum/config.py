"""Pipeline configuration: defaults, key=value config files, validation."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


@dataclass
class PipelineConfig:
    source_lang: str = "en"
    target_lang: str = "fr"
    theta_cluster: float = 0.6
    theta_redundancy: float = 0.5
    alpha: float = 0.5
    beta: float = 0.5
    k_best: int = 50
    budget: int = 250
    min_words: int = 8
    require_verb: bool = True
    lda_topics: int = 1
    lda_top: int = 5
    lda_iters: int = 200
    seed: int = 42
    chunking: bool = True
    provider: str = "file"
    provider_url: str = ""

    def validate(self) -> "PipelineConfig":
        if abs(self.alpha + self.beta - 1.0) > 1e-12:
            raise ValueError(f"alpha + beta must equal 1, got {self.alpha} + {self.beta}")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        for name in ("theta_cluster", "theta_redundancy"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ValueError(f"{name} must be in (0, 1], got {value}")
        if self.budget <= 0:
            raise ValueError(f"budget must be positive, got {self.budget}")
        if self.k_best < 1 or self.min_words < 1 or self.lda_topics < 1:
            raise ValueError("k_best, min_words and lda_topics must be >= 1")
        return self


_BOOL_VALUES = {"true": True, "1": True, "yes": True, "on": True,
                "false": False, "0": False, "no": False, "off": False}


def parse_config_file(path) -> dict:
    """Read a key=value config file; '#' starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def config_from(values: dict, base: PipelineConfig | None = None) -> PipelineConfig:
    """Build a validated config from string values layered over *base*."""
    config = base or PipelineConfig()
    by_name = {f.name: f for f in fields(PipelineConfig)}
    for key, value in values.items():
        if key not in by_name:
            raise ValueError(f"unknown config key: {key!r}")
        kind = by_name[key].type
        if isinstance(value, str):
            if kind == "bool":
                try:
                    value = _BOOL_VALUES[value.lower()]
                except KeyError:
                    raise ValueError(f"bad boolean for {key!r}: {value!r}") from None
            elif kind == "int":
                value = int(value)
            elif kind == "float":
                value = float(value)
        setattr(config, key, value)
    return config.validate()
