"""Run configuration: defaults, key=value files, flag overrides."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

DEFAULT_SEED = 20240611


@dataclass(frozen=True)
class Config:
    maxlen: int = 3
    samples: int = 50
    seed: int = DEFAULT_SEED
    format: str = "human"      # human | machine
    timing: bool = False       # wall-clock lines break byte-identical reports, so off by default

    def __post_init__(self):
        if self.format not in ("human", "machine"):
            raise ValueError(f"format must be human or machine, not {self.format!r}")
        if self.maxlen < 0 or self.samples < 1:
            raise ValueError("maxlen must be >= 0 and samples >= 1")

    def params(self):
        return {"maxlen": self.maxlen, "samples": self.samples, "seed": self.seed}


def _coerce(name, text):
    typ = {f.name: f.type for f in fields(Config)}[name]
    if typ in ("int", int):
        return int(text)
    if typ in ("bool", bool):
        return text.strip().lower() in ("1", "true", "yes", "on")
    return text.strip()


def load_config(path: str | Path | None = None, **overrides) -> Config:
    """Read `key = value` lines (# comments allowed); non-None overrides win."""
    values = {}
    if path is not None:
        known = {f.name for f in fields(Config)}
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            k, v = (x.strip() for x in line.split("=", 1))
            if k not in known:
                raise ValueError(f"{path}:{lineno}: unknown key {k!r}")
            values[k] = _coerce(k, v)
    cfg = Config(**values)
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
