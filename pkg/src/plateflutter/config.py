"""Resolved run configuration: file parsing, overrides, and hashing.

The configuration is a flat two-level key-value file (INI sections).  Every
default is the Tacoma Narrows deck setup; command-line
assignments override file values; the resolved state serializes to a
canonical text whose SHA-256 stamps every emitted table.
"""

from __future__ import annotations

import configparser
import hashlib
import math
from dataclasses import dataclass, field, fields

from .errors import ConfigError
from .spectrum import PlateConfig
from .tnb import TnbParameters


@dataclass
class ScanConfig:
    grid_step: float = 0.01
    width_filter: float = 0.2
    a_max: float = 20.0
    a_max_coupled: float = 10.0
    coarse_step: float = 0.1
    horizon: float = 300.0
    delta: float = 5e-4
    growth_ratio: float = 50.0


@dataclass
class IntegratorConfig:
    rtol: float = 1e-10
    atol: float = 1e-12


@dataclass
class OutputConfig:
    directory: str = "."
    formats: str = "csv,json"


@dataclass
class RunConfig:
    plate: PlateConfig = field(default_factory=PlateConfig)
    gamma: float | str = "tnb"      # literal value or "tnb" to derive it
    scan: ScanConfig = field(default_factory=ScanConfig)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def resolved_gamma(self) -> float:
        if isinstance(self.gamma, str):
            if self.gamma != "tnb":
                raise ConfigError(f"gamma must be a number or 'tnb', got {self.gamma!r}")
            return TnbParameters(poisson=self.plate.poisson,
                                 ell_hat=self.plate.half_width).gamma
        return float(self.gamma)

    def canonical_text(self, include_output: bool = True) -> str:
        lines = ["[plate]",
                 f"half_width = {self.plate.half_width:.17g}",
                 f"poisson = {self.plate.poisson:.17g}",
                 f"strip_width = {self.plate.strip_width:.17g}",
                 "[model]",
                 f"gamma = {self.gamma if isinstance(self.gamma, str) else format(self.gamma, '.17g')}",
                 f"gamma_resolved = {self.resolved_gamma():.17g}",
                 "[scan]"]
        for f_ in fields(ScanConfig):
            lines.append(f"{f_.name} = {getattr(self.scan, f_.name):.17g}")
        lines.append("[integrator]")
        lines.append(f"rtol = {self.integrator.rtol:.17g}")
        lines.append(f"atol = {self.integrator.atol:.17g}")
        if include_output:
            lines.append("[output]")
            lines.append(f"directory = {self.output.directory}")
            lines.append(f"formats = {self.output.formats}")
        return "\n".join(lines) + "\n"

    def config_hash(self) -> str:
        # provenance of the science, not of where files land
        return hashlib.sha256(self.canonical_text(include_output=False).encode()).hexdigest()


_FLOAT_KEYS = {
    ("plate", "half_width"), ("plate", "poisson"), ("plate", "strip_width"),
    ("scan", "grid_step"), ("scan", "width_filter"), ("scan", "a_max"),
    ("scan", "a_max_coupled"), ("scan", "coarse_step"), ("scan", "horizon"),
    ("scan", "delta"), ("scan", "growth_ratio"),
    ("integrator", "rtol"), ("integrator", "atol"),
}
_STR_KEYS = {("output", "directory"), ("output", "formats")}
_NAMED_CONSTANTS = {"pi/150": math.pi / 150, "pi/1500": math.pi / 1500,
                    "pi/144": math.pi / 144}


def _parse_float(section: str, key: str, raw: str) -> float:
    if raw in _NAMED_CONSTANTS:
        return _NAMED_CONSTANTS[raw]
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: cannot parse {raw!r} as a number") from exc


def apply_assignment(cfg: RunConfig, dotted: str, raw: str) -> None:
    """Apply one 'section.key = value' assignment onto a RunConfig."""
    try:
        section, key = dotted.split(".", 1)
    except ValueError as exc:
        raise ConfigError(f"expected section.key, got {dotted!r}") from exc
    if (section, key) == ("model", "gamma"):
        cfg.gamma = raw if raw == "tnb" else _parse_float(section, key, raw)
        return
    if (section, key) in _FLOAT_KEYS:
        value = _parse_float(section, key, raw)
        if section == "plate":
            current = {f_.name: getattr(cfg.plate, f_.name)
                       for f_ in fields(PlateConfig) if f_.init}
            current[key] = value
            try:
                cfg.plate = PlateConfig(**current)
            except ValueError as exc:
                raise ConfigError(f"[plate] {key}: {exc}") from exc
        else:
            setattr(getattr(cfg, section), key, value)
        return
    if (section, key) in _STR_KEYS:
        setattr(cfg.output, key, raw)
        return
    raise ConfigError(f"unknown configuration key [{section}] {key}")


def load_config(path: str | None = None, assignments: list[str] | None = None) -> RunConfig:
    """Build the resolved RunConfig from an optional file plus overrides.

    Each override is a 'section.key=value' string; overrides win over the
    file, the file over defaults.
    """
    cfg = RunConfig()
    if path is not None:
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise ConfigError(f"cannot read config file {path!r}")
        for section in parser.sections():
            for key, raw in parser.items(section):
                apply_assignment(cfg, f"{section}.{key}", raw)
    for item in assignments or []:
        if "=" not in item:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        dotted, raw = item.split("=", 1)
        apply_assignment(cfg, dotted.strip(), raw.strip())
    return cfg
