"""knobs - Configuration Management.

Typed settings with validation and persistence. Settings live as JSON in
the data directory (see hideaway); BALLPARK_* environment variables
override individual fields after the file is read.

Example:
    >>> from ballpark import knobs
    >>> settings = knobs.get_config()
    >>> settings.sweep.trials = 200
    >>> knobs.save_config(settings)

Classes:
    Settings: Tolerances, count ceiling, output format and the sweep block.
    SweepConfig: Parameters of a randomized theorem sweep.
    DeltaPolicy: How a sweep chooses delta for each trial.

Functions:
    get_config: Load settings from file, then apply environment overrides.
    save_config: Save settings to file.
    apply_env_overrides: Apply BALLPARK_* variables to a settings dict.

Environment overrides:
    BALLPARK_RANK_TOL=1e-12          -> settings.rank_tol
    BALLPARK_SWEEP__TRIALS=50        -> settings.sweep.trials
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from .blueprint import COMMON_SCHEMAS, validate
from .headcount import DEFAULT_BOUNDARY_TOL_REL, DEFAULT_COUNT_CEILING
from .hideaway import ensure_data_dir, get_config_path
from .mishaps import DomainError, SchemaError
from .scaffold import DEFAULT_RANK_TOL

logger = logging.getLogger(__name__)


ENV_PREFIX = "BALLPARK_"
SETTINGS_VERSION = "1.0"

DEFAULT_SLACK_REL = 1e-9
DEFAULT_HYPOTHESIS_TOL = 1e-12
DEFAULT_R_GRID = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0)
OUTPUT_FORMATS = ("csv", "structured")


class DeltaPolicy(str, Enum):
    """How a sweep picks delta from the basis."""
    MAX_ADMISSIBLE = "max_admissible"    # delta = 1 / |A|
    FRACTION = "fraction"                # delta = f / |A|


@dataclass
class SweepConfig:
    """Parameters of a randomized theorem sweep."""
    trials: int = 1000
    seed: int = 42
    n_min: int = 1
    n_max: int = 4
    m_extra_max: int = 3
    entry_range: tuple[float, float] = (-2.0, 2.0)
    r_grid: tuple[float, ...] = DEFAULT_R_GRID
    delta_policy: DeltaPolicy = DeltaPolicy.MAX_ADMISSIBLE
    delta_fraction: float = 1.0
    output_format: str = "csv"
    workers: int = 1
    count_ceiling: float = 1e7

    def __post_init__(self):
        self.entry_range = tuple(float(v) for v in self.entry_range)
        self.r_grid = tuple(float(v) for v in self.r_grid)
        self.delta_policy = DeltaPolicy(self.delta_policy)
        if self.trials < 0:
            raise DomainError(f"trials must be >= 0, got {self.trials}")
        if self.seed < 0:
            raise DomainError(f"seed must be an unsigned integer, got {self.seed}")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise DomainError(f"need 1 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        if self.m_extra_max < 0:
            raise DomainError(f"m_extra_max must be >= 0, got {self.m_extra_max}")
        if len(self.entry_range) != 2 or not self.entry_range[0] < self.entry_range[1]:
            raise DomainError(f"entry_range must be (low, high) with low < high, got {self.entry_range}")
        if not self.r_grid or any(not r > 0 for r in self.r_grid):
            raise DomainError(f"r_grid entries must be > 0, got {self.r_grid}")
        if not 0 < self.delta_fraction <= 1:
            raise DomainError(f"delta_fraction must be in (0, 1], got {self.delta_fraction}")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")

    def delta_for(self, op_norm: float) -> float:
        """delta for a basis with operator norm |A|."""
        if self.delta_policy is DeltaPolicy.MAX_ADMISSIBLE:
            return 1.0 / op_norm
        return self.delta_fraction / op_norm


@dataclass
class Settings:
    """Tolerances and defaults shared by every command."""
    version: str = SETTINGS_VERSION
    rank_tol: float = DEFAULT_RANK_TOL
    boundary_tol_rel: float = DEFAULT_BOUNDARY_TOL_REL
    count_ceiling: float = float(DEFAULT_COUNT_CEILING)
    slack_rel: float = DEFAULT_SLACK_REL
    hypothesis_tol: float = DEFAULT_HYPOTHESIS_TOL
    output_format: str = "csv"
    sweep: SweepConfig = field(default_factory=SweepConfig)

    def boundary_tol(self, radius: float) -> float:
        return self.boundary_tol_rel * radius

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["sweep"]["entry_range"] = list(self.sweep.entry_range)
        data["sweep"]["r_grid"] = list(self.sweep.r_grid)
        data["sweep"]["delta_policy"] = self.sweep.delta_policy.value
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Settings":
        """Build settings from a validated document; absent fields keep their defaults."""
        values = {k: v for k, v in data.items() if k != "sweep"}
        sweep = SweepConfig(**data.get("sweep", {}))
        return cls(sweep=sweep, **values)


def _coerce(raw: str, current: Any) -> Any:
    if isinstance(current, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    if isinstance(current, (tuple, list)):
        return [float(part) for part in raw.split(",") if part.strip()]
    return raw


def apply_env_overrides(data: dict[str, Any], environ: Optional[Mapping[str, str]] = None) -> dict[str, Any]:
    """Apply BALLPARK_* variables; a double underscore descends into a nested block.

    Unknown names are ignored. Values are converted to the type of the
    field they replace.

    Raises:
        SchemaError: If a value cannot be converted
    """
    environ = os.environ if environ is None else environ
    result = json.loads(json.dumps(data))
    for key, raw in environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        path = key[len(ENV_PREFIX):].lower().split("__")
        target = result
        for part in path[:-1]:
            target = target.get(part) if isinstance(target, dict) else None
        if not isinstance(target, dict) or path[-1] not in target:
            continue
        try:
            target[path[-1]] = _coerce(raw, target[path[-1]])
        except ValueError:
            raise SchemaError(f"{key}: cannot use {raw!r} for {'.'.join(path)}")
        logger.debug("environment override %s", key)
    return result


def get_config(path: Optional[Union[str, Path]] = None, environ: Optional[Mapping[str, str]] = None) -> Settings:
    """Load settings.

    A missing or unreadable file gives the defaults. A readable file that
    fails validation is an error.

    Args:
        path: Settings file (default: hideaway.get_config_path())
        environ: Environment mapping (default: os.environ)

    Raises:
        SchemaError: If the file or an override violates the settings schema
    """
    config_path = Path(path) if path is not None else get_config_path()

    data: dict[str, Any] = {}
    if config_path.exists():
        try:
            with open(config_path) as f:
                data = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning("ignoring unreadable settings file %s: %s", config_path, e)
            data = {}

    try:
        document = validate(data, COMMON_SCHEMAS["settings"])
        merged = Settings.from_dict(document).to_dict()
        merged = validate(apply_env_overrides(merged, environ), COMMON_SCHEMAS["settings"])
        return Settings.from_dict(merged)
    except DomainError as e:
        raise SchemaError(f"{config_path}: {e}")


def save_config(settings: Settings, path: Optional[Union[str, Path]] = None) -> Path:
    """Save settings as JSON and return the file path."""
    if path is None:
        ensure_data_dir()
        config_path = get_config_path()
    else:
        config_path = Path(path)
        config_path.parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, "w") as f:
        json.dump(settings.to_dict(), f, indent=2)
    return config_path
