from dataclasses import dataclass
from datetime import timedelta
from fractions import Fraction

from .arith import parse_rational
from .errors import ConfigError

DEFAULT_MAX_DEPTH = 64
DEFAULT_TARGET_WIDTH = Fraction(1, 2**16)
DEFAULT_FAST_EVAL = True
DEFAULT_OUTPUT_FORMAT = "text"
DEFAULT_SEED = 0
DEFAULT_WORKERS = 1
DEFAULT_EXPIRE_CACHED_REPORTS_AFTER = timedelta(days=7)
DEFAULT_CACHE_REPORTS_SLOWER_THAN = timedelta(milliseconds=200)

OUTPUT_FORMATS = ("text", "json")

# Django settings consulted by Config.from_settings(), keyed by Config field.
SETTINGS_NAMES = {
    "max_depth": "BISOLVE_MAX_DEPTH",
    "target_width": "BISOLVE_TARGET_WIDTH",
    "fast_eval": "BISOLVE_FAST_EVAL",
    "workers": "BISOLVE_WORKERS",
}

# Fields that change the solver's output; the others only affect rendering or speed.
RESULT_FIELDS = ("max_depth", "target_width")


def setting(name, default):
    """Reads a project setting, falling back when Django is not configured."""
    try:
        from django.conf import settings

        return getattr(settings, name, default)
    except Exception:
        return default


@dataclass(frozen=True)
class Config:
    """
    Solver and output options. Construction validates; use from_settings()
    to layer explicit values over project settings over the DEFAULT_ values.
    """

    max_depth: int = DEFAULT_MAX_DEPTH
    target_width: Fraction = DEFAULT_TARGET_WIDTH
    fast_eval: bool = DEFAULT_FAST_EVAL
    output_format: str = DEFAULT_OUTPUT_FORMAT
    seed: int = DEFAULT_SEED
    workers: int = DEFAULT_WORKERS
    include_timings: bool = False

    def __post_init__(self):
        try:
            target = self.target_width
            if isinstance(target, str):
                target = parse_rational(target)
            object.__setattr__(self, "target_width", Fraction(target))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid target_width {self.target_width!r}: {e}")
        if not isinstance(self.max_depth, int) or self.max_depth < 1:
            raise ConfigError(f"max_depth must be an integer >= 1, got {self.max_depth!r}")
        if self.target_width <= 0:
            raise ConfigError(f"target_width must be positive, got {self.target_width}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}"
            )
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError(f"workers must be an integer >= 1, got {self.workers!r}")

    @classmethod
    def from_settings(cls, **overrides):
        values = {}
        for field, name in SETTINGS_NAMES.items():
            value = setting(name, None)
            if value is not None:
                values[field] = value
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def cache_fingerprint(self):
        return ";".join(f"{name}={getattr(self, name)}" for name in RESULT_FIELDS)
