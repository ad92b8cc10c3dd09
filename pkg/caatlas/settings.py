import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional
import platformdirs
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError
from .errors import ValidationError
from .sampling import SoupParams
from .sampling.seeds import MASK64

STORE_ENV = "CA_ATLAS_STORE"
KNOWN_KEYS = {"store", "seed", "jobs", "sampling"}


def default_config_path() -> Path:
    config_dir = platformdirs.user_config_dir("caatlas", "app")
    return Path(config_dir) / "config.yaml"


@dataclass(frozen=True)
class AtlasSettings:
    """Effective settings for one command invocation."""

    params: SoupParams = field(default_factory=SoupParams)
    seed: int = 0
    store: Optional[Path] = None
    jobs: int = 1

    def validate(self):
        if (
            isinstance(self.seed, bool)
            or not isinstance(self.seed, int)
            or not 0 <= self.seed <= MASK64
        ):
            raise ValidationError(
                f"Seed {self.seed!r} must be an unsigned 64-bit integer."
            )
        if (
            isinstance(self.jobs, bool)
            or not isinstance(self.jobs, int)
            or self.jobs < 1
        ):
            raise ValidationError(
                f"jobs must be a positive integer, got {self.jobs!r}."
            )
        self.params.validate()

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AtlasSettings":
        unknown = set(data) - KNOWN_KEYS
        if unknown:
            raise ValidationError(
                f"Unknown config key(s): {', '.join(sorted(unknown))}. "
                f"Allowed: {', '.join(sorted(KNOWN_KEYS))}."
            )
        sampling = data.get("sampling") or {}
        if not isinstance(sampling, dict):
            raise ValidationError("'sampling' must be a mapping.")
        store = data.get("store")
        settings = cls(
            params=SoupParams.from_dict(sampling),
            seed=data.get("seed", 0),
            store=Path(store).expanduser() if store else None,
            jobs=data.get("jobs", 1),
        )
        settings.validate()
        return settings

    def with_overrides(
        self,
        params: Optional[Dict[str, Any]] = None,
        seed: Optional[int] = None,
        store: Optional[Path] = None,
        jobs: Optional[int] = None,
    ) -> "AtlasSettings":
        """
        Applies command-line values on top of these settings. The store
        path falls back to the CA_ATLAS_STORE environment variable before
        the configured one.
        """
        env_store = os.environ.get(STORE_ENV)
        if store is None and env_store:
            store = Path(env_store).expanduser()
        updated = replace(
            self,
            params=self.params.with_overrides(**(params or {})),
            seed=self.seed if seed is None else seed,
            store=self.store if store is None else Path(store),
            jobs=self.jobs if jobs is None else jobs,
        )
        updated.validate()
        return updated


def load_settings(config_path: Optional[Path] = None) -> AtlasSettings:
    """
    Reads settings from a YAML config file. A missing file at the default
    location yields the built-in defaults; a missing explicit file is an
    error.
    """
    path = config_path or default_config_path()
    if not path.is_file():
        if config_path is not None:
            raise ValidationError(f"Config file not found: {path}")
        return AtlasSettings()

    yaml_parser = YAML(typ="safe")
    try:
        with open(path, "r") as f:
            data = yaml_parser.load(f) or {}
    except YAMLError as e:
        raise ValidationError(f"Could not parse config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValidationError(f"Config {path} must contain a mapping.")
    return AtlasSettings.from_dict(data)
