import logging
import os
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv

from .errors import ConfigError

logger = logging.getLogger("ToricKO.Config")

_BUILTIN_DEFAULTS: dict[str, Any] = {
    "chart_max_filtration": 8,
    "chart_stem_padding": 8,
    "collapse_dimension_bound": 12,
    "report_width": 100,
    "output_format": "text",
    "log_level": "WARNING",
    "verify_algebra": True,
    "svg_hash_salt": "toric-ko",
}


def _find_repo_root() -> Path:
    """Search upward for the repo root (apps/ + packages/). Honors TORIC_KO_ROOT."""
    explicit = os.getenv("TORIC_KO_ROOT")
    if explicit:
        p = Path(explicit).resolve()
        if (p / "apps").exists() and (p / "packages").exists():
            return p
    current = Path(__file__).resolve()
    for _ in range(5):
        if (current.parent / "apps").exists() and (current.parent / "packages").exists():
            return current.parent
        current = current.parent
    raise RuntimeError(
        "Could not discover the toric-ko repository root (looked for apps/ + packages/ "
        "up to 5 levels from the package). Set TORIC_KO_ROOT or run from inside the repo."
    )


REPO_ROOT = _find_repo_root()


def load_env() -> None:
    """Loads .env then .env.local from the repo root; later files win."""
    for name in (".env", ".env.local"):
        env_path = REPO_ROOT / name
        if env_path.exists():
            load_dotenv(env_path, override=True)


def _load_defaults(path: Path) -> dict[str, Any]:
    merged = dict(_BUILTIN_DEFAULTS)
    if not path.exists():
        return merged
    try:
        payload = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except Exception:
        logger.debug("unreadable defaults file %s, using built-ins", path)
        return merged
    if isinstance(payload, dict):
        merged.update({str(key): value for key, value in payload.items() if key in _BUILTIN_DEFAULTS})
    return merged


def _coerce(key: str, raw: str, template: Any) -> Any:
    try:
        if isinstance(template, bool):
            lowered = raw.strip().lower()
            if lowered in {"1", "true", "yes", "on"}:
                return True
            if lowered in {"0", "false", "no", "off"}:
                return False
            raise ValueError(raw)
        if isinstance(template, int):
            return int(raw)
    except ValueError as exc:
        raise ConfigError(f"TORIC_KO_{key.upper()} has an invalid value: {raw!r}") from exc
    return raw


class Settings:
    def __init__(self, defaults_path: Path | None = None) -> None:
        self.defaults_path = defaults_path or REPO_ROOT / "config" / "toric_ko" / "defaults.yaml"
        self._defaults = _load_defaults(self.defaults_path)

    def get(self, key: str) -> Any:
        template = self._defaults[key]
        raw = os.getenv(f"TORIC_KO_{key.upper()}")
        if raw is None or raw == "":
            return template
        return _coerce(key, raw, template)

    # --- PATHS ---
    @property
    def REPO_ROOT(self) -> Path: return REPO_ROOT

    @property
    def EXAMPLES_DIR(self) -> Path: return REPO_ROOT / "config" / "toric_ko" / "examples"

    @property
    def REPORT_SCHEMA_PATH(self) -> Path: return REPO_ROOT / "config" / "toric_ko" / "report_schema.json"

    # --- CHARTS ---
    @property
    def CHART_MAX_FILTRATION(self) -> int: return int(self.get("chart_max_filtration"))

    @property
    def CHART_STEM_PADDING(self) -> int: return int(self.get("chart_stem_padding"))

    @property
    def SVG_HASH_SALT(self) -> str: return str(self.get("svg_hash_salt"))

    # --- PIPELINE ---
    @property
    def COLLAPSE_DIMENSION_BOUND(self) -> int: return int(self.get("collapse_dimension_bound"))

    @property
    def VERIFY_ALGEBRA(self) -> bool: return bool(self.get("verify_algebra"))

    # --- OUTPUT ---
    @property
    def REPORT_WIDTH(self) -> int: return int(self.get("report_width"))

    @property
    def OUTPUT_FORMAT(self) -> str: return str(self.get("output_format"))

    @property
    def LOG_LEVEL(self) -> str: return str(self.get("log_level")).upper()


settings = Settings()
