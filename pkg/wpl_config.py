from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional, Tuple
from pathlib import Path
import json
import importlib.util

from literals import parse_coords
from logging_config import get_logger

logger = get_logger(__name__)

# PyYAML is optional; without it configs are JSON only
YAML_AVAILABLE = importlib.util.find_spec("yaml") is not None


@dataclass
class WplConfig:
    n: int = 3
    base: str = "0,0,1,0"  # L0 = O(x3)
    window_factor: int = 3  # windows are window_factor * n
    probe_factor: int = 3
    sample_count: int = 200
    sequence_floor: int = 500  # minimum sequences per constructor in the sequences suite
    dim_r_samples: int = 10000
    seed: int = 0
    log_level: str = "INFO"
    log_dir: Optional[str] = "logs"
    svg_scale: int = 40
    strip_height: int = 80
    workers: Optional[int] = None

    def base_coords(self) -> Tuple[int, int, int, int]:
        """The base twist as l1,l2,l3,l; a malformed string is a ParseError"""
        return parse_coords(str(self.base))


def _resolve_format(config_path: str) -> Tuple[str, bool]:
    """Return (path, is_yaml), guessing a suffix when the extension is unknown"""
    path_obj = Path(config_path)
    suffix = path_obj.suffix.lower()
    if suffix in (".yaml", ".yml"):
        return config_path, True
    if suffix == ".json":
        return config_path, False
    if YAML_AVAILABLE:
        return str(path_obj.with_suffix(".yaml")), True
    return str(path_obj.with_suffix(".json")), False


def _known_keys(data: Dict[str, Any], config_path: str) -> Dict[str, Any]:
    known = {f.name for f in fields(WplConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        logger.warning(f"Ignoring unknown keys in {config_path}: {', '.join(unknown)}")
    return {k: v for k, v in data.items() if k in known}


def load_config_from_file(config_path: str = "wpl_config.yaml") -> WplConfig:
    """Load configuration from YAML or JSON; defaults when missing or broken"""
    config_path, is_yaml = _resolve_format(config_path)

    if not Path(config_path).exists():
        logger.debug(f"No config file at {config_path}, using defaults")
        return WplConfig()

    try:
        with open(config_path, "r") as f:
            if is_yaml and YAML_AVAILABLE:
                import yaml

                config_data = yaml.safe_load(f)
            else:
                config_data = json.load(f)
        if config_data is None:
            config_data = {}
        if not isinstance(config_data, dict):
            raise ValueError("top level must be a mapping")
        return WplConfig(**_known_keys(config_data, config_path))
    except Exception as e:
        logger.warning(f"Error loading config file {config_path}: {e}; using defaults")
        return WplConfig()


def write_default_config(config_path: str = "wpl_config.yaml") -> str:
    """Write the defaults in the format picked by the extension; returns the path used"""
    config_path, is_yaml = _resolve_format(config_path)
    default_config = asdict(WplConfig())
    Path(config_path).parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, "w") as f:
        if is_yaml and YAML_AVAILABLE:
            import yaml

            yaml.dump(default_config, f, default_flow_style=False, indent=2)
            logger.info(f"Created default YAML config file: {config_path}")
        else:
            json.dump(default_config, f, indent=2)
            logger.info(f"Created default JSON config file: {config_path}")
    return config_path
