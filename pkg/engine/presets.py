# engine/presets.py
import json
from pathlib import Path
from typing import List, Union

import yaml

from core.errors import DocumentError
from core.state import ModelSpec

PRESET_DIR = Path(__file__).resolve().parent.parent / "presets"


def list_presets() -> List[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.yaml"))


def _check_spec(spec, source: str) -> ModelSpec:
    if not isinstance(spec, dict) or not isinstance(spec.get("layers", []), list):
        raise DocumentError(f"{source}: a model needs a mapping with a 'layers' list")
    for i, layer in enumerate(spec.get("layers", [])):
        if not isinstance(layer, dict) or "kind" not in layer:
            raise DocumentError(f"{source}: layer {i} has no 'kind'")
    return spec


def load_model_file(path: Union[str, Path]) -> ModelSpec:
    """Model spec from a .json or .yaml/.yml file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json":
            spec = json.loads(text)
        else:
            spec = yaml.safe_load(text)
    except (OSError, json.JSONDecodeError, yaml.YAMLError) as e:
        raise DocumentError(f"cannot read model file {path}: {e}")
    return _check_spec(spec, str(path))


def load_preset(name_or_path: str) -> ModelSpec:
    """Bundled preset by name (see list_presets) or a model file path."""
    candidate = PRESET_DIR / f"{name_or_path}.yaml"
    if candidate.exists():
        return load_model_file(candidate)
    if Path(name_or_path).exists():
        return load_model_file(name_or_path)
    raise DocumentError(f"unknown preset {name_or_path!r}; bundled presets: {', '.join(list_presets())}")
