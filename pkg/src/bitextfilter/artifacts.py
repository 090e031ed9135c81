"""Versioned JSON model artifacts.

Every artifact is a single JSON object with a ``format`` tag naming the model
kind and an integer ``version``. Serialization uses sorted keys and Python's
round-trip float repr, so retraining on identical inputs gives identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ModelError


def save(path, kind: str, version: int, payload: dict) -> None:
    doc = {"format": f"bitextfilter.{kind}", "version": version, **payload}
    text = json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    Path(path).write_text(text + "\n", encoding="utf-8")


def load(path, kind: str, version: int) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ModelError(f"model file not found: {path}") from None
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelError(f"cannot read model {path}: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != f"bitextfilter.{kind}":
        found = doc.get("format") if isinstance(doc, dict) else None
        raise ModelError(f"{path} is not a {kind} model (format tag {found!r})")
    found_version = doc.get("version")
    if not isinstance(found_version, int) or found_version > version:
        raise ModelError(
            f"{path}: {kind} model format version {found_version!r} is newer than supported ({version})"
        )
    return doc
