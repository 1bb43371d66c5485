"""Bundled datasets and the JSON report envelope.

Reports are plain dicts serialized canonically (sorted keys, fixed
separators). Exact rationals are written as ``"p/q"`` strings. The
``report_digest`` covers everything except ``timings``, so two runs with the
same command, inputs and seed produce the same digest and, without
``--timings``, byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

import numpy as np

SCHEMA = 1
TOOL_VERSION = "0.1.0"
DATA_ENV = "MOMENTFORGE_DATA"


class DatasetError(Exception):
    """Missing dataset, or a file whose digest differs from the manifest."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    return Path(override) if override else Path(__file__).resolve().parent / "data"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def manifest(directory: Path | None = None) -> dict[str, str]:
    path = (directory or data_dir()) / "manifest.json"
    if not path.exists():
        raise DatasetError("missing-manifest", f"no manifest.json in {path.parent}")
    return json.loads(path.read_text())["files"]


def dataset_path(name: str, verify: bool = True) -> Path:
    """Path of a bundled dataset, checked against the pinned digest."""
    directory = data_dir()
    path = directory / name
    if not path.exists():
        raise DatasetError("missing-dataset", f"{name} not found in {directory}")
    if verify:
        pinned = manifest(directory).get(name)
        if pinned is None:
            raise DatasetError("unpinned-dataset", f"{name} is not listed in the manifest")
        actual = sha256_bytes(path.read_bytes())
        if actual != pinned:
            raise DatasetError("digest-mismatch", f"{name}: sha256 {actual} != pinned {pinned}")
    return path


def resolve_input(arg: str) -> Path:
    """A user path if it exists, otherwise a bundled dataset name."""
    p = Path(arg)
    if p.exists():
        # bundled files addressed by full path are still digest-checked
        if p.resolve().parent == data_dir().resolve() and p.name != "manifest.json":
            return dataset_path(p.name)
        return p
    if os.sep not in arg and (data_dir() / arg).exists():
        return dataset_path(arg)
    raise DatasetError("missing-input", f"{arg}: no such file")


# --------------------------------------------------------------------------
# Canonical JSON


def jsonable(x):
    """Convert verdict payloads to JSON-ready values (rationals become ``"p/q"``)."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, int):
        return x
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()] if x.dtype != complex else [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def canonical(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def input_digest(command: list[str], files=(), extra=None) -> str:
    h = hashlib.sha256()
    h.update(canonical(command).encode())
    for f in files:
        h.update(b"\0")
        h.update(Path(f).read_bytes())
    if extra is not None:
        h.update(b"\0")
        h.update(canonical(extra).encode())
    return h.hexdigest()


def make_report(command, verdicts, certificates=None, seed=None, files=(), timings=None, extra_inputs=None) -> dict:
    body = {
        "schema": SCHEMA,
        "tool_version": TOOL_VERSION,
        "command": list(command),
        "input_digest": input_digest(command, files, extra_inputs),
        "seed": seed,
        "verdicts": jsonable(verdicts),
        "certificates": jsonable(certificates or {}),
    }
    body["report_digest"] = sha256_bytes(canonical(body).encode())
    if timings is not None:
        body["timings"] = {k: round(float(v), 6) for k, v in timings.items()}
    return body


def render_json(report: dict, indent: bool = True) -> str:
    if indent:
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True)
    return canonical(report)


def render_text(report: dict) -> str:
    """Human rendering of a report (derived only from the JSON body)."""
    lines = [f"$ momentforge {' '.join(report['command'])}"]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        else:
            text = json.dumps(value, ensure_ascii=True)
            if len(text) > 160:
                text = text[:157] + "..."
            lines.append(f"  {prefix[:-1]} = {text}")

    walk("", report["verdicts"])
    if report.get("certificates"):
        lines.append("  certificates:")
        walk("  ", report["certificates"])
    if report.get("seed") is not None:
        lines.append(f"  seed = {report['seed']}")
    lines.append(f"  input_digest = {report['input_digest'][:16]}...")
    return "\n".join(lines)
