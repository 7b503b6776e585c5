"""Disk persistence for datasets and session logs.

Layout under the data root (FILTERLENS_DATA_DIR or ./filterlens_data):

    datasets/<id>/data.csv       raw bytes as uploaded
    datasets/<id>/manifest.json  name, type overrides, column summary
    sessions/<id>.json           event log (see Session.to_log)

Dataset ids are the first 12 hex digits of the SHA-256 of the uploaded
bytes plus the type overrides, so re-uploading the same content is
idempotent and differently-typed loads of the same bytes stay distinct.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .dataset import Dataset, load_csv
from .errors import UnknownDataset, UnknownSession
from .jsonutil import canonical_bytes

ENV_DATA_DIR = "FILTERLENS_DATA_DIR"
DEFAULT_DATA_DIR = "filterlens_data"


def resolve_data_root(explicit: str | os.PathLike | None = None) -> Path:
    if explicit is not None:
        return Path(explicit)
    return Path(os.environ.get(ENV_DATA_DIR, DEFAULT_DATA_DIR))


def dataset_id(csv_bytes: bytes, numeric: tuple[str, ...], categorical: tuple[str, ...]) -> str:
    digest = hashlib.sha256()
    digest.update(csv_bytes)
    digest.update(canonical_bytes({"numeric": sorted(numeric), "categorical": sorted(categorical)}))
    return digest.hexdigest()[:12]


class DataStore:
    """Content-addressed dataset storage plus session logs, with an
    in-memory cache of parsed datasets."""

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = resolve_data_root(root)
        self._cache: dict[str, Dataset] = {}

    def _dataset_dir(self, ds_id: str) -> Path:
        return self.root / "datasets" / ds_id

    def _session_path(self, session_id: str) -> Path:
        return self.root / "sessions" / f"{session_id}.json"

    def save_dataset(
        self,
        csv_bytes: bytes,
        name: str = "dataset",
        numeric: tuple[str, ...] = (),
        categorical: tuple[str, ...] = (),
    ) -> dict:
        """Validate, persist, and describe an uploaded CSV.  Returns the
        manifest.  Parsing errors propagate before anything is written."""
        numeric = tuple(numeric)
        categorical = tuple(categorical)
        ds = load_csv(csv_bytes, name=name, numeric=numeric, categorical=categorical)
        ds_id = dataset_id(csv_bytes, numeric, categorical)
        manifest = {
            "id": ds_id,
            "name": name,
            "byte_size": len(csv_bytes),
            "n_rows": ds.n_rows,
            "numeric": sorted(numeric),
            "categorical": sorted(categorical),
            "columns": [
                {"name": c.name, "kind": c.kind.value} for c in ds.columns
            ],
        }
        target = self._dataset_dir(ds_id)
        target.mkdir(parents=True, exist_ok=True)
        (target / "data.csv").write_bytes(csv_bytes)
        (target / "manifest.json").write_bytes(canonical_bytes(manifest))
        self._cache[ds_id] = ds
        return manifest

    def manifest(self, ds_id: str) -> dict:
        path = self._dataset_dir(ds_id) / "manifest.json"
        if not path.exists():
            raise UnknownDataset(f"no dataset {ds_id!r}")
        return json.loads(path.read_text("utf-8"))

    def list_datasets(self) -> list[dict]:
        base = self.root / "datasets"
        if not base.exists():
            return []
        out = []
        for entry in sorted(base.iterdir()):
            if (entry / "manifest.json").exists():
                out.append(json.loads((entry / "manifest.json").read_text("utf-8")))
        return out

    def load_dataset(self, ds_id: str) -> Dataset:
        cached = self._cache.get(ds_id)
        if cached is not None:
            return cached
        manifest = self.manifest(ds_id)
        csv_bytes = (self._dataset_dir(ds_id) / "data.csv").read_bytes()
        ds = load_csv(
            csv_bytes,
            name=manifest["name"],
            numeric=tuple(manifest["numeric"]),
            categorical=tuple(manifest["categorical"]),
        )
        self._cache[ds_id] = ds
        return ds

    def save_session_log(self, session_id: str, log: dict) -> None:
        path = self._session_path(session_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(canonical_bytes(log))

    def load_session_log(self, session_id: str) -> dict:
        path = self._session_path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        return json.loads(path.read_text("utf-8"))

    def list_sessions(self) -> list[str]:
        base = self.root / "sessions"
        if not base.exists():
            return []
        return sorted(p.stem for p in base.glob("*.json"))
