"""Stimulus catalog: the pool of design items the survey samples panels from.

Items carry an opaque image locator and free-text tags; no image processing
happens anywhere in this package. Ids are dense 0..N-1 and stable for a
catalog version.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidConfigError


@dataclass(frozen=True)
class DesignItem:
    """One stimulus: a dense integer id plus an opaque asset locator."""

    id: int
    image_uri: str
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.id < 0:
            raise InvalidConfigError(f"design id must be >= 0, got {self.id}")
        if not self.image_uri:
            raise InvalidConfigError(f"design {self.id} has an empty image_uri")


class Catalog:
    """An ordered, validated collection of design items with dense ids 0..N-1."""

    def __init__(self, items: list[DesignItem], version: str = "v1"):
        items = sorted(items, key=lambda it: it.id)
        ids = [it.id for it in items]
        if ids != list(range(len(items))):
            raise InvalidConfigError(
                f"catalog ids must be dense 0..{len(items) - 1}, got {ids[:8]}..."
            )
        self.items = items
        self.version = version

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, design_id: int) -> DesignItem:
        return self.items[design_id]

    def image_uris(self, ids: list[int]) -> list[str]:
        return [self.items[i].image_uri for i in ids]

    def to_json_obj(self) -> list[dict]:
        return [
            {"id": it.id, "image_uri": it.image_uri, "tags": list(it.tags)}
            for it in self.items
        ]

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_obj(), indent=2) + "\n")

    @classmethod
    def from_json_obj(cls, obj: list[dict], version: str = "v1") -> "Catalog":
        items = [
            DesignItem(
                id=int(rec["id"]),
                image_uri=str(rec["image_uri"]),
                tags=tuple(str(t) for t in rec.get("tags", [])),
            )
            for rec in obj
        ]
        return cls(items, version=version)

    @classmethod
    def load(cls, path: str | Path, version: str | None = None) -> "Catalog":
        path = Path(path)
        obj = json.loads(path.read_text())
        return cls.from_json_obj(obj, version=version or path.stem)

    @classmethod
    def placeholder(cls, n: int, version: str = "placeholder") -> "Catalog":
        """Synthetic catalog of n items with placeholder asset URIs."""
        items = [
            DesignItem(id=i, image_uri=f"assets/design-{i:03d}.png", tags=())
            for i in range(n)
        ]
        return cls(items, version=version)
