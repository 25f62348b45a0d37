"""Typed k-partite social graph: entities, directed labeled edges, ingest.

The store keeps the directed edge list (with relation labels) and an
undirected adjacency projection; distance computations run on the
projection, with every relation label counting equally.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import (
    DuplicateEdgeError,
    DuplicateIdError,
    EmptyNameError,
    MissingEndpointError,
    ParseError,
    ReferentialError,
    SelfLoopError,
    UnknownIdError,
)


class EntityKind(str, Enum):
    USER = "user"
    CONCEPT = "concept"
    COURSE = "course"
    SOURCE = "source"
    POST = "post"
    ORIGIN = "origin"
    TAG = "tag"
    PLAYLIST = "playlist"


# Kinds that may appear in full search results / in the autocomplete list.
SEARCH_KINDS = (
    EntityKind.USER,
    EntityKind.CONCEPT,
    EntityKind.COURSE,
    EntityKind.SOURCE,
    EntityKind.POST,
)
AUTOCOMPLETE_KINDS = (EntityKind.USER, EntityKind.CONCEPT, EntityKind.COURSE)


@dataclass(frozen=True)
class Entity:
    id: str
    kind: EntityKind
    name: str
    description: str = ""
    fields: dict[str, str] = field(default_factory=dict)
    created_at: float = 0.0


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    relation: str
    created_at: float = 0.0


@dataclass(frozen=True)
class GraphSnapshot:
    """Immutable view of the graph; safe to share across threads."""

    entities: dict[str, Entity]
    adjacency: dict[str, tuple[str, ...]]
    edges: tuple[Edge, ...]

    def has_entity(self, entity_id: str) -> bool:
        return entity_id in self.entities

    def neighbors(self, entity_id: str) -> tuple[str, ...]:
        if entity_id not in self.adjacency:
            raise UnknownIdError(entity_id)
        return self.adjacency[entity_id]


class SocialGraph:
    """Mutable store. Writes are serialized; reads go through snapshots."""

    def __init__(self):
        self._entities: dict[str, Entity] = {}
        self._edges: list[Edge] = []
        self._adjacency: dict[str, set[str]] = {}
        self._edge_keys: set[tuple[str, str, str]] = set()
        self._lock = threading.Lock()

    @property
    def entity_count(self) -> int:
        return len(self._entities)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def has_entity(self, entity_id: str) -> bool:
        return entity_id in self._entities

    def entity(self, entity_id: str) -> Entity:
        try:
            return self._entities[entity_id]
        except KeyError:
            raise UnknownIdError(entity_id) from None

    def add_entity(self, entity: Entity) -> str:
        if not entity.name or not entity.name.strip():
            raise EmptyNameError(f"entity {entity.id!r} has an empty name")
        with self._lock:
            if entity.id in self._entities:
                raise DuplicateIdError(entity.id)
            self._entities[entity.id] = entity
            self._adjacency[entity.id] = set()
        return entity.id

    def add_edge(self, edge: Edge) -> None:
        with self._lock:
            if edge.src not in self._entities:
                raise MissingEndpointError(edge.src)
            if edge.dst not in self._entities:
                raise MissingEndpointError(edge.dst)
            if edge.src == edge.dst:
                raise SelfLoopError(edge.src)
            key = (edge.src, edge.dst, edge.relation)
            if key in self._edge_keys:
                raise DuplicateEdgeError(str(key))
            self._edge_keys.add(key)
            self._edges.append(edge)
            self._adjacency[edge.src].add(edge.dst)
            self._adjacency[edge.dst].add(edge.src)

    def neighbors(self, entity_id: str) -> list[str]:
        if entity_id not in self._adjacency:
            raise UnknownIdError(entity_id)
        return sorted(self._adjacency[entity_id])

    def snapshot(self) -> GraphSnapshot:
        with self._lock:
            return GraphSnapshot(
                entities=dict(self._entities),
                adjacency={k: tuple(sorted(v)) for k, v in self._adjacency.items()},
                edges=tuple(self._edges),
            )

    def ingest(self, path: str | Path) -> dict[str, int]:
        """Load a JSON-lines file; either every record commits or none does.

        Entity lines must precede the edges that reference them.
        """
        staged_entities: dict[str, Entity] = {}
        staged_edges: list[Edge] = []
        staged_keys: set[tuple[str, str, str]] = set()

        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(lineno, f"invalid JSON: {exc.msg}") from None
                if not isinstance(record, dict):
                    raise ParseError(lineno, "record is not an object")
                tag = record.get("t")
                if tag == "entity":
                    self._stage_entity(record, lineno, staged_entities)
                elif tag == "edge":
                    self._stage_edge(record, lineno, staged_entities, staged_keys, staged_edges)
                else:
                    raise ParseError(lineno, f"unknown record tag {tag!r}")

        with self._lock:
            for entity in staged_entities.values():
                self._entities[entity.id] = entity
                self._adjacency[entity.id] = set()
            for edge in staged_edges:
                self._edge_keys.add((edge.src, edge.dst, edge.relation))
                self._edges.append(edge)
                self._adjacency[edge.src].add(edge.dst)
                self._adjacency[edge.dst].add(edge.src)
        return {"entities": len(staged_entities), "edges": len(staged_edges)}

    def _stage_entity(self, record: dict, lineno: int, staged: dict[str, Entity]) -> None:
        entity_id = record.get("id")
        if not isinstance(entity_id, str) or not entity_id:
            raise ParseError(lineno, "entity id missing or empty")
        if entity_id in staged or entity_id in self._entities:
            raise ParseError(lineno, f"duplicate entity id {entity_id!r}")
        try:
            kind = EntityKind(record.get("kind"))
        except ValueError:
            raise ParseError(lineno, f"unknown kind {record.get('kind')!r}") from None
        name = record.get("name")
        if not isinstance(name, str) or not name.strip():
            raise ParseError(lineno, "entity name missing or empty")
        fields = record.get("fields", {})
        if not isinstance(fields, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in fields.items()
        ):
            raise ParseError(lineno, "fields must map string labels to string values")
        staged[entity_id] = Entity(
            id=entity_id,
            kind=kind,
            name=name,
            description=str(record.get("description", "") or ""),
            fields=fields,
            created_at=float(record.get("ts", 0) or 0),
        )

    def _stage_edge(
        self,
        record: dict,
        lineno: int,
        staged_entities: dict[str, Entity],
        staged_keys: set[tuple[str, str, str]],
        staged_edges: list[Edge],
    ) -> None:
        src, dst = record.get("src"), record.get("dst")
        relation = record.get("rel", "")
        for endpoint in (src, dst):
            if not isinstance(endpoint, str) or (
                endpoint not in staged_entities and endpoint not in self._entities
            ):
                raise ReferentialError(lineno, f"unknown endpoint {endpoint!r}")
        if src == dst:
            raise ReferentialError(lineno, f"self loop on {src!r}")
        key = (src, dst, str(relation))
        if key in staged_keys or key in self._edge_keys:
            raise ReferentialError(lineno, f"duplicate edge {key!r}")
        staged_keys.add(key)
        staged_edges.append(
            Edge(src=src, dst=dst, relation=str(relation), created_at=float(record.get("ts", 0) or 0))
        )


def write_ingest_file(path: str | Path, entities: list[Entity], edges: list[Edge]) -> None:
    """Serialize entities then edges in the line-oriented ingest format."""
    with open(path, "w", encoding="utf-8") as fh:
        for e in entities:
            fh.write(
                json.dumps(
                    {
                        "t": "entity",
                        "id": e.id,
                        "kind": e.kind.value,
                        "name": e.name,
                        "description": e.description,
                        "fields": e.fields,
                        "ts": e.created_at,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
        for edge in edges:
            fh.write(
                json.dumps(
                    {"t": "edge", "src": edge.src, "dst": edge.dst, "rel": edge.relation, "ts": edge.created_at},
                    ensure_ascii=False,
                )
                + "\n"
            )
