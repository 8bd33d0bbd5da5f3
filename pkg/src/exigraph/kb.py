"""The existence graph.

Entities, three-valued membership assertions, directed relation edges and
categorical propositions, all carrying a :class:`~exigraph.logic3.Value3`
plus provenance.  Existence of an element is its membership in a set;
absence of an assertion means UNKNOWN, never FALSE (open world).

Provenance kinds form a precedence order, ASSERTED > DEDUCED > ABDUCED.
A write of lower precedence over an existing higher-precedence item is
ignored, except that an ABDUCED write over an ASSERTED item raises
:class:`ConflictError` (conjecture may never even try to displace a fact).
Equal or higher precedence replaces.

The KB is single-writer / multi-reader: mutations are serialized behind a
lock and bump a revision counter; :meth:`KnowledgeBase.snapshot` hands out
an immutable deep copy for concurrent readers.
"""

from __future__ import annotations

import copy
import enum
import re
import threading
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .logic3 import FALSE, TRUE, UNKNOWN, Value3, and3, or3


class KbError(Exception):
    pass


class ConflictError(KbError):
    """An abduced write tried to displace an asserted item."""


class Kind(enum.Enum):
    """Provenance kind, in decreasing order of authority."""

    ASSERTED = "asserted"
    DEDUCED = "deduced"
    ABDUCED = "abduced"


_RANK = {Kind.ASSERTED: 2, Kind.DEDUCED: 1, Kind.ABDUCED: 0}


class RepresentationKind(enum.Enum):
    """What a stored item represents: a ground fact, a rule, a rule set."""

    DATUM = "datum"
    MEANING = "meaning"
    KNOWLEDGE = "knowledge"


@dataclass(frozen=True)
class Provenance:
    kind: Kind
    sources: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is Kind.ASSERTED and self.sources:
            raise KbError("asserted items carry no sources")
        if self.kind is not Kind.ASSERTED and not self.sources:
            raise KbError(f"{self.kind.value} items need at least one source")


ASSERTED = Provenance(Kind.ASSERTED)


@dataclass(frozen=True)
class Entity:
    id: int
    label: str


@dataclass
class Membership:
    id: str
    element: int
    set_: int
    value: Value3
    provenance: Provenance


@dataclass
class Edge:
    id: str
    name: str
    from_: int
    to: int
    value: Value3
    provenance: Provenance


@dataclass
class Proposition:
    """A stored categorical proposition; ``form`` is one of A/E/I/O."""

    id: str
    form: str
    subject: int
    predicate: int
    value: Value3
    provenance: Provenance


ROOT_LABEL = "universe"

_WS = re.compile(r"\s+")


def canonical_label(label: str) -> str:
    """Lowercase, trim, collapse internal whitespace."""
    return _WS.sub(" ", label.strip().lower())


@dataclass
class _Tables:
    entities: dict[int, Entity] = field(default_factory=dict)
    by_label: dict[str, int] = field(default_factory=dict)
    memberships: dict[tuple[int, int], Membership] = field(default_factory=dict)
    edges: dict[tuple[int, str, int], Edge] = field(default_factory=dict)
    propositions: dict[tuple[str, int, int], Proposition] = field(default_factory=dict)


class KnowledgeBase:
    """Entity graph with three-valued assertions and provenance."""

    def __init__(self):
        self._t = _Tables()
        self._lock = threading.RLock()
        self._revision = 0
        self._next_entity = 1
        self._next_item = 1
        self._frozen = False
        # the distinguished root; anchors existence_degree axiomatically
        self.root = self.upsert_entity(ROOT_LABEL)
        self._revision = 0  # root creation does not count as a user mutation

    @property
    def revision(self) -> int:
        return self._revision

    def snapshot(self) -> "KnowledgeBase":
        """Immutable deep copy at the current revision."""
        with self._lock:
            dup = KnowledgeBase.__new__(KnowledgeBase)
            dup._t = copy.deepcopy(self._t)
            dup._lock = threading.RLock()
            dup._revision = self._revision
            dup._next_entity = self._next_entity
            dup._next_item = self._next_item
            dup._frozen = True
            dup.root = dup._t.entities[self.root.id]
        return dup

    def _bump(self):
        if self._frozen:
            raise KbError("snapshot is immutable")
        self._revision += 1

    def _new_id(self) -> str:
        item_id = f"#{self._next_item}"
        self._next_item += 1
        return item_id

    # -- entities ---------------------------------------------------------

    def upsert_entity(self, label: str) -> Entity:
        canon = canonical_label(label)
        if not canon:
            raise KbError("entity label is empty after canonicalization")
        with self._lock:
            if canon in self._t.by_label:
                return self._t.entities[self._t.by_label[canon]]
            if self._frozen:
                raise KbError("snapshot is immutable")
            ent = Entity(self._next_entity, canon)
            self._next_entity += 1
            self._t.entities[ent.id] = ent
            self._t.by_label[canon] = ent.id
            return ent

    def entity(self, label: str) -> Optional[Entity]:
        return self._t.entities.get(self._t.by_label.get(canonical_label(label), -1))

    def entities(self) -> list[Entity]:
        return sorted(self._t.entities.values(), key=lambda e: e.label)

    # -- writes -----------------------------------------------------------

    def _admit(self, old: Optional[Provenance], new: Provenance) -> bool:
        """Apply the override table; True means the write goes through."""
        if old is None or _RANK[new.kind] >= _RANK[old.kind]:
            return True
        if new.kind is Kind.ABDUCED and old.kind is Kind.ASSERTED:
            raise ConflictError("abduced write over an asserted item")
        return False

    def assert_membership(self, element: Entity, set_: Entity,
                          value: Value3, provenance: Provenance = ASSERTED) -> Optional[str]:
        """Record element-in-set; returns the item id, or None if overridden."""
        with self._lock:
            key = (element.id, set_.id)
            old = self._t.memberships.get(key)
            if not self._admit(old.provenance if old else None, provenance):
                return None
            self._bump()
            item = Membership(self._new_id(), element.id, set_.id, value, provenance)
            self._t.memberships[key] = item
            return item.id

    def assert_edge(self, name: str, from_: Entity, to: Entity,
                    value: Value3, provenance: Provenance = ASSERTED) -> Optional[str]:
        name = canonical_label(name)
        if not name:
            raise KbError("relation name is empty")
        with self._lock:
            key = (from_.id, name, to.id)
            old = self._t.edges.get(key)
            if not self._admit(old.provenance if old else None, provenance):
                return None
            self._bump()
            item = Edge(self._new_id(), name, from_.id, to.id, value, provenance)
            self._t.edges[key] = item
            return item.id

    def assert_proposition(self, form: str, subject: Entity, predicate: Entity,
                           value: Value3, provenance: Provenance = ASSERTED) -> Optional[str]:
        if form not in ("A", "E", "I", "O"):
            raise KbError(f"unknown proposition form {form!r}")
        if subject.id == predicate.id:
            raise KbError("trivial self-proposition rejected")
        with self._lock:
            key = (form, subject.id, predicate.id)
            old = self._t.propositions.get(key)
            if not self._admit(old.provenance if old else None, provenance):
                return None
            self._bump()
            item = Proposition(self._new_id(), form, subject.id, predicate.id,
                               value, provenance)
            self._t.propositions[key] = item
            return item.id

    def retract(self, item_id: str) -> bool:
        """Remove a membership/edge/proposition by id."""
        with self._lock:
            for table in (self._t.memberships, self._t.edges, self._t.propositions):
                for key, item in list(table.items()):
                    if item.id == item_id:
                        self._bump()
                        del table[key]
                        return True
        return False

    def prune_unsupported(self) -> int:
        """Drop deduced/abduced items whose sources no longer resolve.

        Source ids starting with ``#`` refer to KB items; anything else
        (rule names, statement text) is treated as an external reference
        that always resolves.  Runs to a fixpoint; returns items removed.
        """
        removed = 0
        with self._lock:
            while True:
                ids = {item.id for item in self.items()}
                doomed = [item.id for item in self.items()
                          if item.provenance.kind is not Kind.ASSERTED
                          and any(s.startswith("#") and s not in ids
                                  for s in item.provenance.sources)]
                if not doomed:
                    return removed
                for item_id in doomed:
                    self.retract(item_id)
                    removed += 1

    # -- reads ------------------------------------------------------------

    def items(self) -> Iterator[Membership | Edge | Proposition]:
        yield from self._t.memberships.values()
        yield from self._t.edges.values()
        yield from self._t.propositions.values()

    def membership(self, element: Entity, set_: Entity) -> Optional[Membership]:
        return self._t.memberships.get((element.id, set_.id))

    def memberships(self) -> list[Membership]:
        return sorted(self._t.memberships.values(),
                      key=lambda m: (self.label(m.element), self.label(m.set_)))

    def edges(self) -> list[Edge]:
        return sorted(self._t.edges.values(),
                      key=lambda e: (self.label(e.from_), e.name, self.label(e.to)))

    def edge(self, name: str, from_: Entity, to: Entity) -> Optional[Edge]:
        return self._t.edges.get((from_.id, canonical_label(name), to.id))

    def propositions(self) -> list[Proposition]:
        return sorted(self._t.propositions.values(),
                      key=lambda p: (p.form, self.label(p.subject), self.label(p.predicate)))

    def proposition(self, form: str, subject: Entity, predicate: Entity) -> Optional[Proposition]:
        return self._t.propositions.get((form, subject.id, predicate.id))

    def label(self, entity_id: int) -> str:
        return self._t.entities[entity_id].label

    def by_id(self, entity_id: int) -> Entity:
        return self._t.entities[entity_id]

    def exists(self, element: Entity, context_set: Entity) -> Value3:
        """Membership value of element in context_set; UNKNOWN if unasserted."""
        item = self._t.memberships.get((element.id, context_set.id))
        return item.value if item else UNKNOWN

    def members_true(self, set_: Entity) -> list[Entity]:
        """Known-TRUE members of a set, in label order."""
        out = [self._t.entities[m.element]
               for m in self._t.memberships.values()
               if m.set_ == set_.id and m.value is TRUE]
        return sorted(out, key=lambda e: e.label)

    def existence_degree(self, element: Entity, root: Optional[Entity] = None) -> Value3:
        """Existence of ``element`` relative to an axiomatically existing root.

        Disjunction (or3) over all membership chains element -> ... -> root
        of the conjunction (and3) of assertion values along each chain.
        A chain that revisits an entity ends in an UNKNOWN tail (paradox
        tolerance); a chain that dead-ends contributes nothing.
        """
        root = root or self.root
        outgoing: dict[int, list[Membership]] = {}
        for m in self._t.memberships.values():
            outgoing.setdefault(m.element, []).append(m)
        for lst in outgoing.values():
            lst.sort(key=lambda m: m.set_)

        def walk(node: int, visited: frozenset[int]) -> Optional[Value3]:
            if node == root.id:
                return TRUE
            vis = visited | {node}
            contribs: list[Value3] = []
            for m in outgoing.get(node, ()):
                if m.set_ in vis:
                    contribs.append(and3(m.value, UNKNOWN))
                else:
                    tail = walk(m.set_, vis)
                    if tail is not None:
                        contribs.append(and3(m.value, tail))
            if not contribs:
                return None
            out = contribs[0]
            for v in contribs[1:]:
                out = or3(out, v)
            return out

        result = walk(element.id, frozenset())
        return UNKNOWN if result is None else result

    def perceives(self, observer: Entity, obj: Entity) -> Value3:
        """Disjunction over all relation edges observer -> obj; UNKNOWN if none."""
        values = [e.value for e in self._t.edges.values()
                  if e.from_ == observer.id and e.to == obj.id]
        if not values:
            return UNKNOWN
        out = values[0]
        for v in values[1:]:
            out = or3(out, v)
        return out

    def meta_sets(self) -> list[Entity]:
        """Sets of sets: entities with a non-FALSE member that itself has members."""
        out = []
        for ent in self.entities():
            for m in self._t.memberships.values():
                if m.set_ != ent.id or m.value is FALSE:
                    continue
                if any(inner.set_ == m.element and inner.value is not FALSE
                       for inner in self._t.memberships.values()):
                    out.append(ent)
                    break
        return out

    def representation_kind(self, item_id: str) -> RepresentationKind:
        """Ground assertions and edges are datums; everything derived flows
        from rules (meanings) and rule collections (knowledge)."""
        for item in self.items():
            if item.id == item_id:
                if item.provenance.kind is Kind.ASSERTED:
                    return RepresentationKind.DATUM
                return RepresentationKind.MEANING
        raise KbError(f"no item {item_id}")
