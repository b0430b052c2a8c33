"""Central controlled vocabulary.

Every class referenced anywhere in the engine (pictures, classifications,
queries, federation mappings) must exist here first. A class has one
controlled meaning: a unique slug id, localized labels and definitions,
and an active/deprecated status. Entries are deprecated rather than
deleted so stored references never dangle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DuplicateId,
    DuplicateLabel,
    MalformedRecord,
    MissingDefaultLanguage,
    UnknownClass,
    UnsupportedVersion,
    ValidationError,
)

DEFAULT_LANG = "en"
STATUS_ACTIVE = "active"
STATUS_DEPRECATED = "deprecated"
STATUSES = (STATUS_ACTIVE, STATUS_DEPRECATED)

REGISTRY_FORMAT = "facetforge-registry/1"

_SLUG_RE = re.compile(r"^[a-z0-9-]{1,64}$")


def valid_class_id(value: str) -> bool:
    return isinstance(value, str) and bool(_SLUG_RE.match(value))


def normalize_label(label: str) -> str:
    """Case-fold and collapse whitespace so near-duplicate labels collide."""
    return " ".join(label.split()).casefold()


@dataclass
class ClassEntry:
    id: str
    labels: dict[str, str]
    definitions: dict[str, str]
    created_by: str = ""
    status: str = STATUS_ACTIVE


@dataclass(frozen=True)
class LocalizedClass:
    """A class entry resolved to one language.

    ``fallback`` is true when the requested language was missing for the
    label or the definition and the default language was used instead.
    """

    id: str
    label: str
    definition: str
    status: str
    fallback: bool


def _validate_text_map(name: str, strings: dict) -> None:
    if not isinstance(strings, dict) or DEFAULT_LANG not in strings:
        raise MissingDefaultLanguage(f"{name} must include the {DEFAULT_LANG!r} language")
    for lang, text in strings.items():
        if not isinstance(lang, str) or not lang:
            raise ValidationError(f"{name}: language tag must be a non-empty string")
        if not isinstance(text, str) or not text.strip():
            raise ValidationError(f"{name}[{lang}]: text must be non-empty")


def validate_entry(entry: ClassEntry) -> None:
    if not valid_class_id(entry.id):
        raise ValidationError(
            f"class id {entry.id!r} must be 1-64 lowercase letters, digits or hyphens"
        )
    _validate_text_map("labels", entry.labels)
    _validate_text_map("definitions", entry.definitions)
    if entry.status not in STATUSES:
        raise ValidationError(f"status must be one of {STATUSES}, got {entry.status!r}")


def entry_to_json(entry: ClassEntry) -> dict:
    return {
        "id": entry.id,
        "labels": dict(sorted(entry.labels.items())),
        "definitions": dict(sorted(entry.definitions.items())),
        "created_by": entry.created_by,
        "status": entry.status,
    }


def entry_from_json(obj: object) -> ClassEntry:
    if not isinstance(obj, dict):
        raise MalformedRecord("class entry must be an object")
    try:
        return ClassEntry(
            id=obj["id"],
            labels=dict(obj["labels"]),
            definitions=dict(obj["definitions"]),
            created_by=obj.get("created_by", ""),
            status=obj.get("status", STATUS_ACTIVE),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecord(f"bad class entry: {exc}") from None


class Registry:
    """In-memory vocabulary with uniqueness enforcement.

    Mutations are expected to be serialized by the caller (single-writer
    contract); reads never see a partially applied change because entries
    are stored whole.
    """

    def __init__(self) -> None:
        self._entries: dict[str, ClassEntry] = {}
        # normalized default-language label -> class id, active entries only
        self._active_labels: dict[str, str] = {}
        self.generation = 0

    def __contains__(self, class_id: str) -> bool:
        return class_id in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def ids(self) -> list[str]:
        return sorted(self._entries)

    def entry(self, class_id: str) -> ClassEntry:
        try:
            return self._entries[class_id]
        except KeyError:
            raise UnknownClass(f"unknown class {class_id!r}") from None

    def require(self, class_id: str) -> None:
        if class_id not in self._entries:
            raise UnknownClass(f"unknown class {class_id!r}")

    def add_class(self, entry: ClassEntry) -> str:
        validate_entry(entry)
        if entry.id in self._entries:
            raise DuplicateId(f"class id {entry.id!r} already exists")
        label_key = normalize_label(entry.labels[DEFAULT_LANG])
        if entry.status == STATUS_ACTIVE:
            holder = self._active_labels.get(label_key)
            if holder is not None:
                raise DuplicateLabel(
                    f"label {entry.labels[DEFAULT_LANG]!r} collides with active class {holder!r}"
                )
        stored = ClassEntry(
            id=entry.id,
            labels=dict(entry.labels),
            definitions=dict(entry.definitions),
            created_by=entry.created_by,
            status=entry.status,
        )
        self._entries[entry.id] = stored
        if stored.status == STATUS_ACTIVE:
            self._active_labels[label_key] = stored.id
        self.generation += 1
        return stored.id

    def deprecate(self, class_id: str) -> None:
        entry = self.entry(class_id)
        if entry.status == STATUS_DEPRECATED:
            return
        entry.status = STATUS_DEPRECATED
        label_key = normalize_label(entry.labels[DEFAULT_LANG])
        if self._active_labels.get(label_key) == class_id:
            del self._active_labels[label_key]
        self.generation += 1

    def get_class(self, class_id: str, lang: str = DEFAULT_LANG) -> LocalizedClass:
        entry = self.entry(class_id)
        fallback = False
        label = entry.labels.get(lang)
        if label is None:
            label = entry.labels[DEFAULT_LANG]
            fallback = True
        definition = entry.definitions.get(lang)
        if definition is None:
            definition = entry.definitions[DEFAULT_LANG]
            fallback = True
        return LocalizedClass(
            id=entry.id,
            label=label,
            definition=definition,
            status=entry.status,
            fallback=fallback,
        )

    def list_classes(
        self, prefix: str | None = None, lang: str = DEFAULT_LANG
    ) -> list[LocalizedClass]:
        ids = self.ids()
        if prefix is not None:
            ids = [i for i in ids if i.startswith(prefix)]
        return [self.get_class(i, lang) for i in ids]

    # --- file format ---------------------------------------------------

    def to_payload(self) -> dict:
        return {
            "format": REGISTRY_FORMAT,
            "classes": [entry_to_json(self._entries[i]) for i in self.ids()],
        }

    def load_payload(self, payload: object) -> int:
        """Import a registry document; returns the number of classes added."""
        if not isinstance(payload, dict):
            raise MalformedRecord("registry document must be an object")
        if payload.get("format") != REGISTRY_FORMAT:
            raise UnsupportedVersion(
                f"expected format {REGISTRY_FORMAT!r}, got {payload.get('format')!r}"
            )
        classes = payload.get("classes")
        if not isinstance(classes, list):
            raise MalformedRecord("registry document needs a 'classes' list")
        count = 0
        for obj in classes:
            self.add_class(entry_from_json(obj))
            count += 1
        return count
