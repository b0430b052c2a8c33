"""Exception hierarchy shared by every subsystem.

Each error carries a stable machine ``code`` so transports (HTTP, CLI)
can map failures without matching on message text.
"""

from __future__ import annotations


class FacetForgeError(Exception):
    code = "internal_error"

    def __init__(self, message: str, *, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path


class ValidationError(FacetForgeError):
    """A value violates a structural precondition not covered by a
    more specific error below."""

    code = "invalid_value"


# --- registry ---------------------------------------------------------------

class UnknownClass(FacetForgeError):
    code = "unknown_class"


class DuplicateId(FacetForgeError):
    code = "duplicate_id"


class DuplicateLabel(FacetForgeError):
    code = "duplicate_label"


class MissingDefaultLanguage(FacetForgeError):
    code = "missing_default_language"


# --- pictures ---------------------------------------------------------------

class BadOrder(FacetForgeError):
    code = "bad_order"


class SelfReference(FacetForgeError):
    code = "self_reference"


class DuplicateMember(FacetForgeError):
    code = "duplicate_member"


# --- classification ---------------------------------------------------------

class UnknownDoc(FacetForgeError):
    code = "unknown_doc"


class DegreeOutOfRange(FacetForgeError):
    code = "degree_out_of_range"


# --- query engine -----------------------------------------------------------

class UnknownFacet(FacetForgeError):
    code = "unknown_facet"


class EmptyQuery(FacetForgeError):
    code = "empty_query"


class MalformedQuery(FacetForgeError):
    code = "malformed_query"


class NotMatched(FacetForgeError):
    code = "not_matched"


# --- federation -------------------------------------------------------------

class DuplicateMapping(FacetForgeError):
    code = "duplicate_mapping"


class UnknownScheme(FacetForgeError):
    code = "unknown_scheme"


# --- corpus / snapshots -----------------------------------------------------

class DuplicateDoc(FacetForgeError):
    code = "duplicate_doc"


class MalformedRecord(FacetForgeError):
    code = "malformed_record"


class UnsupportedVersion(FacetForgeError):
    code = "unsupported_version"


class CorruptSnapshot(FacetForgeError):
    code = "corrupt_snapshot"


# --- cli / workspace --------------------------------------------------------

class NonEmptyTarget(FacetForgeError):
    code = "non_empty_target"


class WorkspaceError(FacetForgeError):
    """Workspace missing, locked, or otherwise unusable (an I/O-level
    failure, not a data validation one)."""

    code = "workspace"
