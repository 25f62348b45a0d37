"""Exception hierarchy shared across the package.

Every error carries a stable ``code`` string so the CLI and the HTTP
service can emit machine-readable failures without string-matching
exception messages.
"""

from __future__ import annotations


class SocialSearchError(Exception):
    code = "error"


# graph store

class DuplicateIdError(SocialSearchError):
    code = "duplicate_id"


class EmptyNameError(SocialSearchError):
    code = "empty_name"


class MissingEndpointError(SocialSearchError):
    code = "missing_endpoint"


class SelfLoopError(SocialSearchError):
    code = "self_loop"


class DuplicateEdgeError(SocialSearchError):
    code = "duplicate_edge"


class UnknownIdError(SocialSearchError):
    code = "unknown_id"


class ParseError(SocialSearchError):
    """A line of an ingest file failed to parse or validate."""

    code = "parse_error"

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ReferentialError(SocialSearchError):
    """An edge line references a node that does not (yet) exist."""

    code = "referential_error"

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# indexes

class EmptyGraphError(SocialSearchError):
    code = "empty_graph"


class InvalidKError(SocialSearchError):
    code = "invalid_k"


# search engine

class UnknownUserError(SocialSearchError):
    code = "unknown_user"


class EmptyQueryError(SocialSearchError):
    code = "empty_query"


class OutOfRangeInputError(SocialSearchError):
    code = "out_of_range"


# leaderboard

class UnknownEntityError(SocialSearchError):
    code = "unknown_entity"


class UnknownActionError(SocialSearchError):
    code = "unknown_action"


class NotOwnerError(SocialSearchError):
    code = "not_owner"


class UnknownActivityError(SocialSearchError):
    code = "unknown_activity"


# service

class NoDataError(SocialSearchError):
    code = "no_data"


class BindError(SocialSearchError):
    code = "bind_error"


class DataLoadError(SocialSearchError):
    code = "data_load_error"


# bench

class InfeasibleCountsError(SocialSearchError):
    code = "infeasible_counts"


class ServiceUnreachableError(SocialSearchError):
    code = "service_unreachable"


class PartialFailureError(SocialSearchError):
    """Some bench requests failed; the partial report stays attached."""

    code = "partial_failure"

    def __init__(self, count: int, report=None):
        super().__init__(f"{count} requests failed")
        self.count = count
        self.report = report
