"""The 14 REST design rule checkers and their orchestration.

Every checker is a pure function of the immutable spec (plus the word
lexicon where naming is involved) and returns a list of violations.
run_rules concatenates the enabled checkers' output, coalesces exact
duplicates, and sorts deterministically.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .lexicon import WordLexicon, crud_method_of, is_plural, is_verb
from .model import ApiSpecification, OperationRecord, effective_security
from .uri import (
    BOUNDARY_CASE,
    BOUNDARY_UNDERSCORE,
    Archetype,
    PathTemplate,
    Segment,
    SegmentKind,
    classify_archetypes,
    split_words,
    tokenize_path,
)


class Category(enum.Enum):
    HTTP_STATUS_CODES = "HTTPStatusCodes"
    URI_DESIGN = "URIDesign"
    METADATA_DESIGN = "MetadataDesign"
    REQUEST_METHODS = "RequestMethods"


class RuleId(enum.Enum):
    RC401 = "RC401"
    PLURAL_NOUN = "PluralNoun"
    SINGULAR_NOUN = "SingularNoun"
    NO_TRAILING_SLASH = "NoTrailingSlash"
    VERB_CONTROLLER = "VerbController"
    NO_CRUD_NAMES = "NoCRUDNames"
    CONTENT_TYPE = "ContentType"
    DESCRIPTION_TYPE = "DescriptionType"
    FORWARD_SLASH = "ForwardSlash"
    NO_TUNNEL = "NoTunnel"
    GET_RETRIEVE = "GETRetrieve"
    HYPHENS = "Hyphens"
    LOWERCASE = "Lowercase"
    NO_UNDERSCORES = "NoUnderscores"

    @property
    def category(self) -> Category:
        return _CATEGORY[self]


_CATEGORY = {
    RuleId.RC401: Category.HTTP_STATUS_CODES,
    RuleId.PLURAL_NOUN: Category.URI_DESIGN,
    RuleId.SINGULAR_NOUN: Category.URI_DESIGN,
    RuleId.NO_TRAILING_SLASH: Category.URI_DESIGN,
    RuleId.VERB_CONTROLLER: Category.URI_DESIGN,
    RuleId.NO_CRUD_NAMES: Category.URI_DESIGN,
    RuleId.CONTENT_TYPE: Category.METADATA_DESIGN,
    RuleId.DESCRIPTION_TYPE: Category.METADATA_DESIGN,
    RuleId.FORWARD_SLASH: Category.URI_DESIGN,
    RuleId.NO_TUNNEL: Category.REQUEST_METHODS,
    RuleId.GET_RETRIEVE: Category.REQUEST_METHODS,
    RuleId.HYPHENS: Category.URI_DESIGN,
    RuleId.LOWERCASE: Category.URI_DESIGN,
    RuleId.NO_UNDERSCORES: Category.URI_DESIGN,
}

RULE_ORDER: tuple[RuleId, ...] = tuple(RuleId)
ALL_RULES: frozenset[RuleId] = frozenset(RuleId)

# Method flavor implied by a CRUD token; PUT and PATCH share one flavor.
_METHOD_CLASS = {"GET": "read", "POST": "create", "PUT": "update", "PATCH": "update",
                 "DELETE": "delete"}

_TUNNEL_QUERY_PARAMS = ("method", "_method", "action")
_HIERARCHY_SEPARATOR = re.compile(r"\w[.:;]\w")
_LEADING_WORD = re.compile(r"[A-Za-z]+")

# Response statuses that never carry a body.
_BODYLESS_STATUSES = {"204", "304"}


@dataclass(frozen=True)
class Violation:
    rule: RuleId
    spec_id: str
    path: str
    method: str | None
    status_key: str | None
    fragment: str
    message: str

    def identity(self) -> tuple:
        """Coalescing key: duplicates of this tuple collapse to one violation."""
        return (self.rule, self.spec_id, self.path, self.method, self.status_key,
                self.fragment)

    def sort_key(self) -> tuple:
        return (self.path, self.method or "", self.rule.value, self.fragment,
                self.status_key or "")


@dataclass(frozen=True)
class RuleConfig:
    """Which rules run and how URI segments may be reinterpreted.

    archetype_overrides pins a segment's archetype, keyed by
    (spec_id, raw path template) -> {segment index: archetype}.
    """

    enabled: frozenset[RuleId] = ALL_RULES
    archetype_overrides: Mapping[tuple[str, str], Mapping[int, Archetype]] = field(
        default_factory=dict
    )
    exempt_parameter_names: bool = True


def run_rules(
    spec: ApiSpecification, cfg: RuleConfig, lexicon: WordLexicon
) -> list[Violation]:
    """Run every enabled checker and return coalesced, sorted violations."""
    overrides = {
        path: mapping
        for (sid, path), mapping in cfg.archetype_overrides.items()
        if sid == spec.spec_id
    }
    templates = _classified_templates(spec, lexicon, overrides)

    collected: list[Violation] = []
    for rule in RULE_ORDER:
        if rule in cfg.enabled:
            collected.extend(_CHECKERS[rule](spec, cfg, lexicon, templates))

    unique: dict[tuple, Violation] = {}
    for violation in sorted(collected, key=Violation.sort_key):
        unique.setdefault(violation.identity(), violation)
    return list(unique.values())


def _classified_templates(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    overrides: Mapping[str, Mapping[int, Archetype]] | None = None,
) -> dict[str, PathTemplate]:
    overrides = overrides or {}
    return {
        raw: classify_archetypes(tokenize_path(raw), lexicon, overrides.get(raw))
        for raw in spec.paths
    }


def _operations(spec: ApiSpecification) -> Iterable[tuple[str, OperationRecord]]:
    for entry in spec.paths.values():
        for op in entry.operations.values():
            yield entry.template, op


def _path_tokens(template: PathTemplate) -> list[str]:
    tokens: list[str] = []
    for seg in template.segments:
        if seg.kind is SegmentKind.LITERAL:
            tokens.extend(seg.words)
    return tokens


# ---------------------------------------------------------------------------
# HTTP status code rules
# ---------------------------------------------------------------------------


def check_rc401(spec: ApiSpecification) -> list[Violation]:
    """Credentialed operations must declare a 401 (or 4XX range) response."""
    out = []
    for path, op in _operations(spec):
        if not effective_security(spec, op):
            continue
        if "401" in op.responses or "4XX" in op.responses:
            continue
        out.append(Violation(
            rule=RuleId.RC401, spec_id=spec.spec_id, path=path, method=op.method,
            status_key=None, fragment="401",
            message="operation requires credentials but declares no 401 response",
        ))
    return out


# ---------------------------------------------------------------------------
# URI design rules
# ---------------------------------------------------------------------------


def check_plural_noun(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """Collection segments must have a plural head word."""
    out = []
    for path, template in _resolved(spec, lexicon, templates):
        for seg in template.segments:
            if seg.archetype is Archetype.COLLECTION and seg.words:
                if not is_plural(seg.words[-1], lexicon):
                    out.append(_segment_violation(
                        RuleId.PLURAL_NOUN, spec, path, seg,
                        f"collection segment '{seg.raw}' should use a plural noun",
                    ))
    return out


def check_singular_noun(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """Literal document segments must have a singular head word.

    Parameter segments are exempt: their runtime values are opaque.
    """
    out = []
    for path, template in _resolved(spec, lexicon, templates):
        for seg in template.segments:
            if (
                seg.kind is SegmentKind.LITERAL
                and seg.archetype is Archetype.DOCUMENT
                and seg.words
                and is_plural(seg.words[-1], lexicon)
            ):
                out.append(_segment_violation(
                    RuleId.SINGULAR_NOUN, spec, path, seg,
                    f"document segment '{seg.raw}' should use a singular noun",
                ))
    return out


def check_no_trailing_slash(
    spec: ApiSpecification,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """Path templates must not end with a slash; the root path is exempt."""
    out = []
    for path, template in _resolved(spec, None, templates):
        if template.has_trailing_slash:
            out.append(Violation(
                rule=RuleId.NO_TRAILING_SLASH, spec_id=spec.spec_id, path=path,
                method=None, status_key=None, fragment="/",
                message="path has a trailing slash",
            ))
    return out


def check_verb_controller(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """Controller segments must start with a verb.

    The default classifier only labels verb-initial segments as
    controllers, so this fires through archetype overrides that pin a
    segment to the controller archetype.
    """
    out = []
    for path, template in _resolved(spec, lexicon, templates):
        for seg in template.segments:
            if seg.archetype is Archetype.CONTROLLER and seg.words:
                if not is_verb(seg.words[0], lexicon):
                    out.append(_segment_violation(
                        RuleId.VERB_CONTROLLER, spec, path, seg,
                        f"controller segment '{seg.raw}' should start with a verb",
                    ))
    return out


def check_no_crud_names(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """CRUD function names do not belong in URIs."""
    out = []
    for path, template in _resolved(spec, lexicon, templates):
        for seg in template.segments:
            if seg.kind is not SegmentKind.LITERAL:
                continue
            token = next(
                (w for w in seg.words if crud_method_of(w, lexicon) is not None), None
            )
            if token is not None:
                out.append(Violation(
                    rule=RuleId.NO_CRUD_NAMES, spec_id=spec.spec_id, path=path,
                    method=None, status_key=None, fragment=token,
                    message=f"CRUD name '{token}' in URI segment '{seg.raw}'",
                ))
    return out


def check_forward_slash(
    spec: ApiSpecification,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """Hierarchy must be expressed with '/': no empty segments, no '.'/':'/';'."""
    out = []
    for path, template in _resolved(spec, None, templates):
        if template.has_empty_segment:
            out.append(Violation(
                rule=RuleId.FORWARD_SLASH, spec_id=spec.spec_id, path=path,
                method=None, status_key=None, fragment="//",
                message="empty path segment (consecutive slashes)",
            ))
        for seg in template.segments:
            if seg.kind is SegmentKind.LITERAL and _HIERARCHY_SEPARATOR.search(seg.raw):
                out.append(_segment_violation(
                    RuleId.FORWARD_SLASH, spec, path, seg,
                    f"segment '{seg.raw}' uses a non-slash hierarchy separator",
                ))
    return out


def check_hyphens(
    spec: ApiSpecification,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """Multiword literal segments should be hyphen-separated.

    Fires on case or underscore boundaries; digit boundaries alone
    (version tokens like v2) are exempt.
    """
    out = []
    for path, template in _resolved(spec, None, templates):
        for seg in template.segments:
            if (
                seg.kind is SegmentKind.LITERAL
                and len(seg.words) >= 2
                and seg.boundary_kinds & {BOUNDARY_CASE, BOUNDARY_UNDERSCORE}
            ):
                out.append(_segment_violation(
                    RuleId.HYPHENS, spec, path, seg,
                    f"multiword segment '{seg.raw}' should use hyphens",
                ))
    return out


def check_lowercase(
    spec: ApiSpecification,
    templates: Mapping[str, PathTemplate] | None = None,
    exempt_parameter_names: bool = True,
) -> list[Violation]:
    """URI paths should be lowercase; parameter names are placeholders."""
    out = []
    for path, template in _resolved(spec, None, templates):
        for seg in template.segments:
            if seg.kind is SegmentKind.PARAMETER and exempt_parameter_names:
                continue
            if any(ch.isupper() for ch in seg.name):
                out.append(_segment_violation(
                    RuleId.LOWERCASE, spec, path, seg,
                    f"segment '{seg.raw}' contains uppercase characters",
                ))
    return out


def check_no_underscores(
    spec: ApiSpecification,
    templates: Mapping[str, PathTemplate] | None = None,
    exempt_parameter_names: bool = True,
) -> list[Violation]:
    """Underscores do not belong in URI paths; parameter names are placeholders."""
    out = []
    for path, template in _resolved(spec, None, templates):
        for seg in template.segments:
            if seg.kind is SegmentKind.PARAMETER and exempt_parameter_names:
                continue
            if "_" in seg.name:
                out.append(_segment_violation(
                    RuleId.NO_UNDERSCORES, spec, path, seg,
                    f"segment '{seg.raw}' contains underscores",
                ))
    return out


# ---------------------------------------------------------------------------
# Metadata design rules
# ---------------------------------------------------------------------------


def check_content_type(spec: ApiSpecification) -> list[Violation]:
    """Request bodies and body-bearing responses must declare media types."""
    out = []
    for path, op in _operations(spec):
        if op.has_request_body and not op.request_media_types:
            out.append(Violation(
                rule=RuleId.CONTENT_TYPE, spec_id=spec.spec_id, path=path,
                method=op.method, status_key=None, fragment="Content-Type",
                message="request body declares no media type",
            ))
        for status, resp in op.responses.items():
            if status in _BODYLESS_STATUSES or status.startswith("1"):
                continue
            if not resp.media_types:
                out.append(Violation(
                    rule=RuleId.CONTENT_TYPE, spec_id=spec.spec_id, path=path,
                    method=op.method, status_key=status, fragment="Content-Type",
                    message=f"response {status} declares no media type",
                ))
    return out


def check_description_type(
    spec: ApiSpecification, lexicon: WordLexicon
) -> list[Violation]:
    """The leading word of a description must not contradict the method.

    Only the first word is inspected; scanning whole descriptions is far
    too noisy. Operations without a usable leading word produce nothing.
    """
    out = []
    for path, op in _operations(spec):
        own_class = _METHOD_CLASS.get(op.method)
        if own_class is None:
            continue
        text = op.description or op.summary
        if not text:
            continue
        match = _LEADING_WORD.search(text)
        if match is None:
            continue
        word = match.group(0).lower()
        implied = crud_method_of(word, lexicon)
        if implied is not None and _METHOD_CLASS[implied] != own_class:
            out.append(Violation(
                rule=RuleId.DESCRIPTION_TYPE, spec_id=spec.spec_id, path=path,
                method=op.method, status_key=None, fragment=word,
                message=(
                    f"description starts with '{word}' ({implied}-style) "
                    f"but the method is {op.method}"
                ),
            ))
    return out


# ---------------------------------------------------------------------------
# Request method rules
# ---------------------------------------------------------------------------


def check_no_tunnel(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """GET and POST must not smuggle another method's semantics.

    Flags CRUD tokens (in the path or operationId) that imply a
    different method, and method-switching query parameters. POST
    carrying create-class tokens is the legitimate case.
    """
    resolved = dict(_resolved(spec, lexicon, templates))
    out = []
    for path, op in _operations(spec):
        if op.method not in ("GET", "POST"):
            continue
        tokens = _path_tokens(resolved[path])
        if op.operation_id:
            tokens.extend(split_words(op.operation_id)[0])
        seen: set[str] = set()
        for token in tokens:
            if token in seen:
                continue
            seen.add(token)
            implied = crud_method_of(token, lexicon)
            if implied is None or implied == op.method:
                continue
            out.append(Violation(
                rule=RuleId.NO_TUNNEL, spec_id=spec.spec_id, path=path,
                method=op.method, status_key=None, fragment=token,
                message=f"'{token}' tunnels {implied} semantics through {op.method}",
            ))
        for name in op.query_parameter_names:
            if name in _TUNNEL_QUERY_PARAMS:
                out.append(Violation(
                    rule=RuleId.NO_TUNNEL, spec_id=spec.spec_id, path=path,
                    method=op.method, status_key=None, fragment=name,
                    message=f"query parameter '{name}' switches the request method",
                ))
    return out


def check_get_retrieve(
    spec: ApiSpecification,
    lexicon: WordLexicon,
    templates: Mapping[str, PathTemplate] | None = None,
) -> list[Violation]:
    """GET must only retrieve: no request bodies, no non-read CRUD tokens."""
    resolved = dict(_resolved(spec, lexicon, templates))
    out = []
    for path, op in _operations(spec):
        if op.method != "GET":
            continue
        if op.has_request_body:
            out.append(Violation(
                rule=RuleId.GET_RETRIEVE, spec_id=spec.spec_id, path=path,
                method="GET", status_key=None, fragment="request-body",
                message="GET operation declares a request body",
            ))
        tokens = _path_tokens(resolved[path])
        if op.operation_id:
            tokens.extend(split_words(op.operation_id)[0])
        seen: set[str] = set()
        for token in tokens:
            if token in seen:
                continue
            seen.add(token)
            implied = crud_method_of(token, lexicon)
            if implied is not None and _METHOD_CLASS[implied] != "read":
                out.append(Violation(
                    rule=RuleId.GET_RETRIEVE, spec_id=spec.spec_id, path=path,
                    method="GET", status_key=None, fragment=token,
                    message=f"GET used for a {_METHOD_CLASS[implied]}-style action '{token}'",
                ))
    return out


# ---------------------------------------------------------------------------
# Wiring
# ---------------------------------------------------------------------------


def _segment_violation(
    rule: RuleId, spec: ApiSpecification, path: str, seg: Segment, message: str
) -> Violation:
    return Violation(
        rule=rule, spec_id=spec.spec_id, path=path, method=None, status_key=None,
        fragment=seg.raw, message=message,
    )


def _resolved(
    spec: ApiSpecification,
    lexicon: WordLexicon | None,
    templates: Mapping[str, PathTemplate] | None,
) -> Iterable[tuple[str, PathTemplate]]:
    if templates is None:
        templates = {
            raw: classify_archetypes(tokenize_path(raw), lexicon or _NOUN_FREE_LEXICON)
            for raw in spec.paths
        }
    return templates.items()


# Lexical checkers (trailing slash, separators, hyphens, case, underscores)
# need tokenization but no vocabulary; an empty lexicon keeps them standalone.
_NOUN_FREE_LEXICON = WordLexicon(
    irregular_plural_to_singular={},
    invariant_forms=frozenset(),
    verb_set=frozenset(),
    crud_token_to_method={},
    neutral_segments=frozenset(),
)

Checker = Callable[
    [ApiSpecification, RuleConfig, WordLexicon, Mapping[str, PathTemplate]],
    list[Violation],
]

_CHECKERS: dict[RuleId, Checker] = {
    RuleId.RC401: lambda spec, cfg, lex, tpl: check_rc401(spec),
    RuleId.PLURAL_NOUN: lambda spec, cfg, lex, tpl: check_plural_noun(spec, lex, tpl),
    RuleId.SINGULAR_NOUN: lambda spec, cfg, lex, tpl: check_singular_noun(spec, lex, tpl),
    RuleId.NO_TRAILING_SLASH: lambda spec, cfg, lex, tpl: check_no_trailing_slash(spec, tpl),
    RuleId.VERB_CONTROLLER: lambda spec, cfg, lex, tpl: check_verb_controller(spec, lex, tpl),
    RuleId.NO_CRUD_NAMES: lambda spec, cfg, lex, tpl: check_no_crud_names(spec, lex, tpl),
    RuleId.CONTENT_TYPE: lambda spec, cfg, lex, tpl: check_content_type(spec),
    RuleId.DESCRIPTION_TYPE: lambda spec, cfg, lex, tpl: check_description_type(spec, lex),
    RuleId.FORWARD_SLASH: lambda spec, cfg, lex, tpl: check_forward_slash(spec, tpl),
    RuleId.NO_TUNNEL: lambda spec, cfg, lex, tpl: check_no_tunnel(spec, lex, tpl),
    RuleId.GET_RETRIEVE: lambda spec, cfg, lex, tpl: check_get_retrieve(spec, lex, tpl),
    RuleId.HYPHENS: lambda spec, cfg, lex, tpl: check_hyphens(spec, tpl),
    RuleId.LOWERCASE: lambda spec, cfg, lex, tpl: check_lowercase(
        spec, tpl, cfg.exempt_parameter_names
    ),
    RuleId.NO_UNDERSCORES: lambda spec, cfg, lex, tpl: check_no_underscores(
        spec, tpl, cfg.exempt_parameter_names
    ),
}
