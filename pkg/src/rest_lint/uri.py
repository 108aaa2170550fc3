"""URI template tokenization and resource archetype classification.

A path template is split into segments, each segment into lowercase
word tokens, and every segment is assigned a resource archetype
(collection, document, controller, neutral, or unknown). The archetype
drives which naming rules apply to which segment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Mapping

from .lexicon import WordLexicon, crud_method_of, is_plural, is_verb

# Boundary kinds reported by split_words.
BOUNDARY_HYPHEN = "hyphen"
BOUNDARY_UNDERSCORE = "underscore"
BOUNDARY_CASE = "case"
BOUNDARY_DIGIT = "digit"

_SEPARATOR_KINDS = {"-": BOUNDARY_HYPHEN, "_": BOUNDARY_UNDERSCORE}


class SegmentKind(enum.Enum):
    LITERAL = "literal"
    PARAMETER = "parameter"


class Archetype(enum.Enum):
    COLLECTION = "collection"
    DOCUMENT = "document"
    CONTROLLER = "controller"
    NEUTRAL = "neutral"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Segment:
    """One path segment with its word tokens and archetype.

    ``raw`` keeps braces for parameters ("{userId}"); ``name`` is the
    text without braces. ``boundary_kinds`` records which word-boundary
    kinds split_words observed inside the segment.
    """

    kind: SegmentKind
    raw: str
    name: str
    words: tuple[str, ...]
    boundary_kinds: frozenset[str]
    archetype: Archetype


@dataclass(frozen=True)
class PathTemplate:
    raw: str
    segments: tuple[Segment, ...]
    has_leading_slash: bool
    has_trailing_slash: bool
    has_empty_segment: bool

    def reconstruct(self) -> str:
        """Rebuild the raw template from the segment texts."""
        body = "/".join(seg.raw for seg in self.segments)
        lead = "/" if self.has_leading_slash else ""
        trail = "/" if self.has_trailing_slash else ""
        return lead + body + trail


def split_words(text: str) -> tuple[tuple[str, ...], frozenset[str]]:
    """Split a segment into lowercase word tokens plus observed boundary kinds.

    Boundaries occur at hyphens, underscores, lowercase-to-uppercase
    transitions, and letter/digit transitions. Other non-alphanumeric
    characters also end a token but contribute no boundary kind. A
    separator only counts as a boundary when it sits between two tokens.
    """
    words: list[str] = []
    kinds: set[str] = set()
    pending: set[str] = set()
    had_separator = False
    current = ""

    for ch in text:
        if ch.isalnum():
            if current:
                boundary = _transition_kind(current[-1], ch)
                if boundary is not None:
                    words.append(current.lower())
                    kinds.add(boundary)
                    current = ch
                else:
                    current += ch
            else:
                if words and had_separator:
                    kinds.update(pending)
                pending.clear()
                had_separator = False
                current = ch
        else:
            if current:
                words.append(current.lower())
                current = ""
            had_separator = True
            if ch in _SEPARATOR_KINDS:
                pending.add(_SEPARATOR_KINDS[ch])
    if current:
        words.append(current.lower())
    return tuple(words), frozenset(kinds)


def _transition_kind(prev: str, cur: str) -> str | None:
    if prev.islower() and cur.isupper():
        return BOUNDARY_CASE
    if (prev.isalpha() and cur.isdigit()) or (prev.isdigit() and cur.isalpha()):
        return BOUNDARY_DIGIT
    return None


def tokenize_path(raw: str) -> PathTemplate:
    """Tokenize a raw URI template. Total: every input yields a template."""
    has_leading = raw.startswith("/")
    has_trailing = len(raw) > 1 and raw.endswith("/")
    body = raw[1:] if has_leading else raw
    if has_trailing:
        body = body[:-1]
    parts = body.split("/") if body else []

    segments = []
    for part in parts:
        if len(part) >= 2 and part.startswith("{") and part.endswith("}"):
            kind, name, archetype = SegmentKind.PARAMETER, part[1:-1], Archetype.DOCUMENT
        else:
            kind, name, archetype = SegmentKind.LITERAL, part, Archetype.UNKNOWN
        words, boundary_kinds = split_words(name)
        segments.append(Segment(kind, part, name, words, boundary_kinds, archetype))

    return PathTemplate(
        raw=raw,
        segments=tuple(segments),
        has_leading_slash=has_leading,
        has_trailing_slash=has_trailing,
        has_empty_segment="//" in raw,
    )


def classify_archetypes(
    path: PathTemplate,
    lexicon: WordLexicon,
    overrides: Mapping[int, Archetype] | None = None,
) -> PathTemplate:
    """Assign an archetype to every segment.

    Decision order per segment: explicit override; parameters are
    documents; a literal right before a parameter is the collection it
    selects from; a final literal that reads as a verb (or starts with a
    CRUD token) is a controller; remaining literals go by their head
    word: neutral names stay structural, plural heads mean collection,
    singular heads mean document. Segments with no usable head word stay
    unknown. Idempotent for fixed inputs.
    """
    segments = path.segments
    nonempty = [i for i, seg in enumerate(segments) if seg.raw]
    final_idx = nonempty[-1] if nonempty else None

    classified = []
    for i, seg in enumerate(segments):
        if overrides and i in overrides:
            archetype = overrides[i]
        elif seg.kind is SegmentKind.PARAMETER:
            archetype = Archetype.DOCUMENT
        elif not seg.raw:
            archetype = Archetype.UNKNOWN
        elif i + 1 < len(segments) and segments[i + 1].kind is SegmentKind.PARAMETER:
            archetype = Archetype.COLLECTION
        elif (
            i == final_idx
            and seg.words
            and (is_verb(seg.words[0], lexicon) or crud_method_of(seg.words[0], lexicon))
        ):
            archetype = Archetype.CONTROLLER
        elif lexicon.is_neutral_segment(seg.name.lower()):
            archetype = Archetype.NEUTRAL
        elif not seg.words or not seg.words[-1].isalpha():
            archetype = Archetype.UNKNOWN
        elif is_plural(seg.words[-1], lexicon):
            archetype = Archetype.COLLECTION
        else:
            archetype = Archetype.DOCUMENT
        classified.append(seg if seg.archetype is archetype else replace(seg, archetype=archetype))

    return replace(path, segments=tuple(classified))
