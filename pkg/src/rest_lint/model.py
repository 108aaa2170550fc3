"""Normalized model of an OpenAPI/Swagger document.

Both Swagger 2.0 and OpenAPI 3.x inputs (JSON or YAML) are loaded into
one internal shape so rule checkers are written once. Loading degrades
gracefully: structural oddities (duplicate paths, missing responses,
unresolvable references) become diagnostics instead of hard failures.
The model is immutable after load and safe to share across checkers.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, BinaryIO, Mapping

import yaml

from .errors import NotAnApiSpec, ParseError

HTTP_METHODS = ("GET", "POST", "PUT", "DELETE", "PATCH", "HEAD", "OPTIONS")

_METHOD_KEYS = {m.lower(): m for m in HTTP_METHODS}
_STATUS_KEY = re.compile(r"^[0-9X]{3}$")
_TOKEN = r"[0-9A-Za-z!#$%&'*+.^_`|~-]+"
_MEDIA_TYPE = re.compile(rf"^{_TOKEN}/{_TOKEN}(\s*;.*)?$")
_MAX_REF_DEPTH = 32


class VersionKind(enum.Enum):
    SWAGGER2 = "swagger2"
    OPENAPI3 = "openapi3"


@dataclass(frozen=True)
class ResponseRecord:
    status_key: str
    description: str | None
    media_types: frozenset[str]


@dataclass(frozen=True)
class OperationRecord:
    method: str
    operation_id: str | None
    summary: str | None
    description: str | None
    has_request_body: bool
    request_media_types: frozenset[str]
    responses: dict[str, ResponseRecord]
    security: tuple[str, ...] | None  # None = inherit global; () = explicit opt-out
    query_parameter_names: tuple[str, ...]
    no_responses_declared: bool = False


@dataclass(frozen=True)
class PathEntry:
    template: str
    operations: dict[str, OperationRecord]
    path_level_parameters: tuple[str, ...]


@dataclass(frozen=True)
class ApiSpecification:
    spec_id: str
    title: str
    version_kind: VersionKind
    paths: dict[str, PathEntry]
    global_security: tuple[str, ...]
    security_schemes: frozenset[str]
    diagnostics: tuple[str, ...] = ()


def effective_security(spec: ApiSpecification, op: OperationRecord) -> bool:
    """Whether an operation requires credentials.

    Operation-level security overrides the global requirement when
    present, including the empty list meaning "no auth".
    """
    if op.security is not None:
        return len(op.security) > 0
    return len(spec.global_security) > 0


def load_spec(source: bytes | BinaryIO, spec_id: str) -> ApiSpecification:
    """Parse a JSON or YAML API description into the normalized model.

    Raises ParseError for undecodable/unparseable input and NotAnApiSpec
    for documents with neither a ``paths`` section nor a version marker.
    """
    data = source if isinstance(source, bytes) else source.read()
    doc = _parse_document(data)
    if not isinstance(doc, Mapping):
        raise NotAnApiSpec(f"{spec_id}: document is not a JSON/YAML object")
    return _build_spec(doc, spec_id)


def load_spec_file(path: str | Path, spec_id: str | None = None) -> ApiSpecification:
    """Load a spec from disk; spec_id defaults to the given path."""
    p = Path(path)
    return load_spec(p.read_bytes(), spec_id if spec_id is not None else str(path))


# ---------------------------------------------------------------------------
# Document parsing (JSON first, then YAML), keeping track of duplicate keys.
# ---------------------------------------------------------------------------


class _KeyedDict(dict):
    """Mapping that keeps the first value for a duplicated key and records it."""

    __slots__ = ("duplicate_keys",)

    def __init__(self) -> None:
        super().__init__()
        self.duplicate_keys: list[Any] = []


def _keyed_from_pairs(pairs: list[tuple[Any, Any]]) -> _KeyedDict:
    mapping = _KeyedDict()
    for key, value in pairs:
        if key in mapping:
            mapping.duplicate_keys.append(key)
        else:
            mapping[key] = value
    return mapping


class _DupSafeLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader: yaml.SafeLoader, node: yaml.Node) -> _KeyedDict:
    mapping = _KeyedDict()
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=True)
        try:
            hash(key)
        except TypeError:
            key = str(key)
        value = loader.construct_object(value_node, deep=True)
        if key in mapping:
            mapping.duplicate_keys.append(key)
        else:
            mapping[key] = value
    return mapping


_DupSafeLoader.add_constructor(
    yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping
)


def _parse_document(data: bytes) -> Any:
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8: {exc}") from exc

    try:
        return json.loads(text, object_pairs_hook=_keyed_from_pairs)
    except json.JSONDecodeError as json_exc:
        try:
            return yaml.load(text, Loader=_DupSafeLoader)
        except Exception as yaml_exc:  # parser layer: any failure is a parse error
            if text.lstrip()[:1] in ("{", "["):
                raise ParseError(
                    f"invalid JSON: {json_exc.msg}",
                    position=f"line {json_exc.lineno} column {json_exc.colno}",
                ) from json_exc
            mark = getattr(yaml_exc, "problem_mark", None)
            position = f"line {mark.line + 1} column {mark.column + 1}" if mark else None
            problem = getattr(yaml_exc, "problem", None) or str(yaml_exc) or "unreadable document"
            raise ParseError(f"invalid YAML: {problem}", position=position) from yaml_exc
    except RecursionError as exc:
        raise ParseError("document nesting too deep") from exc


# ---------------------------------------------------------------------------
# Model construction
# ---------------------------------------------------------------------------


@dataclass
class _Build:
    root: Mapping[str, Any]
    diagnostics: list[str] = field(default_factory=list)

    def diag(self, message: str) -> None:
        self.diagnostics.append(message)

    def deref(self, node: Any, context: str) -> Any:
        """Resolve chained local $ref pointers; remote refs yield {}."""
        depth = 0
        while isinstance(node, Mapping) and "$ref" in node:
            ref = node["$ref"]
            if depth >= _MAX_REF_DEPTH:
                self.diag(f"{context}: $ref chain too deep or cyclic, treated as empty")
                return {}
            if not isinstance(ref, str) or not ref.startswith("#/"):
                self.diag(f"{context}: non-local $ref {ref!r} not resolved, treated as empty")
                return {}
            target: Any = self.root
            for part in ref[2:].split("/"):
                part = part.replace("~1", "/").replace("~0", "~")
                if isinstance(target, Mapping) and part in target:
                    target = target[part]
                else:
                    self.diag(f"{context}: $ref {ref!r} does not resolve, treated as empty")
                    return {}
            node = target
            depth += 1
        return node


def _build_spec(doc: Mapping[str, Any], spec_id: str) -> ApiSpecification:
    build = _Build(root=doc)

    swagger = doc.get("swagger")
    if swagger is not None and str(swagger).startswith("2"):
        version_kind = VersionKind.SWAGGER2
    elif "openapi" in doc or "swagger" in doc:
        version_kind = VersionKind.OPENAPI3
        if "openapi" not in doc:
            build.diag(f"unrecognized swagger version {swagger!r}; treating as OpenAPI 3")
    elif "paths" in doc:
        version_kind = VersionKind.OPENAPI3
        build.diag("no 'swagger'/'openapi' version marker; assuming OpenAPI 3")
    else:
        raise NotAnApiSpec(
            f"{spec_id}: no 'paths' section and no 'swagger'/'openapi' version marker"
        )

    info = doc.get("info")
    title = info.get("title") if isinstance(info, Mapping) else None
    title = title if isinstance(title, str) else ""

    global_security = _requirement_names(doc.get("security"))
    security_schemes = _scheme_names(doc, version_kind, build)

    root_consumes = _media_list(doc.get("consumes"), "root consumes", build)
    root_produces = _media_list(doc.get("produces"), "root produces", build)

    paths: dict[str, PathEntry] = {}
    raw_paths = doc.get("paths")
    if raw_paths is None:
        raw_paths = {}
    if not isinstance(raw_paths, Mapping):
        build.diag("'paths' is not a mapping; treated as empty")
        raw_paths = {}
    for dup in getattr(raw_paths, "duplicate_keys", []):
        build.diag(f"duplicate path template {dup!r}; first occurrence kept")

    for raw_key, item in raw_paths.items():
        template = str(raw_key)
        if not template.startswith("/"):
            build.diag(f"path template {template!r} does not begin with '/'")
        if template in paths:
            build.diag(f"duplicate path template {template!r}; first occurrence kept")
            continue
        paths[template] = _build_path_entry(
            template, item, version_kind, root_consumes, root_produces, build
        )

    return ApiSpecification(
        spec_id=spec_id,
        title=title,
        version_kind=version_kind,
        paths=paths,
        global_security=global_security,
        security_schemes=security_schemes,
        diagnostics=tuple(build.diagnostics),
    )


def _build_path_entry(
    template: str,
    item: Any,
    version_kind: VersionKind,
    root_consumes: frozenset[str],
    root_produces: frozenset[str],
    build: _Build,
) -> PathEntry:
    item = build.deref(item, template)
    if not isinstance(item, Mapping):
        build.diag(f"{template}: path item is not a mapping; treated as empty")
        item = {}
    for dup in getattr(item, "duplicate_keys", []):
        if str(dup).lower() in _METHOD_KEYS:
            build.diag(f"{template}: duplicate method {dup!r}; first occurrence kept")

    shared_params = _parameter_objects(item.get("parameters"), template, build)
    path_level_names = tuple(
        str(p.get("name")) for p in shared_params if p.get("name") is not None
    )

    operations: dict[str, OperationRecord] = {}
    for key, value in item.items():
        method = _METHOD_KEYS.get(key) if isinstance(key, str) else None
        if method is None:
            continue
        op = build.deref(value, f"{template}.{key}")
        if not isinstance(op, Mapping):
            build.diag(f"{template}: operation {method} is not a mapping; skipped")
            continue
        operations[method] = _build_operation(
            template, method, op, shared_params, version_kind,
            root_consumes, root_produces, build,
        )

    return PathEntry(
        template=template,
        operations=operations,
        path_level_parameters=path_level_names,
    )


def _build_operation(
    template: str,
    method: str,
    op: Mapping[str, Any],
    shared_params: list[Mapping[str, Any]],
    version_kind: VersionKind,
    root_consumes: frozenset[str],
    root_produces: frozenset[str],
    build: _Build,
) -> OperationRecord:
    where = f"{template} {method}"
    params = shared_params + _parameter_objects(op.get("parameters"), where, build)

    query_names: list[str] = []
    for p in params:
        if p.get("in") == "query" and p.get("name") is not None:
            name = str(p.get("name"))
            if name not in query_names:
                query_names.append(name)

    produces: frozenset[str] = frozenset()
    if version_kind is VersionKind.SWAGGER2:
        # Operation-level consumes/produces override the root lists;
        # an explicit empty list clears the inherited one.
        has_body = any(p.get("in") in ("body", "formData") for p in params)
        if op.get("consumes") is None:
            consumes = root_consumes
        else:
            consumes = _media_list(op.get("consumes"), f"{where} consumes", build)
        if op.get("produces") is None:
            produces = root_produces
        else:
            produces = _media_list(op.get("produces"), f"{where} produces", build)
        request_media = consumes if has_body else frozenset()
    else:
        raw_body = op.get("requestBody")
        body = build.deref(raw_body, f"{where} requestBody")
        has_body = raw_body is not None
        request_media = _content_media(body, f"{where} requestBody", build)

    responses: dict[str, ResponseRecord] = {}
    raw_responses = op.get("responses")
    if isinstance(raw_responses, Mapping):
        for status, value in raw_responses.items():
            key = _normalize_status_key(status)
            if key is None:
                build.diag(f"{where}: invalid response status key {status!r}; dropped")
                continue
            if key in responses:
                build.diag(f"{where}: duplicate response status {key!r}; first kept")
                continue
            resp = build.deref(value, f"{where} {key}")
            if not isinstance(resp, Mapping):
                resp = {}
            description = resp.get("description")
            if version_kind is VersionKind.SWAGGER2:
                media = produces
            else:
                media = _content_media(resp, f"{where} {key}", build)
            responses[key] = ResponseRecord(
                status_key=key,
                description=description if isinstance(description, str) else None,
                media_types=media,
            )
    elif raw_responses is not None:
        build.diag(f"{where}: 'responses' is not a mapping; treated as empty")

    no_responses = not responses
    if no_responses:
        build.diag(f"{where}: no responses declared")

    summary = op.get("summary")
    description = op.get("description")
    operation_id = op.get("operationId")
    return OperationRecord(
        method=method,
        operation_id=operation_id if isinstance(operation_id, str) else None,
        summary=summary if isinstance(summary, str) else None,
        description=description if isinstance(description, str) else None,
        has_request_body=has_body,
        request_media_types=request_media,
        responses=responses,
        security=_requirement_names(op.get("security"), absent_is_none=True),
        query_parameter_names=tuple(query_names),
        no_responses_declared=no_responses,
    )


def _parameter_objects(value: Any, context: str, build: _Build) -> list[Mapping[str, Any]]:
    if not isinstance(value, list):
        return []
    out = []
    for entry in value:
        resolved = build.deref(entry, f"{context} parameter")
        if isinstance(resolved, Mapping):
            out.append(resolved)
    return out


def _requirement_names(value: Any, absent_is_none: bool = False) -> tuple[str, ...] | None:
    if value is None:
        return None if absent_is_none else ()
    names: list[str] = []
    if isinstance(value, list):
        for requirement in value:
            if isinstance(requirement, Mapping):
                names.extend(str(k) for k in requirement)
    return tuple(names)


def _scheme_names(doc: Mapping[str, Any], kind: VersionKind, build: _Build) -> frozenset[str]:
    if kind is VersionKind.SWAGGER2:
        schemes = doc.get("securityDefinitions")
    else:
        components = doc.get("components")
        schemes = components.get("securitySchemes") if isinstance(components, Mapping) else None
    if schemes is None:
        return frozenset()
    if not isinstance(schemes, Mapping):
        build.diag("security scheme declarations are not a mapping; ignored")
        return frozenset()
    return frozenset(str(k) for k in schemes)


def _media_list(value: Any, context: str, build: _Build) -> frozenset[str]:
    if value is None:
        return frozenset()
    if not isinstance(value, list):
        build.diag(f"{context}: expected a list of media types; ignored")
        return frozenset()
    return _valid_media(value, context, build)


def _content_media(node: Any, context: str, build: _Build) -> frozenset[str]:
    if not isinstance(node, Mapping):
        return frozenset()
    content = node.get("content")
    if not isinstance(content, Mapping):
        return frozenset()
    return _valid_media(list(content.keys()), context, build)


def _valid_media(values: list[Any], context: str, build: _Build) -> frozenset[str]:
    kept = set()
    for value in values:
        if isinstance(value, str) and _MEDIA_TYPE.match(value):
            kept.add(value)
        else:
            build.diag(f"{context}: invalid media type {value!r}; dropped")
    return frozenset(kept)


def _normalize_status_key(status: Any) -> str | None:
    key = str(status)
    if key == "default":
        return key
    upper = key.upper()
    return upper if _STATUS_KEY.match(upper) else None


# ---------------------------------------------------------------------------
# Diagnostic dump (debugging and round-trip tests only)
# ---------------------------------------------------------------------------


def spec_to_dict(spec: ApiSpecification) -> dict[str, Any]:
    """JSON-safe dump of the internal model."""
    return {
        "spec_id": spec.spec_id,
        "title": spec.title,
        "version_kind": spec.version_kind.value,
        "global_security": list(spec.global_security),
        "security_schemes": sorted(spec.security_schemes),
        "diagnostics": list(spec.diagnostics),
        "paths": [
            {
                "template": entry.template,
                "path_level_parameters": list(entry.path_level_parameters),
                "operations": [
                    {
                        "method": op.method,
                        "operation_id": op.operation_id,
                        "summary": op.summary,
                        "description": op.description,
                        "has_request_body": op.has_request_body,
                        "request_media_types": sorted(op.request_media_types),
                        "security": None if op.security is None else list(op.security),
                        "query_parameter_names": list(op.query_parameter_names),
                        "no_responses_declared": op.no_responses_declared,
                        "responses": [
                            {
                                "status_key": resp.status_key,
                                "description": resp.description,
                                "media_types": sorted(resp.media_types),
                            }
                            for resp in op.responses.values()
                        ],
                    }
                    for op in entry.operations.values()
                ],
            }
            for entry in spec.paths.values()
        ],
    }


def spec_from_dict(data: Mapping[str, Any]) -> ApiSpecification:
    """Rebuild a model from its diagnostic dump."""
    paths: dict[str, PathEntry] = {}
    for entry in data["paths"]:
        operations: dict[str, OperationRecord] = {}
        for op in entry["operations"]:
            responses = {
                resp["status_key"]: ResponseRecord(
                    status_key=resp["status_key"],
                    description=resp["description"],
                    media_types=frozenset(resp["media_types"]),
                )
                for resp in op["responses"]
            }
            security = op["security"]
            operations[op["method"]] = OperationRecord(
                method=op["method"],
                operation_id=op["operation_id"],
                summary=op["summary"],
                description=op["description"],
                has_request_body=op["has_request_body"],
                request_media_types=frozenset(op["request_media_types"]),
                responses=responses,
                security=None if security is None else tuple(security),
                query_parameter_names=tuple(op["query_parameter_names"]),
                no_responses_declared=op["no_responses_declared"],
            )
        paths[entry["template"]] = PathEntry(
            template=entry["template"],
            operations=operations,
            path_level_parameters=tuple(entry["path_level_parameters"]),
        )
    return ApiSpecification(
        spec_id=data["spec_id"],
        title=data["title"],
        version_kind=VersionKind(data["version_kind"]),
        paths=paths,
        global_security=tuple(data["global_security"]),
        security_schemes=frozenset(data["security_schemes"]),
        diagnostics=tuple(data["diagnostics"]),
    )
