"""Scenario configuration: parsing, validation, serialization, and sizing.

A scenario is a YAML document describing observable contexts (each with
discrete instantiations and a prior over them), binary intentions (each with
a 0..5 influence value per context instantiation), optional combined
influence entries that override groups of context instantiations, and a
decision threshold:

    contexts:
      weather:
        sunny: 0.5
        rainy: 0.5
    intentions:
      turn on sprinkler:
        weather:
          sunny: 4
          rainy: 0
    combined_influences:        # optional
      - intention: turn on sprinkler
        conditions: {weather: sunny, time_of_day: day}
        value: 5
    decision_threshold: 0.6

Parsing is strict in three stages: YAML syntax (with line/column on
failure), document schema (shape and types, reported with a config path),
and semantic validation (returned as machine-readable violations).
Declaration order of contexts, instantiations, and intentions is preserved;
it is semantic because it breaks decision ties downstream.
"""

import math
from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import yaml

PRIOR_TOLERANCE = 1e-6
LIKERT_MIN = 0
LIKERT_MAX = 5

COMBINED_KEY = "combined_influences"
TOP_LEVEL_KEYS = ("contexts", "intentions", COMBINED_KEY, "decision_threshold")


class ConfigError(Exception):
    """Base class for all scenario configuration failures."""


class ConfigSyntaxError(ConfigError):
    """The document is not well-formed YAML."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ConfigSchemaError(ConfigError):
    """The document parses but does not match the scenario schema."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class Violation:
    """One semantic problem, addressable by code and config path."""

    code: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} {self.path} {self.message}"

    def to_json(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


class ConfigValidationError(ConfigError):
    """The document is well-formed but semantically invalid."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class ContextDef:
    """An observable phenomenon with discrete instantiations and their priors."""

    name: str
    instantiations: tuple[str, ...]
    priors: dict[str, float]


@dataclass(frozen=True)
class IntentionDef:
    """A binary intention with one influence value per context instantiation.

    ``influences`` maps context name -> instantiation -> integer 0..5.
    Only the intention-is-present state is described; the absent state is
    its complement.
    """

    name: str
    influences: dict[str, dict[str, int]]


@dataclass(frozen=True)
class CombinedInfluence:
    """An influence value attached to a conjunction of context instantiations."""

    intention: str
    conditions: dict[str, str]
    value: int


@dataclass(frozen=True)
class ScenarioConfig:
    """The full declarative description of a recognition scenario."""

    contexts: tuple[ContextDef, ...]
    intentions: tuple[IntentionDef, ...]
    combined: tuple[CombinedInfluence, ...]
    decision_threshold: float

    def context_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.contexts)

    def intention_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.intentions)


# --- YAML loading -----------------------------------------------------------


class _StrictLoader(yaml.SafeLoader):
    """SafeLoader that rejects duplicate mapping keys instead of silently
    keeping the last one (duplicates would corrupt declaration order)."""


def _construct_mapping(loader: _StrictLoader, node: yaml.MappingNode, deep: bool = False) -> dict:
    mapping: dict = {}
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=deep)
        if not isinstance(key, Hashable):
            mark = key_node.start_mark
            raise ConfigSyntaxError("unhashable mapping key", mark.line + 1, mark.column + 1)
        if key in mapping:
            mark = key_node.start_mark
            raise ConfigSyntaxError(f"duplicate key {key!r}", mark.line + 1, mark.column + 1)
        mapping[key] = loader.construct_object(value_node, deep=deep)
    return mapping


_StrictLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def _load_yaml(text: str):
    try:
        return yaml.load(text, Loader=_StrictLoader)
    except ConfigSyntaxError:
        raise
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        detail = exc.problem or str(exc)
        if mark is not None:
            raise ConfigSyntaxError(detail, mark.line + 1, mark.column + 1) from exc
        raise ConfigSyntaxError(detail) from exc
    except yaml.YAMLError as exc:
        raise ConfigSyntaxError(str(exc)) from exc


# --- schema checks ----------------------------------------------------------


def _as_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigSchemaError(f"expected a mapping, got {type(value).__name__}", path)
    return value


def _as_name(key, path: str) -> str:
    if not isinstance(key, str) or not key:
        raise ConfigSchemaError(f"expected a non-empty string key, got {key!r}", path)
    return key


def _as_probability(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigSchemaError(f"expected a number, got {type(value).__name__}", path)
    number = float(value)
    if not math.isfinite(number):
        raise ConfigSchemaError(f"expected a finite number, got {value!r}", path)
    return number


def _as_influence(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigSchemaError(f"influence value must be an integer, got {type(value).__name__}", path)
    if not LIKERT_MIN <= value <= LIKERT_MAX:
        raise ConfigSchemaError(
            f"influence value must be one of {LIKERT_MIN}..{LIKERT_MAX}, got {value}", path
        )
    return value


def _build_contexts(raw) -> tuple[ContextDef, ...]:
    contexts = []
    for name, body in _as_mapping(raw, "contexts").items():
        name = _as_name(name, "contexts")
        path = f"contexts.{name}"
        priors: dict[str, float] = {}
        order: list[str] = []
        for inst, prior in _as_mapping(body, path).items():
            inst = _as_name(inst, path)
            order.append(inst)
            priors[inst] = _as_probability(prior, f"{path}.{inst}")
        contexts.append(ContextDef(name=name, instantiations=tuple(order), priors=priors))
    return tuple(contexts)


def _build_intentions(raw) -> tuple[IntentionDef, ...]:
    intentions = []
    for name, body in _as_mapping(raw, "intentions").items():
        name = _as_name(name, "intentions")
        path = f"intentions.{name}"
        influences: dict[str, dict[str, int]] = {}
        for context, values in _as_mapping(body, path).items():
            context = _as_name(context, path)
            per_inst: dict[str, int] = {}
            for inst, value in _as_mapping(values, f"{path}.{context}").items():
                inst = _as_name(inst, f"{path}.{context}")
                per_inst[inst] = _as_influence(value, f"{path}.{context}.{inst}")
            influences[context] = per_inst
        intentions.append(IntentionDef(name=name, influences=influences))
    return tuple(intentions)


def _build_combined(raw) -> tuple[CombinedInfluence, ...]:
    if not isinstance(raw, list):
        raise ConfigSchemaError(f"expected a list, got {type(raw).__name__}", COMBINED_KEY)
    entries = []
    for index, item in enumerate(raw):
        path = f"{COMBINED_KEY}[{index}]"
        item = _as_mapping(item, path)
        unknown = set(item) - {"intention", "conditions", "value"}
        if unknown:
            raise ConfigSchemaError(f"unknown field {sorted(unknown)[0]!r}", path)
        for field_name in ("intention", "conditions", "value"):
            if field_name not in item:
                raise ConfigSchemaError(f"missing field {field_name}", path)
        intention = _as_name(item["intention"], f"{path}.intention")
        conditions = {
            _as_name(ctx, f"{path}.conditions"): _as_name(inst, f"{path}.conditions.{ctx}")
            for ctx, inst in _as_mapping(item["conditions"], f"{path}.conditions").items()
        }
        value = _as_influence(item["value"], f"{path}.value")
        entries.append(CombinedInfluence(intention=intention, conditions=conditions, value=value))
    return tuple(entries)


def _build_config(raw) -> ScenarioConfig:
    if raw is None:
        raw = {}
    raw = _as_mapping(raw, "")
    for key in raw:
        if key not in TOP_LEVEL_KEYS:
            raise ConfigSchemaError(f"unknown field {key!r}", str(key))
    for key in ("contexts", "intentions", "decision_threshold"):
        if key not in raw:
            raise ConfigSchemaError(f"missing field {key}")
    return ScenarioConfig(
        contexts=_build_contexts(raw["contexts"]),
        intentions=_build_intentions(raw["intentions"]),
        combined=_build_combined(raw.get(COMBINED_KEY, [])),
        decision_threshold=_as_probability(raw["decision_threshold"], "decision_threshold"),
    )


# --- public operations ------------------------------------------------------


def parse_config(text: str) -> ScenarioConfig:
    """Parse a scenario document into a validated :class:`ScenarioConfig`.

    Raises :class:`ConfigSyntaxError` for malformed YAML (with line/column),
    :class:`ConfigSchemaError` for shape or type problems (with the config
    path), and :class:`ConfigValidationError` carrying the full violation
    list for semantic problems.
    """
    config = _build_config(_load_yaml(text))
    violations = validate_config(config)
    if violations:
        raise ConfigValidationError(violations)
    return config


def validate_config(config: ScenarioConfig) -> list[Violation]:
    """Check every semantic invariant; returns an empty list iff the config is valid.

    Violations are collected, not raised, so callers can report all problems
    at once. Each invariant has exactly one stable code.
    """
    violations: list[Violation] = []
    add = violations.append

    if not config.contexts:
        add(Violation("EMPTY_SCENARIO", "contexts", "at least one context is required"))
    if not config.intentions:
        add(Violation("EMPTY_SCENARIO", "intentions", "at least one intention is required"))

    seen: set[str] = set()
    for context in config.contexts:
        if context.name in seen:
            add(Violation("DUPLICATE_CONTEXT", f"contexts.{context.name}",
                          f"context {context.name!r} is declared more than once"))
        seen.add(context.name)
    context_names = seen

    seen = set()
    for intention in config.intentions:
        if intention.name in seen:
            add(Violation("DUPLICATE_INTENTION", f"intentions.{intention.name}",
                          f"intention {intention.name!r} is declared more than once"))
        seen.add(intention.name)
        if intention.name in context_names:
            add(Violation("NAME_COLLISION", f"intentions.{intention.name}",
                          f"{intention.name!r} names both a context and an intention"))

    contexts_by_name = {c.name: c for c in config.contexts}
    for context in config.contexts:
        violations.extend(_check_context(context))
    for intention in config.intentions:
        violations.extend(_check_intention(intention, config.contexts))
    violations.extend(_check_combined(config, contexts_by_name))

    if not 0.0 <= config.decision_threshold <= 1.0:
        add(Violation("THRESHOLD_OUT_OF_RANGE", "decision_threshold",
                      f"decision threshold must lie in [0, 1], got {config.decision_threshold}"))
    return violations


def _check_context(context: ContextDef) -> list[Violation]:
    path = f"contexts.{context.name}"
    out: list[Violation] = []
    if len(context.instantiations) < 2:
        out.append(Violation("TOO_FEW_INSTANTIATIONS", path,
                             f"context needs at least 2 instantiations, has {len(context.instantiations)}"))
    if len(set(context.instantiations)) != len(context.instantiations):
        dupes = sorted({i for i in context.instantiations if context.instantiations.count(i) > 1})
        out.append(Violation("DUPLICATE_INSTANTIATION", path,
                             f"instantiation names repeat: {', '.join(dupes)}"))
        return out
    if set(context.priors) != set(context.instantiations):
        out.append(Violation("PRIOR_MISMATCH", path,
                             "priors must cover exactly the declared instantiations"))
        return out
    out_of_range = [i for i in context.instantiations if not 0.0 <= context.priors[i] <= 1.0]
    if out_of_range:
        out.append(Violation("PRIOR_OUT_OF_RANGE", f"{path}.{out_of_range[0]}",
                             f"prior for {out_of_range[0]!r} must lie in [0, 1]"))
        return out
    total = sum(context.priors[i] for i in context.instantiations)
    if abs(total - 1.0) > PRIOR_TOLERANCE:
        out.append(Violation("PRIORS_NOT_NORMALIZED", path, f"priors sum to {total:g}, expected 1"))
    return out


def _check_intention(intention: IntentionDef, contexts: tuple[ContextDef, ...]) -> list[Violation]:
    path = f"intentions.{intention.name}"
    out: list[Violation] = []
    declared = {c.name for c in contexts}
    extra = sorted(set(intention.influences) - declared)
    if extra:
        out.append(Violation("INFLUENCES_NOT_TOTAL", path,
                             f"influence values given for undeclared context {extra[0]!r}"))
    for context in contexts:
        values = intention.influences.get(context.name)
        if values is None:
            out.append(Violation("INFLUENCES_NOT_TOTAL", f"{path}.{context.name}",
                                 f"no influence values for context {context.name!r}"))
            continue
        if set(values) != set(context.instantiations):
            out.append(Violation("INFLUENCES_NOT_TOTAL", f"{path}.{context.name}",
                                 "influence values must cover exactly the context's instantiations"))
            continue
        for inst in context.instantiations:
            value = values[inst]
            if isinstance(value, bool) or not isinstance(value, int) \
                    or not LIKERT_MIN <= value <= LIKERT_MAX:
                out.append(Violation("INFLUENCE_OUT_OF_RANGE", f"{path}.{context.name}.{inst}",
                                     f"influence value must be an integer in "
                                     f"{LIKERT_MIN}..{LIKERT_MAX}, got {value!r}"))
    return out


def _compatible(a: CombinedInfluence, b: CombinedInfluence) -> bool:
    # Satisfiable by one full assignment iff they agree on every shared context.
    return all(b.conditions[ctx] == inst for ctx, inst in a.conditions.items() if ctx in b.conditions)


def _strictly_contains(a: CombinedInfluence, b: CombinedInfluence) -> bool:
    return a.conditions.items() > b.conditions.items()


def _check_combined(config: ScenarioConfig, contexts: dict[str, ContextDef]) -> list[Violation]:
    out: list[Violation] = []
    intention_names = set(config.intention_names())
    resolvable: list[tuple[int, CombinedInfluence]] = []
    for index, entry in enumerate(config.combined):
        path = f"{COMBINED_KEY}[{index}]"
        broken = False
        if entry.intention not in intention_names:
            out.append(Violation("UNKNOWN_COMBINED_REFERENCE", f"{path}.intention",
                                 f"unknown intention {entry.intention!r}"))
            broken = True
        for ctx, inst in entry.conditions.items():
            if ctx not in contexts:
                out.append(Violation("UNKNOWN_COMBINED_REFERENCE", f"{path}.conditions",
                                     f"unknown context {ctx!r}"))
                broken = True
            elif inst not in contexts[ctx].priors:
                out.append(Violation("UNKNOWN_COMBINED_REFERENCE", f"{path}.conditions.{ctx}",
                                     f"unknown instantiation {inst!r} for context {ctx!r}"))
                broken = True
        if len(entry.conditions) < 2:
            out.append(Violation("COMBINED_TOO_FEW_CONDITIONS", f"{path}.conditions",
                                 "a combined influence needs at least 2 conditions"))
            broken = True
        if isinstance(entry.value, bool) or not isinstance(entry.value, int) \
                or not LIKERT_MIN <= entry.value <= LIKERT_MAX:
            out.append(Violation("INFLUENCE_OUT_OF_RANGE", f"{path}.value",
                                 f"influence value must be an integer in "
                                 f"{LIKERT_MIN}..{LIKERT_MAX}, got {entry.value!r}"))
            broken = True
        if not broken:
            resolvable.append((index, entry))

    # Overlap rule: two entries for the same intention that one assignment can
    # satisfy together are only allowed when one strictly contains the other
    # (the larger set wins at evaluation time).
    for pos, (index_a, a) in enumerate(resolvable):
        for index_b, b in resolvable[pos + 1:]:
            if a.intention != b.intention or not _compatible(a, b):
                continue
            if _strictly_contains(a, b) or _strictly_contains(b, a):
                continue
            out.append(Violation(
                "AMBIGUOUS_COMBINED_OVERLAP", f"{COMBINED_KEY}[{index_b}]",
                f"entries {index_a} and {index_b} for intention {a.intention!r} can match the "
                f"same assignment and neither condition set contains the other"))
    return out


def serialize_config(config: ScenarioConfig) -> str:
    """Emit the external YAML format; parse(serialize(c)) == c, byte-stably.

    Raises :class:`ConfigValidationError` when the config is invalid.
    """
    violations = validate_config(config)
    if violations:
        raise ConfigValidationError(violations)
    document: dict = {
        "contexts": {
            c.name: {inst: float(c.priors[inst]) for inst in c.instantiations}
            for c in config.contexts
        },
        "intentions": {
            m.name: {
                c.name: {inst: int(m.influences[c.name][inst]) for inst in c.instantiations}
                for c in config.contexts
            }
            for m in config.intentions
        },
    }
    if config.combined:
        document[COMBINED_KEY] = [
            {"intention": e.intention, "conditions": dict(e.conditions), "value": int(e.value)}
            for e in config.combined
        ]
    document["decision_threshold"] = float(config.decision_threshold)
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=False, allow_unicode=True)


class ValueCounts(NamedTuple):
    """Number of values a designer must supply, with and without the
    averaging shortcut."""

    exponential: int
    linear: int


def count_required_values(context_sizes: Sequence[int], intention_sizes: Sequence[int]) -> ValueCounts:
    """Count the values needed to specify a scenario of the given shape.

    ``context_sizes`` lists the instantiation count of each context,
    ``intention_sizes`` the state count of each intention (2 throughout this
    library, since intentions are binary).

    exponential = sum(c) + i * prod(n) * prod(c) covers priors plus manually
    filled conditional tables; linear = (i + 1) * sum(c) covers priors plus
    one influence value per (intention, instantiation) pair.
    """
    context_sizes = tuple(context_sizes)
    intention_sizes = tuple(intention_sizes)
    if not context_sizes or not intention_sizes:
        raise ValueError("shape must include at least one context and one intention")
    if any(c < 2 for c in context_sizes):
        raise ValueError("every context needs at least 2 instantiations")
    if any(n < 2 for n in intention_sizes):
        raise ValueError("every intention needs at least 2 states")
    priors = sum(context_sizes)
    table_cells = math.prod(intention_sizes) * math.prod(context_sizes)
    return ValueCounts(
        exponential=priors + len(intention_sizes) * table_cells,
        linear=(len(intention_sizes) + 1) * priors,
    )


def config_shape(config: ScenarioConfig) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Context/intention size vectors of a config, for count_required_values."""
    return (
        tuple(len(c.instantiations) for c in config.contexts),
        (2,) * len(config.intentions),
    )
