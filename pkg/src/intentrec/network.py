"""Two-layer network compilation.

Maps 0..5 influence values to fixed probability anchors and synthesizes, for
each intention, the conditional probability of the intention being present
given a full context assignment: the average of the per-context single
condition probabilities, with matched combined entries replacing the terms
of the contexts they cover.
"""

from collections.abc import Mapping
from dataclasses import dataclass

from .config import ConfigValidationError, ScenarioConfig, validate_config

#: Fixed anchor for each point of the six-point influence scale.
LIKERT_SCALE: dict[int, float] = {0: 0.0, 1: 0.05, 2: 0.25, 3: 0.50, 4: 0.75, 5: 0.95}

#: Largest reachable conditional probability (the top anchor).
MAX_CONDITIONAL = LIKERT_SCALE[5]

#: A full context assignment: one instantiation per context.
Assignment = Mapping[str, str]


def likert_to_probability(value: int) -> float:
    """Anchor probability for an influence value; exact, no interpolation."""
    if isinstance(value, bool) or value not in LIKERT_SCALE:
        raise ValueError(f"influence value must be an integer in 0..5, got {value!r}")
    return LIKERT_SCALE[value]


@dataclass(frozen=True)
class CombinedEntry:
    """A compiled combined influence: its conditions and anchor probability."""

    conditions: dict[str, str]
    value: int
    probability: float


@dataclass(frozen=True)
class CompiledNetwork:
    """Immutable two-layer network, ready for inference.

    All influence values are materialized as probabilities at construction;
    nothing here ever enumerates full context assignments. Safe to share
    across threads.
    """

    config: ScenarioConfig
    context_names: tuple[str, ...]
    instantiations: dict[str, tuple[str, ...]]
    priors: dict[str, dict[str, float]]
    intention_names: tuple[str, ...]
    # intention -> context -> instantiation -> probability
    single: dict[str, dict[str, dict[str, float]]]
    # intention -> compiled combined entries (possibly empty)
    combined: dict[str, tuple[CombinedEntry, ...]]
    decision_threshold: float

    @property
    def context_count(self) -> int:
        return len(self.context_names)


def compile_network(config: ScenarioConfig) -> CompiledNetwork:
    """Materialize a validated config into a :class:`CompiledNetwork`.

    Cost is linear in the number of influence values; raises
    :class:`ConfigValidationError` if the config is invalid.
    """
    violations = validate_config(config)
    if violations:
        raise ConfigValidationError(violations)

    context_names = config.context_names()
    instantiations = {c.name: c.instantiations for c in config.contexts}
    priors = {c.name: dict(c.priors) for c in config.contexts}

    single = {
        m.name: {
            c.name: {inst: likert_to_probability(m.influences[c.name][inst])
                     for inst in c.instantiations}
            for c in config.contexts
        }
        for m in config.intentions
    }

    combined: dict[str, list[CombinedEntry]] = {m.name: [] for m in config.intentions}
    for entry in config.combined:
        combined[entry.intention].append(
            CombinedEntry(
                conditions=dict(entry.conditions),
                value=entry.value,
                probability=likert_to_probability(entry.value),
            )
        )

    return CompiledNetwork(
        config=config,
        context_names=context_names,
        instantiations=instantiations,
        priors=priors,
        intention_names=config.intention_names(),
        single=single,
        combined={name: tuple(entries) for name, entries in combined.items()},
        decision_threshold=config.decision_threshold,
    )


def matching_entry(entries: tuple[CombinedEntry, ...], assignment: Assignment) -> CombinedEntry | None:
    """The combined entry the assignment satisfies, largest condition set first.

    Validation guarantees that simultaneously satisfiable entries are nested,
    so the maximal match is unique.
    """
    best: CombinedEntry | None = None
    for entry in entries:
        if all(assignment.get(ctx) == inst for ctx, inst in entry.conditions.items()):
            if best is None or len(entry.conditions) > len(best.conditions):
                best = entry
    return best


def conditional_probability(net: CompiledNetwork, intention: str, assignment: Assignment) -> float:
    """P(intention present | full context assignment).

    Without a matching combined entry this is the plain average of the
    single condition probabilities. A matched entry's probability replaces
    the terms of the contexts it covers, counted once, so the denominator
    becomes k - |conditions| + 1.
    """
    try:
        table = net.single[intention]
    except KeyError:
        raise ValueError(f"unknown intention {intention!r}") from None

    missing = [ctx for ctx in net.context_names if ctx not in assignment]
    if missing:
        raise ValueError(f"assignment is missing context {missing[0]!r}")
    for ctx in assignment:
        if ctx not in table:
            raise ValueError(f"unknown context {ctx!r} in assignment")
        if assignment[ctx] not in table[ctx]:
            raise ValueError(
                f"unknown instantiation {assignment[ctx]!r} for context {ctx!r}")

    k = net.context_count
    entry = matching_entry(net.combined[intention], assignment)
    if entry is None:
        total = sum(table[ctx][assignment[ctx]] for ctx in net.context_names)
        return min(total / k, MAX_CONDITIONAL)
    total = sum(
        table[ctx][assignment[ctx]] for ctx in net.context_names if ctx not in entry.conditions
    )
    total += entry.probability
    return min(total / (k - len(entry.conditions) + 1), MAX_CONDITIONAL)
