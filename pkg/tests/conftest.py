"""Shared fixtures: canonical scenario texts and random scenario generation."""

import random

import pytest

from intentrec import (
    CombinedInfluence,
    ContextDef,
    IntentionDef,
    ScenarioConfig,
    compile_network,
    parse_config,
    validate_config,
)
from intentrec.scenarios import scenario_text

SPRINKLER_YAML = scenario_text("sprinkler")


@pytest.fixture
def sprinkler_config():
    return parse_config(SPRINKLER_YAML)


@pytest.fixture
def sprinkler_net(sprinkler_config):
    return compile_network(sprinkler_config)


def make_random_config(
    rng: random.Random,
    *,
    max_contexts: int = 4,
    max_instantiations: int = 4,
    max_intentions: int = 3,
    max_combined: int = 0,
) -> ScenarioConfig:
    """A valid random scenario; combined entries respect the overlap rule."""
    contexts = []
    for k in range(rng.randint(1, max_contexts)):
        insts = tuple(f"v{i}" for i in range(rng.randint(2, max_instantiations)))
        raw = [rng.random() + 0.05 for _ in insts]
        total = sum(raw)
        contexts.append(ContextDef(
            name=f"ctx{k}",
            instantiations=insts,
            priors={inst: weight / total for inst, weight in zip(insts, raw)},
        ))

    intentions = [
        IntentionDef(
            name=f"goal{m}",
            influences={
                c.name: {inst: rng.randint(0, 5) for inst in c.instantiations}
                for c in contexts
            },
        )
        for m in range(rng.randint(1, max_intentions))
    ]

    combined: list[CombinedInfluence] = []
    if max_combined and len(contexts) >= 2:
        for _ in range(rng.randint(0, max_combined)):
            for _attempt in range(10):
                chosen = rng.sample(contexts, rng.randint(2, min(len(contexts), 3)))
                candidate = CombinedInfluence(
                    intention=rng.choice(intentions).name,
                    conditions={c.name: rng.choice(c.instantiations) for c in chosen},
                    value=rng.randint(0, 5),
                )
                if all(not _ambiguous(candidate, existing) for existing in combined):
                    combined.append(candidate)
                    break

    config = ScenarioConfig(
        contexts=tuple(contexts),
        intentions=tuple(intentions),
        combined=tuple(combined),
        decision_threshold=rng.random(),
    )
    assert validate_config(config) == []
    return config


def _ambiguous(a: CombinedInfluence, b: CombinedInfluence) -> bool:
    if a.intention != b.intention:
        return False
    compatible = all(
        b.conditions[ctx] == inst for ctx, inst in a.conditions.items() if ctx in b.conditions
    )
    if not compatible:
        return False
    return not (a.conditions.items() > b.conditions.items()
                or b.conditions.items() > a.conditions.items())


def make_random_evidence(rng: random.Random, config: ScenarioConfig) -> dict:
    """Wire-format evidence mixing absent, hard, and soft observations."""
    evidence: dict = {}
    for context in config.contexts:
        roll = rng.random()
        if roll < 1 / 3:
            continue
        if roll < 2 / 3:
            evidence[context.name] = rng.choice(context.instantiations)
        else:
            raw = [rng.random() + 0.01 for _ in context.instantiations]
            total = sum(raw)
            evidence[context.name] = {
                inst: weight / total
                for inst, weight in zip(context.instantiations, raw)
            }
    return evidence


def make_random_assignment(rng: random.Random, config: ScenarioConfig) -> dict[str, str]:
    return {c.name: rng.choice(c.instantiations) for c in config.contexts}
