"""Posterior inference from partial or soft context evidence.

Evidence supplies a distribution per observed context (a hard observation is
a point mass); unobserved contexts fall back to their priors. The posterior
for an intention is the expectation of its conditional probability under the
product of those per-context distributions:

    posterior = sum over full assignments a of
                prod_k w_k(a_k) * conditional_probability(intention, a)

Computation is factorized: because the conditional probability is an average,
the expectation decomposes into per-context expected terms; only the contexts
named by combined entries are enumerated jointly. The result is algebraically
equal to the defining sum. ``brute_force_posterior`` evaluates that sum
literally and serves as the conformance oracle.
"""

import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

from .network import (
    MAX_CONDITIONAL,
    CombinedEntry,
    CompiledNetwork,
    conditional_probability,
)

#: Reserved context name that receives the previous decision in ``step``.
PREVIOUS_INTENTION_CONTEXT = "previous_intention"

#: Instantiation of the reserved context when no intention was decided.
NO_INTENTION = "none"

DISTRIBUTION_TOLERANCE = 1e-6


class EvidenceError(Exception):
    """Evidence refers to unknown names or carries a malformed distribution."""


@dataclass(frozen=True)
class Evidence:
    """Per-context observations; contexts not present fall back to priors."""

    observations: dict[str, dict[str, float]] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "Evidence":
        return cls({})


def evidence_from_json(payload) -> Evidence:
    """Build Evidence from the wire format.

    Each key maps a context to either an instantiation string (hard
    observation, converted to a point mass) or an object mapping
    instantiations to weights (soft observation). Names are checked against
    the network at inference time.
    """
    if not isinstance(payload, Mapping):
        raise EvidenceError(f"evidence must be a JSON object, got {type(payload).__name__}")
    observations: dict[str, dict[str, float]] = {}
    for context, value in payload.items():
        if not isinstance(context, str):
            raise EvidenceError(f"context name must be a string, got {context!r}")
        if isinstance(value, str):
            observations[context] = {value: 1.0}
        elif isinstance(value, Mapping):
            distribution: dict[str, float] = {}
            for inst, weight in value.items():
                if not isinstance(inst, str):
                    raise EvidenceError(
                        f"instantiation name must be a string, got {inst!r} "
                        f"for context {context!r}")
                if isinstance(weight, bool) or not isinstance(weight, (int, float)):
                    raise EvidenceError(
                        f"weight for {context}.{inst} must be a number, "
                        f"got {type(weight).__name__}")
                distribution[inst] = float(weight)
            observations[context] = distribution
        else:
            raise EvidenceError(
                f"context {context!r} must map to an instantiation name or a "
                f"distribution object, got {type(value).__name__}")
    return Evidence(observations)


def _as_evidence(evidence) -> Evidence:
    if evidence is None:
        return Evidence.empty()
    if isinstance(evidence, Evidence):
        return evidence
    return evidence_from_json(evidence)


def _resolve_weights(net: CompiledNetwork, evidence: Evidence) -> dict[str, dict[str, float]]:
    """Validate evidence and merge it with priors into total per-context weights."""
    weights: dict[str, dict[str, float]] = {}
    for context, distribution in evidence.observations.items():
        if context not in net.instantiations:
            raise EvidenceError(f"unknown context {context!r}")
        declared = net.instantiations[context]
        for inst in distribution:
            if inst not in declared:
                raise EvidenceError(
                    f"unknown instantiation {inst!r} for context {context!r}")
        for inst, weight in distribution.items():
            if not 0.0 <= weight <= 1.0:
                raise EvidenceError(
                    f"weight for {context}.{inst} must lie in [0, 1], got {weight}")
        total = sum(distribution.values())
        if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
            raise EvidenceError(
                f"distribution for context {context!r} sums to {total:g}, expected 1")
        weights[context] = {inst: distribution.get(inst, 0.0) for inst in declared}
    for context in net.context_names:
        if context not in weights:
            weights[context] = net.priors[context]
    return weights


def _matching_index(entries: tuple[CombinedEntry, ...], assignment: Mapping[str, str]) -> int | None:
    best: int | None = None
    for index, entry in enumerate(entries):
        if all(assignment.get(ctx) == inst for ctx, inst in entry.conditions.items()):
            if best is None or len(entry.conditions) > len(entries[best].conditions):
                best = index
    return best


@dataclass(frozen=True)
class ContextTerm:
    """A context's contribution to one intention's posterior."""

    expected_observed: float
    expected_prior: float
    delta: float

    def to_json(self) -> dict:
        return {
            "expected_observed": self.expected_observed,
            "expected_prior": self.expected_prior,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class CombinedCorrection:
    """Residual contributed by one combined entry under the given evidence."""

    conditions: dict[str, str]
    contribution: float

    def to_json(self) -> dict:
        return {"conditions": dict(self.conditions), "contribution": self.contribution}


@dataclass(frozen=True)
class IntentionExplanation:
    """Decomposition of one intention's posterior.

    Without combined entries the posterior equals the mean of the
    expected_observed terms, and posterior - baseline equals the sum of the
    deltas; corrections account exactly for the combined-entry residual.
    """

    baseline: float
    terms: dict[str, ContextTerm]
    combined_corrections: tuple[CombinedCorrection, ...]

    def to_json(self) -> dict:
        return {
            "baseline": self.baseline,
            "terms": {name: term.to_json() for name, term in self.terms.items()},
            "combined_corrections": [c.to_json() for c in self.combined_corrections],
        }


#: intention name -> decomposition
Explanation = dict[str, IntentionExplanation]


@dataclass(frozen=True)
class InferenceResult:
    """Posteriors, the thresholded decision, and the explanation."""

    posteriors: dict[str, float]
    normalized: dict[str, float]
    decision: str | None
    tie: bool
    explanation: Explanation

    @property
    def complements(self) -> dict[str, float]:
        """P(intention absent | evidence) per intention."""
        return {name: 1.0 - p for name, p in self.posteriors.items()}

    def to_json(self) -> dict:
        return {
            "posteriors": dict(self.posteriors),
            "normalized": dict(self.normalized),
            "decision": self.decision,
            "tie": self.tie,
            "explanation": {name: ex.to_json() for name, ex in self.explanation.items()},
        }


def _intention_analysis(
    net: CompiledNetwork,
    intention: str,
    weights: dict[str, dict[str, float]],
) -> tuple[float, dict[str, float], list[tuple[CombinedEntry, float]]]:
    """Posterior, per-context expected terms, and per-entry corrections.

    The base term is the mean over contexts of the expected single condition
    probability. Combined entries only perturb assignments of the contexts
    they name, so those contexts are enumerated jointly while everything else
    stays in expectation; the perturbations are returned per entry.
    """
    table = net.single[intention]
    k = net.context_count
    expected = {
        ctx: sum(weights[ctx][inst] * table[ctx][inst] for inst in net.instantiations[ctx])
        for ctx in net.context_names
    }
    base = sum(expected[ctx] for ctx in net.context_names) / k

    entries = net.combined[intention]
    if not entries:
        return base, expected, []

    involved = [ctx for ctx in net.context_names
                if any(ctx in e.conditions for e in entries)]
    outside = sum(expected[ctx] for ctx in net.context_names if ctx not in involved)
    corrections = [0.0] * len(entries)
    for combo in itertools.product(*(net.instantiations[ctx] for ctx in involved)):
        weight = math.prod(weights[ctx][inst] for ctx, inst in zip(involved, combo))
        if weight == 0.0:
            continue
        partial = dict(zip(involved, combo))
        matched = _matching_index(entries, partial)
        if matched is None:
            continue
        entry = entries[matched]
        inside = sum(table[ctx][partial[ctx]] for ctx in involved)
        plain = (inside + outside) / k
        kept = sum(table[ctx][partial[ctx]] for ctx in involved if ctx not in entry.conditions)
        overridden = (kept + outside + entry.probability) / (k - len(entry.conditions) + 1)
        corrections[matched] += weight * (overridden - plain)

    posterior = min(base + sum(corrections), MAX_CONDITIONAL)
    posterior = max(posterior, 0.0)
    return posterior, expected, list(zip(entries, corrections))


def _run(net: CompiledNetwork, evidence: Evidence) -> tuple[dict[str, float], Explanation]:
    weights = _resolve_weights(net, evidence)
    posteriors: dict[str, float] = {}
    explanation: Explanation = {}
    k = net.context_count
    for intention in net.intention_names:
        posterior, expected, corrections = _intention_analysis(net, intention, weights)
        baseline, prior_expected, _ = _intention_analysis(net, intention, net.priors)
        posteriors[intention] = posterior
        explanation[intention] = IntentionExplanation(
            baseline=baseline,
            terms={
                ctx: ContextTerm(
                    expected_observed=expected[ctx],
                    expected_prior=prior_expected[ctx],
                    delta=(expected[ctx] - prior_expected[ctx]) / k,
                )
                for ctx in net.context_names
            },
            combined_corrections=tuple(
                CombinedCorrection(conditions=dict(entry.conditions), contribution=value)
                for entry, value in corrections
            ),
        )
    return posteriors, explanation


def infer(net: CompiledNetwork, evidence: Evidence | Mapping | None = None) -> InferenceResult:
    """Posterior per intention, the thresholded decision, and the explanation.

    ``evidence`` may be an :class:`Evidence`, a wire-format mapping, or None
    for the no-observation baseline. The decision is the highest posterior if
    it strictly exceeds the decision threshold, otherwise None; exact ties go
    to the earliest-declared intention and are flagged.
    """
    posteriors, explanation = _run(net, _as_evidence(evidence))

    best = max(posteriors.values())
    leaders = [name for name in net.intention_names if posteriors[name] == best]
    decision = leaders[0] if best > net.decision_threshold else None

    total = sum(posteriors.values())
    if total == 0.0:
        normalized = {name: 1.0 / len(posteriors) for name in posteriors}
    else:
        normalized = {name: value / total for name, value in posteriors.items()}

    return InferenceResult(
        posteriors=posteriors,
        normalized=normalized,
        decision=decision,
        tie=len(leaders) > 1,
        explanation=explanation,
    )


def explain(net: CompiledNetwork, evidence: Evidence | Mapping | None = None) -> Explanation:
    """Just the posterior decomposition for the given evidence."""
    _, explanation = _run(net, _as_evidence(evidence))
    return explanation


def step(
    net: CompiledNetwork,
    state: str | None,
    evidence: Evidence | Mapping | None = None,
) -> tuple[InferenceResult, str | None]:
    """One step of temporal recursion: the previous decision becomes context.

    If the scenario declares a ``previous_intention`` context (instantiations
    must be exactly the intention names plus ``none``) and the evidence does
    not mention it, a point mass on ``state`` (or ``none``) is injected.
    Explicit evidence wins. Returns the result and the new state; without the
    reserved context this is exactly ``infer``.
    """
    evidence = _as_evidence(evidence)
    if PREVIOUS_INTENTION_CONTEXT in net.instantiations:
        declared = set(net.instantiations[PREVIOUS_INTENTION_CONTEXT])
        expected = set(net.intention_names) | {NO_INTENTION}
        if declared != expected:
            raise EvidenceError(
                f"context {PREVIOUS_INTENTION_CONTEXT!r} must have instantiations "
                f"{sorted(expected)}, found {sorted(declared)}")
        if PREVIOUS_INTENTION_CONTEXT not in evidence.observations:
            observations = dict(evidence.observations)
            observations[PREVIOUS_INTENTION_CONTEXT] = {state or NO_INTENTION: 1.0}
            evidence = Evidence(observations)
    result = infer(net, evidence)
    return result, result.decision


def brute_force_posterior(
    net: CompiledNetwork,
    intention: str,
    evidence: Evidence | Mapping | None = None,
) -> float:
    """The defining sum over all full assignments, evaluated literally.

    Exponential in the number of contexts; refuses more than 10**6
    assignments. This is the conformance oracle for :func:`infer`.
    """
    if intention not in net.single:
        raise ValueError(f"unknown intention {intention!r}")
    size = math.prod(len(net.instantiations[ctx]) for ctx in net.context_names)
    if size > 10 ** 6:
        raise ValueError(f"scenario has {size} assignments, too many to enumerate")
    weights = _resolve_weights(net, _as_evidence(evidence))
    total = 0.0
    for combo in itertools.product(*(net.instantiations[ctx] for ctx in net.context_names)):
        weight = math.prod(weights[ctx][inst] for ctx, inst in zip(net.context_names, combo))
        if weight == 0.0:
            continue
        total += weight * conditional_probability(
            net, intention, dict(zip(net.context_names, combo)))
    return total
