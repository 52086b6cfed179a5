"""Context-based intention recognition over a two-layer Bayesian network.

Scenarios are authored as small YAML documents (contexts with priors,
intentions with 0..5 influence values, optional combined influences, and a
decision threshold). The library compiles them into an immutable network and
infers a posterior per intention from partial, hard, or soft context
evidence, with an explanation of which contexts drove the result.
"""

from .config import (
    COMBINED_KEY,
    CombinedInfluence,
    ConfigError,
    ConfigSchemaError,
    ConfigSyntaxError,
    ConfigValidationError,
    ContextDef,
    IntentionDef,
    ScenarioConfig,
    ValueCounts,
    Violation,
    config_shape,
    count_required_values,
    parse_config,
    serialize_config,
    validate_config,
)
from .inference import (
    NO_INTENTION,
    PREVIOUS_INTENTION_CONTEXT,
    CombinedCorrection,
    ContextTerm,
    Evidence,
    EvidenceError,
    Explanation,
    InferenceResult,
    IntentionExplanation,
    brute_force_posterior,
    evidence_from_json,
    explain,
    infer,
    step,
)
from .network import (
    LIKERT_SCALE,
    MAX_CONDITIONAL,
    Assignment,
    CombinedEntry,
    CompiledNetwork,
    compile_network,
    conditional_probability,
    likert_to_probability,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "COMBINED_KEY",
    "CombinedCorrection",
    "CombinedEntry",
    "CombinedInfluence",
    "CompiledNetwork",
    "ConfigError",
    "ConfigSchemaError",
    "ConfigSyntaxError",
    "ConfigValidationError",
    "ContextDef",
    "ContextTerm",
    "Evidence",
    "EvidenceError",
    "Explanation",
    "InferenceResult",
    "IntentionDef",
    "IntentionExplanation",
    "LIKERT_SCALE",
    "MAX_CONDITIONAL",
    "NO_INTENTION",
    "PREVIOUS_INTENTION_CONTEXT",
    "ScenarioConfig",
    "ValueCounts",
    "Violation",
    "brute_force_posterior",
    "compile_network",
    "conditional_probability",
    "config_shape",
    "count_required_values",
    "evidence_from_json",
    "explain",
    "infer",
    "likert_to_probability",
    "parse_config",
    "serialize_config",
    "step",
    "validate_config",
]
