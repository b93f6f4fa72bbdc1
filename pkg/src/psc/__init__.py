"""Persian Slang Converter: normalize noisy Persian social-media text,
measure term frequencies, rewrite colloquial words to their formal
register through seven rule families, report rule coverage, and measure
the effect on a baseline sentiment classifier.
"""

from .corpus import (DOMAINS, PurityCriterion, TermFrequencyTable, build_tf,
                     count_tokens, extract_pure_slang, merge, read_tf,
                     read_tf_path, top_k, write_tf, write_tf_path)
from .errors import (BadRatiosError, DataError, EmptyTestSetError,
                     EmptyTrainSetError, InsufficientClassError,
                     MissingClassError, PscError)
from .normalizer import NormalizedText, NormalizerConfig, normalize, tokenize
from .pipeline import (AGGREGATE_ROW, DEFAULT_RULE_ORDER, ConversionReport,
                       PipelineConfig, RuleCoverage, convert_text,
                       coverage_report, pct_2dp)
from .rules import (FormalValidator, Lexicon, RuleEngine, RuleId, RuleOutcome,
                    load_lexicon, load_stems)
from .sentiment import (LABELS, AblationResult, DatasetSplit, EvalMetrics,
                        LabeledExample, LinearModel, TrainParams, ablation,
                        balance, evaluate, extract_features, load_model,
                        metrics_from_confusion, read_labeled,
                        read_labeled_path, save_model, split, train,
                        write_labeled_path)

__version__ = "0.1.0"

__all__ = [
    "AGGREGATE_ROW", "AblationResult", "BadRatiosError", "ConversionReport",
    "DEFAULT_RULE_ORDER", "DOMAINS", "DataError", "DatasetSplit",
    "EmptyTestSetError", "EmptyTrainSetError", "EvalMetrics",
    "FormalValidator", "InsufficientClassError", "LABELS", "LabeledExample",
    "Lexicon", "LinearModel", "MissingClassError", "NormalizedText",
    "NormalizerConfig", "PipelineConfig", "PscError", "PurityCriterion",
    "RuleCoverage", "RuleEngine", "RuleId", "RuleOutcome",
    "TermFrequencyTable", "TrainParams", "ablation", "balance", "build_tf",
    "convert_text", "count_tokens", "coverage_report", "evaluate",
    "extract_features", "extract_pure_slang", "load_lexicon", "load_model",
    "load_stems", "merge", "metrics_from_confusion", "normalize", "pct_2dp",
    "read_labeled", "read_labeled_path", "read_tf", "read_tf_path",
    "save_model", "split", "tokenize", "top_k", "train", "write_labeled_path",
    "write_tf", "write_tf_path",
]
