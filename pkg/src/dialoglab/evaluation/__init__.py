from .cross import (
    CrossMatrix,
    cross_study,
    diagonal_dominance,
    group_mean,
    train_policy_suite,
)
from .metrics import (
    MetricReport,
    act_histogram,
    metric_report,
    pearson,
    simulate_corpus,
    success_rate,
    trigram_ppl,
    vocab_and_len,
)
from .reports import (
    config_hash,
    cross_csv,
    hist_csv,
    metrics_json,
    save_curve_svg,
    save_hist_svg,
    write_text,
)

__all__ = [
    "CrossMatrix",
    "MetricReport",
    "act_histogram",
    "config_hash",
    "cross_csv",
    "cross_study",
    "diagonal_dominance",
    "group_mean",
    "hist_csv",
    "metric_report",
    "metrics_json",
    "pearson",
    "save_curve_svg",
    "save_hist_svg",
    "simulate_corpus",
    "success_rate",
    "train_policy_suite",
    "trigram_ppl",
    "vocab_and_len",
    "write_text",
]
