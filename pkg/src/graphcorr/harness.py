"""Monte Carlo experiment orchestration and result persistence.

Runs batches of detection trials under both hypotheses with per-trial
derived seeds, collects the statistics, and turns them into ROC curves,
AUC values, and histograms.  All outputs are plain CSV so downstream
tooling only needs the file formats, never this package.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rng as _rng
from .clique import AlgoParams, DetectionResult, detect
from .errors import DataFormatError, GraphCorrError, InvalidParameterError, SampleTooSmallError
from .exact import Decision, ExactBudget, decide, enumerate_max_score, threshold_mse, threshold_overlap
from .model import Hypothesis, generate_pair, mapping_size_m, sample_subgraphs
from .similarity import SimilarityKernel

# ---------------------------------------------------------------------------
# Configuration


@dataclass(frozen=True)
class CliqueDetectorConfig:
    k1: int
    k2: int
    n1: int
    n2: int
    tau: float | None = None  # None: derive from the kernel's threshold formula


@dataclass(frozen=True)
class ExactDetectorConfig:
    budget: int = 10**8
    tau: float | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    s: int
    rho: float
    epsilon: float
    trials_per_hypothesis: int
    detector: CliqueDetectorConfig | ExactDetectorConfig
    kernel: SimilarityKernel
    root_seed: int
    output_path: str | None = None

    def __post_init__(self):
        if self.s < 2:
            raise SampleTooSmallError(f"subgraphs of size {self.s} carry no edges to score")
        if self.s > self.n:
            raise InvalidParameterError(f"need s <= n, got s={self.s}, n={self.n}")
        if not 0.0 < self.rho < 1.0:
            raise InvalidParameterError(f"rho must lie in (0, 1), got {self.rho}")
        if self.trials_per_hypothesis < 1:
            raise InvalidParameterError("need at least one trial per hypothesis")
        mapping_size_m(self.n, self.s, self.epsilon)  # raises when degenerate

    @property
    def m(self) -> int:
        return mapping_size_m(self.n, self.s, self.epsilon)

    def resolve_tau(self) -> float:
        if self.detector.tau is not None:
            return float(self.detector.tau)
        if self.kernel.kind == "overlap":
            return threshold_overlap(self.m, self.rho)
        if self.kernel.kind == "mse":
            return threshold_mse(self.m, self.rho)
        raise InvalidParameterError("the mle kernel has no default threshold; set tau explicitly")

    @staticmethod
    def from_dict(data: dict) -> "ExperimentConfig":
        try:
            det = dict(data["detector"])
            kind = det.pop("type")
            if kind == "clique":
                detector = CliqueDetectorConfig(**det)
            elif kind == "exact":
                detector = ExactDetectorConfig(**det)
            else:
                raise InvalidParameterError(f"unknown detector type {kind!r}")
            kern = dict(data["kernel"])
            kernel = SimilarityKernel(kern["kind"], kern.get("rho"))
            return ExperimentConfig(
                n=int(data["n"]),
                s=int(data["s"]),
                rho=float(data["rho"]),
                epsilon=float(data["epsilon"]),
                trials_per_hypothesis=int(data["trials_per_hypothesis"]),
                detector=detector,
                kernel=kernel,
                root_seed=int(data["root_seed"]),
                output_path=data.get("output_path"),
            )
        except (KeyError, TypeError) as exc:
            raise DataFormatError(f"bad experiment config: {exc}") from exc

    @staticmethod
    def from_json_file(path) -> "ExperimentConfig":
        try:
            with open(path) as handle:
                data = json.load(handle)
        except OSError as exc:
            raise DataFormatError(f"cannot open {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"{path}: {exc}") from exc
        return ExperimentConfig.from_dict(data)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    hypothesis: Hypothesis
    statistic: float
    decision: Decision
    wall_time: float


@dataclass(frozen=True)
class RocCurve:
    """ROC points swept over thresholds, plus the tie-aware AUC.

    Points run from (0, 0) at threshold +inf to (1, 1) at -inf, i.e.
    sorted by decreasing threshold and increasing false positive rate.
    """

    thresholds: tuple[float, ...]
    points: tuple[tuple[float, float], ...]
    auc: float


# ---------------------------------------------------------------------------
# Trial execution

_HYP_TAG = {Hypothesis.NULL: 0, Hypothesis.ALT: 1}


def _subseed(root: int, *parts: int) -> int:
    seq = np.random.SeedSequence([int(root) & ((1 << 64) - 1)] + [int(p) for p in parts])
    return int(seq.generate_state(1, np.uint64)[0])


def clique_algo_params(config: ExperimentConfig, seed: int) -> AlgoParams:
    """Per-trial algorithm parameters for the clique detector.

    n1 (and n2 with it) is clamped to the number of distinct k1-subsets
    the subgraph admits, since the matcher requires distinct sets.
    """
    det = config.detector
    assert isinstance(det, CliqueDetectorConfig)
    n1 = min(det.n1, math.comb(config.s, det.k1))
    n2 = min(det.n2, n1)
    return AlgoParams(
        k1=det.k1,
        k2=det.k2,
        n1=n1,
        n2=n2,
        m=config.m,
        f=config.kernel,
        tau=config.resolve_tau(),
        seed=seed,
    )


def run_trial(config: ExperimentConfig, hypothesis: Hypothesis, index: int) -> TrialRecord:
    """One fresh pair, fresh subgraph sample, one detector run."""
    tag = _HYP_TAG[hypothesis]
    start = time.perf_counter()
    try:
        pair = generate_pair(
            config.n,
            config.rho if hypothesis is Hypothesis.ALT else 0.0,
            hypothesis,
            _subseed(config.root_seed, tag, index, _rng.TRIAL_PAIR),
        )
        sample = sample_subgraphs(
            pair, config.s, _subseed(config.root_seed, tag, index, _rng.TRIAL_SAMPLE)
        )
        if isinstance(config.detector, CliqueDetectorConfig):
            params = clique_algo_params(
                config, _subseed(config.root_seed, tag, index, _rng.TRIAL_ALGO)
            )
            result: DetectionResult = detect(sample.sub1, sample.sub2, params)
            statistic, decision = result.statistic, result.decision
        else:
            statistic, _ = enumerate_max_score(
                sample.sub1,
                sample.sub2,
                config.m,
                config.kernel,
                ExactBudget(config.detector.budget),
            )
            decision = decide(statistic, config.resolve_tau())
    except GraphCorrError as exc:
        raise GraphCorrError(
            f"trial {index} under {hypothesis.value} failed: {exc}"
        ) from exc
    if not math.isfinite(statistic):
        raise GraphCorrError(f"trial {index} under {hypothesis.value} produced {statistic}")
    wall = time.perf_counter() - start
    return TrialRecord(index, hypothesis, float(statistic), decision, wall)


def _run_trial_args(args) -> TrialRecord:
    return run_trial(*args)


def run_experiment(config: ExperimentConfig, workers: int | None = None) -> list[TrialRecord]:
    """All trials for both hypotheses, deterministic in the root seed.

    Per-trial seeds derive from (root seed, hypothesis, trial index), so
    results are identical for any worker count and trial counts can grow
    without reshuffling earlier trials.  Records come back sorted by
    (hypothesis, trial index); wall times are the only nondeterministic
    field.
    """
    tasks = [
        (config, hyp, i)
        for hyp in (Hypothesis.NULL, Hypothesis.ALT)
        for i in range(config.trials_per_hypothesis)
    ]
    if workers is None or workers <= 1:
        records = [_run_trial_args(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_trial_args, tasks, chunksize=chunk))
    records.sort(key=lambda r: (_HYP_TAG[r.hypothesis], r.trial_index))
    return records


def split_statistics(records: list[TrialRecord]) -> tuple[list[float], list[float]]:
    null = [r.statistic for r in records if r.hypothesis is Hypothesis.NULL]
    alt = [r.statistic for r in records if r.hypothesis is Hypothesis.ALT]
    return null, alt


# ---------------------------------------------------------------------------
# ROC / AUC / histogram


def auc(scores_null: list[float], scores_alt: list[float]) -> float:
    """P(alt score > null score) + half the tie probability.

    Computed from average pooled ranks, exact for ties.
    """
    if not len(scores_null) or not len(scores_alt):
        raise InvalidParameterError("auc needs nonempty score lists")
    null = np.asarray(scores_null, dtype=np.float64)
    alt = np.asarray(scores_alt, dtype=np.float64)
    pooled = np.concatenate([null, alt])
    _, inverse, counts = np.unique(pooled, return_inverse=True, return_counts=True)
    starts = np.cumsum(counts) - counts + 1
    avg_rank = starts + (counts - 1) / 2.0
    rank_sum_alt = float(avg_rank[inverse[null.shape[0]:]].sum())
    n_a = alt.shape[0]
    u = rank_sum_alt - n_a * (n_a + 1) / 2.0
    return u / (null.shape[0] * n_a)


def roc_points(scores_null: list[float], scores_alt: list[float]) -> RocCurve:
    """Sweep rejection thresholds over all distinct scores plus both infinities.

    A trial rejects when its score is at least the threshold, so the
    curve starts at (0, 0) and ends at (1, 1).
    """
    if not len(scores_null) or not len(scores_alt):
        raise InvalidParameterError("roc needs nonempty score lists")
    null = np.sort(np.asarray(scores_null, dtype=np.float64))
    alt = np.sort(np.asarray(scores_alt, dtype=np.float64))
    distinct = np.unique(np.concatenate([null, alt]))[::-1]
    thresholds = [math.inf, *(float(t) for t in distinct), -math.inf]
    n0, n1 = null.shape[0], alt.shape[0]
    points = []
    for tau in thresholds:
        fpr = (n0 - np.searchsorted(null, tau, side="left")) / n0
        tpr = (n1 - np.searchsorted(alt, tau, side="left")) / n1
        points.append((float(fpr), float(tpr)))
    return RocCurve(tuple(thresholds), tuple(points), auc(scores_null, scores_alt))


def histogram(scores: list[float], bin_count: int) -> list[tuple[float, int]]:
    """Uniform bins over [min, max]; the maximum falls in the last bin."""
    if not len(scores):
        raise InvalidParameterError("histogram needs nonempty scores")
    if bin_count < 1:
        raise InvalidParameterError(f"bin count must be >= 1, got {bin_count}")
    arr = np.asarray(scores, dtype=np.float64)
    lo = float(arr.min())
    hi = float(arr.max())
    width = (hi - lo) / bin_count
    if width == 0.0:
        counts = [len(scores)] + [0] * (bin_count - 1)
        return [(lo, counts[i]) for i in range(bin_count)]
    idx = np.clip(((arr - lo) / width).astype(np.int64), 0, bin_count - 1)
    counts = np.bincount(idx, minlength=bin_count)
    return [(lo + i * width, int(counts[i])) for i in range(bin_count)]


# ---------------------------------------------------------------------------
# CSV persistence

TRIALS_HEADER = ["trial", "hypothesis", "statistic", "decision", "wall_time_s"]
ROC_HEADER = ["threshold", "fpr", "tpr"]
HISTOGRAM_HEADER = ["bin_left", "count"]


def _fmt(x: float) -> str:
    return repr(float(x))


def _open_out(path):
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise DataFormatError(f"cannot write {path}: {exc}") from exc


def emit_trials_csv(records: list[TrialRecord], path) -> None:
    with _open_out(path) as handle:
        writer = csv.writer(handle)
        writer.writerow(TRIALS_HEADER)
        for r in records:
            writer.writerow(
                [r.trial_index, r.hypothesis.value, _fmt(r.statistic), r.decision.value, _fmt(r.wall_time)]
            )


def emit_roc_csv(curve: RocCurve, path) -> None:
    with _open_out(path) as handle:
        writer = csv.writer(handle)
        writer.writerow(ROC_HEADER)
        for tau, (fpr, tpr) in zip(curve.thresholds, curve.points):
            writer.writerow([_fmt(tau), _fmt(fpr), _fmt(tpr)])
        handle.write(f"# auc={curve.auc:.12g}\n")


def emit_histogram_csv(hist: list[tuple[float, int]], path) -> None:
    with _open_out(path) as handle:
        writer = csv.writer(handle)
        writer.writerow(HISTOGRAM_HEADER)
        for left, count in hist:
            writer.writerow([_fmt(left), count])


def emit_csv(obj, path) -> None:
    """Write trial records, an ROC curve, or a histogram to ``path``.

    An empty list is written as a header-only trials file.
    """
    if isinstance(obj, RocCurve):
        emit_roc_csv(obj, path)
    elif isinstance(obj, list) and obj and isinstance(obj[0], tuple):
        emit_histogram_csv(obj, path)
    elif isinstance(obj, list):
        emit_trials_csv(obj, path)
    else:
        raise InvalidParameterError(f"cannot serialize {type(obj).__name__}")


def read_trials_csv(path) -> list[TrialRecord]:
    try:
        handle = open(path, newline="")
    except OSError as exc:
        raise DataFormatError(f"cannot open {path}: {exc}") from exc
    records = []
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != TRIALS_HEADER:
            raise DataFormatError(f"{path}:1: expected header {TRIALS_HEADER}, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row or row[0].startswith("#"):
                continue
            if len(row) != 5:
                raise DataFormatError(f"{path}:{lineno}: expected 5 fields")
            try:
                records.append(
                    TrialRecord(
                        int(row[0]),
                        Hypothesis(row[1]),
                        float(row[2]),
                        Decision(row[3]),
                        float(row[4]),
                    )
                )
            except ValueError as exc:
                raise DataFormatError(f"{path}:{lineno}: {exc}") from exc
    return records
