"""The rank-and-validate pipeline.

One run: build the dataset, hold out a test split once, then for each
bootstrap b resample the training rows (resampling seed = b), fit the
ranker on the resample, validate the k best-feature subsets for
k = 1..min(p, cap) on the untouched test set, and score the ranking
against the dataset's ground truth when it has one. Records are
serialized one JSON line each; everything is reproducible from the
config alone.

Bootstraps are the unit of parallelism: each is an independent job, and
all persistence happens in the coordinating process.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from . import core, metrics
from .dataio import CsvAdapterSpec, load_csv
from .datagen import Dataset, SynclfSpec, SynregSpec, make_classification, make_regression
from .errors import (
    CacheCorruptError,
    ConfigError,
    DegenerateTruthError,
    SizeExceedsDatasetError,
    TaskMismatchError,
)
from .persistence import Callback, Event, JsonlCallback, LocalStorage, atomic_write, emit
from .rankers import FeatureRanking, get_ranker
from .sampling import ResampleSpec, SplitSpec, derive_rng, resample, split
from .validators import ValidatorSpec, fit_predict, score

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    dataset: dict
    ranker: dict
    validator: dict = field(default_factory=lambda: {"name": "knn"})
    cv: dict = field(default_factory=lambda: {"method": "holdout", "test_fraction": 0.2})
    resample: dict = field(default_factory=lambda: {"method": "bootstrap", "sample_size": 1.0})
    bootstraps: int = 25
    subset_cap: int = 50
    seed: int = 0
    cache: str = "use"  # use | overwrite | off
    workers: object = 1  # int or "auto"
    name: str = ""
    storage: dict = field(default_factory=dict)
    callbacks: list = field(default_factory=list)

    def __post_init__(self):
        if self.bootstraps < 1:
            raise ConfigError("bootstraps must be >= 1")
        if self.subset_cap < 1:
            raise ConfigError("subset_cap must be >= 1")
        if self.cache not in ("use", "overwrite", "off"):
            raise ConfigError("cache must be one of use/overwrite/off")
        if not isinstance(self.ranker, dict) or "name" not in self.ranker:
            raise ConfigError("ranker section needs a 'name'")
        if not isinstance(self.validator, dict) or "name" not in self.validator:
            raise ConfigError("validator section needs a 'name'")

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config root must be a mapping")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "dataset" not in doc or "ranker" not in doc:
            raise ConfigError("config needs at least 'dataset' and 'ranker'")
        return cls(**doc)

    def to_dict(self) -> dict:
        return asdict(self)

    # hash inputs exclude bookkeeping that cannot change results
    _IDENTITY_FIELDS = ("dataset", "cv", "resample", "ranker", "validator",
                        "bootstraps", "subset_cap", "seed")

    def identity(self) -> dict:
        return {k: getattr(self, k) for k in self._IDENTITY_FIELDS}

    def config_hash(self) -> str:
        blob = json.dumps(self.identity(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()

    def ranking_stage_hash(self) -> str:
        """Cache key for fitted rankings: excludes the validator so one
        fit ranker can serve several validation estimators."""
        doc = {k: getattr(self, k) for k in ("dataset", "cv", "resample", "ranker", "seed")}
        blob = json.dumps(doc, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()

    def validation_stage_hash(self) -> str:
        doc = {"rank": self.ranking_stage_hash(), "validator": self.validator,
               "subset_cap": self.subset_cap}
        blob = json.dumps(doc, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()

    def output_dir(self) -> Path:
        configured = self.storage.get("dir") if self.storage else None
        if configured:
            return Path(configured)
        return Path("runs") / (self.name or self.config_hash()[:12])


def load_config(path, overrides: Optional[list[str]] = None) -> RunConfig:
    """Read a YAML config file and apply dotted --set overrides."""
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config root must be a mapping")
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        value = yaml.safe_load(raw)
        node = doc
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"--set {key}: {part} is not a mapping")
        node[parts[-1]] = value
    return RunConfig.from_dict(doc)


# ---------------------------------------------------------------------------
# Dataset / spec construction from config sections
# ---------------------------------------------------------------------------

def build_dataset(section: dict) -> Dataset:
    if not isinstance(section, dict) or "kind" not in section:
        raise ConfigError("dataset section needs a 'kind' (synclf/synreg/csv)")
    kind = section["kind"]
    fields = {k: v for k, v in section.items() if k != "kind"}
    try:
        if kind == "synclf":
            return make_classification(SynclfSpec(**fields))
        if kind == "synreg":
            return make_regression(SynregSpec(**fields))
        if kind == "csv":
            return load_csv(CsvAdapterSpec(**fields))
    except TypeError as exc:
        raise ConfigError(f"bad dataset fields for kind {kind!r}: {exc}") from None
    raise ConfigError(f"unknown dataset kind {kind!r}")


def _split_spec(config: RunConfig) -> SplitSpec:
    cv = dict(config.cv)
    cv.setdefault("seed", config.seed)
    try:
        return SplitSpec(**cv)
    except TypeError as exc:
        raise ConfigError(f"bad cv section: {exc}") from None


def _resample_spec(config: RunConfig, bootstrap: int) -> ResampleSpec:
    section = {k: v for k, v in config.resample.items() if k != "seed"}
    try:
        return ResampleSpec(seed=bootstrap, **section)
    except TypeError as exc:
        raise ConfigError(f"bad resample section: {exc}") from None


def _validator_spec(config: RunConfig, task: str) -> ValidatorSpec:
    params = config.validator.get("params") or {}
    try:
        return ValidatorSpec(kind=config.validator["name"], task=task, **params)
    except TypeError as exc:
        raise ConfigError(f"bad validator params: {exc}") from None


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass
class RunRecord:
    run_id: str
    record_id: str
    bootstrap: int
    fit_time_seconds: float
    curve_sizes: list
    curve_scores: list
    importances: Optional[list] = None
    support: Optional[list] = None
    ranking: Optional[list] = None
    support_size: Optional[int] = None
    support_score: Optional[float] = None
    r2: Optional[float] = None
    logloss: Optional[float] = None
    support_accuracy: Optional[float] = None
    timestamp: str = ""
    schema_version: int = SCHEMA_VERSION

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunRecord":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in doc.items() if k in known})


def _ranking_to_payload(ranking: FeatureRanking) -> dict:
    return {
        "importances": None if ranking.importances is None else [float(v) for v in ranking.importances],
        "support": None if ranking.support is None else [int(v) for v in ranking.support],
        "ranking": None if ranking.ranking is None else [int(v) for v in ranking.ranking],
        "fit_time_seconds": float(ranking.fit_time_seconds),
    }


def _payload_to_ranking(doc: dict) -> FeatureRanking:
    return FeatureRanking(
        importances=None if doc["importances"] is None else np.asarray(doc["importances"], dtype=np.float64),
        support=None if doc["support"] is None else np.asarray(doc["support"], dtype=bool),
        ranking=None if doc["ranking"] is None else np.asarray(doc["ranking"], dtype=np.int64),
        fit_time_seconds=float(doc.get("fit_time_seconds", 0.0)),
    )


# ---------------------------------------------------------------------------
# Single-bootstrap execution (runs in worker processes)
# ---------------------------------------------------------------------------

def _fit_indices(dataset: Dataset, config: RunConfig, bootstrap: int,
                 train_idx: np.ndarray, test_idx: np.ndarray) -> np.ndarray:
    fit_idx = resample(train_idx, _resample_spec(config, bootstrap))
    if np.isin(fit_idx, test_idx).any():
        raise RuntimeError("leakage guard tripped: test rows in ranker input")
    return fit_idx


def _fit_ranker(dataset: Dataset, config: RunConfig, fit_idx: np.ndarray) -> FeatureRanking:
    ranker = get_ranker(config.ranker["name"], config.ranker.get("params"))
    if not ranker.capabilities.supports(dataset.task):
        raise TaskMismatchError(
            f"ranker {ranker.name} does not support task {dataset.task}")
    t0 = time.perf_counter()
    ranking = ranker.fit(dataset.X[fit_idx], dataset.y[fit_idx], dataset.task)
    elapsed = time.perf_counter() - t0
    return FeatureRanking(importances=ranking.importances, support=ranking.support,
                          ranking=ranking.ranking, fit_time_seconds=elapsed)


def _subset_order(ranking: FeatureRanking) -> Optional[np.ndarray]:
    if ranking.ranking is not None:
        return core.order_from_ranking(ranking.ranking)
    if ranking.importances is not None:
        return core.order_from_importances(ranking.importances)
    return None


def _validate_ranking(dataset: Dataset, config: RunConfig, ranking: FeatureRanking,
                      fit_idx: np.ndarray, test_idx: np.ndarray) -> dict:
    vspec = _validator_spec(config, dataset.task)
    X_tr, y_tr = dataset.X[fit_idx], dataset.y[fit_idx]
    X_te, y_te = dataset.X[test_idx], dataset.y[test_idx]

    def subset_score(cols: np.ndarray) -> float:
        pred = fit_predict(vspec, X_tr[:, cols], y_tr, X_te[:, cols])
        return score(dataset.task, y_te, pred)

    order = _subset_order(ranking)
    sizes: list[int] = []
    scores: list[float] = []
    k_max = min(dataset.n_features, config.subset_cap)
    if order is not None:
        for k in range(1, k_max + 1):
            sizes.append(k)
            scores.append(subset_score(order[:k]))

    support_size = None
    support_score = None
    if ranking.support is not None:
        chosen = np.flatnonzero(ranking.support)
        support_size = int(chosen.size)
        if chosen.size:
            prefix = (order is not None and chosen.size <= k_max
                      and set(chosen.tolist()) == set(order[:chosen.size].tolist()))
            if order is None:
                # support-only ranker: that single subset is the curve
                sizes = [support_size]
                scores = [subset_score(chosen)]
            elif not prefix:
                support_score = subset_score(chosen)
    return {"curve_sizes": sizes, "curve_scores": scores,
            "support_size": support_size, "support_score": support_score}


def _ground_truth_metrics(dataset: Dataset, ranking: FeatureRanking) -> dict:
    out = {"r2": None, "logloss": None, "support_accuracy": None}
    if not dataset.has_ground_truth:
        return out
    if ranking.importances is not None:
        try:
            out["r2"] = metrics.importance_r2(dataset.importances, ranking.importances)
        except DegenerateTruthError:
            out["r2"] = None  # uniform truth: reported as n/a downstream
        out["logloss"] = metrics.importance_logloss(dataset.relevant, ranking.importances)
    if ranking.support is not None:
        out["support_accuracy"] = metrics.support_accuracy(dataset.relevant, ranking.support)
    return out


def _bootstrap_job(config_doc: dict, bootstrap: int,
                   cached_ranking: Optional[dict] = None) -> dict:
    """Full work for one bootstrap; safe to run in a separate process."""
    config = RunConfig.from_dict(config_doc)
    dataset = build_dataset(config.dataset)
    train_idx, test_idx = split(dataset.n_samples, _split_spec(config))
    fit_idx = _fit_indices(dataset, config, bootstrap, train_idx, test_idx)
    if cached_ranking is None:
        ranking = _fit_ranker(dataset, config, fit_idx)
    else:
        ranking = _payload_to_ranking(cached_ranking)
    result = _validate_ranking(dataset, config, ranking, fit_idx, test_idx)
    result["ranking_payload"] = _ranking_to_payload(ranking)
    result["bootstrap"] = bootstrap
    return result


# ---------------------------------------------------------------------------
# Run orchestration
# ---------------------------------------------------------------------------

def _build_callbacks(config: RunConfig, out_dir: Path) -> list[Callback]:
    out: list[Callback] = []
    for section in config.callbacks or []:
        kind = section.get("kind")
        if kind == "jsonl":
            path = Path(section.get("path", "events.jsonl"))
            if not path.is_absolute():
                path = out_dir / path
            out.append(JsonlCallback(path))
        else:
            raise ConfigError(f"unknown callback kind {kind!r}")
    return out


def _worker_count(config: RunConfig, workers) -> int:
    value = workers if workers is not None else config.workers
    if value in ("auto", None):
        return os.cpu_count() or 1
    return max(int(value), 1)


class _RankingCache:
    """Stage-keyed artifact cache on top of LocalStorage."""

    def __init__(self, config: RunConfig, storage: Optional[LocalStorage]):
        self.policy = config.cache if storage is not None else "off"
        self.storage = storage
        self.rank_key = config.ranking_stage_hash()
        self.val_key = config.validation_stage_hash()

    def _get(self, key: str) -> Optional[dict]:
        if self.policy != "use" or self.storage is None:
            return None
        try:
            blob = self.storage.restore_artifact(key)
        except CacheCorruptError:
            return None  # fail over to recompute
        if blob is None:
            return None
        try:
            return json.loads(blob.decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            return None

    def _put(self, key: str, doc: dict) -> None:
        if self.policy == "off" or self.storage is None:
            return
        self.storage.save_artifact(key, json.dumps(doc, sort_keys=True).encode("utf-8"))

    def get_ranking(self, b: int) -> Optional[dict]:
        return self._get(f"artifacts/rank/{self.rank_key}/{b}.bin")

    def put_ranking(self, b: int, doc: dict) -> None:
        self._put(f"artifacts/rank/{self.rank_key}/{b}.bin", doc)

    def get_validation(self, b: int) -> Optional[dict]:
        return self._get(f"artifacts/val/{self.val_key}/{b}.bin")

    def put_validation(self, b: int, doc: dict) -> None:
        self._put(f"artifacts/val/{self.val_key}/{b}.bin", doc)


def run(config: RunConfig, workers: Optional[int] = None,
        persist: bool = True) -> list[RunRecord]:
    """Execute a full run and return one record per bootstrap."""
    dataset = build_dataset(config.dataset)
    ranker = get_ranker(config.ranker["name"], config.ranker.get("params"))
    if not ranker.capabilities.supports(dataset.task):
        raise TaskMismatchError(
            f"ranker {ranker.name} does not support task {dataset.task}")
    _validator_spec(config, dataset.task).validate()
    _split_spec(config).validate(dataset.n_samples)

    out_dir = config.output_dir()
    storage = LocalStorage(out_dir) if persist else None
    cache = _RankingCache(config, storage)
    callbacks = _build_callbacks(config, out_dir) if persist else []
    emit(callbacks, Event("config", {"config": config.to_dict()}))

    config_doc = config.to_dict()
    run_id = config.config_hash()

    jobs: list[tuple[int, Optional[dict]]] = []  # (bootstrap, cached ranking)
    results: dict[int, dict] = {}
    for b in range(config.bootstraps):
        cached_val = cache.get_validation(b)
        cached_rank = cache.get_ranking(b)
        if cached_val is not None and cached_rank is not None:
            results[b] = dict(cached_val, ranking_payload=cached_rank, bootstrap=b)
        else:
            jobs.append((b, cached_rank))

    n_workers = _worker_count(config, workers)
    if jobs:
        if n_workers > 1:
            with ProcessPoolExecutor(max_workers=n_workers) as pool:
                futures = [pool.submit(_bootstrap_job, config_doc, b, cached)
                           for b, cached in jobs]
                for (b, _), fut in zip(jobs, futures):
                    results[b] = fut.result()
        else:
            for b, cached in jobs:
                results[b] = _bootstrap_job(config_doc, b, cached)

    records: list[RunRecord] = []
    for b in range(config.bootstraps):
        result = results[b]
        payload = result["ranking_payload"]
        cache.put_ranking(b, payload)
        cache.put_validation(b, {k: result[k] for k in
                                 ("curve_sizes", "curve_scores", "support_size",
                                  "support_score")})
        ranking = _payload_to_ranking(payload)
        gt = _ground_truth_metrics(dataset, ranking)
        record = RunRecord(
            run_id=run_id,
            record_id=hashlib.sha256(f"{run_id}:{b}".encode()).hexdigest(),
            bootstrap=b,
            fit_time_seconds=payload["fit_time_seconds"],
            curve_sizes=result["curve_sizes"],
            curve_scores=result["curve_scores"],
            importances=payload["importances"],
            support=payload["support"],
            ranking=payload["ranking"],
            support_size=result["support_size"],
            support_score=result["support_score"],
            r2=gt["r2"],
            logloss=gt["logloss"],
            support_accuracy=gt["support_accuracy"],
            timestamp=datetime.now(timezone.utc).isoformat(),
        )
        records.append(record)
        emit(callbacks, Event("metric", {"name": "fit_time_seconds",
                                         "value": record.fit_time_seconds,
                                         "tags": {"bootstrap": b}}))

    if persist:
        write_records(out_dir, config, records)
    return records


def write_records(out_dir, config: RunConfig, records: list[RunRecord]) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = "".join(r.to_json_line() + "\n" for r in records)
    atomic_write(out_dir / "records.jsonl", lines.encode("utf-8"))
    atomic_write(out_dir / "config.yaml",
                 yaml.safe_dump(config.to_dict(), sort_keys=True).encode("utf-8"))
    return out_dir / "records.jsonl"


def read_records(path) -> list[RunRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(RunRecord.from_dict(json.loads(line)))
    return out


# ---------------------------------------------------------------------------
# Sample-size sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepRecord:
    sample_size: int
    bootstrap: int
    fit_time_seconds: float
    curve_sizes: list
    curve_scores: list

    def mean_score(self) -> float:
        return float(np.mean(self.curve_scores)) if self.curve_scores else float("nan")


def sweep_sample_size(config: RunConfig, sizes, bootstraps: int,
                      workers: Optional[int] = None,
                      persist: bool = True) -> list[SweepRecord]:
    """Refit at increasing training sizes to expose time/learning curves.

    Each size subsamples the training partition (seeded by size), then
    runs `bootstraps` bootstrap iterations on the subsample.
    """
    dataset = build_dataset(config.dataset)
    train_idx, test_idx = split(dataset.n_samples, _split_spec(config))
    sizes = [int(s) for s in sizes]
    for s in sizes:
        if s > train_idx.size:
            raise SizeExceedsDatasetError(
                f"sweep size {s} exceeds training partition of {train_idx.size}")
        if s < 1:
            raise ConfigError("sweep sizes must be >= 1")

    out: list[SweepRecord] = []
    for s in sizes:
        if s == train_idx.size:
            base = train_idx
        else:
            rng = derive_rng(config.seed, "sweep", s)
            base = np.sort(rng.choice(train_idx, size=s, replace=False))
        for b in range(bootstraps):
            fit_idx = resample(base, _resample_spec(config, b))
            if np.isin(fit_idx, test_idx).any():
                raise RuntimeError("leakage guard tripped in sweep")
            ranking = _fit_ranker(dataset, config, fit_idx)
            result = _validate_ranking(dataset, config, ranking, fit_idx, test_idx)
            out.append(SweepRecord(sample_size=s, bootstrap=b,
                                   fit_time_seconds=ranking.fit_time_seconds,
                                   curve_sizes=result["curve_sizes"],
                                   curve_scores=result["curve_scores"]))
    _ = workers  # sweep points are cheap; kept serial for stable timing
    if persist:
        out_dir = config.output_dir()
        out_dir.mkdir(parents=True, exist_ok=True)
        lines = "".join(json.dumps(asdict(r), sort_keys=True) + "\n" for r in out)
        atomic_write(out_dir / "sweep.jsonl", lines.encode("utf-8"))
        atomic_write(out_dir / "config.yaml",
                     yaml.safe_dump(config.to_dict(), sort_keys=True).encode("utf-8"))
    return out


# ---------------------------------------------------------------------------
# Best-run aggregation
# ---------------------------------------------------------------------------

@dataclass
class RunGroup:
    config: RunConfig
    records: list[RunRecord]

    @property
    def dataset_name(self) -> str:
        return self.config.dataset.get("name") or self.config.dataset.get("kind", "dataset")

    @property
    def ranker_name(self) -> str:
        return self.config.ranker["name"]

    @property
    def validator_name(self) -> str:
        return self.config.validator["name"]


@dataclass
class Aggregate:
    dataset: str
    ranker: str
    validator: str
    run_id: str
    n_bootstraps: int
    curve_sizes: list
    curve_mean: list
    curve_std: list
    mean_validation_score: float
    flat_mean_score: float
    fit_time_mean: float
    r2_mean: Optional[float] = None
    r2_std: Optional[float] = None
    logloss_mean: Optional[float] = None
    logloss_std: Optional[float] = None
    support_accuracy_mean: Optional[float] = None
    stability_mean_stdev: Optional[float] = None
    nogueira_phi: Optional[float] = None
    importance_mean: Optional[list] = None
    importance_stdev: Optional[list] = None
    ground_truth: Optional[list] = None


def _mean_std(values: list) -> tuple[Optional[float], Optional[float]]:
    vals = [v for v in values if v is not None]
    if not vals:
        return None, None
    mean = float(np.mean(vals))
    std = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
    return mean, std


def aggregate_group(group: RunGroup, ground_truth: Optional[np.ndarray] = None) -> Aggregate:
    records = sorted(group.records, key=lambda r: r.bootstrap)
    sizes = records[0].curve_sizes
    for r in records:
        if r.curve_sizes != sizes:
            raise ValueError("records in a group must share curve subset sizes")
    scores = np.asarray([r.curve_scores for r in records], dtype=np.float64)
    curve_mean = scores.mean(axis=0) if scores.size else np.asarray([])
    curve_std = (scores.std(axis=0, ddof=1) if len(records) > 1
                 else np.zeros_like(curve_mean))
    mean_validation = float(curve_mean.mean()) if curve_mean.size else float("nan")
    flat_mean = float(scores.mean()) if scores.size else float("nan")

    r2_mean, r2_std = _mean_std([r.r2 for r in records])
    ll_mean, ll_std = _mean_std([r.logloss for r in records])
    sa_mean, _ = _mean_std([r.support_accuracy for r in records])

    stability = None
    imp_mean = None
    imp_std = None
    importance_rows = [r.importances for r in records if r.importances is not None]
    if len(importance_rows) == len(records) and len(records) >= 2:
        W = np.asarray(importance_rows, dtype=np.float64)
        stability = metrics.importance_stability(W).mean_stdev
        imp_mean = W.mean(axis=0).tolist()
        imp_std = W.std(axis=0, ddof=1).tolist()
    elif len(importance_rows) == len(records) and records:
        W = np.asarray(importance_rows, dtype=np.float64)
        imp_mean = W.mean(axis=0).tolist()
        imp_std = [0.0] * W.shape[1]

    phi = None
    support_rows = [r.support for r in records if r.support is not None]
    if len(support_rows) == len(records) and len(records) >= 2:
        subsets = [set(np.flatnonzero(np.asarray(s, dtype=bool)).tolist())
                   for s in support_rows]
        p = len(support_rows[0])
        try:
            phi = metrics.nogueira_stability(subsets, p)
        except Exception:
            phi = None  # degenerate selections render as n/a

    return Aggregate(
        dataset=group.dataset_name,
        ranker=group.ranker_name,
        validator=group.validator_name,
        run_id=group.config.config_hash(),
        n_bootstraps=len(records),
        curve_sizes=list(sizes),
        curve_mean=curve_mean.tolist(),
        curve_std=np.asarray(curve_std).tolist(),
        mean_validation_score=mean_validation,
        flat_mean_score=flat_mean,
        fit_time_mean=float(np.mean([r.fit_time_seconds for r in records])),
        r2_mean=r2_mean, r2_std=r2_std,
        logloss_mean=ll_mean, logloss_std=ll_std,
        support_accuracy_mean=sa_mean,
        stability_mean_stdev=stability,
        nogueira_phi=phi,
        importance_mean=imp_mean,
        importance_stdev=imp_std,
        ground_truth=None if ground_truth is None else list(map(float, ground_truth)),
    )


def aggregate_best_run(groups: list[RunGroup]) -> list[Aggregate]:
    """Reduce competing run groups to the best one per (dataset, ranker,
    validator), judged by the mean score over all bootstraps and subset
    sizes, then bootstrap-average the winner."""
    by_key: dict[tuple, list[RunGroup]] = {}
    for g in groups:
        by_key.setdefault((g.dataset_name, g.ranker_name, g.validator_name), []).append(g)
    out = []
    for key in sorted(by_key):
        candidates = [aggregate_group(g) for g in by_key[key]]
        best = max(range(len(candidates)), key=lambda i: candidates[i].flat_mean_score)
        agg = candidates[best]
        source = by_key[key][best]
        if source.config.dataset.get("kind") in ("synclf", "synreg"):
            truth = build_dataset(source.config.dataset).importances
            agg.ground_truth = None if truth is None else list(map(float, truth))
        out.append(agg)
    return out


def load_run_groups(root) -> list[RunGroup]:
    """Collect (config.yaml, records.jsonl) pairs under a directory tree."""
    root = Path(root)
    groups = []
    for records_path in sorted(root.rglob("records.jsonl")):
        config_path = records_path.parent / "config.yaml"
        if not config_path.exists():
            continue
        doc = yaml.safe_load(config_path.read_text(encoding="utf-8"))
        groups.append(RunGroup(config=RunConfig.from_dict(doc),
                               records=read_records(records_path)))
    return groups
