"""Rater-agreement and validity statistics for maturity scores.

Degenerate inputs (a constant rater pair for kappa, a panel with no variance
for the ICC) return an :class:`Undefined` value instead of a conventional
number, so a validation study cannot silently absorb a 0/0.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union

import numpy as np

from .model import Ail2Error, SchemaError, _load_json, _Reader, dumps
from .special import f_ppf

VALUE_KINDS = {"dimension": 4, "total": 28, "capability": 3}
KAPPA_SCHEMES = ("linear", "quadratic")
ICC_FORMS = ("icc2_1", "icc2_k")
GROUP_ORDER = ("weak", "borderline", "strong")

DEFAULT_PLD_FLAG = 0.3  # tool convention, not a validated cutoff


class StatisticsError(Ail2Error):
    """Invalid input to a statistic (length mismatch, out-of-range score, ...)."""


@dataclass(frozen=True)
class Undefined:
    """A statistic with no defined value for the given input."""

    statistic: str
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {"statistic": self.statistic, "defined": False, "reason": self.reason}


# ---------------------------------------------------------------------------
# Panels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RaterPanel:
    """Complete cases x raters score matrix."""

    case_ids: tuple[str, ...]
    rater_ids: tuple[str, ...]
    scores: tuple[tuple[int, ...], ...]
    value_kind: str = "dimension"

    def __post_init__(self):
        n, k = len(self.case_ids), len(self.rater_ids)
        if n < 2:
            raise StatisticsError("a panel needs at least 2 cases")
        if k < 2:
            raise StatisticsError("a panel needs at least 2 raters")
        if len(set(self.case_ids)) != n:
            raise StatisticsError("case_ids must be unique")
        if len(set(self.rater_ids)) != k:
            raise StatisticsError("rater_ids must be unique")
        if self.value_kind not in VALUE_KINDS:
            raise StatisticsError(f"value_kind must be one of {', '.join(VALUE_KINDS)}")
        if len(self.scores) != n:
            raise StatisticsError(f"expected {n} score rows, got {len(self.scores)}")
        top = VALUE_KINDS[self.value_kind]
        for i, row in enumerate(self.scores):
            if len(row) != k:
                raise StatisticsError(f"row {i} has {len(row)} scores, expected {k}")
            for value in row:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise StatisticsError(f"row {i}: scores must be integers")
                if not 0 <= value <= top:
                    raise StatisticsError(f"row {i}: score {value} outside [0, {top}]")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.case_ids), len(self.rater_ids)

    @property
    def categories(self) -> int:
        return VALUE_KINDS[self.value_kind] + 1

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.scores]

    def to_dict(self) -> dict[str, Any]:
        return {
            "case_ids": list(self.case_ids),
            "rater_ids": list(self.rater_ids),
            "scores": [list(row) for row in self.scores],
            "value_kind": self.value_kind,
        }


def panel_from_dict(data: Any, strict: bool = True) -> RaterPanel:
    r = _Reader(data, "", strict)
    r.check_keys(["case_ids", "rater_ids", "scores", "value_kind"])
    case_ids = r.strings("case_ids")
    rater_ids = r.strings("rater_ids")
    value_kind = r.choice("value_kind", tuple(VALUE_KINDS))
    rows = []
    for path, row in r.items("scores"):
        if not isinstance(row, list):
            raise SchemaError(path, "expected a list of scores")
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, int):
                raise SchemaError(f"{path}[{j}]", "expected an integer")
        rows.append(tuple(row))
    try:
        return RaterPanel(case_ids, rater_ids, tuple(rows), value_kind)
    except StatisticsError as exc:
        raise SchemaError("scores", str(exc)) from None


def parse_panel(document: str | bytes, strict: bool = True) -> RaterPanel:
    return panel_from_dict(_load_json(document), strict=strict)


def serialize_panel(panel: RaterPanel) -> str:
    return dumps(panel.to_dict())


# ---------------------------------------------------------------------------
# Two-rater agreement
# ---------------------------------------------------------------------------


def _check_pair(a: Sequence[int], b: Sequence[int], min_len: int = 1):
    if len(a) != len(b):
        raise StatisticsError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < min_len:
        raise StatisticsError(f"need at least {min_len} paired scores")


def exact_agreement(a: Sequence[int], b: Sequence[int]) -> float:
    """Fraction of positions where the two raters gave the same score."""
    _check_pair(a, b)
    return sum(x == y for x, y in zip(a, b)) / len(a)


def disagreement_weights(categories: int, scheme: str = "quadratic") -> np.ndarray:
    if scheme not in KAPPA_SCHEMES:
        raise StatisticsError(f"weight scheme must be one of {', '.join(KAPPA_SCHEMES)}")
    idx = np.arange(categories)
    dist = np.abs(idx[:, None] - idx[None, :]) / (categories - 1)
    return dist if scheme == "linear" else dist ** 2


def weighted_kappa(
    a: Sequence[int],
    b: Sequence[int],
    categories: int = 5,
    scheme: str = "quadratic",
) -> Union[float, Undefined]:
    """Weighted Cohen's kappa for two raters on an ordinal 0..categories-1 scale.

    kappa = 1 - sum(w * observed) / sum(w * expected), with disagreement
    weights |i-j|/(k-1) (linear) or (i-j)^2/(k-1)^2 (quadratic), observed the
    joint proportion table and expected the outer product of the marginals.
    """
    _check_pair(a, b, min_len=2)
    if categories < 2:
        raise StatisticsError("need at least 2 categories")
    a_arr = np.asarray(a)
    b_arr = np.asarray(b)
    for name, arr in (("a", a_arr), ("b", b_arr)):
        if not np.issubdtype(arr.dtype, np.integer):
            raise StatisticsError(f"rater {name}: scores must be integers")
        if arr.min() < 0 or arr.max() > categories - 1:
            raise StatisticsError(f"rater {name}: scores must lie in [0, {categories - 1}]")
    w = disagreement_weights(categories, scheme)

    observed = np.zeros((categories, categories))
    np.add.at(observed, (a_arr, b_arr), 1.0)
    observed /= len(a_arr)
    expected = np.outer(observed.sum(axis=1), observed.sum(axis=0))

    denom = float((w * expected).sum())
    if denom == 0.0:
        return Undefined("weighted_kappa", "zero expected disagreement (both raters constant)")
    return 1.0 - float((w * observed).sum()) / denom


# ---------------------------------------------------------------------------
# Intraclass correlation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeanSquares:
    rows: float
    columns: float
    error: float


@dataclass(frozen=True)
class IccResult:
    """ICC estimate with its confidence interval.

    ``ci_lower``/``ci_upper`` are None when the approximate interval does not
    exist for this panel; ``interval_note`` then says why.
    """

    estimate: float
    icc_form: str
    ci_lower: float | None
    ci_upper: float | None
    confidence_level: float
    mean_squares: MeanSquares
    model: str = "two-way random effects, absolute agreement"
    interval_note: str | None = None

    @property
    def has_interval(self) -> bool:
        return self.ci_lower is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "statistic": "icc",
            "defined": True,
            "icc_form": self.icc_form,
            "model": self.model,
            "estimate": self.estimate,
            "ci_lower": _json_real(self.ci_lower),
            "ci_upper": _json_real(self.ci_upper),
            "confidence_level": self.confidence_level,
            "interval_note": self.interval_note,
            "mean_squares": {
                "rows": self.mean_squares.rows,
                "columns": self.mean_squares.columns,
                "error": self.mean_squares.error,
            },
        }


def _json_real(x: float | None) -> float | None:
    # JSON has no infinities; the interval note explains a null bound
    if x is None or not math.isfinite(x):
        return None
    return x


def anova_mean_squares(panel: RaterPanel) -> MeanSquares:
    """Two-way ANOVA mean squares, computed exactly from the integer scores."""
    n, k = panel.shape
    rows = panel.scores
    grand = sum(sum(r) for r in rows)
    correction = Fraction(grand * grand, n * k)
    ss_total = sum(x * x for r in rows for x in r) - correction
    ss_rows = Fraction(sum(sum(r) ** 2 for r in rows), k) - correction
    col_sums = [sum(r[j] for r in rows) for j in range(k)]
    ss_cols = Fraction(sum(c * c for c in col_sums), n) - correction
    ss_error = ss_total - ss_rows - ss_cols
    return MeanSquares(
        rows=float(ss_rows / (n - 1)),
        columns=float(ss_cols / (k - 1)),
        error=float(ss_error / ((n - 1) * (k - 1))),
    )


def satterthwaite_df(ms: MeanSquares, estimate: float, n: int, k: int) -> float:
    """Approximate denominator degrees of freedom for the ICC(2,1) interval."""
    a = k * estimate / (n * (1.0 - estimate))
    b = 1.0 + k * estimate * (n - 1) / (n * (1.0 - estimate))
    num = (a * ms.columns + b * ms.error) ** 2
    den = (a * ms.columns) ** 2 / (k - 1) + (b * ms.error) ** 2 / ((n - 1) * (k - 1))
    if den == 0.0:
        return math.nan
    return num / den


def _single_interval(ms: MeanSquares, single: float, n: int, k: int, alpha: float):
    # McGraw & Wong (1996) approximate interval for the single-measure
    # absolute-agreement coefficient.
    msr, msc, mse = ms.rows, ms.columns, ms.error
    if mse == 0.0 and msc == 0.0:
        return 1.0, 1.0, None
    v = satterthwaite_df(ms, single, n, k)
    if not (math.isfinite(v) and v > 0.0):
        return None, None, "Satterthwaite degrees of freedom are not positive for this panel"
    f_upper = f_ppf(1.0 - alpha / 2.0, n - 1, v)
    f_lower = f_ppf(1.0 - alpha / 2.0, v, n - 1)
    spread = k * msc + (k * n - k - n) * mse
    with np.errstate(all="ignore"):
        lower = np.float64(n * (msr - f_upper * mse)) / np.float64(f_upper * spread + n * msr)
        upper = np.float64(n * (f_lower * msr - mse)) / np.float64(spread + n * f_lower * msr)
    if not (np.isfinite(lower) and np.isfinite(upper)):
        return None, None, "approximate interval is not finite for this panel"
    return float(lower), float(upper), None


def _step_up(x: float, k: int) -> float:
    # Spearman-Brown maps (-1/(k-1), 1] monotonically onto (-inf, 1].
    if 1.0 + (k - 1) * x <= 0.0:
        return -math.inf
    return k * x / (1.0 + (k - 1) * x)


def icc(
    panel: RaterPanel,
    form: str = "icc2_1",
    confidence_level: float = 0.95,
) -> Union[IccResult, Undefined]:
    """Two-way random-effects, absolute-agreement ICC with a confidence interval.

    ``icc2_1`` is the single-rater coefficient
    (MSR - MSE) / (MSR + (k-1) MSE + k/n (MSC - MSE)); ``icc2_k`` is the
    reliability of the mean of the k raters,
    (MSR - MSE) / (MSR + (MSC - MSE)/n). The average-measures interval is
    the Spearman-Brown step-up of the single-measure interval; its lower
    bound is -inf when the single-measure bound lies at or below -1/(k-1).
    """
    if form not in ICC_FORMS:
        raise StatisticsError(f"icc form must be one of {', '.join(ICC_FORMS)}")
    if not 0.0 < confidence_level < 1.0:
        raise StatisticsError("confidence_level must lie in (0, 1)")
    n, k = panel.shape
    ms = anova_mean_squares(panel)
    if ms.rows == 0.0 and ms.columns == 0.0 and ms.error == 0.0:
        return Undefined("icc", "panel has zero total variance")

    # Never negative for n, k >= 2. Zero when MSR = MSC = 0 and n = k = 2.
    single_den = ms.rows + (k - 1) * ms.error + k / n * (ms.columns - ms.error)
    if single_den <= 0.0:
        return Undefined("icc", "single-measure denominator is zero (no case or rater variance)")
    single = (ms.rows - ms.error) / single_den

    if form == "icc2_1":
        estimate = single
    else:
        average_den = ms.rows + (ms.columns - ms.error) / n
        if average_den <= 0.0:
            return Undefined("icc", "average-measures denominator MSR + (MSC - MSE)/n is not positive")
        estimate = (ms.rows - ms.error) / average_den

    lower, upper, note = _single_interval(ms, single, n, k, 1.0 - confidence_level)
    if form == "icc2_k" and lower is not None:
        lower, upper = _step_up(lower, k), _step_up(upper, k)
        if lower == -math.inf:
            note = "average-measures lower bound is unbounded below"
    if lower is not None and not lower <= estimate <= upper:
        lower, upper = None, None
        note = "approximate interval does not bracket the estimate for this panel"
    return IccResult(estimate, form, lower, upper, confidence_level, ms, interval_note=note)


# ---------------------------------------------------------------------------
# Known-groups ordering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSummary:
    group: str
    cases: tuple[str, ...]
    minimum: float
    median: float
    maximum: float


@dataclass(frozen=True)
class OrderingView:
    """Ordering check over one set of (case, group, total) points."""

    label: str
    groups: tuple[GroupSummary, ...]
    holds_strictly: bool
    violations: tuple[tuple[str, str], ...]
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "holds_strictly": self.holds_strictly,
            "groups": [
                {"group": g.group, "cases": list(g.cases), "min": g.minimum,
                 "median": g.median, "max": g.maximum}
                for g in self.groups
            ],
            "violations": [list(v) for v in self.violations],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class KnownGroupsReport:
    pooled: OrderingView
    per_rater: tuple[OrderingView, ...] = ()

    @property
    def holds_strictly(self) -> bool:
        return self.pooled.holds_strictly

    @property
    def violations(self) -> tuple[tuple[str, str], ...]:
        return self.pooled.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds_strictly": self.holds_strictly,
            "pooled": self.pooled.to_dict(),
            "per_rater": [v.to_dict() for v in self.per_rater],
        }


# (lower group, higher group, strict): lower totals must stay below higher ones
_ORDER_RULES = (
    ("weak", "strong", True),
    ("weak", "borderline", False),
    ("borderline", "strong", False),
)


def _ordering(label: str, points: list[tuple[str, str, float]]) -> OrderingView:
    by_group: dict[str, list[tuple[str, float]]] = {}
    for case_id, group, total in points:
        by_group.setdefault(group, []).append((case_id, total))
    summaries = []
    for group in GROUP_ORDER:
        if group not in by_group:
            continue
        totals = [t for _, t in by_group[group]]
        summaries.append(GroupSummary(
            group, tuple(c for c, _ in by_group[group]),
            min(totals), statistics.median(totals), max(totals),
        ))

    violations = []
    for low, high, strict in _ORDER_RULES:
        for low_case, low_total in by_group.get(low, []):
            for high_case, high_total in by_group.get(high, []):
                bad = low_total >= high_total if strict else low_total > high_total
                if bad:
                    violations.append((low_case, high_case))
    notes = []
    if len(by_group) < 2:
        notes.append("only one group represented; ordering holds vacuously")
    return OrderingView(label, tuple(summaries), not violations, tuple(violations), tuple(notes))


def known_groups_check(evaluations: Iterable[Sequence[Any]]) -> KnownGroupsReport:
    """Check that weak < borderline < strong cases rank in the designed order.

    Each entry is ``(case_id, group, total)`` or ``(case_id, group, total, rater_id)``.
    The pooled view uses the median total per case; when rater ids are
    given, one additional view per rater is reported. Strong cases must
    strictly exceed weak ones; borderline cases may tie their neighbours.
    """
    entries = [tuple(e) for e in evaluations]
    if not entries:
        raise StatisticsError("known-groups check needs at least one case")
    per_case: dict[str, list[float]] = {}
    case_group: dict[str, str] = {}
    per_rater: dict[str, list[tuple[str, str, float]]] = {}
    for entry in entries:
        if len(entry) not in (3, 4):
            raise StatisticsError("entries are (case_id, group, total[, rater_id])")
        case_id, group, total = entry[:3]
        if group not in GROUP_ORDER:
            raise StatisticsError(f"group must be one of {', '.join(GROUP_ORDER)}")
        if case_group.setdefault(case_id, group) != group:
            raise StatisticsError(f"case {case_id!r} assigned to two groups")
        per_case.setdefault(case_id, []).append(total)
        if len(entry) == 4:
            per_rater.setdefault(entry[3], []).append((case_id, group, total))

    pooled = _ordering(
        "pooled median",
        [(c, case_group[c], statistics.median(ts)) for c, ts in per_case.items()],
    )
    views = tuple(_ordering(f"rater {r}", pts) for r, pts in per_rater.items())
    return KnownGroupsReport(pooled, views)


# ---------------------------------------------------------------------------
# Performance-learning divergence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivergenceResult:
    pld: float
    q_artifact: float
    q_transfer: float
    flag_threshold: float = DEFAULT_PLD_FLAG
    candidate_false_mastery: bool = field(default=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pld": self.pld,
            "q_artifact": self.q_artifact,
            "q_transfer": self.q_transfer,
            "flag_threshold": self.flag_threshold,
            "flag_threshold_normative": False,
            "candidate_false_mastery": self.candidate_false_mastery,
        }


def pld(q_artifact: float, q_transfer: float, flag_threshold: float = DEFAULT_PLD_FLAG) -> DivergenceResult:
    """Artifact quality minus transfer-task quality, both on a [0, 1] scale."""
    for name, value in (("q_artifact", q_artifact), ("q_transfer", q_transfer)):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise StatisticsError(f"{name} must be a real number")
        if not 0.0 <= value <= 1.0:
            raise StatisticsError(f"{name}={value} outside [0, 1]")
    diff = q_artifact - q_transfer
    return DivergenceResult(diff, q_artifact, q_transfer, flag_threshold, diff > flag_threshold)
