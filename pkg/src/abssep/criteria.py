"""Spectral criteria for absolute PPT and the verdict engine.

Every criterion is computed by a batch kernel that takes a ``(batch, N)`` array
of descending spectra, so the same code serves :func:`classify` (batch of one),
the sklearn estimator and the Monte Carlo surveys.

Tolerance policy
----------------
One threshold per spectrum, ``thr = psd_abs + psd_rel * lam_1``, is used for
every comparison: a matrix counts as PSD when its smallest eigenvalue is at
least ``-thr``, a sufficient "yes" inequality fires when its margin is at least
``-thr`` and a sufficient "no" inequality fires only when its margin exceeds
``+thr``. Because the yes-inequalities bound every row slack of every
matricization from below, and the no-inequalities bound a row slack from above,
this single threshold keeps the criteria mutually consistent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .exceptions import InternalInconsistency, OutOfRange, WrongDims
from .linalg import DEFAULT_TOLERANCES, Tolerances, all_ones_quadratic, jacobi_eigh
from .matricization import (
    build_lambda_sym,
    build_lambda_sym_batch,
    canonical_pairs,
    column_major_pair,
    sample_pairs,
)
from .spectrum import Dims, Spectrum

#: equalities in the ququart shortcut are tested to this absolute precision
EQUALITY_ATOL = 1e-12
#: conflicts between an inequality and the exact test are reported only when
#: they exceed this many thresholds, which absorbs Gershgorin-level slack
CONFLICT_FACTOR = 4.0
SAMPLED_NECESSITY_SAMPLES = 20_000


class VerdictKind(str, enum.Enum):
    ABS_PPT_EXACT = "absolutely-ppt-exact"
    ABS_PPT_SUFFICIENT = "absolutely-ppt-sufficient"
    NOT_ABS_PPT = "not-absolutely-ppt"
    INDETERMINATE = "indeterminate"

    @property
    def code(self) -> int:
        return _KIND_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "VerdictKind":
        return _CODE_KINDS[int(code)]

    @property
    def is_abs_ppt(self) -> bool:
        return self in (VerdictKind.ABS_PPT_EXACT, VerdictKind.ABS_PPT_SUFFICIENT)


_KIND_CODES = {k: i for i, k in enumerate(VerdictKind)}
_CODE_KINDS = {i: k for k, i in _KIND_CODES.items()}


@dataclass(frozen=True)
class CriterionOutcome:
    name: str
    fired: bool
    margin: float
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.margin):
            raise ValueError(f"{self.name}: margin must be finite, got {self.margin}")

    def to_dict(self) -> dict:
        return {"name": self.name, "fired": self.fired, "margin": self.margin, "detail": dict(self.detail)}

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionOutcome":
        return cls(d["name"], bool(d["fired"]), float(d["margin"]), dict(d.get("detail", {})))


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    by: Optional[str]
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "by": self.by, "witness": self.witness}

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(VerdictKind(d["kind"]), d.get("by"), d.get("witness"))


@dataclass(frozen=True)
class Report:
    dims: Dims
    eigenvalues: tuple
    verdict: Verdict
    outcomes: tuple
    diagnostics: dict

    def outcome(self, name: str) -> CriterionOutcome:
        for o in self.outcomes:
            if o.name == name:
                return o
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "dims": {"m": self.dims.m, "n": self.dims.n, "swapped": self.dims.swapped},
            "eigenvalues": list(self.eigenvalues),
            "verdict": self.verdict.to_dict(),
            "criteria": [o.to_dict() for o in self.outcomes],
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        dd = d["dims"]
        return cls(
            Dims(dd["m"], dd["n"], swapped=bool(dd.get("swapped", False))),
            tuple(d.get("eigenvalues", ())),
            Verdict.from_dict(d["verdict"]),
            tuple(CriterionOutcome.from_dict(c) for c in d["criteria"]),
            d["diagnostics"],
        )


# --------------------------------------------------------------------------
# batch kernels: V is (batch, N), descending; all return float arrays


def _lam(V, i):
    """1-based eigenvalue column."""
    return V[:, i - 1]


def thresholds(V: np.ndarray, tol: Tolerances) -> np.ndarray:
    return tol.threshold(V[:, 0])


def purity_batch(V):
    return np.einsum("bi,bi->b", V, V)


def qubit_margin(V):
    N = V.shape[1]
    return _lam(V, N - 1) + 2.0 * np.sqrt(_lam(V, N - 2) * _lam(V, N)) - _lam(V, 1)


def sum_margin(V, m):
    return V[:, -m:].sum(axis=1) - V[:, : m - 1].sum(axis=1)


def two_smallest_margin(V):
    return V[:, -1] + V[:, -2] - V[:, 0]


def sum3_margin(V):
    return V[:, -1] + V[:, -2] + V[:, -3] - V[:, 0]


def gurvits_margin(V):
    N = V.shape[1]
    return 1.0 / (N - 1) - purity_batch(V)


def general_no_margin(V, m):
    """Non-dominance of the last row of the column-major matricization."""
    N = V.shape[1]
    base = (m - 1) * (m - 2) // 2
    lhs = sum(_lam(V, base + k) for k in range(1, m))
    top = N + 1 - m * (m - 1) // 2
    rhs = sum(_lam(V, top - k) for k in range(1, m)) + 2.0 * _lam(V, N + 1 - m * (m + 1) // 2)
    return lhs - rhs


def ququart_no_margin(V):
    """Non-dominance of the last row of the row-major ququart matrix."""
    N = V.shape[1]
    lhs = _lam(V, 3) + _lam(V, 5) + _lam(V, 6)
    rhs = 2.0 * _lam(V, N - 9) + _lam(V, N - 8) + _lam(V, N - 6) + _lam(V, N - 3)
    return lhs - rhs


def qubit_gap_margin(V):
    N = V.shape[1]
    return _lam(V, 1) - (_lam(V, N) + _lam(V, N - 1) + 2.0 * _lam(V, N - 2))


def matrix_min_eigs(V, ops, sweep_limit=64):
    """``(batch, len(ops))`` smallest eigenvalues of the symmetric matricizations."""
    mats = build_lambda_sym_batch(V, ops)
    w, _, _ = jacobi_eigh(mats, sweep_limit)
    return w[..., 0], w


def shortcut_condition(V):
    """0 when no equality condition holds, else 1, 2, 3 for (i), (ii), (iii),
    and 4 for (iii) together with ``lam_3 == lam_4``."""
    N = V.shape[1]

    def eq(a, b):
        return np.abs(_lam(V, N - a) - _lam(V, N - b)) <= EQUALITY_ATOL

    c1 = eq(2, 3) & eq(6, 7)
    c2 = eq(2, 3) & eq(5, 6) & eq(6, 7)
    c3 = eq(2, 3) & eq(3, 4) & eq(4, 5) & eq(5, 6) & eq(6, 7)
    c4 = c3 & (np.abs(_lam(V, 3) - _lam(V, 4)) <= EQUALITY_ATOL)
    out = np.zeros(V.shape[0], dtype=int)
    out[c1] = 1
    out[c2] = 2
    out[c3] = 3
    out[c4] = 4
    return out


#: 1-based matrix indices that suffice under each shortcut condition
SHORTCUT_SETS = {1: (1, 3, 5, 9), 2: (1, 5, 9), 3: (1, 3), 4: (1,)}


def ratio_values(V, m):
    N = V.shape[1]
    num = _lam(V, N - m + 1)
    den = _lam(V, m - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.nan)
    return ratio


def purity_lower_slacks(V, m):
    N = V.shape[1]
    P = purity_batch(V)
    c = ((m - 1) / m) ** 2
    lm = _lam(V, m - 1) ** 2
    tail_mean = (P - _lam(V, 1) ** 2) / (N - 1) - c * lm
    total = P - (c * (N - 1) + 1.0) * lm
    return tail_mean, total


def purity_k(P: float, total: int) -> int:
    """Smallest ``k >= 2`` with ``1/k <= P``; boundary values go to the smaller k."""
    for k in range(2, total + 1):
        if 1.0 / k <= P * (1 + 1e-12):
            return k
    return total


def min_largest_eigenvalue_given_purity(purity: float, total: int) -> float:
    """Smallest possible largest eigenvalue of a spectrum with this purity."""
    if total < 2:
        raise OutOfRange("need at least two eigenvalues")
    if not (1.0 / total - 1e-12 <= purity <= 1.0 + 1e-12):
        raise OutOfRange(f"purity {purity} outside [1/{total}, 1]")
    k = purity_k(purity, total)
    rad = max((k * purity - 1.0) / (k - 1), 0.0)
    return (1.0 + math.sqrt(rad)) / k


def purity_upper_slacks(P: float, total: int) -> dict:
    k = purity_k(P, total)
    lhs_k = 1.0 + math.sqrt(max((k * P - 1.0) / (k - 1), 0.0))
    return {
        "tight_cap": 4.0 / (total + 3) - P,
        "loose_cap": 9.0 / (total + 8) - P,
        "k_form": 2.0 * k * math.sqrt(P / (total + 3)) - lhs_k,
        "k": k,
    }


# --------------------------------------------------------------------------
# the engine


EXACT_NAMES = {2: "exact_qubit", 3: "exact_qutrit", 4: "exact_ququart"}


@dataclass
class BatchEvaluation:
    """Margins and firing flags for a batch of spectra of one size."""

    dims: Dims
    values: np.ndarray
    thr: np.ndarray
    margins: dict
    fired: dict
    extra: dict
    verdict_codes: np.ndarray
    conflicts: np.ndarray

    @property
    def yes_names(self):
        return [n for n in ("gurvits_ball", "sufficient_sum", "sufficient_two_smallest") if n in self.fired]

    @property
    def no_names(self):
        return [n for n in ("not_abs_ququart", "not_abs_general") if n in self.fired]


def _yes_feeds_verdict(name: str, m: int) -> bool:
    # the two-smallest test is only a valid sufficient condition for m <= 3
    return name != "sufficient_two_smallest" or m <= 3


def evaluate_batch(V, dims: Dims, tol: Tolerances = DEFAULT_TOLERANCES, sampled_necessity: bool = False) -> BatchEvaluation:
    V = np.atleast_2d(np.asarray(V, dtype=float))
    if V.shape[1] != dims.total:
        raise WrongDims(f"spectra have {V.shape[1]} entries, dims need {dims.total}")
    m, p = dims.m, dims.p
    thr = thresholds(V, tol)
    margins, fired, extra = {}, {}, {}

    if p == 2:
        margins["exact_qubit"] = qubit_margin(V)
        fired["exact_qubit"] = margins["exact_qubit"] >= -thr
        mins, eigs = matrix_min_eigs(V, canonical_pairs(2), tol.jacobi_sweep_limit)
        extra["exact_min_eigs"] = mins
        extra["exact_eigs"] = eigs
    elif p <= 4:
        name = EXACT_NAMES[p]
        mins, eigs = matrix_min_eigs(V, canonical_pairs(p), tol.jacobi_sweep_limit)
        margins[name] = mins.min(axis=1)
        fired[name] = margins[name] >= -thr
        extra["exact_min_eigs"] = mins
        extra["exact_eigs"] = eigs
    if p == 4:
        cond = shortcut_condition(V)
        mins = extra["exact_min_eigs"]
        sc_margin = margins["exact_ququart"].copy()
        for c, ts in SHORTCUT_SETS.items():
            sel = cond == c
            if sel.any():
                sc_margin[sel] = mins[np.ix_(sel, [t - 1 for t in ts])].min(axis=1)
        margins["ququart_shortcut"] = sc_margin
        fired["ququart_shortcut"] = (cond > 0) & (sc_margin >= -thr)
        extra["shortcut_condition"] = cond

    margins["sufficient_sum"] = sum_margin(V, m)
    fired["sufficient_sum"] = margins["sufficient_sum"] >= -thr
    margins["sufficient_two_smallest"] = two_smallest_margin(V)
    fired["sufficient_two_smallest"] = margins["sufficient_two_smallest"] >= -thr
    margins["jivulescu_sum3"] = sum3_margin(V)
    fired["jivulescu_sum3"] = margins["jivulescu_sum3"] >= -thr
    margins["gurvits_ball"] = gurvits_margin(V)
    fired["gurvits_ball"] = margins["gurvits_ball"] >= -tol.psd_abs / (dims.total - 1)

    if m >= 3:
        margins["not_abs_general"] = general_no_margin(V, m)
        fired["not_abs_general"] = margins["not_abs_general"] > thr
        if p > 4 or sampled_necessity:
            cm_min, _ = matrix_min_eigs(V, [column_major_pair(p)], tol.jacobi_sweep_limit)
            extra["column_major_min_eig"] = cm_min[:, 0]
    else:
        margins["not_abs_qubit_gap"] = qubit_gap_margin(V)
        fired["not_abs_qubit_gap"] = margins["not_abs_qubit_gap"] > thr
    if m == 4:
        margins["not_abs_ququart"] = ququart_no_margin(V)
        fired["not_abs_ququart"] = margins["not_abs_ququart"] > thr

    if p >= 5 and sampled_necessity:
        ops = sample_pairs(p, 0, SAMPLED_NECESSITY_SAMPLES)
        mins, _ = matrix_min_eigs(V, ops, tol.jacobi_sweep_limit)
        extra["sampled_min_eig"] = mins.min(axis=1)
        extra["sampled_worst"] = mins.argmin(axis=1)
        extra["sampled_pairs"] = len(ops)

    codes, conflicts = _verdicts(dims, thr, margins, fired)
    return BatchEvaluation(dims, V, thr, margins, fired, extra, codes, conflicts)


def _verdicts(dims, thr, margins, fired):
    m, p = dims.m, dims.p
    B = thr.shape[0]
    yes = np.zeros(B, dtype=bool)
    for name in ("gurvits_ball", "sufficient_sum", "sufficient_two_smallest"):
        if _yes_feeds_verdict(name, m):
            yes |= fired[name]
    no_names = [n for n in ("not_abs_ququart", "not_abs_general") if n in fired]
    no = np.zeros(B, dtype=bool)
    for n in no_names:
        no |= fired[n]

    conflicts = yes & no
    if p <= 4:
        exact_name = EXACT_NAMES[p]
        exact = fired[exact_name]
        loose = CONFLICT_FACTOR * thr
        conflicts |= yes & (margins[exact_name] < -loose)
        for n in no_names:
            conflicts |= (margins[n] > loose) & exact
        if "ququart_shortcut" in fired:
            conflicts |= fired["ququart_shortcut"] & (margins[exact_name] < -loose)
        codes = np.where(exact, VerdictKind.ABS_PPT_EXACT.code, VerdictKind.NOT_ABS_PPT.code)
    else:
        codes = np.full(B, VerdictKind.INDETERMINATE.code)
        codes[yes] = VerdictKind.ABS_PPT_SUFFICIENT.code
        codes[no] = VerdictKind.NOT_ABS_PPT.code
    return codes, conflicts


def verdict_codes(V, dims: Dims, tol: Tolerances = DEFAULT_TOLERANCES, strict: bool = True) -> np.ndarray:
    ev = evaluate_batch(V, dims, tol)
    if strict and ev.conflicts.any():
        i = int(np.flatnonzero(ev.conflicts)[0])
        raise InternalInconsistency(f"criteria disagree on spectrum #{i}: {ev.values[i].tolist()}")
    return ev.verdict_codes


# --------------------------------------------------------------------------
# single-spectrum API


def _one(s: Spectrum, tol: Tolerances, **kw) -> BatchEvaluation:
    return evaluate_batch(s.as_array()[None, :], s.dims, tol, **kw)


def _outcome(ev: BatchEvaluation, name: str, detail=None) -> CriterionOutcome:
    return CriterionOutcome(name, bool(ev.fired[name][0]), float(ev.margins[name][0]), detail or {})


def _exact_detail(ev):
    mins = ev.extra["exact_min_eigs"][0]
    return {
        "worst_matrix": int(np.argmin(mins)) + 1,
        "min_eigenvalues": [float(v) for v in mins],
    }


def exact_qubit(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    if s.dims.m != 2:
        raise WrongDims(f"exact_qubit needs m=2, got m={s.dims.m}")
    ev = _one(s, tol)
    return _outcome(ev, "exact_qubit", _exact_detail(ev))


def exact_qutrit(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    if s.dims.m != 3:
        raise WrongDims(f"exact_qutrit needs m=3, got m={s.dims.m}")
    ev = _one(s, tol)
    return _outcome(ev, "exact_qutrit", _exact_detail(ev))


def exact_ququart(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    if s.dims.m != 4:
        raise WrongDims(f"exact_ququart needs m=4, got m={s.dims.m}")
    ev = _one(s, tol)
    return _outcome(ev, "exact_ququart", _exact_detail(ev))


def ququart_shortcut(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    if s.dims.m != 4:
        raise WrongDims(f"ququart_shortcut needs m=4, got m={s.dims.m}")
    ev = _one(s, tol)
    cond = int(ev.extra["shortcut_condition"][0])
    detail = {"condition": cond, "matrices": list(SHORTCUT_SETS.get(cond, ()))}
    return _outcome(ev, "ququart_shortcut", detail)


def sufficient_sum(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    v, m = s.as_array(), s.dims.m
    detail = {"smallest": float(v[-m:].sum()), "largest": float(v[: m - 1].sum())}
    return _outcome(_one(s, tol), "sufficient_sum", detail)


def sufficient_two_smallest(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    detail = {"feeds_verdict": int(_yes_feeds_verdict("sufficient_two_smallest", s.dims.m))}
    return _outcome(_one(s, tol), "sufficient_two_smallest", detail)


def jivulescu_sum3(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    return _outcome(_one(s, tol), "jivulescu_sum3")


def gurvits_ball(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    ev = _one(s, tol)
    return _outcome(ev, "gurvits_ball", {"purity": float(purity_batch(ev.values)[0]), "radius2": 1.0 / (s.dims.total - 1)})


def not_abs_general(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    if s.dims.m < 3:
        raise WrongDims("not_abs_general needs m >= 3; the qubit case is decided exactly")
    ev = _one(s, tol)
    lam = build_lambda_sym(s, column_major_pair(s.dims.p))
    w, _, _ = jacobi_eigh(lam, tol.jacobi_sweep_limit)
    detail = {"matrix": "column_major", "min_eigenvalue": float(w[0]), "all_ones": all_ones_quadratic(lam)}
    return _outcome(ev, "not_abs_general", detail)


def not_abs_ququart(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    if s.dims.m != 4:
        raise WrongDims(f"not_abs_ququart needs m=4, got m={s.dims.m}")
    ev = _one(s, tol)
    detail = {"matrix": 1, "min_eigenvalue": float(ev.extra["exact_min_eigs"][0, 0])}
    return _outcome(ev, "not_abs_ququart", detail)


def ratio_bound(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    m = s.dims.m
    r = float(ratio_values(s.as_array()[None, :], m)[0])
    target = (m - 1) / m
    if math.isnan(r):
        return CriterionOutcome("ratio_bound", False, 0.0, {"applicable": 0, "target": target})
    margin = r - target
    return CriterionOutcome("ratio_bound", margin >= -tol.psd_rel, margin, {"applicable": 1, "ratio": r, "target": target})


def purity_lower_bounds(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    V = s.as_array()[None, :]
    slack_tail, slack_total = (float(x[0]) for x in purity_lower_slacks(V, s.dims.m))
    margin = min(slack_tail, slack_total)
    cut = tol.psd_abs + tol.psd_rel * s.values[0] ** 2
    return CriterionOutcome("purity_lower_bounds", margin >= -cut, margin, {"tail_mean": slack_tail, "total": slack_total})


def purity_upper_bounds(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> CriterionOutcome:
    P = float(purity_batch(s.as_array()[None, :])[0])
    sl = purity_upper_slacks(P, s.dims.total)
    margin = min(sl["tight_cap"], sl["loose_cap"], sl["k_form"])
    return CriterionOutcome("purity_upper_bounds", margin >= -tol.psd_abs, margin, sl)


# --------------------------------------------------------------------------
# classify


def _witness_for_no(ev, name, s, tol):
    o = not_abs_general(s, tol) if name == "not_abs_general" else not_abs_ququart(s, tol)
    return {"matrix": o.detail["matrix"], "min_eigenvalue": o.detail["min_eigenvalue"], "margin": o.margin}


def classify(s: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> Report:
    """Evaluate every applicable criterion and combine them into a verdict.

    Raises
    ------
    InternalInconsistency
        If two criteria that can never disagree on a valid spectrum do.
    """
    dims, p, m = s.dims, s.dims.p, s.dims.m
    ev = _one(s, tol, sampled_necessity=p >= 5)
    if ev.conflicts[0]:
        raise InternalInconsistency(
            "criteria disagree: " + ", ".join(f"{k}={float(v[0]):.3g}" for k, v in ev.margins.items())
        )

    outcomes = []
    if p <= 4:
        outcomes.append(_outcome(ev, EXACT_NAMES[p], _exact_detail(ev)))
    if p == 4:
        outcomes.append(ququart_shortcut(s, tol))
    outcomes += [sufficient_sum(s, tol), sufficient_two_smallest(s, tol), gurvits_ball(s, tol)]
    if m >= 3:
        outcomes.append(not_abs_general(s, tol))
    if m == 4:
        outcomes.append(not_abs_ququart(s, tol))

    kind = VerdictKind.from_code(ev.verdict_codes[0])
    by, witness = None, None
    if kind is VerdictKind.ABS_PPT_EXACT:
        by = EXACT_NAMES[p]
        d = _exact_detail(ev)
        witness = {"matrix": d["worst_matrix"], "min_eigenvalue": min(d["min_eigenvalues"])}
        if p == 2:
            witness["margin"] = float(ev.margins["exact_qubit"][0])
    elif kind is VerdictKind.ABS_PPT_SUFFICIENT:
        for name in ("gurvits_ball", "sufficient_sum", "sufficient_two_smallest"):
            if ev.fired[name][0] and _yes_feeds_verdict(name, m):
                by = name
                witness = {"margin": float(ev.margins[name][0])}
                break
    elif kind is VerdictKind.NOT_ABS_PPT:
        firing = [n for n in ("not_abs_ququart", "not_abs_general") if n in ev.fired and ev.fired[n][0]]
        if firing:
            by = firing[0]
            witness = _witness_for_no(ev, by, s, tol)
        else:
            by = EXACT_NAMES[p]
            d = _exact_detail(ev)
            witness = {"matrix": d["worst_matrix"], "min_eigenvalue": min(d["min_eigenvalues"])}
            if p == 2:
                witness["margin"] = float(ev.margins["exact_qubit"][0])

    P = float(purity_batch(ev.values)[0])
    diagnostics = {
        "purity": P,
        "gurvits_ball": gurvits_ball(s, tol).to_dict(),
        "jivulescu_sum3": jivulescu_sum3(s, tol).to_dict(),
        "ratio_bound": ratio_bound(s, tol).to_dict(),
        "purity_lower": purity_lower_bounds(s, tol).to_dict(),
        "purity_upper": purity_upper_bounds(s, tol).to_dict(),
        "min_largest_eigenvalue": min_largest_eigenvalue_given_purity(min(max(P, 1.0 / dims.total), 1.0), dims.total),
        "abs_ppt_equals_abs_sep": m == 2,
    }
    if m == 2:
        diagnostics["not_abs_qubit_gap"] = _outcome(ev, "not_abs_qubit_gap").to_dict()
    if p >= 5:
        lo = float(ev.extra["sampled_min_eig"][0])
        diagnostics["sampled_necessity"] = {
            "pairs": int(ev.extra["sampled_pairs"]),
            "min_eigenvalue": lo,
            "violation": bool(lo < -ev.thr[0]),
        }
    return Report(dims, s.values, Verdict(kind, by, witness), tuple(outcomes), diagnostics)
