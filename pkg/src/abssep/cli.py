"""Command-line interface.

Exit codes: 0 success, 1 golden-example mismatch, 2 bad input, 3 the criteria
contradicted each other (a bug, never expected).
"""

from __future__ import annotations

import csv
import functools
import json
import sys
from collections import Counter
from pathlib import Path

import click
import numpy as np

from .criteria import EXACT_NAMES, VerdictKind, classify as classify_spectrum, evaluate_batch
from .exceptions import AbsSepError, InternalInconsistency, ValidationError
from .fixtures import FIXTURES
from .linalg import Tolerances, jacobi_eigh
from .matricization import build_lambda_sym, canonical_pairs, sample_pairs
from .oracle import MAX_ORACLE_TOTAL, random_unitary_falsifier, x_witness
from .spectrum import DEFAULT_SUM_TOLERANCE, Dims, SpectrumEnsemble, make_spectrum, raw_simplex_draws

EXIT_OK, EXIT_GOLDEN, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, allow_nan=False)


def _fail(msg: str, code: int):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def guarded(fn):
    """Translate package errors into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InternalInconsistency as e:
            _fail(str(e), EXIT_INCONSISTENT)
        except (ValidationError, ValueError, OSError) as e:
            _fail(str(e), EXIT_INPUT)

    return wrapper


def tolerance_options(fn):
    fn = click.option("--psd-abs", type=click.FloatRange(min=0, min_open=True), default=1e-10, show_default=True,
                      help="Absolute part of the PSD / margin tolerance.")(fn)
    fn = click.option("--tol", "psd_rel", type=click.FloatRange(min=0, min_open=True), default=1e-8,
                      show_default=True, help="Relative part, scaled by the largest eigenvalue.")(fn)
    fn = click.option("--sum-tol", type=click.FloatRange(min=0), default=DEFAULT_SUM_TOLERANCE, show_default=True,
                      help="Allowed deviation of the eigenvalue sum from 1.")(fn)
    return fn


def spectrum_options(fn):
    fn = click.option("--normalize", is_flag=True, help="Divide the eigenvalues by their sum first.")(fn)
    fn = click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
                      help='JSON file {"m", "n", "eigenvalues", "normalize"?}.')(fn)
    fn = click.option("--eigenvalues", help="Comma-separated eigenvalues, any order.")(fn)
    fn = click.option("--n", type=int)(fn)
    fn = click.option("--m", type=int)(fn)
    return fn


def _parse_values(text: str) -> list:
    try:
        return [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as e:
        raise ValidationError(f"cannot parse eigenvalues: {e}") from None


def _load_spectrum(m, n, eigenvalues, input_path, normalize, sum_tol):
    if (eigenvalues is None) == (input_path is None):
        raise ValidationError("give exactly one of --eigenvalues or --input")
    if input_path is not None:
        try:
            doc = json.loads(Path(input_path).read_text(encoding="utf-8"))
            m, n, values = doc["m"], doc["n"], doc["eigenvalues"]
            normalize = normalize or bool(doc.get("normalize", False))
        except (KeyError, TypeError, json.JSONDecodeError) as e:
            raise ValidationError(f"bad input file: {e}") from None
    else:
        if m is None or n is None:
            raise ValidationError("--m and --n are required with --eigenvalues")
        values = _parse_values(eigenvalues)
    return make_spectrum(Dims.of(m, n), values, sum_tol, normalize=normalize)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Classify bipartite states as absolutely PPT from their eigenvalues."""


@cli.command()
@spectrum_options
@tolerance_options
@guarded
def classify(m, n, eigenvalues, input_path, normalize, sum_tol, psd_rel, psd_abs):
    """Classify one spectrum and print a JSON report."""
    s = _load_spectrum(m, n, eigenvalues, input_path, normalize, sum_tol)
    report = classify_spectrum(s, Tolerances(psd_abs, psd_rel))
    click.echo(_dump(report.to_dict()))


def _read_rows(path: Path):
    """Yield ``(line_no, payload_or_exception)`` for CSV or JSON-lines input."""
    text = path.read_text(encoding="utf-8")
    jsonl = path.suffix.lower() in (".jsonl", ".ndjson")
    rows = text.splitlines() if jsonl else list(csv.reader(text.splitlines()))
    for i, row in enumerate(rows, start=1):
        try:
            if jsonl:
                if not row.strip():
                    continue
                doc = json.loads(row)
                yield i, (doc["m"], doc["n"], doc["eigenvalues"], bool(doc.get("normalize", False)))
            else:
                if not row or all(not c.strip() for c in row):
                    continue
                m, n = int(row[0]), int(row[1])
                yield i, (m, n, [float(c) for c in row[2:]], False)
        except (ValueError, KeyError, TypeError, IndexError, json.JSONDecodeError) as e:
            yield i, ValidationError(f"malformed row: {e}")


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="CSV (m,n,v1,...) or .jsonl file, one spectrum per line.")
@tolerance_options
@guarded
def batch(input_path, sum_tol, psd_rel, psd_abs):
    """Classify every spectrum in a file, one JSON report per line."""
    tol = Tolerances(psd_abs, psd_rel)
    counts = Counter({k.value: 0 for k in VerdictKind})
    ok = errors = 0
    for line, payload in _read_rows(Path(input_path)):
        try:
            if isinstance(payload, Exception):
                raise payload
            m, n, values, normalize = payload
            report = classify_spectrum(make_spectrum(Dims.of(m, n), values, sum_tol, normalize=normalize), tol)
        except (AbsSepError, ValueError) as e:
            errors += 1
            click.echo(_dump({"line": line, "error": type(e).__name__, "message": str(e)}))
            continue
        ok += 1
        counts[report.verdict.kind.value] += 1
        click.echo(_dump({"line": line, **report.to_dict()}))
    click.echo(_dump({"summary": dict(counts), "ok": ok, "errors": errors}))
    if errors and not ok:
        sys.exit(EXIT_INPUT)


@cli.command()
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--count", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@tolerance_options
@guarded
def sample(m, n, count, seed, fmt, sum_tol, psd_rel, psd_abs):
    """Survey flat-Dirichlet spectra: verdict and criterion frequencies."""
    dims = Dims.of(m, n)
    V = -np.sort(-raw_simplex_draws(SpectrumEnsemble(dims, seed, count)), axis=1)
    ev = evaluate_batch(V, dims, Tolerances(psd_abs, psd_rel))
    if ev.conflicts.any():
        raise InternalInconsistency(f"criteria disagree on sample {int(np.flatnonzero(ev.conflicts)[0])}")
    verdicts = {k.value: int(np.sum(ev.verdict_codes == k.code)) for k in VerdictKind}
    fired = {name: int(np.sum(f)) for name, f in ev.fired.items()}
    if fmt == "json":
        click.echo(_dump({
            "dims": {"m": dims.m, "n": dims.n, "swapped": dims.swapped},
            "count": count,
            "seed": seed,
            "verdicts": {k: {"count": c, "fraction": c / count} for k, c in verdicts.items()},
            "fired": {k: {"count": c, "fraction": c / count} for k, c in fired.items()},
        }))
        return
    click.echo(f"dims {dims.m}x{dims.n}  count {count}  seed {seed}")
    click.echo(f"{'verdict':<32}{'count':>8}{'fraction':>12}")
    for k, c in verdicts.items():
        click.echo(f"{k:<32}{c:>8}{c / count:>12.6f}")
    click.echo(f"{'criterion fired':<32}{'count':>8}{'fraction':>12}")
    for k, c in fired.items():
        click.echo(f"{k:<32}{c:>8}{c / count:>12.6f}")


@cli.command()
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, help="Also give numeric indices for this n (needs n >= p).")
@click.option("--samples", type=click.IntRange(min=1), help="Discover pairs by sampling (required for p >= 5).")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@guarded
def orderings(p, n, samples, seed):
    """Dump ordering-pair templates as grids of signed eigenvalue indices.

    Positive entries index the small eigenvalues placed on and above the
    diagonal, negative entries the large ones placed below it.
    """
    if p < 2:
        raise ValidationError("p must be at least 2")
    if n is not None and n < p:
        raise ValidationError("n must be at least p")
    if samples is not None:
        pairs, source = sample_pairs(p, seed, samples), "sampled"
    elif p <= 4:
        pairs, source = canonical_pairs(p), "canonical"
    else:
        raise ValidationError(f"p={p} has no fixed templates; pass --samples")
    out = []
    for t, op in enumerate(pairs, start=1):
        entry = {"index": t, "sigma_plus": list(op.plus), "sigma_minus": list(op.minus), "symbolic": op.symbolic_grid()}
        if n is not None:
            entry["indices"] = op.signed_index_grid(p * n)
        out.append(entry)
    click.echo(_dump({"p": p, "source": source, "count": len(out), "templates": out}))


@cli.command()
@click.option("--tol", type=click.FloatRange(min=0), default=5e-4, show_default=True,
              help="Allowed deviation from the reference matrix eigenvalues.")
@click.option("--margin-tol", type=click.FloatRange(min=0), default=1e-4, show_default=True)
@click.option("--list", "list_only", is_flag=True, help="Show fixtures and expected values only.")
def examples(tol, margin_tol, list_only):
    """Re-run the bundled worked examples against their reference values."""
    if list_only:
        for f in FIXTURES:
            click.echo(_dump({"name": f.name, "dims": [f.m, f.n], "eigenvalues": list(f.eigenvalues),
                              "verdict": f.verdict, "matrix_eigs": {str(k): list(v) for k, v in f.matrix_eigs.items()},
                              "margins": f.margins}))
        return
    failures = 0

    def check(label, ok, got, want):
        nonlocal failures
        failures += not ok
        click.echo(f"{'PASS' if ok else 'FAIL'}  {label}: got {got}, expected {want}")

    for f in FIXTURES:
        s = f.spectrum()
        ops = canonical_pairs(s.dims.p)
        for t, want in f.matrix_eigs.items():
            w, _, _ = jacobi_eigh(build_lambda_sym(s, ops[t - 1]))
            got = [round(float(x), 6) for x in w]
            check(f"{f.name} matrix {t} eigenvalues", bool(np.max(np.abs(w - np.array(want))) <= tol), got, list(want))
        report = classify_spectrum(s)
        check(f"{f.name} verdict", report.verdict.kind.value == f.verdict, report.verdict.kind.value, f.verdict)
        for name, want in f.margins.items():
            got = report.outcome(name).margin
            check(f"{f.name} {name} margin", abs(got - want) <= margin_tol, round(got, 6), want)
        if f.shortcut_condition:
            cond = report.outcome("ququart_shortcut").detail["condition"]
            check(f"{f.name} shortcut condition", cond >= f.shortcut_condition, cond, f">= {f.shortcut_condition}")
    click.echo(f"{len(FIXTURES)} fixtures, {failures} failure(s)")
    if failures:
        sys.exit(EXIT_GOLDEN)


@cli.command()
@spectrum_options
@click.option("--trials", type=click.IntRange(min=1), default=2000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@tolerance_options
@guarded
def oracle(m, n, eigenvalues, input_path, normalize, trials, seed, sum_tol, psd_rel, psd_abs):
    """Search for PPT violations by random unitaries and by eigenvector witnesses."""
    s = _load_spectrum(m, n, eigenvalues, input_path, normalize, sum_tol)
    if s.dims.total > MAX_ORACLE_TOTAL:
        raise ValidationError(f"m*n={s.dims.total} is above the oracle limit {MAX_ORACLE_TOTAL}")
    tol = Tolerances(psd_abs, psd_rel)
    fals = random_unitary_falsifier(s, trials, seed, tol)
    out = {"dims": {"m": s.dims.m, "n": s.dims.n, "swapped": s.dims.swapped}, "falsifier": fals.to_dict()}
    if not fals.found:
        out["falsifier"]["summary"] = f"no violation found in {trials} trials"
    if s.dims.p in EXACT_NAMES:
        w = x_witness(s, tol)
        out["x_witness"] = None if w is None else w.to_dict()
    else:
        out["x_witness"] = None
        out["x_witness_note"] = "needs p <= 4"
    click.echo(_dump(out))


def main(argv=None):
    cli.main(args=argv, prog_name="abssep")


if __name__ == "__main__":
    main()
