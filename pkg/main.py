import json
import math
import os

import click
from loguru import logger

from model.catalog import catalog_n7, find_entry, verify_catalog
from model.classifier import ALL_CONCENTRIC, Classification, CriterionManager
from model.concentric import concentric_check
from model.conic_fit import verify_conics
from model.curve import sample_curve, samples_to_frame
from model.origin_ellipse import origin_ellipse_check
from model.shifted_pair import ShiftedPairCriterion, admissible_shifted_pairs, shifted_pair_residuals
from utils.input_parser import InputParser, parse_token, parse_xi_tokens
from utils.plotting import write_csv, write_svg
from utils.settings import RunConfig, configure_logging, load_settings

SNAP_TOL = 1e-9

# name -> xi for vectors outside the catalog; catalog labels are looked up there
REPRODUCIBLE = [
    ("one-origin", (1, 4, 1, 1, 2, 3)),
    ("concentric", (1, 1, 2, 0, 1, 1)),
    ("central-1", None),
    ("central-2", None),
    ("inner-1", None),
    ("outer-1", None),
]


class InputError(click.ClickException):
    exit_code = 1


class Disagreement(click.ClickException):
    exit_code = 2


def _emit(payload, out=None, filename=None):
    text = json.dumps(payload, indent=4, sort_keys=True)
    click.echo(text)
    if out is not None and filename is not None:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, filename), "w") as f:
            f.write(text + "\n")


def _load_vectors(xi_text, input_path, n, exact):
    """Inline --xi or --input file/directory -> list of {"xi": XiVector, ...} items."""
    if bool(xi_text) == bool(input_path):
        raise InputError("Give exactly one of --xi or --input.")
    try:
        if xi_text:
            return [{"xi": parse_xi_tokens(xi_text, n=n, exact=exact)}]
        parser = InputParser(exact=exact)
        if os.path.isdir(input_path):
            items = parser.batch_parse(input_path, n=n)
            if not items:
                raise ValueError(f"No parsable xi files under {input_path}")
            return items
        return [{"xi": xi, "file": input_path} for xi in parser.parse_input(input_path, n=n)]
    except (ValueError, TypeError, FileNotFoundError) as e:
        raise InputError(str(e))


def _run_config(ctx, command, xi, exact=False, tol=None, grid=None, out=None, source=None):
    settings = ctx.obj
    try:
        return RunConfig(
            command=command,
            n=xi.n if xi is not None else None,
            xi=list(xi) if xi is not None else [],
            source=source,
            exact=exact,
            tol=tol if tol is not None else settings.tol,
            grid=grid if grid is not None else settings.grid,
            threads=settings.threads,
            out=out,
        )
    except ValueError as e:
        raise InputError(str(e))


def _single(ctx, command, xi_text, input_path, n, exact, tol=None, grid=None, out=None):
    items = _load_vectors(xi_text, input_path, n, exact)
    if len(items) != 1:
        raise InputError(f"{command} takes a single xi vector, got {len(items)}")
    xi = items[0]["xi"]
    return xi, _run_config(ctx, command, xi, exact, tol, grid, out, source=input_path)


def _check_payload(xi, reports, verification=None):
    payload = {
        "n": xi.n,
        "xi": [CriterionManager.serialize_scalar(v) for v in xi],
        "reports": [CriterionManager.serialize_report(r) for r in reports],
    }
    if verification is not None:
        payload["verification"] = verification
    return payload


def _verify_specs(xi, specs, config):
    """Every holding ellipse must collect nearly all of its 2 * grid samples."""
    samples = sample_curve(xi, grid=config.grid, threads=config.threads)
    result = verify_conics(samples, specs)
    agrees = result.covered(config.grid)
    return {
        "agrees": agrees,
        "max_residual": result.max_residual,
        "leftover": len(result.leftover),
        "separation": result.separation if math.isfinite(result.separation) else None,
        "fits": [{"label": f.spec.label, "count": f.count, "max_residual": f.max_residual} for f in result.fits],
    }


def _finish(consistent, verification=None):
    if not consistent:
        raise Disagreement("Internal cross-checks disagree; see the report.")
    if verification is not None and not verification["agrees"]:
        raise Disagreement("Curve verification disagrees with the verdict.")


def xi_options(func):
    func = click.option("--tol", type=float, default=None, help="Residual threshold override.")(func)
    func = click.option("--exact", is_flag=True, help="Exact mode; decimal tokens are rejected.")(func)
    func = click.option("--input", "input_path", type=click.Path(), default=None, help="JSON/TXT file or directory.")(func)
    func = click.option("--xi", "xi_text", default=None, help='Comma-separated invariants, e.g. "1,4,1,1,2,3".')(func)
    func = click.option("--n", type=int, default=None, help="Matrix size (defaults to len(xi) + 1).")(func)
    return func


@click.group()
@click.option("--log-level", default=None, help="loguru level; defaults to KLAB_LOG_LEVEL or WARNING.")
@click.pass_context
def cli(ctx, log_level):
    """Ellipse criteria for Kippenhahn curves of reciprocal tridiagonal matrices."""
    settings = load_settings()
    configure_logging(log_level or settings.log_level)
    ctx.obj = settings


@cli.command()
@xi_options
@click.option("--verify", is_flag=True, help="Sample the curve and check it against the verdict.")
@click.option("--grid", type=int, default=None, help="Number of θ directions.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for classify.json.")
@click.pass_context
def classify(ctx, n, xi_text, input_path, exact, tol, verify, grid, out):
    """Classify one or more xi vectors."""
    items = _load_vectors(xi_text, input_path, n, exact)
    configs = [_run_config(ctx, "classify", item["xi"], exact, tol, grid, out, input_path) for item in items]
    config = configs[0]
    manager = CriterionManager()
    results = manager.classify_batch(items, tol=config.tol, verify=verify, grid=config.grid, threads=config.threads)
    _emit(manager.serialize_results(results), out, "classify.json")
    errors = [r for r in results if "error" in r]
    if errors:
        raise InputError(f"{len(errors)} of {len(results)} vectors failed: {errors[0]['error']}")
    classifications = [r["classification"] for r in results]
    if not all(c.consistent for c in classifications):
        raise Disagreement("Internal cross-checks disagree; see the report.")
    if verify and not all(c.verification["agrees"] for c in classifications):
        raise Disagreement("Curve verification disagrees with the classification.")


def _resolve_example(example):
    names = [name for name, _ in REPRODUCIBLE]
    if example.isdigit():
        index = int(example)
        if not 1 <= index <= len(REPRODUCIBLE):
            raise InputError(f"Example index must lie in 1..{len(REPRODUCIBLE)}, got {index}")
        example = names[index - 1]
    if example not in names:
        raise InputError(f"Unknown example {example!r}; choose from {', '.join(names)}")
    values = dict(REPRODUCIBLE)[example]
    if values is None:
        entry = find_entry(example)
        return example, entry.xi, entry
    return example, parse_xi_tokens(list(values)), None


def _entry_payload(entry):
    scalar = CriterionManager.serialize_scalar
    return {
        "family": entry.family,
        "label": entry.label,
        "config": entry.config.name,
        "case": entry.config.case,
        "exact": entry.exact,
        "admissible": entry.admissible,
        "mirrored_from": entry.mirrored_from,
        "C": scalar(entry.C),
        "C0": scalar(entry.C0),
        "minor_axes": [float(a) for a in entry.minor_axes],
        "xi": [scalar(v) for v in entry.xi],
    }


@cli.command()
@click.argument("example")
@click.option("--grid", type=int, default=None, help="Number of θ directions.")
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True, help="Output directory.")
@click.pass_context
def reproduce(ctx, example, grid, out):
    """Regenerate a worked example by name or 1-based index: JSON report plus SVG plot."""
    name, xi, entry = _resolve_example(example)
    config = _run_config(ctx, "reproduce", xi, grid=grid, out=out)
    manager = CriterionManager()
    classification = manager.classify(xi, tol=config.tol)
    samples = sample_curve(xi, grid=config.grid, threads=config.threads)
    manager.verify(classification, grid=config.grid, samples=samples)
    verification = verify_conics(samples, classification.specs)
    write_svg(samples, classification.specs, os.path.join(out, f"{name}.svg"), verification=verification, title=name)

    payload = {"example": name, "classification": CriterionManager.serialize_classification(classification)}
    if entry is not None:
        payload["catalog"] = _entry_payload(entry)
    _emit(payload, out, f"{name}.json")
    _finish(classification.consistent, classification.verification)


@cli.command()
@click.option("--tol", type=float, default=None, help="Threshold override for approximate entries.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for catalog.json.")
@click.pass_context
def catalog(ctx, tol, out):
    """Verify every known 7x7 shifted-pair family."""
    checks = verify_catalog(catalog_n7(), tol=tol)
    payload = []
    for check in checks:
        item = _entry_payload(check.entry)
        item.update(
            {
                "agrees": check.agrees,
                "notes": list(check.notes),
                "report": CriterionManager.serialize_report(check.report),
            }
        )
        payload.append(item)
    _emit(payload, out, "catalog.json")
    if not all(check.agrees for check in checks):
        raise Disagreement("Some catalog entries did not verify.")


@cli.command()
@xi_options
@click.option("--grid", type=int, default=None, help="Number of θ directions.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for samples.csv.")
@click.pass_context
def sample(ctx, n, xi_text, input_path, exact, tol, grid, out):
    """Sample every branch of the curve and write theta,branch,x,y,flag rows."""
    xi, config = _single(ctx, "sample", xi_text, input_path, n, exact, tol, grid, out)
    samples = sample_curve(xi, grid=config.grid, threads=config.threads)
    if out is None:
        click.echo(samples_to_frame(samples).to_csv(index=False, float_format="%.15g"), nl=False)
    else:
        os.makedirs(out, exist_ok=True)
        path = write_csv(samples, os.path.join(out, "samples.csv"))
        logger.info("Wrote {} samples to {}", len(samples), path)


@cli.command("check-origin")
@xi_options
@click.option("--k", type=int, default=None, help="Focus index 1..m; all when omitted.")
@click.option("--verify", is_flag=True, help="Sample the curve and check the holding ellipses.")
@click.option("--grid", type=int, default=None, help="Number of θ directions.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for check-origin.json.")
@click.pass_context
def check_origin(ctx, n, xi_text, input_path, exact, tol, k, verify, grid, out):
    """Origin-centered ellipse with foci ±X_k."""
    xi, config = _single(ctx, "check-origin", xi_text, input_path, n, exact, tol, grid, out)
    ks = [k] if k is not None else list(range(1, xi.m + 1))
    try:
        reports = [origin_ellipse_check(xi, j, tol=config.tol) for j in ks]
    except ValueError as e:
        raise InputError(str(e))
    specs = [s for r in reports if r.holds for s in r.specs]
    verification = _verify_specs(xi, specs, config) if verify and specs else None
    _emit(_check_payload(xi, reports, verification), out, "check-origin.json")
    _finish(all(r.consistent for r in reports), verification)


@cli.command("check-concentric")
@xi_options
@click.option("--verify", is_flag=True, help="Sample the curve and check the ellipses.")
@click.option("--grid", type=int, default=None, help="Number of θ directions.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for check-concentric.json.")
@click.pass_context
def check_concentric(ctx, n, xi_text, input_path, exact, tol, verify, grid, out):
    """All m components concentric origin-centered ellipses."""
    xi, config = _single(ctx, "check-concentric", xi_text, input_path, n, exact, tol, grid, out)
    report = concentric_check(xi, tol=config.tol)
    verification = None
    if verify and report.holds:
        manager = CriterionManager()
        classification = Classification(xi, ALL_CONCENTRIC, list(report.specs), {"concentric": [report]})
        verification = manager.verify(classification, grid=config.grid, threads=config.threads)
    _emit(_check_payload(xi, [report], verification), out, "check-concentric.json")
    _finish(report.consistent, verification)


def _snap(n, p, X):
    """Replace decimal p, X by the exact admissible pair within SNAP_TOL, if there is one."""
    for p_exact, X_exact in admissible_shifted_pairs(n):
        if abs(float(p_exact) - float(p)) <= SNAP_TOL and abs(float(X_exact) - float(X)) <= SNAP_TOL:
            return p_exact, X_exact
    return p, X


@cli.command("check-shifted")
@xi_options
@click.option("--p", "p_text", default=None, help="Center of the right ellipse.")
@click.option("--X", "X_text", default=None, help="Half focal distance.")
@click.option("--verify", is_flag=True, help="Sample the curve and check the holding ellipses.")
@click.option("--grid", type=int, default=None, help="Number of θ directions.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for check-shifted.json.")
@click.pass_context
def check_shifted(ctx, n, xi_text, input_path, exact, tol, p_text, X_text, verify, grid, out):
    """Shifted ellipse pair centered at ±p; every admissible pair when --p/--X are omitted."""
    xi, config = _single(ctx, "check-shifted", xi_text, input_path, n, exact, tol, grid, out)
    if (p_text is None) != (X_text is None):
        raise InputError("Give both --p and --X, or neither.")
    try:
        if p_text is None:
            reports = ShiftedPairCriterion(tol=config.tol).check(xi)
        else:
            p, X = _snap(xi.n, parse_token(p_text), parse_token(X_text))
            reports = [shifted_pair_residuals(xi, p, X, tol=config.tol)]
    except ValueError as e:
        raise InputError(str(e))
    specs = [s for r in reports if r.holds for s in r.specs]
    verification = _verify_specs(xi, specs, config) if verify and specs else None
    _emit(_check_payload(xi, reports, verification), out, "check-shifted.json")
    _finish(all(r.consistent for r in reports), verification)


if __name__ == "__main__":
    cli()
