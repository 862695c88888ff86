import sys
import numpy as np

from rhocompat.core import (
    NotAFrameError,
    validate,
    validation_report,
    rank_of,
)
from rhocompat.stats import Sample, spearman_matrix, max_entry_error
from rhocompat.models import (
    SphereModel,
    MixtureModel,
    model_from_dict,
    build_from_rank3,
    build_gaussian_model,
)
from rhocompat.certificates import (
    VectorFamily,
    vectors_12,
    moment_certificate,
    certify_matrix,
    embed_high_dim,
    assess,
    INCONCLUSIVE,
)
from rhocompat.optimizers import decompose, copula_from_decomposition
from rhocompat.utils import (
    get_rng,
    read_matrix_csv,
    read_sample_csv,
    read_json,
    format_csv,
    format_json,
)
from .config import UsageError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


def _matrix_output(cfg, m, **info):
    """
    Helper function formatting a matrix result
    """
    if cfg.output_format("csv") == "csv":
        return format_csv(m)
    return format_json(dict(**info, matrix=m))


def _decompose(cfg, r, rng):
    """
    Helper function running the decomposer with
    the configured budget
    """
    return decompose(
        r,
        max_atoms=cfg.max_atoms,
        max_iters=cfg.max_iters,
        restarts=cfg.restarts,
        tol=cfg.tol,
        rng=rng,
        workers=cfg.workers,
        verbosity=cfg.verbosity,
    )


def cmd_validate(cfg):
    """
    Validates a matrix csv file.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The json validation report
    code: int
        0 if valid, 2 if invalid

    :group: cli

    """
    m = read_matrix_csv(cfg.input)
    report = validation_report(m)
    return format_json(report), EXIT_OK if report["valid"] else EXIT_INVALID


def cmd_certify(cfg):
    """
    Runs the moment certificate on a vector family,
    on the twelve-vector family, or on the rank
    decomposition of a matrix.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The json certificate report
    code: int
        0 if violated, 3 if not violated or inapplicable

    :group: cli

    """
    rng = get_rng(cfg.seed)
    report = dict(seed=cfg.seed)
    try:
        if cfg.m12:
            report["source"] = "m12"
            cert = moment_certificate(vectors_12(), cfg.trials, cfg.tol, rng)
        elif cfg.matrix is not None:
            report["source"] = cfg.matrix
            report["indices"] = cfg.indices
            cert = certify_matrix(
                read_matrix_csv(cfg.matrix), cfg.indices, cfg.trials, cfg.tol, rng
            )
        else:
            report["source"] = cfg.input
            vecs, __ = read_sample_csv(cfg.input)
            cert = moment_certificate(VectorFamily(vecs), cfg.trials, cfg.tol, rng)
    except NotAFrameError as e:
        report.update(
            applicable=False,
            violated=False,
            verdict=INCONCLUSIVE,
            error=dict(
                type=type(e).__name__,
                message=str(e),
                degree=e.degree,
                point=e.point,
            ),
        )
        return format_json(report), EXIT_INCONCLUSIVE

    report["applicable"] = True
    report.update(cert.to_dict())
    return format_json(report), EXIT_OK if cert.violated else EXIT_INCONCLUSIVE


def cmd_m12(cfg):
    """
    Writes the 12 x 12 counterexample, or its
    block diagonal embedding into dimension --dim.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The matrix as csv or json
    code: int
        0

    :group: cli

    """
    r = embed_high_dim(cfg.dim)
    return _matrix_output(cfg, np.asarray(r.entries), dimension=r.n_dims, rank=r.rank), EXIT_OK


def cmd_decompose(cfg):
    """
    Decomposes a matrix into rank-3 atoms.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The json decomposition result
    code: int
        0, also if the decomposition did not converge

    :group: cli

    """
    r = validate(read_matrix_csv(cfg.input))
    res = _decompose(cfg, r, get_rng(cfg.seed))
    return format_json(dict(seed=cfg.seed, **res.to_dict())), EXIT_OK


def cmd_sample(cfg):
    """
    Draws observations from a model json file.

    The seed is reported on stderr for csv output.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The sample as csv or json
    code: int
        0

    :group: cli

    """
    model = model_from_dict(read_json(cfg.input))
    if cfg.unit_variance:
        if not isinstance(model, (SphereModel, MixtureModel)):
            raise UsageError("--unit-variance applies to sphere and mixture models only")
        model.unit_variance = True

    smp = model.sample(cfg.samples, get_rng(cfg.seed), cfg.workers)
    header = [f"x{i}" for i in range(smp.n_dims)]
    if cfg.output_format("csv") == "csv":
        print(f"# seed: {cfg.seed}", file=sys.stderr)
        return format_csv(smp.values, header), EXIT_OK
    return format_json(dict(seed=cfg.seed, names=header, values=smp.values)), EXIT_OK


def cmd_estimate(cfg):
    """
    Estimates the Spearman's rho matrix of a sample
    csv file.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The matrix as csv or json
    code: int
        0

    :group: cli

    """
    values, header = read_sample_csv(cfg.input)
    r = spearman_matrix(Sample(values, names=header))
    return _matrix_output(cfg, r, names=header, n=len(values)), EXIT_OK


def cmd_roundtrip(cfg):
    """
    Decomposes a matrix, samples the resulting mixture
    copula and compares the estimated Spearman's rho
    matrix with the target.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The json report
    code: int
        0, also if the decomposition did not converge

    :group: cli

    """
    r = validate(read_matrix_csv(cfg.input))
    rng = get_rng(cfg.seed)
    res = _decompose(cfg, r, rng)

    report = dict(
        seed=cfg.seed,
        samples=cfg.samples,
        dimension=r.n_dims,
        rank=r.rank,
        converged=res.converged,
        residual=res.residual,
        iterations=res.iterations,
        n_atoms=res.n_atoms,
        max_deviation=None,
    )
    if res.converged:
        model = copula_from_decomposition(res)
        smp = model.sample(cfg.samples, rng, cfg.workers)
        report["max_deviation"] = max_entry_error(spearman_matrix(smp), r.entries)

    return format_json(report), EXIT_OK


def cmd_assess(cfg):
    """
    Classifies a matrix as compatible, incompatible or
    inconclusive.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The json assessment
    code: int
        0 for a decided verdict, 3 if inconclusive

    :group: cli

    """
    r = validate(read_matrix_csv(cfg.input))
    a = assess(
        r,
        max_iters=cfg.max_iters,
        restarts=cfg.restarts,
        tol=cfg.tol,
        rng=get_rng(cfg.seed),
        workers=cfg.workers,
        verbosity=cfg.verbosity,
    )
    code = EXIT_INCONCLUSIVE if a.verdict == INCONCLUSIVE else EXIT_OK
    return format_json(dict(seed=cfg.seed, **a.to_dict())), code


def cmd_model(cfg):
    """
    Builds a model json file for a target matrix: the
    exact sphere model for rank at most 3, else a
    decomposed mixture, or a Gaussian copula on request.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    text: str
        The json model, empty if no model was found
    code: int
        0 on success, 3 if the decomposition did
        not converge

    :group: cli

    """
    if cfg.naive and not cfg.gaussian:
        raise UsageError("--naive requires --gaussian")

    r = validate(read_matrix_csv(cfg.input))
    if cfg.gaussian:
        model = build_gaussian_model(r, calibrate=not cfg.naive, verbosity=cfg.verbosity)
    elif rank_of(r, r.rank_tol) <= 3:
        model = build_from_rank3(r, unit_variance=cfg.unit_variance)
    else:
        res = _decompose(cfg, r, get_rng(cfg.seed))
        if not res.converged:
            print(
                f"model: No decomposition found, residual {res.residual:.3e} >= tol {res.tol:.1e}",
                file=sys.stderr,
            )
            return "", EXIT_INCONCLUSIVE
        model = copula_from_decomposition(res, unit_variance=cfg.unit_variance)

    return format_json(model.to_dict()), EXIT_OK


COMMAND_FUNCTIONS = dict(
    validate=cmd_validate,
    certify=cmd_certify,
    m12=cmd_m12,
    decompose=cmd_decompose,
    sample=cmd_sample,
    estimate=cmd_estimate,
    roundtrip=cmd_roundtrip,
    assess=cmd_assess,
    model=cmd_model,
)
