# -*- coding: utf-8 -*-

"""
Verification suites run by the command line. Each suite takes a
:class:`SuiteContext` and returns a list of :class:`CaseRecord` rows.
"""

import logging
import math

import numpy as np

from . import config
from .errors import EvaluationOverflow
from .processes import generate, realized_quadratic_variation
from .algebra import (make_exponential, mul, conjugate, inner_product, norm,
                      apply_X, apply_D, apply_D_star, apply_G, apply_G_hermite,
                      commutator_residual, hermite_ladder, cross_time_inner_product,
                      cross_time_unitarity, random_element, from_hermite,
                      HermiteExpansion, COMMUTATORS)
from .verify import (Estimate, ProcessElement, CenteringFunction, evaluate_element,
                     mc_expectation, verify_martingale_normalization, martingale_covariance,
                     verify_isometry, verify_h1, verify_h2, verify_pde, verify_l2_limit,
                     convergence_ratios, format_complex)
from .utils import save_ensemble_to_file

# variances used for randomized algebra checks
ALGEBRA_VARIANCES = (0.0, 0.5, 1.0, 4.0)

# largest Hermite index in the diagonalization check
HERMITE_DEGREE = 12

PDE_TOLERANCE = 1e-6

# the L2 norms must end below this bound, with successive ratios near 1/2
L2_FINAL_BOUND = 1e-3
L2_RATIO = 0.5
L2_RATIO_TOLERANCE = 0.05

# stream indices of the randomized suites, apart from the path blocks
_ALGEBRA_STREAM = 2 ** 32
_H1_STREAM = 2 ** 32 + 1
_H2_STREAM = 2 ** 32 + 2


class CaseRecord(object):
    """One row of the report."""

    fields = ('suite', 'case', 'value', 'target', 'stderr',
              'factor1_mean', 'factor1_stderr', 'factor2_mean', 'factor2_stderr',
              'lhs_product', 'rhs_exact', 'slack', 'allowance', 'passed', 'label', 'detail')

    def __init__(self, suite, case, passed, **values):
        for name in self.fields:
            setattr(self, name, None)
        self.suite = suite
        self.case = case
        self.passed = bool(passed)
        self.label = ''
        self.detail = ''
        for name, value in values.items():
            if name not in self.fields:
                raise AttributeError('Unknown record field: %s' % name)
            setattr(self, name, value)

    @classmethod
    def from_inequality(cls, suite, case, report, detail=''):
        return cls(suite, case, report.passed,
                   factor1_mean=report.lhs_factor1.real,
                   factor1_stderr=report.lhs_factor1.stderr,
                   factor2_mean=report.lhs_factor2.real,
                   factor2_stderr=report.lhs_factor2.stderr,
                   lhs_product=report.lhs_product, rhs_exact=report.rhs,
                   slack=report.slack, allowance=report.allowance,
                   stderr=report.stderr, label=report.label, detail=detail)

    @classmethod
    def from_estimate(cls, suite, case, estimate, target, sigmas, allowance=0.0, detail=''):
        return cls(suite, case, estimate.agrees(target, sigmas, allowance),
                   value=estimate.mean, target=target, stderr=estimate.stderr,
                   allowance=allowance, detail=detail)

    def as_dict(self):
        return dict((name, getattr(self, name)) for name in self.fields)

    def __repr__(self):
        return 'CaseRecord(%s, %s, pass=%s)' % (self.suite, self.case, self.passed)


class SuiteContext(object):
    """
    Shared state of one run: the configuration, the time change and grid,
    and the path ensemble, simulated on first use.
    """

    def __init__(self, run_config):
        self.config = run_config
        self.h = run_config.time_change()
        self.grid = run_config.time_grid()
        self._ensemble = None

    @property
    def ensemble(self):
        if self._ensemble is None:
            cfg = self.config
            self._ensemble = generate(self.h, self.grid, cfg.paths, cfg.seed, cfg.workers)
            if cfg.dump_ensemble:
                save_ensemble_to_file(self._ensemble, config.FILES['ensemble_dump'])
        return self._ensemble

    def rng(self, stream):
        """An independent random generator for a randomized suite."""
        seed_seq = np.random.SeedSequence([self.config.seed, stream])
        return np.random.Generator(np.random.Philox(seed_seq))


def _relative_gap(a, b, scale):
    return abs(a - b) / scale if scale > 0 else abs(a - b)


def _worst_record(suite, case, worst, tolerance, count, detail=''):
    return CaseRecord(suite, case, worst <= tolerance, value=worst, target=tolerance,
                      slack=tolerance - worst, detail=detail or '%d cases' % count)


def run_algebra(ctx):
    """
    Randomized checks of the exact algebra: commutation relations, adjoint
    identities, unitarity and order four of G, and the Hermite structure.
    """
    logger = logging.getLogger("Logger")
    cfg = ctx.config
    rng = ctx.rng(_ALGEBRA_STREAM)
    count = cfg.randomized
    logger.info("Checking the algebra on %d random elements..." % count)

    residuals = dict((which, 0.0) for which in COMMUTATORS)
    adjoint_split = 0.0
    adjointness = 0.0
    unitarity = 0.0
    order_four = 0.0
    for i in range(count):
        q = ALGEBRA_VARIANCES[i % len(ALGEBRA_VARIANCES)]
        f = random_element(rng, q)
        g = random_element(rng, q)
        scale = max(1.0, f.max_coefficient())
        for which in COMMUTATORS:
            residual = commutator_residual(which, f)
            residuals[which] = max(residuals[which], residual.max_coefficient() / scale)

        split = apply_D(f) + apply_D_star(f) - apply_X(f)
        adjoint_split = max(adjoint_split, split.max_coefficient() / scale)

        size = norm(f) * norm(g)
        adjointness = max(adjointness, _relative_gap(inner_product(apply_D(f), g),
                                                     inner_product(f, apply_D_star(g)), size))
        image = apply_G(f)
        unitarity = max(unitarity, _relative_gap(inner_product(image, apply_G(g)),
                                                 inner_product(f, g), size))

        for _ in range(3):
            image = apply_G(image)
        if image.exponents != f.exponents:
            order_four = float('inf')
        elif image != f:
            order_four = max(order_four, norm(image - f) / max(norm(f), 1e-300))

    records = []
    for which in sorted(residuals):
        records.append(_worst_record('algebra', 'commutator %s' % which,
                                     residuals[which], cfg.algebra, count))
    records.append(_worst_record('algebra', 'X = D + D*', adjoint_split, cfg.algebra, count))
    records.append(_worst_record('algebra', '<Df, g> = <f, D*g>', adjointness,
                                 cfg.unitarity, count))
    records.append(_worst_record('algebra', 'G unitary', unitarity, cfg.unitarity, count))
    records.append(_worst_record('algebra', 'G^4 = I', order_four, cfg.unitarity, count))

    for q in (0.5, 1.0):
        diagonal = 0.0
        ladder = 0.0
        for n in range(HERMITE_DEGREE + 1):
            h_n = from_hermite(HermiteExpansion.basis(n, q))
            size = max(1.0, h_n.max_coefficient())
            image = apply_G(h_n)
            diagonal = max(diagonal, (image - (-1j) ** n * h_n).max_coefficient() / size,
                           (apply_G_hermite(h_n) - image).max_coefficient() / size)
            lowered, expected_lowered, raised, expected_raised = hermite_ladder(n, q)
            ladder = max(ladder, (lowered - expected_lowered).max_coefficient() / size,
                         (raised - expected_raised).max_coefficient() / size)
        records.append(_worst_record('algebra', 'G H_n = (-i)^n H_n, q=%r' % q, diagonal,
                                     cfg.unitarity, HERMITE_DEGREE + 1))
        records.append(_worst_record('algebra', 'Hermite ladder, q=%r' % q, ladder,
                                     cfg.unitarity, HERMITE_DEGREE + 1))
    return records


def _pair_label(c, d):
    return 'c=%s, d=%s' % (format_complex(c), format_complex(d))


def _lemma2_pair(ctx, c, d, mid):
    """Records of one exponent pair; an overflow anywhere skips the pair."""
    cfg = ctx.config
    ens = ctx.ensemble
    h = ctx.h
    horizon = ctx.grid.horizon
    q = h(horizon)
    label = _pair_label(c, d)
    records = []

    exact = cross_time_inner_product(c, horizon, d, horizon, h)
    algebra = inner_product(make_exponential(c, q), make_exponential(d, q))
    gap = _relative_gap(algebra, exact, abs(exact))
    records.append(CaseRecord('lemma2', 'algebra %s' % label, gap <= cfg.algebra,
                              value=algebra, target=exact, slack=cfg.algebra - gap))

    transformed, plain = cross_time_unitarity(c, mid, d, horizon, h)
    gap = _relative_gap(transformed, plain, abs(plain))
    records.append(CaseRecord('lemma2', 'cross-time unitarity %s' % label,
                              gap <= cfg.unitarity, value=transformed, target=plain))

    product = mul(make_exponential(c, q), conjugate(make_exponential(d, q)))
    estimate = mc_expectation(product, horizon, ens)
    records.append(CaseRecord.from_estimate('lemma2', 'monte carlo %s' % label,
                                            estimate, exact, cfg.sigmas))

    if mid > 0:
        early = evaluate_element(make_exponential(c, h(mid)), ens.at(mid))
        late = evaluate_element(make_exponential(d, q), ens.at(horizon))
        estimate = Estimate.from_samples(early * np.conj(late))
        target = cross_time_inner_product(c, mid, d, horizon, h)
        records.append(CaseRecord.from_estimate(
            'lemma2', 'monte carlo s=%r, t=%r, %s' % (mid, horizon, label),
            estimate, target, cfg.sigmas))
    return records


def run_lemma2(ctx):
    """
    Inner products of exponential martingales, exactly and by simulation,
    plus the martingale facts the simulation relies on.
    """
    logger = logging.getLogger("Logger")
    cfg = ctx.config
    ens = ctx.ensemble
    horizon = ctx.grid.horizon
    q = ctx.h(horizon)
    mid = ctx.grid.points[ctx.grid.size // 2]
    records = []

    for c in cfg.exponents:
        for d in cfg.exponents:
            try:
                records.extend(_lemma2_pair(ctx, c, d, mid))
            except EvaluationOverflow as e:
                label = _pair_label(c, d)
                logger.warning("Skipping %s: %s" % (label, e))
                records.append(CaseRecord('lemma2', 'monte carlo %s' % label, True,
                                          detail='skipped: overflow'))

    for c, estimate, agrees in verify_martingale_normalization(cfg.exponents, horizon, ens,
                                                               cfg.sigmas):
        records.append(CaseRecord('lemma2', 'E[E_c] = 1, c=%s' % format_complex(c), agrees,
                                  value=estimate.mean, target=1.0, stderr=estimate.stderr))

    if mid > 0:
        covariance = martingale_covariance(ens, mid, horizon)
        records.append(CaseRecord.from_estimate('lemma2', 'martingale covariance',
                                                covariance, 0.0, cfg.sigmas))

    realized = Estimate.from_samples(realized_quadratic_variation(ens))
    records.append(CaseRecord.from_estimate('lemma2', 'realized quadratic variation',
                                            realized, q, cfg.sigmas))
    return records


def run_isometry(ctx):
    """Ito isometry for each configured integrand."""
    cfg = ctx.config
    records = []
    for text, Y in zip(cfg.y, cfg.processes()):
        report = verify_isometry(Y, ctx.ensemble, cfg.sigmas, cfg.discretization, cfg.workers)
        records.append(CaseRecord('isometry', 'Z=%s' % text, report.passed,
                                  value=report.estimate.mean, target=report.exact,
                                  stderr=report.estimate.stderr, allowance=report.allowance,
                                  slack=report.z_score, detail='z-score %.3f' % report.z_score))
    return records


def run_h1(ctx):
    """The fixed-time inequality, exactly, on configured and random cases."""
    logger = logging.getLogger("Logger")
    cfg = ctx.config
    records = []
    for text, Y in zip(cfg.y, cfg.processes()):
        for c, c_tilde in zip(cfg.c, cfg.c_tilde):
            for q in cfg.variances:
                report = verify_h1(Y.at_variance(q), c, c_tilde, q, cfg.exact)
                case = 'Y=%s, c=%r, c~=%r, q=%r' % (text, c, c_tilde, q)
                records.append(CaseRecord.from_inequality(
                    'h1', case, report,
                    detail='commutator bound %r' % report.extras['commutator_bound']))

    if cfg.randomized:
        rng = ctx.rng(_H1_STREAM)
        variances = cfg.variances or ALGEBRA_VARIANCES[1:]
        failures = 0
        worst = float('inf')
        for i in range(cfg.randomized):
            q = variances[i % len(variances)]
            Y = random_element(rng, q, max_degree=4, max_terms=2, max_exponent=2.0)
            c, c_tilde = rng.uniform(-2, 2, size=2)
            report = verify_h1(Y, c, c_tilde, q, cfg.exact)
            if not report.passed:
                failures += 1
                logger.debug("h1 failed: %r, c=%r, c~=%r" % (Y, c, c_tilde))
            if report.rhs > 0:
                worst = min(worst, report.slack / report.rhs)
        records.append(CaseRecord('h1', 'randomized', failures == 0,
                                  value=worst if math.isfinite(worst) else None,
                                  detail='%d cases, %d failures, smallest relative slack'
                                         % (cfg.randomized, failures)))
    return records


def _random_process(rng):
    terms = []
    for _ in range(int(rng.integers(1, 3))):
        exponent = complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) if rng.integers(0, 2) else 0j
        degree = int(rng.integers(0, 3))
        coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        terms.append((exponent, coeffs))
    return ProcessElement.function(terms, 'random')


def _random_centering(rng, horizon):
    """A constant, or a piecewise linear centering through three random knots."""
    if rng.integers(0, 2):
        return CenteringFunction.constant(rng.uniform(-1, 1))
    times = np.sort(rng.uniform(0, horizon, size=3))
    values = rng.uniform(-1, 1, size=3)
    return CenteringFunction.piecewise(list(zip(times, values)))


def run_h2(ctx):
    """The integrated inequality with Monte Carlo stochastic integrals."""
    cfg = ctx.config
    ens = ctx.ensemble
    cases = []
    for text, Y in zip(cfg.y, cfg.processes()):
        for (g, g_tilde), g_text, g_tilde_text in zip(cfg.centerings(), cfg.g, cfg.g_tilde):
            cases.append(('Y=%s, g=%s, g~=%s' % (text, g_text, g_tilde_text), Y, g, g_tilde))
    if cfg.randomized_h2:
        rng = ctx.rng(_H2_STREAM)
        for i in range(cfg.randomized_h2):
            Y = _random_process(rng)
            g = _random_centering(rng, cfg.horizon)
            cases.append(('random %d' % i, Y, g, _random_centering(rng, cfg.horizon)))

    records = []
    for case, Y, g, g_tilde in cases:
        report = verify_h2(Y, g, g_tilde, ctx.h, ctx.grid, ens, cfg.sigmas,
                           cfg.discretization, cfg.workers)
        detail = 'exact lhs %r, coarse lhs %r' % (report.extras['exact_lhs'],
                                                 report.extras.get('coarse_lhs_product'))
        records.append(CaseRecord.from_inequality('h2', case, report, detail=detail))
        records.append(CaseRecord('h2', '%s exact chain' % case, report.extras['chain_holds'],
                                  value=report.extras['exact_lhs'],
                                  target=report.rhs, label=report.label,
                                  detail='middle %r' % report.extras['schwarz_middle']))
    return records


def run_pde(ctx):
    """Finite-difference residual of the heat-type equation."""
    records = []
    for c in ctx.config.exponents:
        residual = verify_pde(c)
        records.append(CaseRecord('pde', 'c=%s' % format_complex(c), residual <= PDE_TOLERANCE,
                                  value=residual, target=PDE_TOLERANCE,
                                  slack=PDE_TOLERANCE - residual))
    return records


def run_l2limit(ctx):
    """Convergence of the difference quotient of exponentials to X E_c."""
    records = []
    for c in ctx.config.exponents:
        for q in ctx.config.variances:
            if q == 0:
                continue
            norms = verify_l2_limit(c, q)
            ratios = convergence_ratios(norms)
            decreasing = all(b < a for a, b in zip(norms, norms[1:]))
            converging = abs(ratios[-1] - L2_RATIO) <= L2_RATIO_TOLERANCE
            small = norms[-1] < L2_FINAL_BOUND
            records.append(CaseRecord('l2limit', 'c=%s, q=%r' % (format_complex(c), q),
                                      decreasing and converging and small,
                                      value=norms[-1], target=L2_FINAL_BOUND,
                                      detail='last ratio %r, decreasing %s'
                                             % (ratios[-1], decreasing)))
    return records


SUITE_FUNCTIONS = {
    'algebra': run_algebra,
    'lemma2': run_lemma2,
    'isometry': run_isometry,
    'h1': run_h1,
    'h2': run_h2,
    'pde': run_pde,
    'l2limit': run_l2limit,
}


def run_suites(ctx, names):
    """
    Runs the named suites in order and concatenates their records.

    An exponential overflow stops the run; the suites finished so far are
    kept and the overflow is added as a failed record.

    :returns: (records, overflow), where ``overflow`` is the
        EvaluationOverflow that stopped the run or None.
    """
    logger = logging.getLogger("Logger")
    records = []
    for name in names:
        logger.info("Running suite %s..." % name)
        try:
            suite_records = SUITE_FUNCTIONS[name](ctx)
        except EvaluationOverflow as e:
            logger.error("Suite %s stopped: %s" % (name, e))
            records.append(CaseRecord(name, 'overflow', False, detail=str(e)))
            return records, e
        failed = sum(1 for r in suite_records if not r.passed)
        logger.info("Suite %s: %d cases, %d failed" % (name, len(suite_records), failed))
        records.extend(suite_records)
    return records, None
