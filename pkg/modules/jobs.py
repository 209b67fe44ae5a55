"""Job runners shared by the command line and the HTTP surface.

Every runner takes a ``params`` dict (strings or JSON values) and the settings
dict, and returns ``(result, error)``: exactly one of them is None.
"""
import logging
import math
import traceback
from dataclasses import dataclass
from fractions import Fraction

from modules import abelian_model, indicial
from modules.config import DEFAULTS
from modules.exact import ParseError, format_exact, parse_rational, parse_vector
from modules.index import IndexBreakdown, defect_sweep, moduli_dimension, stratum_dimension
from modules.masscharge import (
    BreakingReport,
    ChargeReport,
    IntegralityError,
    breaking_report,
    charge_report,
    make_pair,
)
from modules.rootsys import build_root_system, cartan_element, parse_group, positive_system

logger = logging.getLogger(__name__)

EXIT_CODES = {'invalid': 2, 'integrality': 3, 'internal': 1}


@dataclass(frozen=True)
class JobError:
    kind: str
    message: str

    @property
    def exit_code(self):
        return EXIT_CODES[self.kind]


@dataclass(frozen=True)
class JobSpec:
    group: str
    mass: tuple
    charge: tuple
    tiebreak: tuple = None


@dataclass(frozen=True)
class DimReports:
    spec: JobSpec
    breakdown: IndexBreakdown
    charges: ChargeReport
    breaking: BreakingReport
    stratum_dim: int


def _plain(value):
    """JSON floats become their shortest decimal string, so 0.5 reads as 1/2."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParseError(f"not a finite number: {value!r}", 0)
        return repr(value)
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def _limit(app_config, key):
    return app_config.get(key, DEFAULTS[key])


def parse_job(params, max_rank=None):
    """Reads group/mass/charge(/tiebreak) and checks the vector lengths."""
    if 'group' not in params:
        raise ParseError("missing 'group'", 0)
    components = parse_group(params['group'])
    rank = sum(c.rank for c in components)
    if max_rank is not None and rank > max_rank:
        raise ParseError(f"group rank {rank} exceeds the limit {max_rank}", 0)
    vectors = {}
    for key in ('mass', 'charge', 'tiebreak'):
        if params.get(key) in (None, ''):
            if key == 'tiebreak':
                vectors[key] = None
                continue
            raise ParseError(f"missing '{key}'", 0)
        try:
            vectors[key] = parse_vector(_plain(params[key]))
        except ParseError as e:
            raise ParseError(f"{key}: {e.message}", e.position) from None
        if len(vectors[key]) != rank:
            raise ParseError(f"{key} has {len(vectors[key])} entries, the group has rank {rank}", 0)
    group = build_root_system(components).label
    return JobSpec(group, vectors['mass'], vectors['charge'], vectors['tiebreak'])


def _guarded(runner):
    def wrapper(params, app_config):
        try:
            return runner(params, app_config), None
        except IntegralityError as e:
            return None, JobError('integrality', str(e))
        except (ParseError, ValueError) as e:
            return None, JobError('invalid', str(e))
        except Exception as e:
            logger.error("internal error in %s: %s", runner.__name__, e)
            logger.debug(traceback.format_exc())
            return None, JobError('internal', f"{type(e).__name__}: {e}")
    wrapper.__name__ = runner.__name__
    wrapper.__doc__ = runner.__doc__
    return wrapper


def _pair_from_spec(spec):
    rs = build_root_system(spec.group)
    mu = cartan_element('coweight', spec.mass, rs.rank)
    kappa = cartan_element('coroot', spec.charge, rs.rank)
    return make_pair(rs, mu, kappa)


def _dim_reports(params, app_config):
    spec = parse_job(params, _limit(app_config, 'RANK_LIMIT'))
    pair = _pair_from_spec(spec)
    breakdown = moduli_dimension(pair, spec.tiebreak)
    ps = positive_system(pair.rs, pair.mu, pair.kappa, spec.tiebreak)
    return DimReports(
        spec=spec,
        breakdown=breakdown,
        charges=charge_report(pair, ps),
        breaking=breaking_report(pair),
        stratum_dim=stratum_dimension(pair, spec.tiebreak),
    )


@_guarded
def run_dim_reports(params, app_config):
    """The report objects behind ``run_dim``, for the human-readable table."""
    return _dim_reports(params, app_config)


@_guarded
def run_dim(params, app_config):
    """Dimension, charges and breaking data of one mass/charge pair."""
    reports = _dim_reports(params, app_config)
    spec, breakdown = reports.spec, reports.breakdown
    return {
        'group': spec.group,
        'mass': [format_exact(x) for x in spec.mass],
        'charge': [int(x) for x in spec.charge],
        'dimension': breakdown.total,
        'scattering': breakdown.scattering,
        'defect': breakdown.defect,
        'charges': [{'index': e.index, 'value': e.value, 'kind': e.kind.value} for e in reports.charges.entries],
        'stratum_dim': reports.stratum_dim,
        'base_dim': reports.breaking.base_dim,
        'empty_flag': breakdown.empty_flag,
    }


def _rational(params, key, default=None):
    value = params.get(key, default)
    if value is None:
        raise ParseError(f"missing '{key}'", 0)
    return parse_rational(_plain(value))


def _integer(params, key, default=None):
    number = _rational(params, key, default)
    if number.denominator != 1:
        raise ParseError(f"'{key}' must be an integer, got {format_exact(number)}", 0)
    return int(number)


def _grid_size(params, app_config):
    n = _integer(params, 'n', app_config['GRID_N'])
    limit = _limit(app_config, 'GRID_N_LIMIT')
    if n > limit:
        raise ParseError(f"'n' = {n} exceeds the limit {limit}", 0)
    return n


@_guarded
def run_bspec(params, app_config):
    """Indicial roots of one root line bundle."""
    d = _integer(params, 'd')
    t = _rational(params, 't', '1')
    lambda_max = _rational(params, 'max', app_config['LAMBDA_MAX'])
    limit = parse_rational(_limit(app_config, 'LAMBDA_LIMIT'))
    if lambda_max > limit:
        raise ParseError(f"'max' = {format_exact(lambda_max)} exceeds the limit {format_exact(limit)}", 0)
    rows = []
    for root in indicial.bspec(d, t, lambda_max):
        rows.append({
            'd': d,
            't': format_exact(t),
            'j': root.j,
            'sign': root.sign,
            'lambda': _format_lambda(root),
        })
    return rows


def _format_lambda(root):
    value = root.value
    if value.is_Rational:
        return format_exact(Fraction(int(value.p), int(value.q)))
    return str(value)


def _list(params, key, default):
    value = _plain(params.get(key, default))
    return parse_vector(value if isinstance(value, list) else str(value))


@_guarded
def run_defect(params, app_config):
    """Defect over a (t, delta) grid, per line-bundle copy or for a whole bundle."""
    ts = _list(params, 't', '1')
    deltas = _list(params, 'delta', '1/2')
    if 'group' in params:
        pair = _pair_from_spec(parse_job(params, _limit(app_config, 'RANK_LIMIT')))
        return [
            {'t': format_exact(t), 'delta': format_exact(delta), 'defect': format_exact(value)}
            for t, delta, value in defect_sweep(pair, ts, deltas)
        ]
    d = _integer(params, 'd')
    return [
        {'d': d, 't': format_exact(t), 'delta': format_exact(delta), 'defect': format_exact(value)}
        for d, t, delta, value in indicial.defect_grid(d, ts, deltas)
    ]


def _finite_or_none(value):
    # NaN is not valid JSON
    return None if math.isnan(value) else value


@_guarded
def run_model(params, app_config):
    """Chern number, Bogomolny residual and its convergence ratio."""
    d = _integer(params, 'd')
    m = float(_rational(params, 'm', '0'))
    n = _grid_size(params, app_config)
    r_max = float(_rational(params, 'r_max', app_config['R_MAX']))
    grid = abelian_model.GridSpec((1.0, r_max), n, n, n)
    logger.info("model d=%d m=%g on %d^3 grid, r in [1, %g]", d, m, n, r_max)
    return {
        'd': d,
        'm': m,
        'n': n,
        'chern': abelian_model.chern_number(d, max(n, 8) * 8, max(n, 8) * 8),
        'chern_midpoint': abelian_model.chern_number(d, max(n, 8) * 8, max(n, 8) * 8, rule='midpoint'),
        'winding': abelian_model.transition_winding(d),
        'residual': abelian_model.bogomolny_residual(d, m, grid),
        'ratio': _finite_or_none(abelian_model.convergence_ratio(d, m, grid)),
        'truncation_estimate': abelian_model.truncation_estimate(d, grid),
    }


@_guarded
def run_profile(params, app_config):
    """Model fields on the radial axis of the grid at a few polar angles."""
    d = _integer(params, 'd')
    m = float(_rational(params, 'm', '0'))
    n = _grid_size(params, app_config)
    r_max = float(_rational(params, 'r_max', app_config['R_MAX']))
    patch = params.get('patch', 'north')
    if str(patch).upper() not in abelian_model.Patch.__members__:
        raise ParseError(f"unknown patch {patch!r}", 0)
    radii, thetas, _ = abelian_model.GridSpec((1.0, r_max), n, 5, 3).axes()
    return [
        {'r': r, 'theta': theta, 'a_phi': a_phi, 'f_theta_phi': curvature, 'phi': higgs}
        for r, theta, a_phi, curvature, higgs
        in abelian_model.field_profile(d, m, patch, radii.tolist(), thetas.tolist())
    ]


RUNNERS = {
    'dim': run_dim,
    'bspec': run_bspec,
    'defect': run_defect,
    'model': run_model,
    'profile': run_profile,
}
