"""Command line entry point: ``python -m modules.cli <command> ...``

Commands:
  dim     moduli-space dimension, charges and stratum data of a mass/charge pair
  bspec   indicial roots of a root line bundle (CSV)
  defect  defect over a (t, delta) grid, per copy or for a whole bundle (CSV)
  model   numerical checks of the abelian model pair
  profile fields of the abelian model pair along the radial axis (CSV)
  batch   run every job of a ``key = value`` job file (JSON lines)

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 failed integrality.
"""
import argparse
import csv
import json
import logging
import os
import sys

from modules.config import JobFileError, load_config, parse_job_file
from modules.exact import format_exact
from modules.jobs import RUNNERS, run_bspec, run_defect, run_dim, run_dim_reports, run_model, run_profile

logger = logging.getLogger(__name__)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monopole",
        description="Dimensions of framed monopole moduli spaces and the indicial data behind them.",
    )
    parser.add_argument('-v', '--verbose', action='store_true', help="log at DEBUG level to stderr")
    sub = parser.add_subparsers(dest='command', required=True)

    dim = sub.add_parser('dim', help="moduli-space dimension of a mass/charge pair")
    dim.add_argument('--group', required=True, help="e.g. A2 or B3,G2")
    dim.add_argument('--mass', required=True, help="coweight coordinates, e.g. 0,3 or 1/2,1")
    dim.add_argument('--charge', required=True, help="coroot coordinates (integers)")
    dim.add_argument('--tiebreak', help="generic vector ordering roots with alpha(mu)=alpha(kappa)=0")
    dim.add_argument('--json', action='store_true', help="emit a JSON object")

    bspec = sub.add_parser('bspec', help="indicial roots as CSV")
    bspec.add_argument('-d', required=True, help="line-bundle degree")
    bspec.add_argument('-t', '--t', dest='t', default='1', help="deformation parameter in [0, 1]")
    bspec.add_argument('--max', help="largest |lambda| listed")
    bspec.add_argument('--json', action='store_true')

    defect = sub.add_parser('defect', help="defect over a (t, delta) grid as CSV")
    defect.add_argument('-d', help="line-bundle degree (per-copy sweep)")
    defect.add_argument('-t', '--t', dest='t', default='1', help="comma-separated t values")
    defect.add_argument('--delta', default='1/2', help="comma-separated weights in (-1, 1)")
    defect.add_argument('--group', help="sweep the whole bundle of this group instead")
    defect.add_argument('--mass')
    defect.add_argument('--charge')
    defect.add_argument('--json', action='store_true')

    model = sub.add_parser('model', help="Chern number and Bogomolny residual of the model pair")
    model.add_argument('-d', required=True, help="line-bundle degree")
    model.add_argument('-m', default='0', help="mass pairing")
    model.add_argument('-n', help="grid points per direction")
    model.add_argument('--r-max', dest='r_max', help="outer radius (inner radius is 1)")
    model.add_argument('--json', action='store_true')

    profile = sub.add_parser('profile', help="model fields along the radial axis as CSV")
    profile.add_argument('-d', required=True, help="line-bundle degree")
    profile.add_argument('-m', default='0', help="mass pairing")
    profile.add_argument('-n', help="radial points")
    profile.add_argument('--r-max', dest='r_max', help="outer radius (inner radius is 1)")
    profile.add_argument('--patch', default='north', choices=('north', 'south'))
    profile.add_argument('--json', action='store_true')

    batch = sub.add_parser('batch', help="run a job file")
    batch.add_argument('file', help="job file with 'key = value' lines")
    batch.add_argument('--out', help="write JSON lines here (relative to OUTPUT_DIR) instead of stdout")
    return parser


def _params(args, keys):
    return {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}


def _emit_csv(rows, columns, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])


def _emit_table(pairs, stream):
    width = max(len(key) for key, _ in pairs)
    for key, value in pairs:
        print(f"{key.ljust(width)}  {value}", file=stream)


def _fail(error):
    print(f"error: {error.message}", file=sys.stderr)
    return error.exit_code


def cmd_dim(args, config, stream=None):
    stream = stream or sys.stdout
    params = _params(args, ('group', 'mass', 'charge', 'tiebreak'))
    if args.json:
        result, error = run_dim(params, config)
        if error:
            return _fail(error)
        print(json.dumps(result, indent=2), file=stream)
        return 0
    reports, error = run_dim_reports(params, config)
    if error:
        return _fail(error)
    spec, breakdown, breaking = reports.spec, reports.breakdown, reports.breaking
    mu_positive, mu_zero, mu_zero_kappa_nonzero = breaking.root_counts
    _emit_table([
        ('group', spec.group),
        ('mass', ", ".join(format_exact(x) for x in spec.mass)),
        ('charge', ", ".join(str(int(k)) for k in spec.charge)),
        ('dimension', breakdown.total),
        ('scattering', breakdown.scattering),
        ('defect', breakdown.defect),
        ('via_positive_system', breakdown.via_positive_system),
        ('via_weights', breakdown.via_weights),
        ('stratum_dim', reports.stratum_dim),
        ('centralizer_mu_dim', breaking.centralizer_mu_dim),
        ('stabilizer_mu_kappa_dim', breaking.stabilizer_mu_kappa_dim),
        ('base_dim', breaking.base_dim),
        ('root_counts', f"mu>0: {mu_positive}, mu=0: {mu_zero}, mu=0 kappa!=0: {mu_zero_kappa_nonzero}"),
        ('maximal', str(breaking.maximal).lower()),
        ('empty_flag', str(breakdown.empty_flag).lower()),
    ], stream)
    print(file=stream)
    rows = [("index", "value", "kind")] + [
        (str(e.index), str(e.value), e.kind.value) for e in reports.charges.entries]
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=stream)
    return 0


def cmd_bspec(args, config, stream=None):
    stream = stream or sys.stdout
    rows, error = run_bspec(_params(args, ('d', 't', 'max')), config)
    if error:
        return _fail(error)
    if args.json:
        print(json.dumps(rows, indent=2), file=stream)
    else:
        _emit_csv(rows, ('d', 't', 'j', 'sign', 'lambda'), stream)
    return 0


def cmd_defect(args, config, stream=None):
    stream = stream or sys.stdout
    params = _params(args, ('d', 't', 'delta', 'group', 'mass', 'charge'))
    if 'group' not in params and 'd' not in params:
        print("error: defect needs -d or --group/--mass/--charge", file=sys.stderr)
        return 2
    rows, error = run_defect(params, config)
    if error:
        return _fail(error)
    if args.json:
        print(json.dumps(rows, indent=2), file=stream)
    else:
        columns = ('t', 'delta', 'defect') if 'group' in params else ('d', 't', 'delta', 'defect')
        _emit_csv(rows, columns, stream)
    return 0


def cmd_model(args, config, stream=None):
    stream = stream or sys.stdout
    result, error = run_model(_params(args, ('d', 'm', 'n', 'r_max')), config)
    if error:
        return _fail(error)
    if args.json:
        print(json.dumps(result, indent=2), file=stream)
        return 0
    ratio = result['ratio']
    _emit_table([
        ('chern', f"{result['chern']:.9f}"),
        ('chern_midpoint', f"{result['chern_midpoint']:.9f}"),
        ('winding', f"{result['winding']:.9f}"),
        ('residual', f"{result['residual']:.3e}"),
        ('truncation_estimate', f"{result['truncation_estimate']:.3e}"),
        ('ratio', "n/a" if ratio is None else f"{ratio:.3f}"),
    ], stream)
    return 0


def cmd_profile(args, config, stream=None):
    stream = stream or sys.stdout
    rows, error = run_profile(_params(args, ('d', 'm', 'n', 'r_max', 'patch')), config)
    if error:
        return _fail(error)
    if args.json:
        print(json.dumps(rows, indent=2), file=stream)
    else:
        _emit_csv(rows, ('r', 'theta', 'a_phi', 'f_theta_phi', 'phi'), stream)
    return 0


def cmd_batch(args, config, stream=None):
    stream = stream or sys.stdout
    try:
        with open(args.file, encoding='utf-8') as handle:
            jobs = parse_job_file(handle.read())
    except OSError as e:
        print(f"error: cannot read {args.file}: {e}", file=sys.stderr)
        return 2
    except JobFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    out = stream
    if args.out:
        # relative paths land in OUTPUT_DIR; absolute ones are kept as given
        path = os.path.join(config['OUTPUT_DIR'], args.out)
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        out = open(path, 'w', encoding='utf-8')
        logger.info("writing %d job results to %s", len(jobs), path)
    worst = 0
    try:
        for job in jobs:
            command = job['command']
            params = {k: v for k, v in job.items() if k not in ('command', '_line')}
            result, error = RUNNERS[command](params, config)
            record = {'line': job['_line'], 'command': command, 'result': result,
                      'error': None if error is None else {'kind': error.kind, 'message': error.message}}
            print(json.dumps(record), file=out)
            if error:
                logger.warning("job at line %d failed: %s", job['_line'], error.message)
                worst = max(worst, error.exit_code)
    finally:
        if out is not stream:
            out.close()
    return worst


COMMANDS = {
    'dim': cmd_dim,
    'bspec': cmd_bspec,
    'defect': cmd_defect,
    'model': cmd_model,
    'profile': cmd_profile,
    'batch': cmd_batch,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else config['LOG_LEVEL'],
        format='%(levelname)s %(name)s: %(message)s',
    )
    return COMMANDS[args.command](args, config)


if __name__ == '__main__':
    sys.exit(main())
