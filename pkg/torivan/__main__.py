""" torivan command line.

    python -m torivan fan        --n 3 --points 2
    python -m torivan positivity --n 3 --points 1 --a 1 --b 2 --closed-form
    python -m torivan coh        --n 3 --points 1 --a 2 --b 0
    python -m torivan verify     --n 3 --points 1 --a-range -5..5 --b-range -5..5
    python -m torivan bench      --n 3 --a-range 0..4 --b-range -1..2 --format csv

    Exit status: 0 on success, 1 if a computation failed (or, with
    --strict, if a sweep disagreed), 2 for bad flags.
"""
import argparse
import logging
import sys
import time
from pathlib import Path

import pendulum

from .config import load_settings
from .lattice import make_projective_fan, make_blowup_fan, validate_fan
from .divisor import BlowupParams, ToricDivisor, divisor_from_params, picard_coordinates
from .positivity import positivity, onept_positivity_closed_form
from .cohomology import (
    total_cohomology, search_box, h1_closed_form_onept, lambdas_from_divisor, CapExceeded,
)
from .sweep import SweepGrid, verify_sweep, summarize
from .cache import ReportCache, cache_key
from . import report as fmt

logger = logging.getLogger('torivan')

FORMATS = ('json', 'csv', 'text')

# Flags whose value may start with '-' (negative numbers, ranges, lists).
VALUE_FLAGS = {'--a', '--b', '--a-range', '--b-range', '--margin'}


def glue_values(argv):
    """ Turn ['--a', '-1,0'] into ['--a=-1,0'] so argparse takes it as a value."""
    result = []
    argv = list(argv)
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in VALUE_FLAGS and i + 1 < len(argv):
            result.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            result.append(arg)
            i += 1
    return result


def int_list(text):
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def int_range(text):
    lo, sep, hi = text.partition('..')
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range lo..hi, got {text!r}") from None
    if not sep or lo > hi:
        raise argparse.ArgumentTypeError(f"expected a range lo..hi with lo <= hi, got {text!r}")
    return range(lo, hi + 1)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, default=3, help="dimension of P^n (default 3)")
    common.add_argument('--points', type=int, default=1, help="number of blown-up points")
    common.add_argument('--a', type=int_list, help="comma separated a_0,...,a_q")
    common.add_argument('--b', type=int)
    common.add_argument('--out', type=Path, help="write the report here instead of stdout")
    common.add_argument('--format', choices=FORMATS, default='json')
    common.add_argument('--margin', type=int, help="search box margin")
    common.add_argument('--cap', type=int, help="most characters to enumerate")
    common.add_argument('--jobs', type=int, help="worker processes for sweeps")
    common.add_argument('--cache', type=Path, help="report cache folder")
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(prog='torivan', description=__doc__.split('\n\n')[0])
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('fan', parents=[common], help="build and validate a fan (--points 0 for P^n)")

    p = sub.add_parser('positivity', parents=[common], help="nef / ample verdicts")
    p.add_argument('--closed-form', action='store_true', help="compare with 0<=a<=b / 0<a<b")

    p = sub.add_parser('coh', parents=[common], help="all cohomology dimensions")
    p.add_argument('--divisor', type=Path, help="divisor JSON file (with inline fan)")

    for name, text in (('verify', "sweep predicates against brute force"),
                       ('bench', "closed form against enumeration timings")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('--a-range', type=int_range, help="lo..hi for every a_i")
        p.add_argument('--b-range', type=int_range, help="lo..hi for b")
    verify = sub.choices['verify']
    verify.add_argument('--strict', action='store_true', help="exit 1 on any disagreement")
    verify.add_argument('--stability', action='store_true', help="recheck each tuple with a doubled margin")
    return parser


def emit(args, text):
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def params_from_args(parser, args):
    if args.a is None or args.b is None:
        parser.error("--a and --b are required")
    if len(args.a) != args.points:
        parser.error(f"--a needs {args.points} value(s), got {len(args.a)}")
    try:
        return BlowupParams(args.n, args.points, args.a, args.b)
    except ValueError as e:
        parser.error(str(e))


def grid_from_args(parser, args):
    if args.a_range is None and args.a is None:
        parser.error("give --a-range or --a")
    if args.b_range is None and args.b is None:
        parser.error("give --b-range or --b")
    if args.a_range is None and len(set(args.a)) != 1:
        parser.error("a single --a value (or equal values) is needed for a sweep")
    a_values = args.a_range if args.a_range is not None else [args.a[0]]
    b_values = args.b_range if args.b_range is not None else [args.b]
    if args.n < 3 or not 1 <= args.points <= args.n + 1:
        parser.error(f"need n >= 3 and 1 <= points <= n+1, got n={args.n}, points={args.points}")
    return SweepGrid(args.n, args.points, list(a_values), list(b_values))


def cmd_fan(parser, args, settings):
    if args.points == 0:
        fan = make_projective_fan(args.n)
    else:
        fan = make_blowup_fan(args.n, args.points)
    check = validate_fan(fan)
    if args.format == 'json':
        emit(args, fmt.dumps({'fan': fan.to_json(), 'validation': check._asdict()}) + '\n')
    elif args.format == 'csv':
        rows = [[i, fan.labels[i], ' '.join(map(str, ray))] for i, ray in enumerate(fan.rays)]
        emit(args, fmt._csv(['index', 'label', 'ray'], rows))
    else:
        lines = [f"{fan!r}"]
        lines += [f"  {label}: {list(ray)}" for label, ray in zip(fan.labels, fan.rays)]
        lines += [f"  cone {c}: {fan.cone_label(c)}" for c in range(len(fan.max_cones))]
        lines += [f"{key}: {value}" for key, value in check._asdict().items()]
        emit(args, '\n'.join(lines) + '\n')
    return 0


def cmd_positivity(parser, args, settings):
    params = params_from_args(parser, args)
    if args.closed_form and params.points != 1:
        parser.error("--closed-form is only known for one point")
    fan = make_blowup_fan(params.n, params.points)
    D = divisor_from_params(fan, params)
    verdict = positivity(fan, D)
    result = {'params': params.to_json(), 'divisor': str(D)}
    result.update(verdict.to_json(fan))
    if args.closed_form:
        nef, ample = onept_positivity_closed_form(params.a[0], params.b)
        result['closed_form'] = {'nef': nef, 'ample': ample}
        result['agree'] = (nef, ample) == (verdict.nef, verdict.ample)

    if args.format == 'json':
        emit(args, fmt.dumps(result) + '\n')
    elif args.format == 'csv':
        header = ['nef', 'ample'] + (['closed_nef', 'closed_ample', 'agree'] if args.closed_form else [])
        row = [verdict.nef, verdict.ample]
        if args.closed_form:
            row += [result['closed_form']['nef'], result['closed_form']['ample'], result['agree']]
        emit(args, fmt._csv(header, [row]))
    else:
        lines = [f"D = {D}", f"nef={verdict.nef} ample={verdict.ample}"]
        for key in ('nef_witness', 'ample_witness'):
            w = result[key]
            if w is not None:
                lines.append(f"{key}: wall {w['left']}|{w['right']} at {w['ray']}: "
                             f"{w['value']} vs {w['bound']}")
        if args.closed_form:
            lines.append(f"closed form nef={result['closed_form']['nef']} "
                         f"ample={result['closed_form']['ample']} agree={result['agree']}")
        emit(args, '\n'.join(lines) + '\n')
    return 0


def cached_report(D, margin, cap, cache):
    """ (report, cache_hit). Cached entries are the canonical JSON."""
    if cache is None:
        return total_cohomology(D.fan, D, margin=margin, cap=cap), False
    key = cache_key(D, margin)
    text = cache.get(key)
    if text is not None:
        return fmt.report_from_json(text), True
    report = total_cohomology(D.fan, D, margin=margin, cap=cap)
    cache.put(key, fmt.dumps(fmt.report_to_json(report)))
    return report, False


def render_report(report, form):
    if form == 'json':
        return fmt.dumps(fmt.report_to_json(report)) + '\n'
    if form == 'csv':
        return fmt.report_to_csv(report)
    return fmt.report_to_text(report)


def cmd_coh(parser, args, settings):
    if args.divisor is not None:
        try:
            D = ToricDivisor.from_json(args.divisor.read_text())
        except (OSError, ValueError) as e:
            parser.error(f"cannot read {args.divisor}: {e}")
        if not (D.fan.complete and D.fan.smooth):
            parser.error(f"the fan in {args.divisor} is not smooth and complete")
    else:
        params = params_from_args(parser, args)
        D = divisor_from_params(make_blowup_fan(params.n, params.points), params)
    report, _ = cached_report(D, settings.margin, settings.cap, settings.cache)
    emit(args, render_report(report, args.format))
    return 0


def cmd_verify(parser, args, settings):
    grid = grid_from_args(parser, args)
    verdicts = verify_sweep(grid, jobs=settings.jobs, margin=settings.margin,
                            cap=settings.cap, check_stability=args.stability)
    summary = summarize(verdicts)
    if args.format == 'json':
        emit(args, fmt.dumps(fmt.sweep_to_json(verdicts, summary)) + '\n')
    elif args.format == 'csv':
        emit(args, fmt.sweep_to_csv(verdicts))
    else:
        emit(args, fmt.sweep_to_text(verdicts, summary))
    logger.debug("sweep summary: %s", summary)
    if args.strict and (summary['disagree'] or summary['errors']):
        return 1
    return 0


def cmd_bench(parser, args, settings):
    grid = grid_from_args(parser, args)
    if grid.points != 1:
        parser.error("bench compares against the one-point closed form; use --points 1")
    fan = make_blowup_fan(grid.n, 1)
    rows = []
    started = pendulum.now()
    for params in grid.params():
        D = divisor_from_params(fan, params)

        beginning = time.perf_counter()
        h1 = h1_closed_form_onept(grid.n, lambdas_from_divisor(fan, D))
        rows.append({'a': params.a[0], 'b': params.b, 'pipeline': 'closed_form', 'h1': h1,
                     'characters': 0, 'seconds': round(time.perf_counter() - beginning, 6),
                     'cache_hit': False})

        beginning = time.perf_counter()
        report, hit = cached_report(D, settings.margin, settings.cap, settings.cache)
        rows.append({'a': params.a[0], 'b': params.b, 'pipeline': 'enumeration', 'h1': report.h1,
                     'characters': search_box(fan, D, settings.margin).size,
                     'seconds': round(time.perf_counter() - beginning, 6), 'cache_hit': hit})

    if args.format == 'json':
        emit(args, fmt.dumps(rows) + '\n')
    elif args.format == 'csv':
        emit(args, fmt.bench_to_csv(rows))
    else:
        lines = [f"{r['pipeline']:12} a={r['a']:3} b={r['b']:3} h1={r['h1']:5} "
                 f"chars={r['characters']:8,} {r['seconds']:.4f}s"
                 + (' (cached)' if r['cache_hit'] else '')
                 for r in rows]
        elapsed = pendulum.now() - started
        lines.append(f"{len(rows) // 2} scenarios in {elapsed.in_words() or 'no time'}")
        emit(args, '\n'.join(lines) + '\n')
    return 0


COMMANDS = {
    'fan': cmd_fan,
    'positivity': cmd_positivity,
    'coh': cmd_coh,
    'verify': cmd_verify,
    'bench': cmd_bench,
}


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(glue_values(sys.argv[1:] if argv is None else argv))
    try:
        settings = load_settings()
    except (OSError, ValueError) as e:
        print(f"torivan: bad settings: {e}", file=sys.stderr)
        return 2

    settings = settings._replace(
        margin=settings.margin if args.margin is None else args.margin,
        cap=settings.cap if args.cap is None else args.cap,
        jobs=settings.jobs if args.jobs is None else args.jobs,
        cache=settings.cache if args.cache is None else args.cache,
    )
    if settings.margin < 0 or settings.cap < 1 or settings.jobs < 1:
        parser.error("--margin must be >= 0, --cap and --jobs >= 1")
    if settings.cache is not None:
        settings = settings._replace(cache=ReportCache(settings.cache))

    level = {0: settings.log_level, 1: 'INFO'}.get(args.verbose, 'DEBUG')
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        return COMMANDS[args.command](parser, args, settings)
    except CapExceeded as e:
        print(f"torivan: {e}", file=sys.stderr)
        return 1
    except (ArithmeticError, ValueError, OSError) as e:
        print(f"torivan: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
