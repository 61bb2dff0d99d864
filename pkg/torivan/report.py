""" Serialising reports: canonical JSON, a CSV projection, plain text.

    JSON is canonical (sorted keys, fixed separators) so equal reports
    are equal bytes. Integers too big for a double are written as
    strings.

    CSV columns, in order:
        coh:     m_1..m_n, h0..hn          (one row per contributing character)
        verify:  n, points, a, b, predicate, h1, agree, lemma_ok, stable, error
        bench:   a, b, pipeline, h1, characters, seconds, cache_hit
"""
import csv
import io
import json

from .constants import SAFE_INT
from .lattice import Fan
from .divisor import ToricDivisor
from .cohomology import CohomologyReport, SearchBox

SWEEP_COLUMNS = ['n', 'points', 'a', 'b', 'predicate', 'h1', 'agree', 'lemma_ok', 'stable', 'error']
BENCH_COLUMNS = ['a', 'b', 'pipeline', 'h1', 'characters', 'seconds', 'cache_hit']


def safe_int(x):
    return str(x) if abs(x) > SAFE_INT else x


def safe_ints(obj):
    """ A copy of a JSON-ready structure with every oversized int as a string."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return safe_int(obj)
    if isinstance(obj, dict):
        return {key: safe_ints(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [safe_ints(value) for value in obj]
    return obj


def dumps(obj):
    return json.dumps(safe_ints(obj), sort_keys=True, separators=(',', ':'))


def coeffs_json(D):
    return {str(i): safe_int(a) for i, a in enumerate(D.coeffs) if a}


def report_to_json(report):
    D = report.divisor
    return {
        'divisor': {
            'fan': D.fan.to_json(),
            'coeffs': coeffs_json(D),
            'normal_form': coeffs_json(report.normal_form),
            'base_cone': 0,
        },
        'box': {'lo': [safe_int(x) for x in report.box.lo],
                'hi': [safe_int(x) for x in report.box.hi]},
        'dims': [safe_int(h) for h in report.dims],
        'contributions': [
            {'m': [safe_int(x) for x in m],
             'ranks': {str(i): safe_int(rank) for i, rank in sorted(ranks.items())}}
            for m, ranks in report.contributions.items()
        ],
    }


def verdict_to_json(verdict):
    return {
        'params': safe_ints(verdict.params.to_json()),
        'predicate': verdict.predicate,
        'h1': verdict.h1 if verdict.h1 is None else safe_int(verdict.h1),
        'agree': verdict.agree,
        'lemma_ok': verdict.lemma_ok,
        'stable': verdict.stable,
        'error': verdict.error,
    }


def sweep_to_json(verdicts, summary):
    return {'verdicts': [verdict_to_json(v) for v in verdicts], 'summary': summary}


def _require(condition, message):
    if not condition:
        raise ValueError(f"Invalid report: {message}")


def _is_int(x):
    if isinstance(x, bool):
        return False
    if isinstance(x, int):
        return True
    if isinstance(x, str):
        try:
            int(x)
        except ValueError:
            return False
        return True
    return False


def validate_report(obj):
    """ Check a parsed cohomology report against its schema."""
    _require(isinstance(obj, dict), "not an object")
    for key in ('divisor', 'box', 'dims', 'contributions'):
        _require(key in obj, f"missing {key!r}")
    divisor = obj['divisor']
    _require(isinstance(divisor, dict) and 'fan' in divisor and 'coeffs' in divisor, "bad divisor")
    fan = divisor['fan']
    dim = fan.get('dim')
    _require(isinstance(dim, int) and dim > 0, "bad fan dimension")
    box = obj['box']
    _require(len(box.get('lo', [])) == dim and len(box.get('hi', [])) == dim, "bad box")
    _require(all(_is_int(x) for x in box['lo'] + box['hi']), "box bounds must be integers")
    dims = obj['dims']
    _require(len(dims) == dim + 1 and all(_is_int(h) and int(h) >= 0 for h in dims), "bad dims")
    totals = [0] * (dim + 1)
    for entry in obj['contributions']:
        _require(len(entry.get('m', [])) == dim, "bad character")
        for degree, rank in entry.get('ranks', {}).items():
            _require(_is_int(rank) and int(rank) > 0, "ranks must be positive")
            _require(0 <= int(degree) <= dim, "degree out of range")
            totals[int(degree)] += int(rank)
    _require(totals == [int(h) for h in dims], "dims disagree with contributions")
    return obj


def validate_sweep(obj):
    _require(isinstance(obj, dict) and 'verdicts' in obj and 'summary' in obj, "not a sweep")
    for entry in obj['verdicts']:
        for key in ('params', 'predicate', 'h1', 'agree'):
            _require(key in entry, f"verdict missing {key!r}")
        params = entry['params']
        _require(len(params['a']) == params['points'], "a does not match points")
    summary = obj['summary']
    _require(summary['total'] == len(obj['verdicts']), "summary total")
    _require(summary['agree'] + summary['disagree'] + summary.get('errors', 0) == summary['total'],
             "summary counts")
    return obj


def _csv(header, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def report_to_csv(report):
    n = report.divisor.fan.dim
    header = [f"m{k + 1}" for k in range(n)] + [f"h{i}" for i in range(n + 1)]
    rows = [list(m) + [ranks.get(i, 0) for i in range(n + 1)]
            for m, ranks in report.contributions.items()]
    return _csv(header, rows)


def sweep_to_csv(verdicts):
    rows = []
    for v in verdicts:
        p = v.params
        rows.append([p.n, p.points, ' '.join(map(str, p.a)), p.b,
                     v.predicate, v.h1, v.agree, v.lemma_ok, v.stable, v.error or ''])
    return _csv(SWEEP_COLUMNS, rows)


def bench_to_csv(rows):
    return _csv(BENCH_COLUMNS, [[row[c] for c in BENCH_COLUMNS] for row in rows])


def report_to_text(report):
    D = report.divisor
    lines = [
        f"D = {D}",
        f"normal form: {report.normal_form}",
        f"box: {list(report.box.lo)} .. {list(report.box.hi)} ({report.box.size:,} characters)",
        ', '.join(f"h^{i} = {h}" for i, h in enumerate(report.dims)),
    ]
    for m, ranks in report.contributions.items():
        if set(ranks) != {0}:
            degrees = ', '.join(f"H^{i}: {rank}" for i, rank in sorted(ranks.items()))
            lines.append(f"  m = {list(m)}  {degrees}")
    return '\n'.join(lines) + '\n'


def sweep_to_text(verdicts, summary):
    lines = []
    for v in verdicts:
        p = v.params
        flag = 'ERROR ' + v.error if v.error else ('agree' if v.agree else 'DISAGREE')
        lines.append(f"n={p.n} a={list(p.a)} b={p.b}: predicate={v.predicate} h1={v.h1} {flag}")
    lines.append(f"total {summary['total']}, agree {summary['agree']}, "
                 f"disagree {summary['disagree']}, errors {summary['errors']}")
    return '\n'.join(lines) + '\n'


def report_from_json(obj):
    """ Rebuild a CohomologyReport from its JSON form."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    validate_report(obj)
    divisor = obj['divisor']
    fan = Fan.from_json(divisor['fan'])
    D = ToricDivisor(fan, {k: int(v) for k, v in divisor['coeffs'].items()})
    normal_form = ToricDivisor(fan, {k: int(v) for k, v in divisor.get('normal_form', {}).items()})
    box = SearchBox(tuple(int(x) for x in obj['box']['lo']), tuple(int(x) for x in obj['box']['hi']))
    contributions = {
        tuple(int(x) for x in entry['m']): {int(i): int(r) for i, r in entry['ranks'].items()}
        for entry in obj['contributions']
    }
    return CohomologyReport(D, tuple(int(h) for h in obj['dims']), contributions, box, normal_form)
