""" Sweep the blow-up parameters, computing h^1 by brute force and
    comparing it with the closed-form vanishing predicates.

    Each tuple is independent, so the sweep fans out over a process
    pool with one future per tuple. Results are sorted before they are
    returned.
"""
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor, as_completed
from itertools import product

from .constants import DEFAULT_MARGIN, DEFAULT_CAP
from .lattice import make_blowup_fan
from .divisor import BlowupParams, divisor_from_params
from .cohomology import (
    total_cohomology, char1_predicate, mainthmsev_predicate,
    classify_pattern, active_rays, Shape, require_dimension,
)

logger = logging.getLogger(__name__)

VanishingVerdict = namedtuple('VanishingVerdict', 'params predicate h1 agree lemma_ok stable error')


class SweepGrid(namedtuple('SweepGrid', 'n points a_values b_values')):
    """ Every a_i runs over a_values, b over b_values."""
    __slots__ = ()

    def params(self):
        for a in product(self.a_values, repeat=self.points):
            for b in self.b_values:
                yield BlowupParams(self.n, self.points, a, b)

    @property
    def size(self):
        return len(self.a_values) ** self.points * len(self.b_values)


def predicate(params):
    if params.points == 1:
        return char1_predicate(params.a[0], params.b)
    return mainthmsev_predicate(params.a, params.b)


def verify_one(params, margin=DEFAULT_MARGIN, cap=DEFAULT_CAP, check_stability=False):
    """ Oracle h^1 against the predicate for one parameter tuple. Never raises."""
    try:
        fan = make_blowup_fan(params.n, params.points)
        require_dimension(fan)
        D = divisor_from_params(fan, params)
        report = total_cohomology(fan, D, margin=margin, cap=cap)
        says_vanishes = predicate(params)
        # Characters contributing to H^1 are exactly those with V disconnected.
        lemma_ok = all(
            classify_pattern(fan, active_rays(fan, D, m)).shape is not Shape.Other
            for m, ranks in report.contributions.items() if ranks.get(1))
        stable = None
        if check_stability:
            wider = total_cohomology(fan, D, margin=2 * max(margin, 1), cap=cap)
            stable = wider.dims == report.dims
        return VanishingVerdict(params, says_vanishes, report.h1,
                                says_vanishes == (report.h1 == 0), lemma_ok, stable, None)
    except Exception as e:
        logger.warning("%s failed: %s", params, e)
        return VanishingVerdict(params, None, None, False, None, None, f"{type(e).__name__}: {e}")


def verify_sweep(grid, jobs=1, margin=DEFAULT_MARGIN, cap=DEFAULT_CAP, check_stability=False):
    tuples = list(grid.params())
    results = []
    if jobs <= 1:
        for counter, params in enumerate(tuples, start=1):
            results.append(verify_one(params, margin, cap, check_stability))
            logger.info("%4d/%d. %s", counter, len(tuples), params)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            fs = [ex.submit(verify_one, params, margin, cap, check_stability) for params in tuples]
            logger.info("%d futures submitted.", len(fs))
            for counter, future in enumerate(as_completed(fs), start=1):
                results.append(future.result())
                logger.info("%4d/%d. %s", counter, len(fs), results[-1].params)
    results.sort(key=lambda v: (v.params.n, v.params.points, v.params.a, v.params.b))
    return results


def summarize(verdicts):
    errors = sum(1 for v in verdicts if v.error is not None)
    agree = sum(1 for v in verdicts if v.error is None and v.agree)
    return {
        'total': len(verdicts),
        'agree': agree,
        'disagree': len(verdicts) - agree - errors,
        'errors': errors,
    }
