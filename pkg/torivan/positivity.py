""" Nef and ample toric divisors via their support functions.

    phi_D is the piecewise linear function equal to <m_sigma, u> on each
    maximal cone sigma. D is nef iff phi_D is convex and ample iff it is
    strictly convex, and on a simplicial fan both can be decided wall by
    wall: for the wall between sigma and sigma', the generator u of sigma'
    off the wall must satisfy phi_D(u) <= <m_sigma, u> (strictly, for
    ampleness).
"""
import logging
from collections import namedtuple

from .lattice import pair, walls, cone_contains, FanError
from .divisor import ToricDivisor, cartier_data, div_of_character, blowup_points

logger = logging.getLogger(__name__)

WallWitness = namedtuple('WallWitness', 'wall ray value bound')
WallWitness.__doc__ = "phi_D(u_ray) = value against <m_left, u_ray> = bound at a failed wall."


class PositivityVerdict(namedtuple('PositivityVerdict', 'nef ample nef_witness ample_witness')):
    __slots__ = ()

    def to_json(self, fan):
        def witness(w):
            if w is None:
                return None
            return {
                'left': fan.cone_label(w.wall.left),
                'right': fan.cone_label(w.wall.right),
                'ray': fan.labels[w.ray],
                'value': w.value,
                'bound': w.bound,
            }
        return {
            'nef': self.nef,
            'ample': self.ample,
            'nef_witness': witness(self.nef_witness),
            'ample_witness': witness(self.ample_witness),
        }


class SupportFunction:
    def __init__(self, fan, cartier):
        self.fan = fan
        self.cartier = cartier

    @classmethod
    def of(cls, fan, D):
        return cls(fan, cartier_data(fan, D))

    def cone_of(self, u):
        """The first maximal cone (in fan order) containing u."""
        for c in range(len(self.fan.max_cones)):
            if cone_contains(self.fan, c, u):
                return c
        raise FanError(f"{list(u)} lies in no cone of {self.fan!r}")

    def __call__(self, u):
        return pair(self.cartier[self.cone_of(u)], u)


def support_eval(view, u):
    return view(u)


def positivity(fan, D):
    """ Check every wall inequality; the witnesses are the first failures."""
    cartier = cartier_data(fan, D)
    nef_witness = ample_witness = None
    for wall in walls(fan):
        ray = wall.check_ray(fan)
        u = fan.rays[ray]
        value = -D.coeffs[ray]  # phi_D(u_rho) = -a_rho
        bound = pair(cartier[wall.left], u)
        if nef_witness is None and value > bound:
            nef_witness = WallWitness(wall, ray, value, bound)
        if ample_witness is None and value >= bound:
            ample_witness = WallWitness(wall, ray, value, bound)
        if nef_witness is not None:
            break
    verdict = PositivityVerdict(nef_witness is None, ample_witness is None,
                                nef_witness, ample_witness)
    logger.debug("positivity of %s: nef=%s ample=%s", D, verdict.nef, verdict.ample)
    return verdict


def is_nef(fan, D):
    return positivity(fan, D).nef


def is_ample(fan, D):
    return positivity(fan, D).ample


def onept_positivity_closed_form(a, b):
    """ Nef iff 0 <= a <= b, ample iff 0 < a < b, for O(-aE) (x) pi^*O(b)."""
    return 0 <= a <= b, 0 < a < b


def canonical_divisor(fan):
    """ K = -sum D_rho."""
    return ToricDivisor(fan, [-1] * len(fan.rays))


def canonical_representative_onept(fan):
    """ div(m) + K with m = (-n, 1, ..., 1): equals -2 D_{u_0} - (n+1) D_{e_1}."""
    if blowup_points(fan) != 1:
        raise FanError(f"{fan!r} is not a one-point blow-up")
    m = (-fan.dim,) + (1,) * (fan.dim - 1)
    return div_of_character(fan, m) + canonical_divisor(fan)


def kodaira_precondition(fan, D):
    """ D - K ample, so that H^i(O(D)) = 0 for i > 0 by Kodaira vanishing."""
    return is_ample(fan, D - canonical_divisor(fan))


def kodaira_closed_form_onept(n, a, b):
    """ 0 <= a <= b + 1: then 0 < a+n-1 < b+n+1 and D - K is ample."""
    return 0 <= a <= b + 1


def demazure_precondition(fan, D):
    """ Nef on a complete fan: H^i(O(D)) = 0 for i > 0 by Demazure vanishing."""
    return is_nef(fan, D)


if __name__ == '__main__':
    from .lattice import make_blowup_fan
    from .divisor import BlowupParams, divisor_from_params

    fan = make_blowup_fan(3, 1)
    for a in range(-2, 5):
        for b in range(-2, 5):
            D = divisor_from_params(fan, BlowupParams(3, 1, [a], b))
            verdict = positivity(fan, D)
            assert (verdict.nef, verdict.ample) == onept_positivity_closed_form(a, b), (a, b)
    print("ok")
