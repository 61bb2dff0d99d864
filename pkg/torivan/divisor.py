""" Toric divisors, their Cartier data, Picard normal forms and pullbacks.

    A toric divisor D = sum a_rho D_rho is stored densely, one integer
    per ray of its fan. On a smooth complete fan every toric divisor is
    Cartier: for each maximal cone sigma there is a unique character
    m_sigma with <m_sigma, u_rho> = -a_rho for the rays of sigma.
"""
import json
from collections import namedtuple
from fractions import Fraction

from sympy import Matrix

from .lattice import Fan, FanError, pair, containing_cone


class DivisorError(ValueError):
    """A divisor does not fit its fan, or has no integral Cartier data."""


class RefinementError(ValueError):
    """Pullback was asked for along a fan that does not refine the other."""


class ToricDivisor:
    def __init__(self, fan, coeffs=()):
        self.fan = fan
        size = len(fan.rays)
        if isinstance(coeffs, dict):
            values = [0] * size
            for key, value in coeffs.items():
                index = int(key)
                if not 0 <= index < size:
                    raise DivisorError(f"No ray with index {index} in {fan!r}")
                values[index] = int(value)
        else:
            values = [int(x) for x in coeffs]
            if not values:
                values = [0] * size
            if len(values) != size:
                raise DivisorError(f"Expected {size} coefficients, got {len(values)}")
        self.coeffs = tuple(values)

    @classmethod
    def zero(cls, fan):
        return cls(fan)

    @classmethod
    def prime(cls, fan, ray):
        """D_rho for a ray given by index or label."""
        if isinstance(ray, str):
            ray = fan.index(ray)
        return cls(fan, {ray: 1})

    def __getitem__(self, ray):
        if isinstance(ray, str):
            ray = self.fan.index(ray)
        return self.coeffs[ray]

    def _check(self, other):
        if not isinstance(other, ToricDivisor):
            return NotImplemented
        if other.fan != self.fan:
            raise DivisorError("Divisors live on different fans")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ToricDivisor(self.fan, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ToricDivisor(self.fan, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return ToricDivisor(self.fan, [-x for x in self.coeffs])

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return ToricDivisor(self.fan, [k * x for x in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ToricDivisor):
            return NotImplemented
        return self.fan == other.fan and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.fan, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        terms = []
        for label, a in zip(self.fan.labels, self.coeffs):
            if a:
                sign = '-' if a < 0 else '+'
                size = '' if abs(a) == 1 else f"{abs(a)}*"
                terms.append(f"{sign} {size}D[{label}]")
        if not terms:
            return '0'
        text = ' '.join(terms)
        return text[2:] if text.startswith('+') else '-' + text[2:]

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    def to_json(self):
        return {
            'fan': self.fan.to_json(),
            'coeffs': {str(i): a for i, a in enumerate(self.coeffs) if a},
        }

    @classmethod
    def from_json(cls, data, fan=None):
        if isinstance(data, str):
            data = json.loads(data)
        if fan is None:
            if 'fan' not in data:
                raise DivisorError("Divisor JSON needs a fan")
            fan = Fan.from_json(data['fan'])
        return cls(fan, dict(data.get('coeffs', {})))


class CartierData:
    """ The characters m_sigma, one per maximal cone, in fan order."""
    def __init__(self, fan, characters):
        self.fan = fan
        self.characters = tuple(tuple(m) for m in characters)

    def __getitem__(self, cone_index):
        return self.characters[cone_index]

    def __iter__(self):
        return iter(self.characters)

    def __len__(self):
        return len(self.characters)

    def __repr__(self):
        return f"<{type(self).__name__} {list(self.characters)}>"


class BlowupParams(namedtuple('BlowupParams', 'n points a b')):
    """ O(-sum a_i E_i) (x) pi^* O(b) on P^n blown up at `points` points."""
    __slots__ = ()

    def __new__(cls, n, points, a, b):
        a = tuple(int(x) for x in a)
        if n < 3:
            raise ValueError(f"Blow-up parameters need n >= 3, got {n}")
        if not 1 <= points <= n + 1:
            raise ValueError(f"Can blow up 1 to {n + 1} points of P^{n}, not {points}")
        if len(a) != points:
            raise ValueError(f"Need {points} values of a, got {len(a)}")
        return super().__new__(cls, int(n), int(points), a, int(b))

    @property
    def q(self):
        return self.points - 1

    def to_json(self):
        return {'n': self.n, 'points': self.points, 'a': list(self.a), 'b': self.b}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data['n'], data['points'], data['a'], data['b'])


def check_dimension(fan, m):
    if len(m) != fan.dim:
        raise DivisorError(f"Character {list(m)} does not have {fan.dim} coordinates")


def div_of_character(fan, m):
    """ div(m) = sum <m, u_rho> D_rho."""
    check_dimension(fan, m)
    return ToricDivisor(fan, [pair(m, u) for u in fan.rays])


def cone_character(fan, cone_index, D):
    """ The m_sigma of one full-dimensional maximal cone."""
    inverse = fan.cone_inverses[cone_index]
    if inverse is None:
        raise DivisorError(f"Cone {fan.cone_label(cone_index)} has a singular generator matrix")
    adj, det = inverse
    cone = fan.max_cones[cone_index]
    rhs = [-D.coeffs[i] for i in cone]
    m = []
    for k in range(fan.dim):
        value, remainder = divmod(sum(adj[k][j] * rhs[j] for j in range(fan.dim)), det)
        if remainder:
            raise DivisorError(f"{D} is not Cartier on cone {fan.cone_label(cone_index)}")
        m.append(value)
    return tuple(m)


def cartier_data(fan, D):
    if D.fan != fan:
        raise DivisorError("Divisor belongs to a different fan")
    return CartierData(fan, [cone_character(fan, c, D) for c in range(len(fan.max_cones))])


def base_cone_index(fan, base_cone):
    if base_cone is None:
        return 0
    if isinstance(base_cone, int):
        return base_cone
    return fan.cone_index(base_cone)


def picard_normal_form(fan, base_cone, D):
    """ The divisor linearly equivalent to D vanishing on the rays of
        the base cone (a cone index, a tuple of ray indices, or None for
        the first maximal cone).
    """
    if D.fan != fan:
        raise DivisorError("Divisor belongs to a different fan")
    c = base_cone_index(fan, base_cone)
    return D + div_of_character(fan, cone_character(fan, c, D))


def linearly_equivalent(fan, D1, D2, base_cone=None):
    return picard_normal_form(fan, base_cone, D1) == picard_normal_form(fan, base_cone, D2)


def pullback_refinement(fine, coarse, D):
    """ Pull D back from `coarse` to its refinement `fine`: every fine
        cone borrows m_sigma from the first coarse cone containing it.
    """
    if D.fan != coarse:
        raise DivisorError("Divisor belongs to a different fan")
    if fine.dim != coarse.dim:
        raise RefinementError("Fans of different dimensions")
    data = cartier_data(coarse, D)
    borrowed = []
    for c in range(len(fine.max_cones)):
        host = containing_cone(coarse, fine.generators(c))
        if host is None:
            raise RefinementError(f"Cone {fine.cone_label(c)} lies in no cone of the coarse fan")
        borrowed.append(data[host])
    coeffs = []
    for ray, u in enumerate(fine.rays):
        c = fine.cones_containing(ray)[0]
        coeffs.append(-pair(borrowed[c], u))
    return ToricDivisor(fine, coeffs)


def blowup_points(fan):
    """ Number of exceptional rays u_0.. of a fan built by make_blowup_fan."""
    points = len(fan.rays) - (fan.dim + 1)
    expected = tuple(f"u{i}" for i in range(points)) + tuple(f"e{j}" for j in range(fan.dim + 1))
    if points < 1 or fan.labels != expected:
        raise FanError(f"{fan!r} is not a blow-up of P^{fan.dim} at torus-fixed points")
    return points


def pullback_closed_form(fine, lambdas):
    """ pi^*(lambda_0 D_0 + ... + lambda_n D_n) on a blow-up fan:

            sum lambda_i D_{e_i} + sum_{i <= q} (s - lambda_i) D_{u_i},

        s = lambda_0 + ... + lambda_n.
    """
    points = blowup_points(fine)
    lambdas = [int(x) for x in lambdas]
    if len(lambdas) != fine.dim + 1:
        raise DivisorError(f"Need {fine.dim + 1} coefficients, got {len(lambdas)}")
    s = sum(lambdas)
    return ToricDivisor(fine, [s - lambdas[i] for i in range(points)] + lambdas)


def divisor_from_params(fan, p):
    """ A toric divisor in the class of O(-sum a_i E_i) (x) pi^* O(b)."""
    if blowup_points(fan) != p.points or fan.dim != p.n:
        raise DivisorError(f"{p} does not match {fan!r}")
    if p.points == 1:
        a, = p.a
        return ToricDivisor(fan, {fan.index('u0'): p.b - a, fan.index('e1'): p.b})
    coeffs = {fan.index('e0'): p.b, fan.index('u0'): -p.a[0]}
    for i in range(1, p.points):
        coeffs[fan.index(f"u{i}")] = p.b - p.a[i]
    return ToricDivisor(fan, coeffs)


def picard_coordinates(fan, D, base_cone=None):
    """ The BlowupParams (a_0..a_q, b) of the class of D, i.e.
        D ~ b pi^*H - sum a_i E_i, with E_i = D_{u_i} and
        pi^*H = D_{e_0} + D_{u_1} + ... + D_{u_q}.
    """
    points = blowup_points(fan)
    hyperplane = ToricDivisor.prime(fan, 'e0')
    for i in range(1, points):
        hyperplane += ToricDivisor.prime(fan, f"u{i}")
    basis = [hyperplane] + [-ToricDivisor.prime(fan, f"u{i}") for i in range(points)]
    columns = [picard_normal_form(fan, base_cone, B).coeffs for B in basis]
    target = picard_normal_form(fan, base_cone, D).coeffs
    # Normal forms are integral combinations of the basis; solve exactly.
    A = Matrix([[col[r] for col in columns] for r in range(len(target))])
    solution, params = A.gauss_jordan_solve(Matrix(list(target)))
    values = [Fraction(int(x.p), int(x.q)) for x in solution]
    if any(v.denominator != 1 for v in values):
        raise DivisorError(f"{D} has no integral Picard coordinates")
    b, *a = (int(v) for v in values)
    return BlowupParams(fan.dim, points, a, b)
