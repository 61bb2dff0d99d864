""" Lattice vectors, smooth simplicial fans and their walls.

    Vectors and characters are plain tuples of Python ints, so every
    pairing and determinant is exact. A cone is the sorted tuple of
    the indices of its rays in the fan's ray table; only maximal cones
    are stored, faces are their subsets.

    The fans we care about are P^n,

        rays e_0 = -(e_1 + ... + e_n), e_1, ..., e_n
        maximal cones sigma_i = Cone(e_j | j != i)

    and its blow-ups at the torus-fixed points of sigma_0, ..., sigma_q,
    obtained by successive star subdivisions.
"""
import json
import logging
from collections import namedtuple, defaultdict
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import gcd

import networkx as nx
from sympy import Matrix

from .constants import MIN_DIM
from .feasibility import feasible

logger = logging.getLogger(__name__)


class FanError(ValueError):
    """A fan is malformed, not complete, or not smooth where it must be."""


def pair(m, u):
    """ The pairing <m, u> between a character m in M and a vector u in N."""
    if len(m) != len(u):
        raise ValueError(f"Dimension mismatch: {len(m)} != {len(u)}")
    return sum(x * y for x, y in zip(m, u))


def primitive(v):
    """ The primitive vector on the ray through v (divide by the gcd, keep sign)."""
    g = reduce(gcd, v, 0)
    if g == 0:
        raise ValueError("The zero vector spans no ray")
    return tuple(x // g for x in v)


def determinant(vectors):
    return int(Matrix([list(v) for v in vectors]).det())


class Wall(namedtuple('Wall', 'left right shared_rays')):
    """ tau = sigma_left & sigma_right, a codimension one face of both.

        `check_ray` is the generator of the right cone not on the wall,
        the vector the wall inequalities are tested at.
    """
    __slots__ = ()

    def check_ray(self, fan):
        extra, = set(fan.max_cones[self.right]) - set(self.shared_rays)
        return extra


class Fan:
    """ A simplicial fan given by its ray generators and its maximal cones.

        `complete` and `smooth` are flags set by whoever built the fan;
        `validate_fan` checks them from scratch.
    """
    def __init__(self, dim, rays, max_cones, labels=None, complete=False, smooth=False):
        self.dim = int(dim)
        self.rays = tuple(tuple(int(x) for x in ray) for ray in rays)
        for ray in self.rays:
            if len(ray) != self.dim:
                raise FanError(f"Ray {ray} does not have {self.dim} coordinates")
        cones = []
        for cone in max_cones:
            cone = tuple(sorted(set(int(i) for i in cone)))
            if not cone or cone[0] < 0 or cone[-1] >= len(self.rays):
                raise FanError(f"Cone {cone} refers to rays that do not exist")
            cones.append(cone)
        self.max_cones = tuple(cones)
        if labels is None:
            labels = [f"r{i}" for i in range(len(self.rays))]
        self.labels = tuple(labels)
        if len(self.labels) != len(self.rays):
            raise FanError("Need exactly one label per ray")
        self.complete = complete
        self.smooth = smooth

    def _key(self):
        return self.dim, self.rays, self.max_cones

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"<{type(self).__name__} dim={self.dim} "
                f"rays={len(self.rays)} cones={len(self.max_cones)}>")

    def index(self, label):
        """Ray index by label, e.g. fan.index('u0')."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"No ray labelled {label!r}") from None

    def cone_index(self, cone):
        cone = tuple(sorted(cone))
        try:
            return self.max_cones.index(cone)
        except ValueError:
            raise FanError(f"{cone} is not a maximal cone of {self!r}") from None

    def cone_label(self, cone_index):
        return '{' + ','.join(self.labels[i] for i in self.max_cones[cone_index]) + '}'

    def cones_containing(self, ray):
        return [c for c, cone in enumerate(self.max_cones) if ray in cone]

    def generators(self, cone_index):
        return [self.rays[i] for i in self.max_cones[cone_index]]

    @cached_property
    def cone_inverses(self):
        """ For each full-dimensional maximal cone, (adjugate, det) of the
            matrix whose rows are its generators; None for the others.
        """
        inverses = []
        for c, cone in enumerate(self.max_cones):
            if len(cone) != self.dim:
                inverses.append(None)
                continue
            matrix = Matrix([list(v) for v in self.generators(c)])
            det = int(matrix.det())
            if det == 0:
                inverses.append(None)
                continue
            adj = matrix.adjugate()
            inverses.append((tuple(tuple(int(x) for x in adj.row(i)) for i in range(self.dim)), det))
        return tuple(inverses)

    def coordinates(self, cone_index, u):
        """ Coefficients of u in the generators of a full-dimensional cone,
            as Fractions; None if the generators are not a basis.
        """
        inverse = self.cone_inverses[cone_index]
        if inverse is None:
            return None
        adj, det = inverse
        # rows(G)^T x = u  <=>  x = u^T adj(G) / det
        return [Fraction(sum(u[k] * adj[k][j] for k in range(self.dim)), det)
                for j in range(self.dim)]

    def to_json(self):
        return {
            'dim': self.dim,
            'rays': [list(r) for r in self.rays],
            'max_cones': [list(c) for c in self.max_cones],
            'labels': {str(i): label for i, label in enumerate(self.labels)},
        }

    @classmethod
    def from_json(cls, data):
        """ Load a fan; the complete and smooth flags come from `validate_fan`.

            Cones that overlap, or rays that are not primitive, do not make
            a fan, so either one leaves `complete` False.
        """
        if isinstance(data, str):
            data = json.loads(data)
        try:
            dim, rays, max_cones = data['dim'], data['rays'], data['max_cones']
        except (KeyError, TypeError) as e:
            raise FanError(f"Fan JSON is missing {e}") from None
        labels = data.get('labels')
        if labels is not None:
            labels = [labels.get(str(i), f"r{i}") for i in range(len(rays))]
        fan = cls(dim, rays, max_cones, labels=labels)
        report = validate_fan(fan)
        fan.complete = report.complete and report.intersections and report.primitive
        fan.smooth = report.smooth
        return fan


def cone_contains(fan, cone_index, u):
    """ True iff u is a nonnegative combination of the cone's generators."""
    coords = fan.coordinates(cone_index, u)
    if coords is not None:
        return all(x >= 0 for x in coords)
    gens = fan.generators(cone_index)
    rows = [[g[k] for g in gens] for k in range(fan.dim)]
    return feasible(rows, list(u))


def make_projective_fan(n):
    """ The fan of P^n: rays e_0..e_n, maximal cones sigma_0..sigma_n."""
    if n < MIN_DIM:
        raise ValueError(f"Projective fans are only built for n >= {MIN_DIM}, got n={n}")
    e0 = tuple([-1] * n)
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays = [e0] + units
    cones = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    labels = [f"e{i}" for i in range(n + 1)]
    return Fan(n, rays, cones, labels=labels, complete=True, smooth=True)


def star_subdivide(fan, cone, label=None):
    """ Star subdivision of the fan along a smooth full-dimensional maximal cone.

        The cone is replaced by the cones spanned by the new ray
        u' = u_1 + ... + u_n and all but one of u_1, ..., u_n. The new
        ray is appended to the ray table, the new cones to the cone list.
    """
    if isinstance(cone, int):
        cone = fan.max_cones[cone]
    cone = tuple(sorted(cone))
    c = fan.cone_index(cone)
    if len(cone) != fan.dim:
        raise FanError(f"Cone {fan.cone_label(c)} is not full-dimensional")
    if abs(determinant(fan.generators(c))) != 1:
        raise FanError(f"Cone {fan.cone_label(c)} is not smooth")

    new_ray = primitive([sum(coords) for coords in zip(*fan.generators(c))])
    rays = list(fan.rays)
    labels = list(fan.labels)
    if new_ray in rays:
        new_index = rays.index(new_ray)
    else:
        new_index = len(rays)
        rays.append(new_ray)
        labels.append(label if label is not None else f"r{new_index}")

    cones = [other for other in fan.max_cones if other != cone]
    for ray in cone:
        cones.append(tuple(sorted(set(cone) - {ray} | {new_index})))
    return Fan(fan.dim, rays, cones, labels=labels,
               complete=fan.complete, smooth=fan.smooth)


def permute_rays(fan, order):
    """ The same fan with the ray table reordered; order[k] is the old
        index of the ray that ends up at position k.
    """
    if sorted(order) != list(range(len(fan.rays))):
        raise ValueError(f"{order} is not a permutation of the rays")
    new_index = {old: new for new, old in enumerate(order)}
    return Fan(fan.dim,
               [fan.rays[old] for old in order],
               [[new_index[i] for i in cone] for cone in fan.max_cones],
               labels=[fan.labels[old] for old in order],
               complete=fan.complete, smooth=fan.smooth)


def make_blowup_fan(n, num_points):
    """ The blow-up of P^n at the distinguished points of sigma_0..sigma_q,
        q = num_points - 1, with rays ordered u_0..u_q, e_0..e_n
        (u_i = -e_i is the ray of the i-th exceptional divisor).
    """
    if not 1 <= num_points <= n + 1:
        raise ValueError(f"Can blow up 1 to {n + 1} points of P^{n}, not {num_points}")
    fan = make_projective_fan(n)
    for i in range(num_points):
        sigma_i = tuple(j for j in range(n + 1) if j != i)
        fan = star_subdivide(fan, sigma_i, label=f"u{i}")
    order = list(range(n + 1, n + 1 + num_points)) + list(range(n + 1))
    return permute_rays(fan, order)


def facet_map(fan):
    facets = defaultdict(list)
    for c, cone in enumerate(fan.max_cones):
        for facet in combinations(cone, len(cone) - 1):
            facets[facet].append(c)
    return facets


def walls(fan):
    """ All pairs of maximal cones meeting in a common facet.

        Every facet of a complete fan lies in exactly two maximal cones;
        anything else raises FanError naming the facet.
    """
    result = []
    for facet, cones in facet_map(fan).items():
        if len(cones) != 2:
            names = ','.join(fan.labels[i] for i in facet)
            raise FanError(f"Fan is not complete: facet {{{names}}} "
                           f"lies in {len(cones)} maximal cone(s)")
        result.append(Wall(cones[0], cones[1], facet))
    return result


FanReport = namedtuple('FanReport', [
    'primitive', 'simplicial', 'smooth', 'intersections', 'complete', 'counterexamples'])


def _is_smooth_cone(vectors, dim):
    """ Generators extend to a lattice basis iff the gcd of the maximal
        minors of their matrix is 1.
    """
    k = len(vectors)
    matrix = Matrix([list(v) for v in vectors])
    g = 0
    for columns in combinations(range(dim), k):
        g = gcd(g, int(matrix.extract(list(range(k)), list(columns)).det()))
        if g == 1:
            return True
    return False


def _meet_properly(fan, a, b):
    """ Cone(A) & Cone(B) == Cone(A & B) for simplicial cones A, B.

        Fails iff some point has a representation in A or in B using a
        generator outside the common face; normalising the weight on
        those generators to 1 makes this an exact feasibility problem.
    """
    cone_a, cone_b = fan.max_cones[a], fan.max_cones[b]
    outside = [i for i in cone_a if i not in cone_b] + [i for i in cone_b if i not in cone_a]
    if not outside:
        return True
    columns = [fan.rays[i] for i in cone_a] + [tuple(-x for x in fan.rays[i]) for i in cone_b]
    rows = [[v[k] for v in columns] for k in range(fan.dim)]
    rows.append([int(i not in cone_b) for i in cone_a] + [int(i not in cone_a) for i in cone_b])
    rhs = [0] * fan.dim + [1]
    return not feasible(rows, rhs)


def validate_fan(fan):
    """ Diagnose a fan. Never raises; each verdict comes with the first
        counterexample found (or no entry if the verdict is True).
    """
    problems = {}

    primitive_ok = True
    seen = {}
    for i, ray in enumerate(fan.rays):
        if not any(ray) or reduce(gcd, ray, 0) != 1:
            primitive_ok = False
            problems.setdefault('primitive', f"ray {fan.labels[i]}={list(ray)} is not primitive")
        elif ray in seen:
            primitive_ok = False
            problems.setdefault('primitive', f"rays {fan.labels[seen[ray]]} and {fan.labels[i]} coincide")
        seen.setdefault(ray, i)

    simplicial = True
    smooth = True
    for c, cone in enumerate(fan.max_cones):
        vectors = fan.generators(c)
        if Matrix([list(v) for v in vectors]).rank() != len(cone):
            simplicial = smooth = False
            problems.setdefault('simplicial', f"cone {fan.cone_label(c)} has dependent generators")
        elif not _is_smooth_cone(vectors, fan.dim):
            smooth = False
            problems.setdefault('smooth', f"cone {fan.cone_label(c)} is not smooth")

    intersections = True
    if simplicial:
        for a, b in combinations(range(len(fan.max_cones)), 2):
            if not _meet_properly(fan, a, b):
                intersections = False
                problems['intersections'] = (f"cones {fan.cone_label(a)} and {fan.cone_label(b)} "
                                             f"do not meet in a common face")
                break
    else:
        intersections = False
        problems.setdefault('intersections', "not checked, fan is not simplicial")

    complete = True
    if any(len(cone) != fan.dim for cone in fan.max_cones):
        complete = False
        problems['complete'] = "not every maximal cone is full-dimensional"
    else:
        try:
            wall_list = walls(fan)
        except FanError as e:
            complete = False
            problems['complete'] = str(e)
        else:
            graph = nx.Graph()
            graph.add_nodes_from(range(len(fan.max_cones)))
            graph.add_edges_from((wall.left, wall.right) for wall in wall_list)
            if not nx.is_connected(graph):
                complete = False
                problems['complete'] = "wall graph is not connected"

    report = FanReport(primitive_ok, simplicial, smooth, intersections, complete, problems)
    logger.debug("validate %r: %s", fan, report)
    return report


def is_refinement(fine, coarse):
    """ Every maximal cone of `fine` lies in some maximal cone of `coarse`."""
    return all(containing_cone(coarse, fine.generators(c)) is not None
               for c in range(len(fine.max_cones)))


def containing_cone(fan, vectors):
    """ The lowest-index maximal cone containing every vector, or None."""
    for c in range(len(fan.max_cones)):
        if all(cone_contains(fan, c, v) for v in vectors):
            return c
    return None


if __name__ == '__main__':
    p3 = make_projective_fan(3)
    assert len(walls(p3)) == 6
    blowup = make_blowup_fan(3, 2)
    assert blowup.labels == ('u0', 'u1', 'e0', 'e1', 'e2', 'e3')
    assert len(blowup.max_cones) == 8
    report = validate_fan(blowup)
    assert report.smooth and report.complete, report
    print(report)
