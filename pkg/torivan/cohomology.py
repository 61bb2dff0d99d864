""" Sheaf cohomology of toric divisors, one character at a time.

    For a character m the set

        V_{D,m} = union over maximal sigma of
                  Conv(u_rho | rho in sigma, <m, u_rho> < -a_rho)

    computes the m-graded piece:  H^i(O(D))_m = reduced H^{i-1}(V_{D,m}).
    The pieces are convex, so V_{D,m} has the cohomology of the nerve of
    the cover, and that is exact linear algebra over Q.

    Only finitely many characters contribute. They lie in a box built
    from the vertices of the arrangement <m, u_rho> = -a_rho.
"""
import logging
from collections import namedtuple
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, floor, ceil

import networkx as nx
from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .constants import MIN_DIM, DEFAULT_MARGIN, DEFAULT_CAP
from .lattice import pair, FanError
from .feasibility import feasible
from .divisor import picard_normal_form, blowup_points, DivisorError

logger = logging.getLogger(__name__)


class CapExceeded(RuntimeError):
    """The search box holds more characters than we are allowed to visit."""


def require_dimension(fan):
    if fan.dim < MIN_DIM:
        raise ValueError(f"The vanishing characterizations need n >= {MIN_DIM}, got n={fan.dim}")


def active_rays(fan, D, m):
    """ The rays with <m, u_rho> < -a_rho."""
    if len(m) != fan.dim:
        raise DivisorError(f"Character {list(m)} does not have {fan.dim} coordinates")
    return frozenset(i for i, (u, a) in enumerate(zip(fan.rays, D.coeffs)) if pair(m, u) < -a)


class ActiveSet(namedtuple('ActiveSet', 'rays per_cone')):
    """ The active rays and, per maximal cone, the active rays it contains."""
    __slots__ = ()


def active_set(fan, D, m):
    rays = active_rays(fan, D, m)
    return ActiveSet(rays, tuple(frozenset(cone) & rays for cone in fan.max_cones))


def pieces_intersect(piece_vertex_sets):
    """ Do the convex hulls of the given vertex sets have a common point?

        Variables are convex weights per piece; the barycentres of all
        pieces must coincide. Decided by exact rational feasibility.
    """
    pieces = [[tuple(v) for v in piece] for piece in piece_vertex_sets]
    if len(pieces) < 2:
        return True
    if set(pieces[0]).intersection(*pieces[1:]):
        return True
    dim = len(pieces[0][0])
    width = sum(len(piece) for piece in pieces)
    rows, rhs = [], []
    offsets = []
    start = 0
    for piece in pieces:
        offsets.append(start)
        row = [0] * width
        for k in range(len(piece)):
            row[start + k] = 1
        rows.append(row)
        rhs.append(1)
        start += len(piece)
    first = pieces[0]
    for t in range(1, len(pieces)):
        for coord in range(dim):
            row = [0] * width
            for k, v in enumerate(first):
                row[k] = v[coord]
            for k, v in enumerate(pieces[t]):
                row[offsets[t] + k] -= v[coord]
            rows.append(row)
            rhs.append(0)
    return feasible(rows, rhs)


class NerveComplex:
    """ Vertices are the distinct nonempty pieces (sets of ray indices);
        simplices are tuples of vertex indices whose pieces meet,
        grouped by size: simplices[k] holds those with k + 1 vertices.
    """
    def __init__(self, vertices, simplices):
        self.vertices = tuple(vertices)
        self.simplices = tuple(tuple(level) for level in simplices)

    def __repr__(self):
        sizes = [len(level) for level in self.simplices]
        return f"<{type(self).__name__} f-vector={sizes}>"

    def __len__(self):
        return sum(len(level) for level in self.simplices)

    def components(self):
        """Connected components, as sets of vertex indices."""
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        if len(self.simplices) > 1:
            graph.add_edges_from(self.simplices[1])
        return [set(component) for component in nx.connected_components(graph)]


def nerve_of_pattern(fan, rays):
    """ The nerve of the cover of V by the active hulls of the maximal cones."""
    vertices = []
    for cone in fan.max_cones:
        piece = frozenset(cone) & rays
        if piece and piece not in vertices:
            vertices.append(piece)
    points = [[fan.rays[i] for i in sorted(piece)] for piece in vertices]

    levels = []
    current = [(v,) for v in range(len(vertices))]
    while current:
        levels.append(current)
        present = set(current)
        following = []
        for a, b in combinations(current, 2):
            # Join two simplices that differ only in their last vertex.
            if a[:-1] != b[:-1]:
                continue
            candidate = a + (b[-1],)
            if any(candidate[:k] + candidate[k + 1:] not in present
                   for k in range(len(candidate) - 2)):
                continue
            if pieces_intersect([points[v] for v in candidate]):
                following.append(candidate)
        current = following
    return NerveComplex(vertices, levels)


def nerve(fan, D, m):
    return nerve_of_pattern(fan, active_rays(fan, D, m))


def _rank(rows, n_columns):
    if not rows or not n_columns:
        return 0
    matrix = DomainMatrix([[QQ(x) for x in row] for row in rows], (len(rows), n_columns), QQ)
    return matrix.rank()


def reduced_ranks(c):
    """ Ranks of the reduced cohomology of the complex over Q, as
        {degree: rank} for the nonzero ones. The empty complex has
        rank 1 in degree -1.
    """
    # Augmented chain groups: size of C_{-1} is 1, C_j has len(simplices[j]).
    sizes = [1] + [len(level) for level in c.simplices]
    # boundary_ranks[j] = rank of  C_j -> C_{j-1}  for j = 0..top.
    boundary_ranks = []
    if c.simplices:
        boundary_ranks.append(_rank([[1] * len(c.simplices[0])], len(c.simplices[0])))
    for j in range(1, len(c.simplices)):
        index = {s: r for r, s in enumerate(c.simplices[j - 1])}
        rows = [[0] * len(c.simplices[j]) for _ in c.simplices[j - 1]]
        for col, simplex in enumerate(c.simplices[j]):
            for k in range(len(simplex)):
                face = simplex[:k] + simplex[k + 1:]
                rows[index[face]][col] = -1 if k % 2 else 1
        boundary_ranks.append(_rank(rows, len(c.simplices[j])))

    ranks = {}
    for position, size in enumerate(sizes):
        degree = position - 1
        # Cohomology in degree j: ker(d^j) / im(d^{j-1}), d^j dual to the boundary out of C_{j+1}.
        out_rank = boundary_ranks[degree + 1] if degree + 1 < len(boundary_ranks) else 0
        in_rank = boundary_ranks[degree] if 0 <= degree < len(boundary_ranks) else 0
        rank = size - out_rank - in_rank
        if rank:
            ranks[degree] = rank
    return ranks


@lru_cache(maxsize=None)
def pattern_ranks(fan, rays):
    """ H^i ranks {i: rank} contributed by any character with these active rays."""
    complex_ = nerve_of_pattern(fan, rays)
    ranks = {degree + 1: rank for degree, rank in reduced_ranks(complex_).items()}
    logger.debug("pattern %s: %r -> %s", sorted(rays), complex_, ranks)
    return ranks


class SearchBox(namedtuple('SearchBox', 'lo hi')):
    __slots__ = ()

    @property
    def size(self):
        total = 1
        for lo, hi in zip(self.lo, self.hi):
            total *= max(hi - lo + 1, 0)
        return total

    def __contains__(self, m):
        return all(lo <= x <= hi for lo, x, hi in zip(self.lo, m, self.hi))

    def characters(self):
        return product(*(range(lo, hi + 1) for lo, hi in zip(self.lo, self.hi)))

    def to_json(self):
        return {'lo': list(self.lo), 'hi': list(self.hi)}


@lru_cache(maxsize=None)
def _spanning_subsets(fan):
    """ (subset, adjugate, det) for every invertible n-subset of rays."""
    result = []
    for subset in combinations(range(len(fan.rays)), fan.dim):
        matrix = Matrix([list(fan.rays[i]) for i in subset])
        det = int(matrix.det())
        if det:
            adj = matrix.adjugate()
            result.append((subset, tuple(tuple(int(x) for x in adj.row(k)) for k in range(fan.dim)), det))
    return tuple(result)


def search_box(fan, D, margin=DEFAULT_MARGIN):
    """ The bounding box of all vertices of the arrangement
        <m, u_rho> = -a_rho, rounded outwards and padded by `margin`.
    """
    subsets = _spanning_subsets(fan)
    if not subsets:
        raise FanError(f"The rays of {fan!r} do not span")
    lo = [None] * fan.dim
    hi = [None] * fan.dim
    for subset, adj, det in subsets:
        rhs = [-D.coeffs[i] for i in subset]
        for k in range(fan.dim):
            x = Fraction(sum(adj[k][j] * rhs[j] for j in range(fan.dim)), det)
            lo[k] = floor(x) if lo[k] is None else min(lo[k], floor(x))
            hi[k] = ceil(x) if hi[k] is None else max(hi[k], ceil(x))
    return SearchBox(tuple(x - margin for x in lo), tuple(x + margin for x in hi))


class CohomologyReport(namedtuple('CohomologyReport', 'divisor dims contributions box normal_form')):
    """ dims[i] = h^i(O(D)); contributions maps each character to
        {i: rank} for its nonzero graded pieces.
    """
    __slots__ = ()

    @property
    def h1(self):
        return self.dims[1]


def total_cohomology(fan, D, margin=DEFAULT_MARGIN, cap=DEFAULT_CAP):
    if D.fan != fan:
        raise DivisorError("Divisor belongs to a different fan")
    box = search_box(fan, D, margin)
    if box.size > cap:
        raise CapExceeded(f"Search box {box.to_json()} holds {box.size:,} characters, cap is {cap:,}")
    logger.info("enumerating %s characters", f"{box.size:,}")
    logger.debug("%s: search box %s", D, box.to_json())

    thresholds = [-a for a in D.coeffs]
    indexed_rays = list(enumerate(fan.rays))
    dims = [0] * (fan.dim + 1)
    contributions = {}
    for m in box.characters():
        rays = frozenset(i for i, u in indexed_rays
                         if sum(x * y for x, y in zip(m, u)) < thresholds[i])
        ranks = pattern_ranks(fan, rays)
        if ranks:
            contributions[m] = ranks
            for i, rank in ranks.items():
                dims[i] += rank
    normal_form = picard_normal_form(fan, None, D)
    return CohomologyReport(D, tuple(dims), dict(sorted(contributions.items())), box, normal_form)


def h0_polytope_count(fan, D, box):
    """ Lattice points of {<m, u_rho> >= -a_rho for all rho} inside the box."""
    return sum(1 for m in box.characters()
               if all(pair(m, u) >= -a for u, a in zip(fan.rays, D.coeffs)))


def lambdas_from_divisor(fan, D):
    """ lambda_0..lambda_n (on e_0..e_n) and lambda_{n+1} (on u_0) of a
        divisor on the one-point blow-up.
    """
    if blowup_points(fan) != 1:
        raise FanError(f"{fan!r} is not a one-point blow-up")
    return [D[f"e{i}"] for i in range(fan.dim + 1)] + [D['u0']]


def h1_closed_form_onept(n, lambdas):
    """ #{m in Z^n : lambda_0 < m_1+...+m_n < -lambda_{n+1}, m_i >= -lambda_i}.

        With x_i = m_i + lambda_i >= 0 this counts x in N^n by their sum t,
        which ranges strictly between lambda_0 + L and -lambda_{n+1} + L,
        L = lambda_1 + ... + lambda_n.
    """
    if n < MIN_DIM:
        raise ValueError(f"n >= {MIN_DIM} required, got {n}")
    if len(lambdas) != n + 2:
        raise ValueError(f"Need {n + 2} values lambda_0..lambda_{n + 1}, got {len(lambdas)}")
    shift = sum(lambdas[1:n + 1])
    low = lambdas[0] + shift + 1
    high = -lambdas[n + 1] + shift - 1
    return sum(comb(t + n - 1, n - 1) for t in range(max(low, 0), high + 1))


def char1_predicate(a, b):
    """ H^1(O(-aE) (x) pi^*O(b)) = 0 on a one-point blow-up iff a <= 0 or a <= b + 1."""
    return a <= 0 or a <= b + 1


def mainthmsev_predicate(a, b):
    """ H^1 = 0 on a blow-up at q+1 >= 2 points iff a_i + a_j <= b + 1 for
        all i != j and, when exactly one a_k is positive, a_k <= b + 1.
    """
    a = list(a)
    if len(a) < 2:
        raise ValueError("Use char1_predicate for a single point")
    if any(x + y > b + 1 for x, y in combinations(a, 2)):
        return False
    positive = [x for x in a if x > 0]
    if len(positive) == 1:
        return positive[0] <= b + 1
    return True


class Shape(Enum):
    ConnectedOrEmpty = 'connected_or_empty'
    Pair = 'pair'
    SubsetOfU = 'subset_of_u'
    Other = 'other'


Classification = namedtuple('Classification', 'shape rays')


def classify_pattern(fan, rays):
    """ Match a disconnected V against the shapes {e_i, u_i} and
        'subset of the exceptional rays'.
    """
    points = blowup_points(fan)
    complex_ = nerve_of_pattern(fan, rays)
    labels = sorted(fan.labels[i] for i in rays)
    if len(complex_.components()) <= 1:
        return Classification(Shape.ConnectedOrEmpty, labels)
    for i in range(points):
        if rays == {fan.index(f"u{i}"), fan.index(f"e{i}")}:
            return Classification(Shape.Pair, labels)
    if all(fan.labels[r].startswith('u') for r in rays):
        return Classification(Shape.SubsetOfU, labels)
    return Classification(Shape.Other, labels)


def classify_disconnected(fan, D, m):
    require_dimension(fan)
    return classify_pattern(fan, active_rays(fan, D, m))


if __name__ == '__main__':
    from .lattice import make_blowup_fan
    from .divisor import BlowupParams, divisor_from_params

    fan = make_blowup_fan(3, 1)
    D = divisor_from_params(fan, BlowupParams(3, 1, [2], 0))
    report = total_cohomology(fan, D)
    assert report.dims == (0, 3, 0, 0), report.dims
    assert h1_closed_form_onept(3, lambdas_from_divisor(fan, D)) == 3
    print(report.dims, sorted(report.contributions))
