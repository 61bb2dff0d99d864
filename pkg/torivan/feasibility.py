""" Exact feasibility of  A x = b,  x >= 0  over the rationals.

    A phase-one simplex on a dense tableau of `Fraction` entries.
    Bland's rule (smallest index enters, ties in the ratio test go
    to the smallest basic variable) keeps it from cycling, so the
    answer is exact and the loop always ends.
"""
from fractions import Fraction


class Tableau:
    """ Phase-one tableau: the original columns, one artificial
        column per row, and the right hand side in the last column.
    """
    def __init__(self, rows, rhs):
        self.m = len(rows)
        self.k = len(rows[0]) if rows else 0
        self.rows = []
        for r, (row, b) in enumerate(zip(rows, rhs)):
            if len(row) != self.k:
                raise ValueError("Rows of different lengths")
            row = [Fraction(x) for x in row]
            b = Fraction(b)
            if b < 0:
                row = [-x for x in row]
                b = -b
            artificial = [Fraction(int(i == r)) for i in range(self.m)]
            self.rows.append(row + artificial + [b])
        self.basis = [self.k + r for r in range(self.m)]
        # Reduced costs of  min sum(artificials).
        width = self.k + self.m + 1
        self.cost = [Fraction(0)] * width
        for j in range(width):
            if self.k <= j < self.k + self.m:
                continue
            self.cost[j] = -sum(row[j] for row in self.rows)

    def entering(self):
        for j in range(self.k + self.m):
            if self.cost[j] < 0:
                return j
        return None

    def leaving(self, j):
        best = None
        for r, row in enumerate(self.rows):
            if row[j] > 0:
                key = (row[-1] / row[j], self.basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        return None if best is None else best[1]

    def pivot(self, r, j):
        pivot_row = self.rows[r]
        p = pivot_row[j]
        self.rows[r] = pivot_row = [x / p for x in pivot_row]
        for i, row in enumerate(self.rows):
            f = row[j]
            if i != r and f:
                self.rows[i] = [x - f * y for x, y in zip(row, pivot_row)]
        f = self.cost[j]
        if f:
            self.cost = [x - f * y for x, y in zip(self.cost, pivot_row)]
        self.basis[r] = j

    def solve(self):
        """Run phase one; return the value of the artificial objective."""
        while True:
            j = self.entering()
            if j is None:
                break
            r = self.leaving(j)
            if r is None:
                # Cannot happen: the phase-one objective is bounded below by 0.
                raise ArithmeticError("Unbounded phase-one problem")
            self.pivot(r, j)
        return -self.cost[-1]

    def solution(self):
        x = [Fraction(0)] * self.k
        for r, var in enumerate(self.basis):
            if var < self.k:
                x[var] = self.rows[r][-1]
        return x


def feasible(rows, rhs):
    """True iff some rational x >= 0 satisfies rows @ x == rhs."""
    if not rows:
        return True
    return Tableau(rows, rhs).solve() == 0


def feasible_point(rows, rhs):
    """A nonnegative rational solution of rows @ x == rhs, or None."""
    if not rows:
        return []
    tableau = Tableau(rows, rhs)
    if tableau.solve() != 0:
        return None
    return tableau.solution()


if __name__ == '__main__':
    # x + y = 1, x - y = 0  ->  x = y = 1/2
    assert feasible_point([[1, 1], [1, -1]], [1, 0]) == [Fraction(1, 2), Fraction(1, 2)]
    # x + y = -1 has no nonnegative solution.
    assert not feasible([[1, 1]], [-1])
    print("ok")
