"""Independent brute-force oracles shared by the test modules."""

from tropint.kernel import QQ, solve_rational


def count_lattice_points_in_parallelepiped(rows):
    """Points of Z^n in the half-open parallelepiped spanned by the rows.

    Scans the integer bounding box and tests membership by solving for the
    rational coefficients; independent of any determinant computation.
    """
    n = len(rows[0])
    corners = []
    for mask in range(2 ** len(rows)):
        c = [0] * n
        for i, row in enumerate(rows):
            if mask >> i & 1:
                c = [a + b for a, b in zip(c, row)]
        corners.append(c)
    lo = [min(c[j] for c in corners) for j in range(n)]
    hi = [max(c[j] for c in corners) for j in range(n)]

    def points(j):
        if j == n:
            yield ()
            return
        for rest in points(j + 1):
            for x in range(lo[j], hi[j] + 1):
                yield (x,) + rest

    count = 0
    cols = list(zip(*rows))
    for p in points(0):
        sol = solve_rational(cols, p)
        if sol is None:
            continue
        back = tuple(sum(QQ(sol[i]) * rows[i][j] for i in range(len(rows))) for j in range(n))
        if any(QQ(b) != QQ(x) for b, x in zip(back, p)):
            continue
        if all(0 <= QQ(c) < 1 for c in sol):
            count += 1
    return count
