"""Exhaustive search for small fixed-point data whose DH function is not log-concave.

Independent of the C++ implementation: DH is evaluated straight from the
lower-sum formula with Python fractions and G = DH*DH'' - DH'^2 is sampled on
the grid k/10. Candidates: n = 3, three or four points at integer levels 0 < a < b (< c) <= 6,
the minimum with m > 0 and the maximum with m < 0 (the sign pattern of an
index-0 / index-6 pair), DH strictly positive on every interior grid point.
Ranked by the number of grid points where G > 0.
"""
from fractions import Fraction as Fr
from itertools import product
from math import factorial

N = 3
MS = [1, -1, 2, -2, 3, -3, 4, -4, 6, -6]


def dh_derivs(points, t):
    f = d1 = d2 = Fr(0)
    for mu, m in points:
        if mu < t:
            x = t - mu
            f += x**2 / (factorial(2) * m)
            d1 += x / m
            d2 += Fr(1, m)
    return f, d1, d2


def search():
    found = []
    positive = [m for m in MS if m > 0]
    negative = [m for m in MS if m < 0]
    shapes = [(a, b) for a in range(1, 7) for b in range(a + 1, 7)]
    shapes += [(a, b, c) for a in range(1, 7) for b in range(a + 1, 7) for c in range(b + 1, 7)]
    for levels in shapes:
        for m_min in positive:
            for mids in product(MS, repeat=len(levels) - 1):
                for m_top in negative:
                    ms = (m_min,) + mids + (m_top,)
                    pts = list(zip((0,) + levels, ms))
                    top = levels[-1]
                    grid = [Fr(j, 10) for j in range(1, 10 * top)]
                    vals = [dh_derivs(pts, t) for t in grid]
                    if any(f <= 0 for f, _, _ in vals):
                        continue
                    bad = [t for t, (f, d1, d2) in zip(grid, vals) if f * d2 - d1 * d1 > 0]
                    if bad:
                        found.append((len(bad), pts, bad))
    found.sort(key=lambda r: (-r[0], r[1]))
    return found


if __name__ == "__main__":
    res = search()
    print(len(res), "datasets")
    for count, pts, bad in res[:8]:
        print(count, pts, str(bad[0]), "..", str(bad[-1]))
