"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive (closed forms, recurrences, exhaustive
search, dense Gaussian elimination over Fraction) and shares no code with
flowfan itself.
"""

import itertools
from fractions import Fraction
from math import comb, factorial


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def stirling2(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def eulerian(n: int, k: int) -> int:
    """Number of permutations of [n] with k descents."""
    if k < 0 or k >= max(n, 1):
        return 0
    if n == 1:
        return 1 if k == 0 else 0
    return (k + 1) * eulerian(n - 1, k) + (n - k) * eulerian(n - 1, k - 1)


def permutohedron_codim_faces(n: int, k: int) -> int:
    """Codimension-k faces of the permutohedron on n letters: ordered set
    partitions of [n] into k+1 blocks."""
    return factorial(k + 1) * stirling2(n, k + 1)


def h_from_f(f_vector) -> tuple:
    """h-vector of a simple d-polytope from (f_0, ..., f_{d-1}): coefficients
    of sum_i f_i (t-1)^i with f_d = 1, lowest degree first."""
    d = len(f_vector)
    coeffs = [0] * (d + 1)
    for i, fi in enumerate(list(f_vector) + [1]):
        # fi * (t-1)^i
        for j in range(i + 1):
            coeffs[j] += fi * comb(i, j) * (-1) ** (i - j)
    return tuple(coeffs)


def multinomial(parts) -> int:
    total = sum(parts)
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def brute_force_maximal_cliques(n: int, adjacent) -> list:
    """All maximal cliques of the graph on range(n), by filtering every
    pairwise-adjacent subset.  Only usable for small n."""
    cliques = [
        s
        for r in range(n + 1)
        for s in itertools.combinations(range(n), r)
        if all(adjacent(a, b) for a, b in itertools.combinations(s, 2))
    ]
    byset = [set(s) for s in cliques]
    return sorted(
        tuple(sorted(s)) for s in byset if not any(s < t for t in byset)
    )


def solve_exact(matrix, rhs):
    """Solve M x = b over the rationals; None if inconsistent, else the unique
    solution (the caller must ensure full column rank)."""
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    rows, cols = len(m), len(m[0]) - 1
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                m[i] = [a - m[i][c] * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if m[i][cols]:
            return None
    if len(pivots) != cols:
        raise ValueError("matrix does not have full column rank")
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def decompose_on_cliques(edge_ids, route_edge_sets, cliques, flow):
    """Find every maximal clique whose routes can express the flow with
    nonnegative coefficients; returns a list of (clique, coefficient dict).

    Used as the uniqueness oracle for flow decomposition: a generic flow in
    the cone should land on exactly one clique.
    """
    hits = []
    for clique in cliques:
        matrix = [[1 if e in route_edge_sets[i] else 0 for i in clique] for e in edge_ids]
        rhs = [flow.get(e, 0) for e in edge_ids]
        x = solve_exact(matrix, rhs)
        if x is not None and all(c >= 0 for c in x):
            hits.append((clique, {i: c for i, c in zip(clique, x) if c}))
    return hits
