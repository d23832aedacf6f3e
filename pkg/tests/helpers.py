"""Brute-force oracles for the tests.

Everything here works straight from definitions (exhaustive sums,
filters, and triple loops) and deliberately avoids the library's own
elimination and grouping code paths, so agreement is meaningful.
"""

from itertools import product


def naive_vec_mat(p, v, m):
    width = len(m[0]) if m else 0
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) % p for j in range(width))


def naive_mat_mul(p, a, b):
    return tuple(naive_vec_mat(p, row, b) for row in a)


def naive_span(p, n, rows):
    """Set of all linear combinations of the rows, by direct summation."""
    rows = [tuple(x % p for x in row) for row in rows]
    out = set()
    for coeffs in product(range(p), repeat=len(rows)):
        acc = [0] * n
        for c, row in zip(coeffs, rows):
            for j, x in enumerate(row):
                acc[j] += c * x
        out.add(tuple(x % p for x in acc))
    return frozenset(out)


def naive_kernel_vectors(p, m):
    n = len(m)
    zero = (0,) * n
    return frozenset(v for v in product(range(p), repeat=n) if naive_vec_mat(p, v, m) == zero)


def naive_image_vectors(p, m):
    n = len(m)
    return frozenset(naive_vec_mat(p, v, m) for v in product(range(p), repeat=n))


def all_subspace_vector_sets(p, n, k):
    """Every k-dimensional subspace of GF(p)^n, each as its full vector set."""
    spaces = set()
    vectors = list(product(range(p), repeat=n))
    for rows in product(vectors, repeat=k):
        span = naive_span(p, n, rows)
        if len(span) == p ** k:
            spaces.add(span)
    return spaces


def brute_members(p, n, u_vectors):
    """Filter all p^(n^2) matrices by the definition: the image of the
    set U under the map equals U."""
    u_set = frozenset(u_vectors)
    members = []
    for entries in product(range(p), repeat=n * n):
        m = tuple(entries[i * n : (i + 1) * n] for i in range(n))
        if frozenset(naive_vec_mat(p, u, m) for u in u_set) == u_set:
            members.append(m)
    return members


def naive_green_same(table, a, b, relation):
    """Green tests by literal principal-ideal comparison (small tables only)."""
    n = len(table.elements)
    mul = table.mul

    def left(x):
        return frozenset([x] + [mul[s][x] for s in range(n)])

    def right(x):
        return frozenset([x] + [mul[x][s] for s in range(n)])

    def two_sided(x):
        out = {x}
        out.update(mul[s][x] for s in range(n))
        out.update(mul[x][s] for s in range(n))
        out.update(mul[mul[s][x]][t] for s in range(n) for t in range(n))
        return frozenset(out)

    relation = relation.upper()
    if relation == "L":
        return left(a) == left(b)
    if relation == "R":
        return right(a) == right(b)
    if relation == "H":
        return left(a) == left(b) and right(a) == right(b)
    if relation == "J":
        return two_sided(a) == two_sided(b)
    return any(left(a) == left(c) and right(c) == right(b) for c in range(n))
