"""Independent brute-force references used only by the tests.

None of these import the code paths they are used to check.
"""

from itertools import combinations, permutations


def perm_sign(word):
    """Sign by counting inversions (deliberately not cycle-based)."""
    inv = sum(1 for a, b in combinations(range(len(word)), 2) if word[a] > word[b])
    return -1 if inv % 2 else 1


def det_leibniz(rows, q):
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        prod = perm_sign(p)
        for i, j in enumerate(p):
            prod *= rows[i][j]
        total += prod
    return total % q


def det_cofactor(rows, q):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0] % q
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor, q)
    return total % q


def perfect_matchings_of(points):
    """All pairings of ``points`` with the crossing sign of each pairing."""
    points = list(points)
    if not points:
        yield 1, []
        return
    first, rest = points[0], points[1:]
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1 :]
        for sign, match in perfect_matchings_of(remaining):
            # moving `partner` next to `first` passes over `idx` points
            yield sign * (-1) ** idx, [(first, partner)] + match


def pfaffian_matchings(rows, q):
    """Pf from its definition as a signed sum over perfect matchings."""
    n = len(rows)
    if n % 2:
        return 0
    total = 0
    for sign, match in perfect_matchings_of(range(n)):
        prod = sign
        for i, j in match:
            prod *= rows[i][j]
        total += prod
    return total % q


def is_tree_subset(num_vertices, edges):
    """Incidence-graph tree test by BFS, with no counting shortcut."""
    adj = {("v", v): set() for v in range(1, num_vertices + 1)}
    for idx, e in enumerate(edges):
        node = ("e", idx)
        adj[node] = {("v", v) for v in e}
        for v in e:
            adj[("v", v)].add(node)
    n_nodes = len(adj)
    n_links = sum(len(e) for e in edges)
    start = ("v", 1)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n_nodes and n_links == n_nodes - 1


def naive_hypertrees(graph):
    """Every subset of the right size that passes :func:`is_tree_subset`."""
    k, n_vert = graph.k, graph.num_vertices
    n, rem = divmod(n_vert - 1, k - 1)
    if rem:
        return []
    edges = graph.edges
    return [
        c for c in combinations(range(len(edges)), n) if is_tree_subset(n_vert, [edges[i] for i in c])
    ]


def naive_connected(num_vertices, edges):
    """Transitive closure by repeated sweeps, O(N * M) per sweep."""
    reach = {1}
    changed = True
    while changed:
        changed = False
        for e in edges:
            if reach.intersection(e) and not reach.issuperset(e):
                reach.update(e)
                changed = True
    return len(reach) == num_vertices


def naive_perfect_matchings(num_vertices, edges):
    if num_vertices % 2:
        return []
    out = []
    for c in combinations(range(len(edges)), num_vertices // 2):
        covered = [v for i in c for v in edges[i]]
        if len(set(covered)) == num_vertices:
            out.append(c)
    return out
