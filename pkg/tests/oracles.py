"""Slow, obviously-correct reference implementations and random generators for tests."""

from collections import deque

import numpy as np

from maniplex import Maniplex, WeightFunction, Walk

SEED_NAMES = ["hemicube", "hemioctahedron", "hemidodecahedron", "hemiicosahedron"]


def random_weight(m, k, rng, mode="random"):
    """Edge-symmetric weights; ``mode`` is 'random', 'constant' or 'gauge'.

    'gauge' weights are ``w(u, u^i) = g(u) + g(u^i)`` for a random vertex
    potential ``g``, so every alternating 4-cycle has weight 0.
    """
    n, F = m.adj.shape
    if mode == "constant":
        return WeightFunction(k, np.repeat(rng.integers(0, k, n)[:, None], F, axis=1))
    if mode == "gauge":
        g = rng.integers(0, k, F)
        return WeightFunction(k, (g[None, :] + g[m.adj]) % k)
    w = rng.integers(0, k, (n, F))
    for i in range(n):
        lo = np.arange(F) < m.adj[i]
        w[i, m.adj[i][lo]] = w[i, lo]
    return WeightFunction(k, w)


def path_back(m, src, dst, want_parity):
    """Colours of a shortest walk ``src -> dst`` whose length has the given parity."""
    start, goal = (src, 0), (dst, want_parity)
    prev = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        u, p = state
        for c in range(m.rank):
            nxt = (int(m.adj[c, u]), p ^ 1)
            if nxt not in prev:
                prev[nxt] = (state, c)
                queue.append(nxt)
    if goal not in prev:
        return None
    out = []
    state = goal
    while prev[state] is not None:
        state, c = prev[state]
        out.append(c)
    return out[::-1]


def random_closed_walk(m, rng, odd, max_len=12):
    """A random closed walk of the requested length parity, or ``None`` if impossible."""
    start = int(rng.integers(m.num_flags))
    colours = [int(c) for c in rng.integers(0, m.rank, int(rng.integers(0, max_len)))]
    u = start
    for c in colours:
        u = int(m.adj[c, u])
    back = path_back(m, u, start, (len(colours) + int(odd)) % 2)
    if back is None:
        return None
    return Walk(start, tuple(colours + back))


def naive_lift_end(m, omega, walk, level):
    """Follow ``walk`` inside an explicitly built cover graph (dict of dicts)."""
    k = omega.modulus
    cover = {}
    for u in range(m.num_flags):
        for i in range(k):
            cover[(u, i)] = {c: (int(m.adj[c, u]), (int(omega.w[c, u]) - i) % k) for c in range(m.rank)}
    state = (walk.start, level % k)
    for c in walk.colours:
        state = cover[state][c]
    return state


def naive_automorphisms(m):
    """Every colour-preserving automorphism of a connected maniplex, by plain BFS."""
    F, n = m.num_flags, m.rank
    found = []
    for b in range(F):
        img = {0: b}
        queue = deque([0])
        ok = True
        while queue and ok:
            u = queue.popleft()
            for c in range(n):
                v, t = int(m.adj[c, u]), int(m.adj[c, img[u]])
                if v in img:
                    if img[v] != t:
                        ok = False
                        break
                else:
                    img[v] = t
                    queue.append(v)
        if ok and len(img) == F and len(set(img.values())) == F:
            found.append([img[u] for u in range(F)])
    return found


def naive_orbits(m):
    perms = naive_automorphisms(m)
    orbit = {}
    for u in range(m.num_flags):
        if u in orbit:
            continue
        for p in perms:
            orbit.setdefault(p[u], u)
    return len(perms), len(set(orbit.values()))


def naive_bipartite(m):
    colour = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for c in range(m.rank):
            v = int(m.adj[c, u])
            if v not in colour:
                colour[v] = 1 - colour[u]
                queue.append(v)
            elif colour[v] == colour[u]:
                return False
    return True


def naive_string_property(m):
    for i in range(m.rank):
        for j in range(i + 2, m.rank):
            for u in range(m.num_flags):
                a = int(m.adj[i, u])
                b = int(m.adj[j, a])
                if b == u or int(m.adj[j, int(m.adj[i, b])]) != u:
                    return False
    return True


def small_maniplex_zoo():
    """Assorted small maniplexes, orientable and not."""
    from maniplex import build_seed, cross_cover, double_cover, extension, total_colouring, vartheta
    from maniplex.catalog import platonic_flag_graph

    hc = build_seed("hemicube")
    zoo = {
        "hemicube": hc,
        "hemioctahedron": build_seed("hemioctahedron"),
        "tetrahedron": platonic_flag_graph("tetrahedron")[0],
        "cube": platonic_flag_graph("cube")[0],
        "hemicube^vartheta": cross_cover(hc, vartheta(hc)),
        "double(hemicube)": double_cover(hc),
        "ext(hemicube)": extension(hc, total_colouring(hc)),
    }
    digon = Maniplex(np.array([[1, 0, 3, 2], [3, 2, 1, 0]]))
    zoo["digon-like 2-maniplex"] = digon
    return zoo
