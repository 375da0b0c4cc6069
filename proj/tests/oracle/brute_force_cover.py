#!/usr/bin/env python3
"""Exact rational expectations for tiny graphs, used to freeze test values.

Independent of the C++ solver: exhaustive first-step analysis over
(vertex, covered-set) states with fractions.Fraction and sympy linear solves.
"""
from fractions import Fraction
from functools import lru_cache
import itertools
import sys

import sympy


def canon(edges):
    return sorted(tuple(sorted(e)) for e in edges)


GRAPHS = {
    "K2": (2, [(0, 1)]),
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
    "P3": (3, [(0, 1), (1, 2)]),
    "P4": (4, [(0, 1), (1, 2), (2, 3)]),
    "star3": (4, [(0, 1), (0, 2), (0, 3)]),
    "C5": (5, [(i, (i + 1) % 5) for i in range(5)]),
    "K4": (4, list(itertools.combinations(range(4), 2))),
    "Q2": (4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    "diamond": (4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    "paw": (4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    "K23": (5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
}


def neighbours(n, edges):
    adj = {v: [] for v in range(n)}
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    return adj


def solve_chain(states, trans, absorbing):
    """states: list of hashable; trans(s) -> list[(prob, s')]"""
    idx = {s: k for k, s in enumerate(states)}
    unknown = [s for s in states if not absorbing(s)]
    uidx = {s: k for k, s in enumerate(unknown)}
    m = len(unknown)
    A = sympy.zeros(m, m)
    b = sympy.zeros(m, 1)
    for s in unknown:
        r = uidx[s]
        A[r, r] += 1
        b[r] = 1
        for p, t in trans(s):
            if not absorbing(t):
                A[r, uidx[t]] -= sympy.Rational(p.numerator, p.denominator)
    x = A.LUsolve(b)
    return {s: x[uidx[s]] for s in unknown}


def reach(start, trans):
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for _, t in trans(s):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return list(seen)


def edge_cover(n, edges, kind, start):
    edges = canon(edges)
    adj = neighbours(n, edges)
    full = (1 << len(edges)) - 1

    def trans(s):
        v, mask = s
        if kind == "grw-rand":
            fresh = [(w, e) for w, e in adj[v] if not mask >> e & 1]
            if fresh:
                return [(Fraction(1, len(fresh)), (w, mask | 1 << e)) for w, e in fresh]
        return [(Fraction(1, len(adj[v])), (w, mask | 1 << e)) for w, e in adj[v]]

    start_state = (start, 0)
    states = reach(start_state, trans)
    sol = solve_chain(states, trans, lambda s: s[1] == full)
    return sol.get(start_state, sympy.Integer(0))


def vertex_cover_srw(n, edges, start):
    adj = neighbours(n, canon(edges))
    full = (1 << n) - 1

    def trans(s):
        v, mask = s
        return [(Fraction(1, len(adj[v])), (w, mask | 1 << w)) for w, _ in adj[v]]

    s0 = (start, 1 << start)
    sol = solve_chain(reach(s0, trans), trans, lambda s: s[1] == full)
    return sol.get(s0, sympy.Integer(0))


if __name__ == "__main__":
    if "--regression" in sys.argv:
        for name, (n, edges) in GRAPHS.items():
            for kind in ("grw-rand", "srw"):
                print(f"{name} {kind} 0 {float(edge_cover(n, edges, kind, 0)):.15g}")
        sys.exit(0)
    for name, (n, edges) in GRAPHS.items():
        for kind in ("grw-rand", "srw"):
            val = edge_cover(n, edges, kind, 0)
            print(f"{name} {kind} 0 {val} = {float(val):.15g}")
    print("triangle srw vertex-cover", vertex_cover_srw(3, GRAPHS["triangle"][1], 0))
    print("star3 grw-rand from leaf 1", edge_cover(4, GRAPHS["star3"][1], "grw-rand", 1))
