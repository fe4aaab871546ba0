"""Recombination moves: merge two districts, draw a spanning tree, cut it."""
from __future__ import annotations

from fractions import Fraction

from ..election import DomainError
from .geography import Geography
from .partition import Partition

MAX_TREE_DRAWS = 50


def wilson_tree(nodes: list, adj: list, rng) -> dict:
    """Uniform spanning tree of the subgraph on ``nodes`` (Wilson's algorithm); returns parent map."""
    inside = set(nodes)
    root = nodes[int(rng.integers(len(nodes)))]
    in_tree = {root}
    parent = {root: None}
    local = {u: [v for v in adj[u] if v in inside] for u in nodes}
    for start in nodes:
        if start in in_tree:
            continue
        nxt = {}
        u = start
        while u not in in_tree:
            nbrs = local[u]
            nxt[u] = nbrs[int(rng.integers(len(nbrs)))]
            u = nxt[u]
        u = start
        while u not in in_tree:
            in_tree.add(u)
            parent[u] = nxt[u]
            u = nxt[u]
    return parent


def _subtree_pops(parent: dict, pop) -> dict:
    children = {u: [] for u in parent}
    root = None
    for u, p in parent.items():
        if p is None:
            root = u
        else:
            children[p].append(u)
    order, stack = [], [root]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(children[u])
    sub = {}
    for u in reversed(order):
        sub[u] = pop[u] + sum(sub[c] for c in children[u])
    return sub, children


def _below(u, children) -> list:
    out, stack = [], [u]
    while stack:
        x = stack.pop()
        out.append(x)
        stack.extend(children[x])
    return out


def balanced_cut(nodes: list, adj: list, pop, ideal, total, deviation, rng, draws=MAX_TREE_DRAWS,
                 rest_count: int = 1):
    """Split ``nodes`` into a connected piece of population ``ideal`` (within ``deviation``) and the rest.

    The rest must hold ``rest_count`` districts' worth of population within the same relative bound.
    Returns the piece's node list, or ``None`` if no draw yields a valid cut.
    """
    lo, hi = ideal * (1 - deviation), ideal * (1 + deviation)
    rlo, rhi = rest_count * lo, rest_count * hi
    for _ in range(draws):
        parent = wilson_tree(nodes, adj, rng)
        sub, children = _subtree_pops(parent, pop)
        cuts = []
        for u in nodes:
            if parent[u] is None:
                continue
            s = sub[u]
            if lo <= s <= hi and rlo <= total - s <= rhi:
                cuts.append(u)
            elif lo <= total - s <= hi and rlo <= s <= rhi:
                cuts.append(~u)  # complement side is the piece
        if cuts:
            c = cuts[int(rng.integers(len(cuts)))]
            if c >= 0:
                return _below(c, children)
            piece = set(_below(~c, children))
            return [u for u in nodes if u not in piece]
    return None


def recom_step(p: Partition, g: Geography, rng, deviation=Fraction(1, 20), adj=None,
               draws: int = MAX_TREE_DRAWS) -> Partition:
    """One recombination move; returns ``p`` itself when no balanced cut is found."""
    adj = adj or g.neighbors()
    cut_edges = [(i, j) for i, j in g.edges if p.assignment[i] != p.assignment[j]]
    i, j = cut_edges[int(rng.integers(len(cut_edges)))]
    d1, d2 = p.assignment[i], p.assignment[j]
    nodes = [u for u, k in enumerate(p.assignment) if k in (d1, d2)]
    ideal = Fraction(g.total_pop, p.d)
    total = p.pop[d1] + p.pop[d2]
    piece = balanced_cut(nodes, adj, g.pop, ideal, total, Fraction(deviation), rng, draws)
    if piece is None:
        return p
    piece = set(piece)
    return p.reassign(g, {u: (d1 if u in piece else d2) for u in nodes})


def random_plan(g: Geography, d: int, deviation=Fraction(1, 20), rng=None, attempts: int = 100) -> Partition:
    """Seed plan by repeatedly carving off one ideal-population district."""
    if d < 2:
        raise DomainError("need at least two districts")
    if g.n < d:
        raise DomainError(f"{g.n} nodes cannot form {d} districts")
    adj = g.neighbors()
    ideal = Fraction(g.total_pop, d)
    deviation = Fraction(deviation)
    for _ in range(attempts):
        assignment = [d - 1] * g.n
        remaining = list(range(g.n))
        ok = True
        for k in range(d - 1):
            total = sum(g.pop[u] for u in remaining)
            # leftover must stay within bounds for the remaining d-k-1 districts
            piece = balanced_cut(remaining, adj, g.pop, ideal, total, deviation, rng,
                                 rest_count=d - k - 1)
            if piece is None:
                ok = False
                break
            for u in piece:
                assignment[u] = k
            piece = set(piece)
            remaining = [u for u in remaining if u not in piece]
        if ok:
            p = Partition.from_assignment(g, assignment)
            if all(abs(x - ideal) <= ideal * deviation for x in p.pop):
                return p
    raise DomainError(f"could not build a {d}-district plan within deviation {float(deviation)}; "
                      "the population bound may be infeasible")
