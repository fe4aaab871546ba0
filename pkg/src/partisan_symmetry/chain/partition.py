"""District plans on a geography."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..election import DistrictResult, DomainError, Election, HALF
from .geography import Geography


@dataclass(frozen=True)
class Partition:
    assignment: tuple  # node -> district id in range(d)
    d: int
    pop: tuple  # per district
    a: tuple
    b: tuple

    @classmethod
    def from_assignment(cls, g: Geography, assignment) -> "Partition":
        assignment = tuple(int(x) for x in assignment)
        if len(assignment) != g.n:
            raise DomainError("assignment length differs from node count")
        d = max(assignment) + 1
        pop, a, b = [0] * d, [0] * d, [0] * d
        for i, k in enumerate(assignment):
            pop[k] += g.pop[i]
            a[k] += g.a[i]
            b[k] += g.b[i]
        return cls(assignment, d, tuple(pop), tuple(a), tuple(b))

    def reassign(self, g: Geography, changes: dict) -> "Partition":
        """Move nodes to new districts, updating tallies incrementally."""
        assignment = list(self.assignment)
        pop, a, b = list(self.pop), list(self.a), list(self.b)
        for i, k in changes.items():
            old = assignment[i]
            if old == k:
                continue
            assignment[i] = k
            pop[old] -= g.pop[i]
            a[old] -= g.a[i]
            b[old] -= g.b[i]
            pop[k] += g.pop[i]
            a[k] += g.a[i]
            b[k] += g.b[i]
        return Partition(tuple(assignment), self.d, tuple(pop), tuple(a), tuple(b))

    def members(self, k: int) -> list:
        return [i for i, x in enumerate(self.assignment) if x == k]

    def seats(self, party: str = "A") -> int:
        # exact ties go to B
        if party == "A":
            return sum(1 for x, y in zip(self.a, self.b) if x > y)
        return sum(1 for x, y in zip(self.a, self.b) if y >= x)

    def election(self) -> Election:
        """District-level two-party shares for party A."""
        out = []
        for x, y in zip(self.a, self.b):
            share = Fraction(x, x + y)
            out.append(DistrictResult(share, False if share == HALF else None))
        return Election(tuple(out))


def is_connected(g: Geography, nodes, adj=None) -> bool:
    nodes = set(nodes)
    if not nodes:
        return False
    adj = adj or g.neighbors()
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in nodes and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(nodes)


def max_deviation(g: Geography, p: Partition) -> Fraction:
    ideal = Fraction(g.total_pop, p.d)
    return max(abs(x - ideal) / ideal for x in p.pop)


def check_partition(g: Geography, p: Partition, deviation) -> list:
    """Problems with ``p``: disconnected districts, population imbalance, stale tallies."""
    problems = []
    adj = g.neighbors()
    for k in range(p.d):
        if not is_connected(g, p.members(k), adj):
            problems.append(f"district {k} is not connected")
    if max_deviation(g, p) > Fraction(deviation):
        problems.append(f"population deviation {float(max_deviation(g, p)):.4f} exceeds {float(deviation)}")
    if Partition.from_assignment(g, p.assignment) != p:
        problems.append("cached tallies differ from recomputation")
    return problems
