"""Vote geographies: a node-weighted graph with two-party vote counts."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..election import DomainError, ElectionError, as_fraction

KINDS = ("uniform", "clustered", "gradient")


class GeographyError(ElectionError):
    """Malformed or disconnected geography."""


def make_rng(seed: int) -> np.random.Generator:
    """All chain randomness comes from a PCG64 stream seeded here."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Geography:
    pop: tuple
    a: tuple
    b: tuple
    edges: tuple  # sorted (i, j) pairs with i < j
    layout: Optional[tuple] = None  # (x, y) per node

    def __post_init__(self) -> None:
        n = len(self.pop)
        if not (len(self.a) == len(self.b) == n):
            raise GeographyError("pop, a and b must have one entry per node")
        for i, (p, x, y) in enumerate(zip(self.pop, self.a, self.b)):
            if p <= 0:
                raise GeographyError(f"node {i}: population must be positive")
            if x < 0 or y < 0 or x + y > p:
                raise GeographyError(f"node {i}: votes must be nonnegative and at most the population")
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise GeographyError(f"bad edge ({i}, {j})")
        comps = self.components()
        if len(comps) > 1:
            sizes = ", ".join(f"{{{', '.join(map(str, c[:5]))}{', ...' if len(c) > 5 else ''}}}" for c in comps)
            raise GeographyError(f"geography is disconnected: {len(comps)} components {sizes}")

    @property
    def n(self) -> int:
        return len(self.pop)

    def neighbors(self) -> list:
        adj = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def components(self) -> list:
        adj = [[] for _ in range(len(self.pop))]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = [False] * len(self.pop)
        out = []
        for start in range(len(self.pop)):
            if seen[start]:
                continue
            seen[start] = True
            stack, comp = [start], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            out.append(sorted(comp))
        return out

    @property
    def total_pop(self) -> int:
        return sum(self.pop)

    def vote_share(self) -> Fraction:
        """Party A's statewide two-party share."""
        return Fraction(sum(self.a), sum(self.a) + sum(self.b))

    def swapped(self) -> "Geography":
        return Geography(self.pop, self.b, self.a, self.edges, self.layout)

    def to_json_dict(self) -> dict:
        d = {"nodes": [{"pop": p, "a": x, "b": y} for p, x, y in zip(self.pop, self.a, self.b)],
             "edges": [list(e) for e in self.edges]}
        if self.layout is not None:
            d["layout"] = [list(xy) for xy in self.layout]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "Geography":
        try:
            nodes = d["nodes"]
            pop = tuple(int(x["pop"]) for x in nodes)
            a = tuple(int(x["a"]) for x in nodes)
            b = tuple(int(x["b"]) for x in nodes)
            edges = tuple(sorted({(min(i, j), max(i, j)) for i, j in d["edges"]}))
        except (KeyError, TypeError, ValueError) as exc:
            raise GeographyError(f"malformed geography JSON: {exc!r}") from None
        layout = d.get("layout")
        return cls(pop, a, b, edges, None if layout is None else tuple(tuple(p) for p in layout))

    @classmethod
    def loads(cls, text: str) -> "Geography":
        return cls.from_json_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "Geography":
        with open(path) as fh:
            return cls.loads(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())


def grid_edges(rows: int, cols: int) -> tuple:
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return tuple(edges)


def _pattern(kind: str, rows: int, cols: int, rng) -> np.ndarray:
    """Zero-mean-ish deviation field in roughly [-1, 1]."""
    rr, cc = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    if kind == "uniform":
        return rng.normal(0.0, 0.25, size=(rows, cols))
    if kind == "gradient":
        t = cc / max(cols - 1, 1)
        return (t - 0.5) * 1.2 + rng.normal(0.0, 0.05, size=(rows, cols))
    # clustered: a few gaussian blobs of supporters
    field = np.zeros((rows, cols))
    radius = max(rows, cols) / 6
    for _ in range(3):
        r0, c0 = rng.uniform(0, rows), rng.uniform(0, cols)
        field += np.exp(-((rr - r0) ** 2 + (cc - c0) ** 2) / (2 * radius ** 2))
    field = field / field.max()
    return (field - field.mean()) * 1.4 + rng.normal(0.0, 0.05, size=(rows, cols))


def synth_geography(kind: str, rows: int, cols: int, lean=Fraction(1, 2), seed: int = 0,
                    pop_range=(80, 120)) -> Geography:
    """Grid geography with a planted vote pattern for party A around ``lean``.

    Deviations shrink toward the ends so ``lean`` of 0 or 1 gives one-party nodes.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown geography kind {kind!r}; expected one of {', '.join(KINDS)}")
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise DomainError("grid needs at least two nodes")
    lean = as_fraction(lean)
    if not 0 <= lean <= 1:
        raise DomainError(f"lean={lean} must lie in [0, 1]")
    rng = make_rng(seed)
    pop = rng.integers(pop_range[0], pop_range[1] + 1, size=rows * cols)
    scale = 1 - abs(2 * float(lean) - 1)
    share = np.clip(float(lean) + 0.5 * scale * _pattern(kind, rows, cols, rng).ravel(), 0.0, 1.0)
    if lean in (0, 1):
        share[:] = float(lean)
    a = np.rint(share * pop).astype(int)
    b = pop - a
    layout = tuple((c, r) for r in range(rows) for c in range(cols))
    return Geography(tuple(int(x) for x in pop), tuple(int(x) for x in a), tuple(int(x) for x in b),
                     grid_edges(rows, cols), layout)
