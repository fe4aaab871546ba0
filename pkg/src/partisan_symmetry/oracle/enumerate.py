"""Exhaustive enumeration of equal-turnout elections on a share lattice."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from ..election import HALF, DistrictResult, Election
from . import _kernel_py
from .backend import get_scan

DEFAULT_BUDGET = 10 ** 8
KINDS = ("min_mm", "max_mm", "min_pb", "max_pb")


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required:,} multisets, budget is {budget:,}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class LatticeSpec:
    n: int
    D: int
    tie_policy: str = "both"  # a share of exactly 1/2 is tried as won and as lost

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.D < 2:
            raise ValueError("D must be at least 2")
        if self.tie_policy != "both":
            raise ValueError("only tie_policy='both' is supported")

    @property
    def size(self) -> int:
        """Number of multisets visited."""
        return comb(self.n + self.D, self.n)


@dataclass
class Cell:
    V: Fraction
    S: Fraction
    min_mm: Fraction
    max_mm: Fraction
    min_pb: Fraction
    max_pb: Fraction
    count: int
    mm_zero: bool
    pb_zero: bool
    both_zero: bool = False  # one election with MM = PB = 0
    witnesses: dict = field(default_factory=dict)


@dataclass
class AchievabilityTable:
    n: int
    D: int
    cells: dict  # (V, S) -> Cell
    backend: str = ""
    visited: int = 0

    def __getitem__(self, key) -> Cell:
        V, S = key
        return self.cells[(Fraction(V), Fraction(S))]

    def __contains__(self, key) -> bool:
        V, S = key
        return (Fraction(V), Fraction(S)) in self.cells

    def __iter__(self):
        return iter(sorted(self.cells.values(), key=lambda c: (c.S, c.V)))

    def __len__(self) -> int:
        return len(self.cells)

    def to_csv(self) -> str:
        lines = ["v_num,v_den,s_num,s_den,min_mm,max_mm,min_pb,max_pb,count,mm_zero,pb_zero,both_zero"]
        for c in self:
            lines.append(",".join(str(x) for x in (
                c.V.numerator, c.V.denominator, c.S.numerator, c.S.denominator,
                c.min_mm, c.max_mm, c.min_pb, c.max_pb, c.count, int(c.mm_zero), int(c.pb_zero), int(c.both_zero))))
        return "\n".join(lines) + "\n"

    def witnesses_json(self) -> str:
        out = []
        for c in self:
            out.append({"V": str(c.V), "S": str(c.S),
                        **{k: e.to_json_dict() for k, e in c.witnesses.items()}})
        return json.dumps({"n": self.n, "D": self.D, "cells": out}, indent=1)


def _alloc(n: int, D: int):
    rows = (n * D + 1) * (n + 1)
    vals = np.zeros((rows, _kernel_py.NCOL), dtype=np.int64)
    vals[:, _kernel_py.MM_MIN] = _kernel_py.BIG
    vals[:, _kernel_py.MM_MAX] = -_kernel_py.BIG
    vals[:, _kernel_py.PB_MIN] = _kernel_py.BIG
    vals[:, _kernel_py.PB_MAX] = -_kernel_py.BIG
    wits = np.zeros((rows, 4, n + 1), dtype=np.int32)
    return vals, wits


def _scan_chunk(args):
    n, D, lo, hi, backend = args
    vals, wits = _alloc(n, D)
    visited = get_scan(backend)(n, D, lo, hi, vals, wits)
    return vals, wits, visited


def _merge(acc, part) -> None:
    vals, wits = acc
    pv, pw = part
    for col, better in ((0, np.less), (1, np.greater), (2, np.less), (3, np.greater)):
        take = better(pv[:, col], vals[:, col])
        vals[take, col] = pv[take, col]
        wits[take, col, :] = pw[take, col, :]
    vals[:, 4] += pv[:, 4]
    vals[:, 5] |= pv[:, 5]
    vals[:, 6] |= pv[:, 6]
    vals[:, 7] |= pv[:, 7]


def _witness(n: int, D: int, row) -> Election:
    xs, u = [int(v) for v in row[:n]], int(row[n])
    districts = []
    won_ties = u
    # ties listed lost-first; the top u of them are won
    n_ties = sum(1 for v in xs if 2 * v == D)
    lost_ties = n_ties - won_ties
    for v in xs:
        share = Fraction(v, D)
        if share == HALF:
            flag = lost_ties <= 0
            lost_ties -= 1
            districts.append(DistrictResult(share, flag))
        else:
            districts.append(DistrictResult(share))
    return Election(tuple(districts))


def enumerate_extremes(spec: LatticeSpec, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                       backend: Optional[str] = None, witnesses: bool = True) -> AchievabilityTable:
    """Exact lattice extremes of MM and PB for every reachable (V, S).

    Work is split by the smallest share; results do not depend on ``jobs``.
    """
    if spec.size > budget:
        raise BudgetExceeded(spec.size, budget)
    n, D = spec.n, spec.D
    chunks = [(n, D, f, f, backend) for f in range(D + 1)]
    acc = _alloc(n, D)
    visited = 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, chunks))
    else:
        parts = map(_scan_chunk, chunks)
    for pv, pw, v in parts:
        _merge(acc, (pv, pw))
        visited += v
    vals, wits = acc
    from .backend import BACKEND

    cells = {}
    for key in np.nonzero(vals[:, 4])[0]:
        s, seats = divmod(int(key), n + 1)
        r = vals[key]
        V, S = Fraction(s, n * D), Fraction(seats, n)
        cell = Cell(V, S,
                    Fraction(int(r[0]), 2 * n * D), Fraction(int(r[1]), 2 * n * D),
                    Fraction(int(r[2]), 2 * n), Fraction(int(r[3]), 2 * n),
                    int(r[4]), bool(r[5]), bool(r[6]), bool(r[7]))
        if witnesses:
            cell.witnesses = {k: _witness(n, D, wits[key, i]) for i, k in enumerate(KINDS)}
        cells[(V, S)] = cell
    return AchievabilityTable(n, D, cells, backend or BACKEND, visited)
