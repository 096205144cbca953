"""Factorizations ``d = e d'`` of a degree vector and the base locus they describe.

A factorization ``(m', e, d')`` stands for the family ``F_i = prod_j G_j^{e_ij}``
with ``deg G_j = d'_j``; residues with ``lambda e = 0`` then give ``mu = 0``.
Canonical form: columns ``(d'_j, e_{.j})`` sorted lexicographically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import linalg
from .logarithmic import DegreeVector, log_form
from .poly import FieldSpec, Polynomial, product, random_poly

QQ = FieldSpec.rational()


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    m_prime: int
    e: tuple  # m rows of m' nonnegative integers
    d_prime: tuple

    @classmethod
    def canonical(cls, e: Sequence[Sequence[int]], d_prime: Sequence[int]) -> "Factorization":
        m = len(e)
        cols = sorted((d_prime[j], tuple(e[i][j] for i in range(m))) for j in range(len(d_prime)))
        e_rows = tuple(tuple(col[i] for _, col in cols) for i in range(m))
        return cls(len(cols), e_rows, tuple(dj for dj, _ in cols))

    @property
    def m(self) -> int:
        return len(self.e)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.e)

    def degrees(self) -> tuple:
        return tuple(sum(x * dj for x, dj in zip(row, self.d_prime)) for row in self.e)

    def is_valid_for(self, dv: DegreeVector) -> bool:
        if self.degrees() != tuple(dv.parts):
            return False
        if any(not any(row) for row in self.e):
            return False
        return all(any(self.column(j)) for j in range(self.m_prime)) and all(x >= 1 for x in self.d_prime)

    @cached_property
    def rank(self) -> int:
        return linalg.rank([{j: x for j, x in enumerate(row) if x} for row in self.e], QQ)

    @property
    def lambda_dim(self) -> int:
        """``dim Lambda(e) = m - rank(e)``."""
        return self.m - self.rank

    def to_json(self) -> dict:
        return {"m_prime": self.m_prime, "e": [list(r) for r in self.e], "d_prime": list(self.d_prime)}


@dataclass(frozen=True)
class BaseLocusComponent:
    phi: Factorization
    lambda_dim: int
    is_maximal: bool

    @property
    def in_Z(self) -> bool:
        """Only ``lambda = 0`` is allowed, so the stratum lies in the trivial part."""
        return self.lambda_dim == 0

    def to_json(self) -> dict:
        out = self.phi.to_json()
        out.update(lambda_dim=self.lambda_dim, is_maximal=self.is_maximal)
        return out


def _columns_for(dv: DegreeVector) -> list:
    """Candidate canonical columns ``(d'_j, col)``: nonzero col with ``col_i d'_j <= d_i``."""
    out = []
    for dj in range(1, max(dv) + 1):
        ranges = [range(di // dj + 1) for di in dv]
        for col in itertools.product(*ranges):
            if any(col):
                out.append((dj, col))
    out.sort()
    return out


def enumerate_factorizations(dv: DegreeVector) -> list:
    """All canonical factorizations of ``dv`` (multisets of columns summing to ``dv``)."""
    cands = _columns_for(dv)
    target = tuple(dv.parts)
    m = dv.m
    results = []

    def rec(start, remaining, chosen):
        if not any(remaining):
            e = [[col[i] for _, col in chosen] for i in range(m)]
            results.append(Factorization.canonical(e, [dj for dj, _ in chosen]))
            return
        for idx in range(start, len(cands)):
            dj, col = cands[idx]
            if all(c * dj <= r for c, r in zip(col, remaining)):
                rec(idx, tuple(r - c * dj for c, r in zip(col, remaining)), chosen + [(dj, col)])

    rec(0, target, [])
    results.sort(key=_sort_key)
    return results


def _sort_key(phi: Factorization):
    return (phi.m_prime, phi.d_prime, phi.e)


def _solve_column(e1: tuple, target: tuple, m1: int):
    """All ``x`` in N^{m1} with ``e1 x = target``."""
    bounds = []
    for j in range(m1):
        b = min(target[i] // e1[i][j] for i in range(len(e1)) if e1[i][j] > 0)
        bounds.append(range(b + 1))
    for x in itertools.product(*bounds):
        if all(sum(row[j] * x[j] for j in range(m1)) == t for row, t in zip(e1, target)):
            yield x


def leq(phi2: Factorization, phi1: Factorization) -> bool:
    """``phi2 <= phi1``: equal ranks and ``e2 = e1 e3`` for a nonnegative integer
    ``e3`` with ``d'_1 = e3 d'_2`` (so ``G_j = prod_k H_k^{e3_jk}`` has the right degree)."""
    if phi1.m != phi2.m or phi1.degrees() != phi2.degrees():
        raise ValueError("factorizations of different degree vectors")
    if phi1.rank != phi2.rank:
        return False
    m1, m2 = phi1.m_prime, phi2.m_prime
    options = []
    for k in range(m2):
        sols = list(_solve_column(phi1.e, phi2.column(k), m1))
        if not sols:
            return False
        options.append(sols)
    # choose one solution per column so that the degrees match
    target = phi1.d_prime

    def rec(k, acc):
        if k == m2:
            return acc == target
        for x in options[k]:
            nxt = tuple(a + xi * phi2.d_prime[k] for a, xi in zip(acc, x))
            if all(a <= t for a, t in zip(nxt, target)) and rec(k + 1, nxt):
                return True
        return False

    return rec(0, (0,) * m1)


def components(dv: DegreeVector) -> list:
    """Every factorization with its ``lambda_dim`` and whether it is maximal."""
    phis = enumerate_factorizations(dv)
    by_rank: dict = {}
    for p in phis:
        by_rank.setdefault(p.rank, []).append(p)
    out = []
    for p in phis:
        maximal = not any(q != p and leq(p, q) for q in by_rank[p.rank])
        out.append(BaseLocusComponent(p, p.lambda_dim, maximal))
    return out


def maximal_elements(dv: DegreeVector) -> list:
    """Maximal factorizations with ``lambda_dim > 0``: the components of the base locus."""
    return [c for c in components(dv) if c.is_maximal and c.lambda_dim > 0]


# -- membership ----------------------------------------------------------

def nu(phi: Factorization, G: Sequence[Polynomial]) -> tuple:
    """``F_i = prod_j G_j^{e_ij}``."""
    if len(G) != phi.m_prime:
        raise ValueError("need one G_j per column")
    for g, dj in zip(G, phi.d_prime):
        if g.degree != dj:
            raise ValueError(f"G has degree {g.degree}, expected {dj}")
    g0 = G[0]
    return tuple(
        product((g ** x for g, x in zip(G, row) if x), g0.field, g0.n) for row in phi.e
    )


def lambda_annihilates(phi: Factorization, lam: Sequence, field: FieldSpec) -> bool:
    return all(not field(sum(l * phi.e[i][j] for i, l in enumerate(lam))) for j in range(phi.m_prime))


def membership_check(lam: Sequence, phi: Factorization, G: Sequence[Polynomial], strict: bool = True) -> bool:
    """Build ``F = nu_phi(G)`` and report whether ``mu(lam, F)`` is the zero form.

    With ``strict`` a residue vector violating ``lam e = 0`` raises PreconditionError.
    """
    field, n = G[0].field, G[0].n
    lam = [field(c) for c in lam]
    if strict and not lambda_annihilates(phi, lam, field):
        raise PreconditionError("residues do not satisfy lambda e = 0")
    F = nu(phi, G)
    return log_form(field, n, lam, F).is_zero()


def lambda_space(phi: Factorization, field: FieldSpec) -> list:
    """Basis of ``Lambda(e) = {lambda : lambda e = 0}`` as length-m lists."""
    # map lambda -> lambda e; column i is row i of e
    cols = [{j: x for j, x in enumerate(row) if x} for row in phi.e]
    return [[v.get(i, 0) for i in range(phi.m)] for v in linalg.nullspace(cols, phi.m, field)]


def random_base_point(phi: Factorization, n: int, field: FieldSpec, seed: int) -> tuple:
    """Random ``(lambda, G)`` with ``lambda`` in ``Lambda(e)`` and dense random ``G_j``."""
    rng = random.Random(seed)
    G = [random_poly(n, dj, field, rng.getrandbits(64)) for dj in phi.d_prime]
    basis = lambda_space(phi, field)
    lam = [0] * phi.m
    for v in basis:
        c = field.random_element(rng)
        lam = [field(a + c * b) for a, b in zip(lam, v)]
    return tuple(lam), G
