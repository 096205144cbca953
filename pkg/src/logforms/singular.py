"""The ideal of the codimension-two stratum: generators ``Fhat_i``, syzygies,
Hilbert-function checks of the resolution, and decomposition solvers."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import linalg
from .forms import Form, one_form_coordinates
from .logarithmic import DegreeVector, LogInstance, hat_F, hyperplane_basis
from .poly import Polynomial, monomial_keys
from .tangent import projective_oneform_basis


@dataclass(frozen=True)
class J2Presentation:
    generators: tuple  # Fhat_1, ..., Fhat_m
    relations: tuple  # R_j = F_j e_j - F_1 e_1 as length-m tuples of polynomials, j = 2..m

    @property
    def degrees(self) -> list:
        return [g.degree for g in self.generators]

    def apply(self, relation) -> Polynomial:
        """Image of a coefficient vector under ``e_i -> Fhat_i``."""
        total = None
        for c, g in zip(relation, self.generators):
            term = c * g
            total = term if total is None else total + term
        return total


def j2_presentation(inst: LogInstance) -> J2Presentation:
    m, field, n = inst.m, inst.field, inst.n
    gens = tuple(hat_F(inst, (i,)) for i in range(m))
    rels = []
    for j in range(1, m):
        vec = [Polynomial.zero(field, n, inst.dv[i]) for i in range(m)]
        vec[j] = inst.F[j]
        vec[0] = -inst.F[0]
        rels.append(tuple(vec))
    pres = J2Presentation(gens, tuple(rels))
    for rel in pres.relations:
        if not pres.apply(rel).is_zero():
            raise AssertionError("syzygy does not map to zero")
    return pres


def _binom(a: int, n: int) -> int:
    return comb(a, n) if a >= n else 0


def hilbert_predicted(n: int, dv: DegreeVector, k: int) -> int:
    """``sum_i C(n + k - dhat_i, n) - (m - 1) C(n + k - d, n)``."""
    return sum(_binom(n + k - dv.hat(i), n) for i in range(dv.m)) - (dv.m - 1) * _binom(n + k - dv.d, n)


def _generated_columns(inst: LogInstance, k: int) -> list:
    cols = []
    for g in j2_presentation(inst).generators:
        e = k - g.degree
        if e < 0:
            continue
        for key in monomial_keys(inst.n, e):
            cols.append({key + kk: c for kk, c in g.terms.items()})
    return cols


def hilbert_direct(inst: LogInstance, k: int) -> int:
    """Dimension of the degree-``k`` part of the ideal generated by the ``Fhat_i``."""
    return linalg.column_rank(_generated_columns(inst, k), inst.field)


@dataclass(frozen=True)
class HilbertRow:
    k: int
    direct: int
    predicted: int

    @property
    def match(self) -> bool:
        return self.direct == self.predicted

    def to_json(self) -> dict:
        return {"k": self.k, "direct": self.direct, "predicted": self.predicted, "match": self.match}


def hilbert_check(inst: LogInstance, k: int) -> HilbertRow:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return HilbertRow(k, hilbert_direct(inst, k), hilbert_predicted(inst.n, inst.dv, k))


def recompose(inst: LogInstance, parts) -> Form:
    """``sum_i Fhat_i alpha_i``."""
    total = Form.zero(inst.field, inst.n, 1, inst.dv.d)
    for i, a in enumerate(parts):
        total = total + a.times(hat_F(inst, (i,)))
    return total


def vanishing_decomposition(inst: LogInstance, alpha: Form):
    """Solve ``alpha = sum_i Fhat_i alpha_i`` with ``alpha_i`` in Omega^1(d_i).

    Returns the list of ``alpha_i`` or None when no solution exists, i.e. when
    alpha does not vanish on the cone over the codimension-two stratum.
    """
    if alpha.q != 1 or alpha.degree != inst.dv.d:
        raise ValueError("alpha must be a one-form of degree d")
    field, n, m = inst.field, inst.n, inst.m
    unknowns = []  # (i, coordinate label of Omega^1(d_i))
    columns = []
    for i in range(m):
        fhat = hat_F(inst, (i,))
        for J, k in one_form_coordinates(n, inst.dv[i]):
            unknowns.append((i, J, k))
            columns.append({(J, k + kk): c for kk, c in fhat.terms.items()})
    sol = linalg.solve(columns, alpha.to_vector(), len(columns), field)
    if sol is None:
        return None
    vecs = [dict() for _ in range(m)]
    for j, c in sol.items():
        i, J, k = unknowns[j]
        vecs[i][(J, k)] = c
    return [Form.from_vector(field, n, 1, inst.dv[i], vecs[i]) for i in range(m)]


def projective_vanishing_decomposition(inst: LogInstance, alpha: Form):
    """Solve ``alpha = sum_i lam'_i Fhat_i dF_i + sum_i Fhat_i gamma_i`` with
    ``sum_i d_i lam'_i = 0`` and each ``gamma_i`` projective of degree ``d_i``.

    Returns ``(lam', [gamma_i])`` or None.
    """
    if alpha.q != 1 or alpha.degree != inst.dv.d:
        raise ValueError("alpha must be a one-form of degree d")
    field, n, m = inst.field, inst.n, inst.m
    columns = []
    lam_basis = hyperplane_basis(inst.dv, field)
    for v in lam_basis:
        col = Form.zero(field, n, 1, inst.dv.d)
        for i, c in enumerate(v):
            if c:
                col = col + inst.dF[i].times(hat_F(inst, (i,))).scale(c)
        columns.append(col.to_vector())
    owners = []
    bases = []
    for i in range(m):
        B = projective_oneform_basis(n, inst.dv[i], field)
        bases.append(B)
        fhat = hat_F(inst, (i,))
        for b in B.vectors:
            owners.append(i)
            columns.append(b.times(fhat).to_vector())
    sol = linalg.solve(columns, alpha.to_vector(), len(columns), field)
    if sol is None:
        return None
    lam_p = [0] * m
    for j, v in enumerate(lam_basis):
        c = sol.get(j, 0)
        for i, x in enumerate(v):
            lam_p[i] = field(lam_p[i] + c * x)
    coords = [[] for _ in range(m)]
    for j, i in enumerate(owners, start=len(lam_basis)):
        coords[i].append(sol.get(j, 0))
    gammas = [bases[i].combine(coords[i]) for i in range(m)]
    return tuple(lam_p), gammas


def recompose_projective(inst: LogInstance, lam_p, gammas) -> Form:
    total = recompose(inst, gammas)
    for i, c in enumerate(lam_p):
        if c:
            total = total + inst.dF[i].times(hat_F(inst, (i,))).scale(c)
    return total
