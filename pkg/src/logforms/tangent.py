"""Tangent spaces, the derivative of the parametrization, and the stability certificate.

Coordinates:

* projective one-forms of degree ``d`` are written in the basis returned by
  :func:`projective_oneform_basis` (a reduced kernel basis of the radial
  contraction, so coordinates are read off at its free columns);
* the parameter space ``V = Lambda(d) x prod_i S(d_i)`` uses the hyperplane
  basis ``e_i - (d_i/d_m) e_m`` followed by the monomial bases of each
  ``S(d_i)`` in grevlex order.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from . import linalg
from .forms import Form, differential, exterior_derivative, is_projective, one_form_coordinates, projective_dimension, wedge
from .logarithmic import DegreeVector, LogInstance, hat_F, hyperplane_basis, mu
from .poly import FieldSpec, Polynomial, monomial_keys, monomials_of_degree


class BaseLocusError(ValueError):
    """The instance maps to the zero form, so no tangent space is attached to it."""


@dataclass(frozen=True)
class OneFormBasis:
    field: FieldSpec
    n: int
    d: int
    vectors: tuple
    free: tuple  # coordinate labels at which basis vector k has a 1 and the others a 0

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, form: Form) -> list:
        """Coordinates of a projective one-form of degree ``d`` in this basis."""
        if form.q != 1 or form.degree != self.d:
            raise ValueError("form has the wrong grade or degree for this basis")
        if not is_projective(form):
            raise ValueError("form is not projective")
        vec = form.to_vector()
        return [vec.get(c, 0) for c in self.free]

    def combine(self, coords: Sequence) -> Form:
        total = Form.zero(self.field, self.n, 1, self.d)
        for c, v in zip(coords, self.vectors):
            if c:
                total = total + v.scale(c)
        return total


@lru_cache(maxsize=None)
def projective_oneform_basis(n: int, d: int, field: FieldSpec) -> OneFormBasis:
    """Basis of the kernel of ``<R, .>: Omega^1(d) -> S(d)``."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    coords = one_form_coordinates(n, d)
    step = [1 << (16 * i) for i in range(n + 1)]
    # image of the coordinate (dx_i, monomial k) under contraction is the monomial k * x_i
    columns = [{k + step[J[0]]: 1} for J, k in coords]
    basis, free = linalg.kernel(columns, len(coords), field)
    vectors = []
    for vec in basis:
        vectors.append(Form.from_vector(field, n, 1, d, {coords[j]: c for j, c in vec.items()}))
    dim = len(vectors)
    expected = projective_dimension(n, d)
    if dim != expected:
        raise AssertionError(f"projective one-forms: kernel dimension {dim}, Euler count {expected}")
    return OneFormBasis(field, n, d, tuple(vectors), tuple(coords[j] for j in free))


def tangent_condition(w: Form, alpha: Form) -> Form:
    """``w ^ d(alpha) + alpha ^ d(w)``; zero exactly when alpha is tangent at w."""
    return wedge(w, exterior_derivative(alpha)) + wedge(alpha, exterior_derivative(w))


@dataclass(frozen=True)
class TangentSpace:
    basis: OneFormBasis
    vectors: tuple  # coordinate vectors (lists) in ``basis``

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def forms(self) -> list:
        return [self.basis.combine(v) for v in self.vectors]


def _kernel_in_basis(basis: OneFormBasis, images: list) -> list:
    kern = linalg.nullspace(images, basis.dim, basis.field)
    return [[vec.get(j, 0) for j in range(basis.dim)] for vec in kern]


def tangent_space(w: Form) -> TangentSpace:
    """Zariski tangent space ``{alpha : w ^ d alpha + alpha ^ d w = 0}`` among projective forms."""
    if w.q != 1:
        raise ValueError("tangent spaces are computed at one-forms")
    if w.is_zero():
        raise BaseLocusError("tangent space requested at the zero form")
    basis = projective_oneform_basis(w.n, w.degree, w.field)
    dw = exterior_derivative(w)
    images = [
        (wedge(w, exterior_derivative(b)) + wedge(b, dw)).to_vector() for b in basis.vectors
    ]
    return TangentSpace(basis, tuple(_kernel_in_basis(basis, images)))


def second_order_space(w: Form) -> TangentSpace:
    """``{alpha : dw ^ d alpha = 0}`` among projective forms (equivalent description)."""
    basis = projective_oneform_basis(w.n, w.degree, w.field)
    dw = exterior_derivative(w)
    images = [wedge(dw, exterior_derivative(b)).to_vector() for b in basis.vectors]
    return TangentSpace(basis, tuple(_kernel_in_basis(basis, images)))


# -- the derivative -----------------------------------------------------

def _check_direction(inst: LogInstance, lam_p, F_p) -> tuple:
    field = inst.field
    lam_p = tuple(field(c) for c in (lam_p if lam_p is not None else [0] * inst.m))
    if F_p is None:
        F_p = [None] * inst.m
    F_out = []
    for i, (f, di) in enumerate(zip(F_p, inst.dv)):
        if f is None:
            f = Polynomial.zero(field, inst.n, di)
        if f.degree != di:
            raise ValueError(f"direction F'_{i + 1} has degree {f.degree}, expected {di}")
        F_out.append(f)
    if len(lam_p) != inst.m or len(F_out) != inst.m:
        raise ValueError("direction must have m entries")
    return lam_p, tuple(F_out)


def dmu_apply(inst: LogInstance, lam_p=None, F_p=None) -> Form:
    """Derivative of the parametrization at ``inst`` applied to ``(lam_p, F_p)``:

    ``sum_i lam'_i Fhat_i dF_i + sum_{i != k} lam_i F'_k Fhat_ik dF_i + sum_i lam_i Fhat_i dF'_i``.

    ``None`` entries stand for zero.  Projectivity of the result needs
    ``sum_i d_i lam'_i = 0``; that is not enforced here.
    """
    lam_p, F_p = _check_direction(inst, lam_p, F_p)
    field, m, d = inst.field, inst.m, inst.dv.d
    total = Form.zero(field, inst.n, 1, d)
    dF = inst.dF
    for i in range(m):
        if lam_p[i]:
            total = total + dF[i].times(hat_F(inst, (i,))).scale(lam_p[i])
    for i in range(m):
        if not inst.lam[i]:
            continue
        for k in range(m):
            if k == i or F_p[k].is_zero():
                continue
            total = total + dF[i].times(F_p[k] * hat_F(inst, (i, k))).scale(inst.lam[i])
        if not F_p[i].is_zero():
            total = total + differential(F_p[i]).times(hat_F(inst, (i,))).scale(inst.lam[i])
    return total


def parameter_dimension(n: int, dv: DegreeVector) -> int:
    return (dv.m - 1) + sum(comb(n + di, n) for di in dv)


def parameter_labels(n: int, dv: DegreeVector) -> list:
    labels = [f"lambda:e{i + 1}-e{dv.m}" for i in range(dv.m - 1)]
    for i, di in enumerate(dv):
        for exps in monomials_of_degree(n, di):
            labels.append(f"F{i + 1}:" + ",".join(map(str, exps)))
    return labels


def parameter_direction(inst: LogInstance, j: int) -> tuple:
    """The ``j``-th coordinate vector of ``V`` as a direction ``(lam', F')``."""
    field, m = inst.field, inst.m
    if j < m - 1:
        return hyperplane_basis(inst.dv, field)[j], None
    j -= m - 1
    for i, di in enumerate(inst.dv):
        keys = monomial_keys(inst.n, di)
        if j < len(keys):
            F_p = [None] * m
            F_p[i] = Polynomial(field, inst.n, di, {keys[j]: 1})
            return None, F_p
        j -= len(keys)
    raise IndexError("parameter coordinate out of range")


@dataclass
class LinearMapMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: dict  # (row, col) -> nonzero field element
    domain_labels: list
    codomain_labels: list

    def column(self, j: int) -> dict:
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def columns(self) -> list:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def rank(self) -> int:
        return linalg.column_rank(self.columns(), self.field)

    def kernel_dim(self) -> int:
        return self.cols - self.rank()


def dmu_matrix(inst: LogInstance) -> LinearMapMatrix:
    """Matrix of the derivative from ``V`` coordinates to projective one-form coordinates."""
    if not inst.is_projective:
        raise ValueError("the derivative matrix needs a projective instance")
    basis = projective_oneform_basis(inst.n, inst.dv.d, inst.field)
    ncols = parameter_dimension(inst.n, inst.dv)
    entries = {}
    for j in range(ncols):
        lam_p, F_p = parameter_direction(inst, j)
        coords = basis.coordinates(dmu_apply(inst, lam_p, F_p))
        for r, v in enumerate(coords):
            if v:
                entries[(r, j)] = v
    codomain = [f"dx{J[0]}:{k}" for J, k in basis.free]
    return LinearMapMatrix(inst.field, basis.dim, ncols, entries, parameter_labels(inst.n, inst.dv), codomain)


def perturbation_identity(inst: LogInstance, lam_p=None, F_p=None) -> bool:
    """Check ``F alpha = F (sum lam'_i Fhat_i dF_i) + G omega + F dH - H dF`` with
    ``G = sum_i Fhat_i F'_i`` and ``H = sum_i lam_i Fhat_i F'_i``."""
    lam_p, F_p = _check_direction(inst, lam_p, F_p)
    field, n, m, d = inst.field, inst.n, inst.m, inst.dv.d
    alpha = dmu_apply(inst, lam_p, F_p)
    w = mu(inst)
    F = inst.F_product
    G = Polynomial.zero(field, n, d)
    H = Polynomial.zero(field, n, d)
    eta_p = Form.zero(field, n, 1, d)
    for i in range(m):
        fhat = hat_F(inst, (i,))
        G = G + fhat * F_p[i]
        H = H + (fhat * F_p[i]).scale(inst.lam[i])
        if lam_p[i]:
            eta_p = eta_p + inst.dF[i].times(fhat).scale(lam_p[i])
    lhs = alpha.times(F)
    rhs = eta_p.times(F) + w.times(G) + differential(H).times(F) - differential(F).times(H)
    return lhs == rhs


def torus_directions(inst: LogInstance) -> list:
    """Kernel directions forced by multilinearity: ``(lambda, -F_1 e_1)`` and ``(0, F_i e_i - F_k e_k)``."""
    m = inst.m
    out = []
    F_p = [None] * m
    F_p[0] = -inst.F[0]
    out.append((inst.lam, F_p))
    for i in range(1, m):
        F_p = [None] * m
        F_p[0] = inst.F[0]
        F_p[i] = -inst.F[i]
        out.append((None, F_p))
    return out


def classify_balance(dv: DegreeVector) -> tuple:
    """``(balanced, r)`` with balanced iff ``2 d_1 < d`` and ``r = floor(d_1 / (d - d_1))``."""
    d1 = dv[0]
    rest = dv.d - d1
    return 2 * d1 < dv.d, d1 // rest


@dataclass
class StabilityReport:
    seed: int | None
    n: int
    degrees: list
    field: object
    dim_V: int
    dim_ambient: int
    dim_T: int
    rank_dmu: int
    ker_dmu_dim: int
    balanced: bool
    r_d: int
    surjective: bool
    image_in_tangent: bool
    degenerate: bool
    within_hypothesis: bool

    def check_invariants(self) -> None:
        assert self.rank_dmu + self.ker_dmu_dim == self.dim_V
        assert self.rank_dmu <= self.dim_T <= self.dim_ambient
        assert self.surjective == (self.rank_dmu == self.dim_T)

    def to_json(self) -> dict:
        return asdict(self)


def stability_certificate(inst: LogInstance) -> StabilityReport:
    """Compare ``rank d(mu)`` with ``dim T(omega)`` at one instance.

    Stability is only expected for ``n >= 3``; smaller ``n`` still runs and is
    flagged through ``within_hypothesis``.
    """
    w = mu(inst)
    if w.is_zero():
        raise BaseLocusError("instance lies in the base locus: omega = 0")
    if not inst.is_projective:
        raise ValueError("stability certificate needs a projective instance")
    T = tangent_space(w)
    M = dmu_matrix(inst)
    cols = M.columns()
    rank = linalg.column_rank(cols, inst.field)
    image_in_tangent = all(
        tangent_condition(w, T.basis.combine([c.get(r, 0) for r in range(M.rows)])).is_zero()
        for c in cols
    )
    balanced, r = classify_balance(inst.dv)
    report = StabilityReport(
        seed=inst.seed,
        n=inst.n,
        degrees=list(inst.dv.parts),
        field=inst.field.to_json(),
        dim_V=M.cols,
        dim_ambient=T.basis.dim,
        dim_T=T.dim,
        rank_dmu=rank,
        ker_dmu_dim=M.cols - rank,
        balanced=balanced,
        r_d=r,
        surjective=rank == T.dim,
        image_in_tangent=image_in_tangent,
        degenerate=inst.degenerate,
        within_hypothesis=inst.n >= 3,
    )
    report.check_invariants()
    return report
