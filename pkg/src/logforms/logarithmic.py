"""Logarithmic one-forms ``omega = sum_i lambda_i Fhat_i dF_i`` and their identities.

Indices of the factors are 0-based in code (``F[0]`` is the factor of largest
degree); ``Fhat_A`` is the product of the factors whose index is not in ``A``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .forms import Form, differential, exterior_derivative, radial_value, wedge
from .poly import FieldSpec, Polynomial, product, random_poly


class InternalInconsistencyError(AssertionError):
    """An identity that holds by construction failed: an implementation bug."""


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class DegreeVector:
    """``(m; d_1, ..., d_m)`` with ``d_1 >= ... >= d_m >= 1`` and ``m >= 2``."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 2:
            raise ValueError("a degree vector needs at least two parts")
        if any(x < 1 for x in parts):
            raise ValueError("degrees must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"degrees {parts} are not nonincreasing")

    @classmethod
    def normalized(cls, parts: Sequence[int]) -> "DegreeVector":
        return cls(tuple(sorted((int(x) for x in parts), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "DegreeVector":
        return cls.normalized(int(t) for t in text.replace(" ", "").split(",") if t)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def d(self) -> int:
        return sum(self.parts)

    def hat(self, *A: int) -> int:
        """Degree of ``Fhat_A``."""
        return sum(x for i, x in enumerate(self.parts) if i not in A)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __len__(self):
        return len(self.parts)

    def __str__(self) -> str:
        return f"({self.m}; {', '.join(map(str, self.parts))})"


@dataclass(frozen=True)
class LogInstance:
    """A point ``(lambda, F)`` of the parameter space, plus its field and seed."""

    field: FieldSpec
    n: int
    dv: DegreeVector
    lam: tuple
    F: tuple
    seed: int | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.field(c) for c in self.lam))
        object.__setattr__(self, "F", tuple(self.F))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.lam) != self.dv.m or len(self.F) != self.dv.m:
            raise ValueError("lambda and F must both have m entries")
        self.field.check_degree(self.dv.d)
        for i, (f, di) in enumerate(zip(self.F, self.dv)):
            if f.field != self.field or f.n != self.n:
                raise ValueError(f"F_{i + 1} lives in a different ring")
            if f.degree != di:
                raise ValueError(f"F_{i + 1} has degree {f.degree}, expected {di}")
            if f.is_zero():
                raise ValueError(f"F_{i + 1} is the zero polynomial")

    @property
    def m(self) -> int:
        return self.dv.m

    @property
    def residue_sum(self):
        """``sum_i d_i lambda_i``; zero exactly on the projective hyperplane."""
        return self.field(sum(di * c for di, c in zip(self.dv, self.lam)))

    @property
    def is_projective(self) -> bool:
        return not self.residue_sum

    @property
    def lambda_nonzero(self) -> bool:
        return all(self.lam)

    @property
    def lambda_distinct(self) -> bool:
        return len(set(self.lam)) == len(self.lam)

    @property
    def degenerate(self) -> bool:
        return not (self.lambda_nonzero and self.lambda_distinct)

    def genericity_flags(self) -> dict:
        return {
            "projective": self.is_projective,
            "lambda_nonzero": self.lambda_nonzero,
            "lambda_distinct": self.lambda_distinct,
        }

    @cached_property
    def F_product(self) -> Polynomial:
        return product(self.F, self.field, self.n)

    @cached_property
    def dF(self) -> tuple:
        return tuple(differential(f) for f in self.F)

    def hat(self, *A: int) -> Polynomial:
        return hat_F(self, A)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "field": self.field.to_json(),
            "degrees": list(self.dv.parts),
            "lambda": [self.field.fmt(c) for c in self.lam],
            "polys": [f.to_json() for f in self.F],
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LogInstance":
        field = FieldSpec.from_json(obj["field"])
        n = int(obj["n"])
        dv = DegreeVector(tuple(obj["degrees"]))
        lam = tuple(field(str(c)) for c in obj["lambda"])
        F = tuple(Polynomial.from_json(p, field, n) for p in obj["polys"])
        seed = obj.get("seed")
        return cls(field, n, dv, lam, F, None if seed is None else int(seed))


def hat_F(inst: LogInstance, A: Sequence[int] = ()) -> Polynomial:
    """``Fhat_A``: product of the ``F_j`` with ``j`` not in ``A`` (0-based)."""
    A = set(A)
    return product((f for j, f in enumerate(inst.F) if j not in A), inst.field, inst.n)


def log_form(field: FieldSpec, n: int, lam: Sequence, F: Sequence[Polynomial]) -> Form:
    """``sum_i lam_i Fhat_i dF_i`` for arbitrary factors (no instance checks)."""
    m = len(F)
    d = sum(f.degree for f in F)
    total = Form.zero(field, n, 1, d)
    for i in range(m):
        if not lam[i]:
            continue
        fhat = product((F[j] for j in range(m) if j != i), field, n)
        total = total + differential(F[i]).times(fhat).scale(lam[i])
    return total


def mu(inst: LogInstance) -> Form:
    """The logarithmic one-form of the instance; the zero form marks the base locus."""
    return log_form(inst.field, inst.n, inst.lam, inst.F)


def check_integrability(w: Form) -> bool:
    """Frobenius condition ``w ^ dw == 0`` for a one-form."""
    if w.q != 1:
        raise ValueError("integrability is tested on one-forms")
    return wedge(w, exterior_derivative(w)).is_zero()


def radial_contraction_value(inst: LogInstance, w: Form | None = None) -> Polynomial:
    """``<R, mu>``, checked against ``(sum_i d_i lambda_i) F``."""
    w = mu(inst) if w is None else w
    value = radial_value(w)
    expected = inst.F_product.scale(inst.residue_sum)
    if value != expected:
        raise InternalInconsistencyError(f"<R, omega> = {value}, expected {expected}")
    return value


def closed_form_dw(inst: LogInstance) -> Form:
    """``sum_{i<j} (lambda_j - lambda_i) Fhat_ij dF_i ^ dF_j``."""
    field, m = inst.field, inst.m
    total = Form.zero(field, inst.n, 2, inst.dv.d)
    for i in range(m):
        for j in range(i + 1, m):
            c = field(inst.lam[j] - inst.lam[i])
            if not c:
                continue
            term = wedge(inst.dF[i], inst.dF[j]).times(hat_F(inst, (i, j))).scale(c)
            total = total + term
    return total


@dataclass
class IdentityReport:
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list:
        return [k for k, ok in self.checks.items() if not ok]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": dict(self.checks)}


def leaf_condition(inst: LogInstance, i: int, w: Form | None = None) -> bool:
    """Every coefficient of ``dF_i ^ omega`` is divisible by ``F_i``."""
    w = mu(inst) if w is None else w
    two = wedge(inst.dF[i], w)
    return all(a.divisible_by(inst.F[i]) for a in two.coeffs.values())


def identity_suite(inst: LogInstance) -> IdentityReport:
    """Exact check of integrability, the radial contraction, the closed form of
    ``d omega``, the integrating factor ``F`` and the invariance of each ``F_i = 0``."""
    w = mu(inst)
    dw = exterior_derivative(w)
    checks = {}
    checks["integrable"] = wedge(w, dw).is_zero()
    try:
        radial_contraction_value(inst, w)
        checks["radial_contraction"] = True
    except InternalInconsistencyError:
        checks["radial_contraction"] = False
    checks["dw_closed_form"] = dw == closed_form_dw(inst)
    F = inst.F_product
    checks["integrating_factor"] = (dw.times(F) - wedge(differential(F), w)).is_zero()
    for i in range(inst.m):
        checks[f"leaf_{i + 1}"] = leaf_condition(inst, i, w)
    return IdentityReport(checks)


# -- instance generation -------------------------------------------------

def hyperplane_basis(dv: DegreeVector, field: FieldSpec) -> list:
    """Basis ``e_i - (d_i / d_m) e_m`` (i < m) of ``sum_i d_i lambda_i = 0``."""
    m = dv.m
    basis = []
    for i in range(m - 1):
        v = [0] * m
        v[i] = 1
        v[m - 1] = field.div(-dv[i], dv[m - 1])
        basis.append(tuple(v))
    return basis


def lambda_from_coordinates(dv: DegreeVector, field: FieldSpec, coords: Sequence) -> tuple:
    basis = hyperplane_basis(dv, field)
    lam = [0] * dv.m
    for c, v in zip(coords, basis):
        for i, x in enumerate(v):
            lam[i] += c * x
    return tuple(field(x) for x in lam)


def random_lambda(dv: DegreeVector, field: FieldSpec, rng: random.Random, bound: int = 100, retries: int = 100) -> tuple:
    """Random residues on the projective hyperplane, all nonzero and pairwise distinct."""
    for _ in range(retries):
        if field.p is None:
            coords = [rng.randint(-bound, bound) for _ in range(dv.m - 1)]
        else:
            coords = [rng.randrange(field.p) for _ in range(dv.m - 1)]
        lam = lambda_from_coordinates(dv, field, coords)
        if all(lam) and len(set(lam)) == len(lam):
            return lam
    raise GenerationError(f"no generic residues found in {retries} draws over {field}")


def random_instance(n: int, dv: DegreeVector, field: FieldSpec, seed: int) -> LogInstance:
    """Seeded random point: dense random ``F_i`` and generic projective residues."""
    field.check_degree(dv.d)
    rng = random.Random(seed)
    F = tuple(random_poly(n, di, field, rng.getrandbits(64)) for di in dv)
    lam = random_lambda(dv, field, rng)
    return LogInstance(field, n, dv, lam, F, seed)


def canonical_order(inst: LogInstance) -> LogInstance:
    """Representative modulo permutations of factors of equal degree."""
    order = sorted(range(inst.m), key=lambda i: (-inst.dv[i], _pair_key(inst, i)))
    return LogInstance(
        inst.field, inst.n, inst.dv,
        tuple(inst.lam[i] for i in order), tuple(inst.F[i] for i in order), inst.seed,
    )


def _pair_key(inst: LogInstance, i: int):
    f = inst.F[i]
    return (str(inst.lam[i]), sorted((k, str(c)) for k, c in f.terms.items()))


def same_up_to_order(a: LogInstance, b: LogInstance) -> bool:
    return canonical_order(a) == canonical_order(b)
