"""Differential q-forms on affine (n+1)-space with polynomial coefficients.

A form of grade ``q`` and degree ``d`` is ``sum_J a_J dx_J`` over strictly
increasing index tuples ``J`` with ``|J| = q`` and each ``a_J`` homogeneous of
degree ``d - q`` (every ``dx_i`` counts as degree one).
"""

from __future__ import annotations

from math import comb
from typing import Mapping

from .poly import FieldMismatchError, FieldSpec, Polynomial, monomial_keys


def _sort_sign(idx) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``idx``; sign 0 when an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def _merge_sign(a: tuple, b: tuple) -> int:
    # sign of dx_a ^ dx_b -> dx_{sorted(a+b)} for disjoint sorted a, b
    inversions = 0
    for y in b:
        for x in a:
            if x > y:
                inversions += 1
    return -1 if inversions & 1 else 1


class Form:
    __slots__ = ("field", "n", "q", "degree", "coeffs")

    def __init__(self, field: FieldSpec, n: int, q: int, degree: int, coeffs: Mapping[tuple, Polynomial] | None = None):
        if q < 0:
            raise ValueError(f"negative grade {q}")
        self.field = field
        self.n = n
        self.q = q
        self.degree = degree
        out: dict = {}
        for J, a in (coeffs or {}).items():
            if len(J) != q:
                raise ValueError(f"index tuple {J} does not have length {q}")
            if a.field != field or a.n != n:
                raise FieldMismatchError("coefficient lives in a different ring")
            if a.degree != degree - q:
                raise ValueError(f"coefficient of dx{J} has degree {a.degree}, expected {degree - q}")
            sign, key = _sort_sign(J)
            if not sign or a.is_zero():
                continue
            term = a if sign == 1 else -a
            if key in out:
                term = out[key] + term
            if term.is_zero():
                out.pop(key, None)
            else:
                out[key] = term
        self.coeffs = out

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec, n: int, q: int, degree: int) -> "Form":
        return cls(field, n, q, degree)

    @classmethod
    def function(cls, f: Polynomial) -> "Form":
        return cls(f.field, f.n, 0, f.degree, {(): f})

    @classmethod
    def dx(cls, field: FieldSpec, n: int, *indices: int) -> "Form":
        one = Polynomial.constant(field, n, 1)
        return cls(field, n, len(indices), len(indices), {tuple(indices): one})

    @classmethod
    def one_form(cls, polys) -> "Form":
        """``sum_i polys[i] dx_i``."""
        polys = list(polys)
        f0 = polys[0]
        return cls(f0.field, f0.n, 1, f0.degree + 1, {(i,): a for i, a in enumerate(polys)})

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, J) -> Polynomial:
        return self.coeffs.get(tuple(J), Polynomial.zero(self.field, self.n, self.degree - self.q))

    def coefficient_generators(self) -> list:
        """The coefficients ``a_0, ..., a_n`` of a one-form (generators of its singular ideal)."""
        if self.q != 1:
            raise ValueError("coefficient generators are defined for one-forms")
        return [self.coefficient((i,)) for i in range(self.n + 1)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.q == other.q
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.q, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"0[grade {self.q}, deg {self.degree}]"
        parts = []
        for J in sorted(self.coeffs):
            dx = "^".join(f"dx{j}" for j in J)
            parts.append(f"({self.coeffs[J]})" + (f" {dx}" if dx else ""))
        return " + ".join(parts)

    # -- linear structure -------------------------------------------------
    def _check(self, other: "Form") -> None:
        if self.field != other.field or self.n != other.n:
            raise FieldMismatchError("forms live over different rings")

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if self.q != other.q or self.degree != other.degree:
            raise ValueError(
                f"cannot add grade/degree ({self.q},{self.degree}) and ({other.q},{other.degree})"
            )
        coeffs = dict(self.coeffs)
        for J, a in other.coeffs.items():
            coeffs[J] = coeffs[J] + a if J in coeffs else a
        return Form(self.field, self.n, self.q, self.degree, coeffs)

    def __neg__(self) -> "Form":
        return Form(self.field, self.n, self.q, self.degree, {J: -a for J, a in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        return Form(self.field, self.n, self.q, self.degree, {J: a.scale(c) for J, a in self.coeffs.items()})

    def times(self, f: Polynomial) -> "Form":
        """Multiply every coefficient by the polynomial ``f``."""
        return Form(self.field, self.n, self.q, self.degree + f.degree, {J: f * a for J, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.times(other)
        if isinstance(other, Form):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return self.times(other)
        return self.scale(other)

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    # -- coordinates ------------------------------------------------------
    def to_vector(self) -> dict:
        """Sparse coordinates ``{(J, monomial key): coefficient}``."""
        out = {}
        for J, a in self.coeffs.items():
            for k, c in a.terms.items():
                out[(J, k)] = c
        return out

    @classmethod
    def from_vector(cls, field: FieldSpec, n: int, q: int, degree: int, vec: Mapping) -> "Form":
        by_J: dict = {}
        for (J, k), c in vec.items():
            if c:
                by_J.setdefault(J, {})[k] = c
        coeffs = {J: Polynomial(field, n, degree - q, t) for J, t in by_J.items()}
        return cls(field, n, q, degree, coeffs)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "q": self.q,
            "degree": self.degree,
            "coeffs": [{"J": list(J), "poly": self.coeffs[J].to_json()} for J in sorted(self.coeffs)],
        }

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec, n: int) -> "Form":
        q, degree = int(obj["q"]), int(obj["degree"])
        coeffs = {}
        for entry in obj["coeffs"]:
            J = tuple(int(j) for j in entry["J"])
            if list(J) != sorted(set(J)):
                raise ValueError(f"index tuple {J} is not strictly increasing")
            coeffs[J] = Polynomial.from_json(entry["poly"], field, n)
        return cls(field, n, q, degree, coeffs)


def differential(f: Polynomial) -> Form:
    """``df = sum_i (df/dx_i) dx_i``."""
    return Form(f.field, f.n, 1, f.degree, {(i,): f.diff(i) for i in range(f.n + 1)})


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    q = a.q + b.q
    degree = a.degree + b.degree
    if q > a.n + 1:
        return Form(a.field, a.n, q, degree)
    out: dict = {}
    for J1, f in a.coeffs.items():
        s1 = set(J1)
        for J2, g in b.coeffs.items():
            if s1.intersection(J2):
                continue
            J = tuple(sorted(J1 + J2))
            term = f * g
            if _merge_sign(J1, J2) < 0:
                term = -term
            out[J] = out[J] + term if J in out else term
    return Form(a.field, a.n, q, degree, out)


def exterior_derivative(a: Form) -> Form:
    if a.q >= a.n + 1:
        raise ValueError("exterior derivative of a top-grade form")
    out: dict = {}
    for J, f in a.coeffs.items():
        for i in range(a.n + 1):
            if i in J:
                continue
            g = f.diff(i)
            if g.is_zero():
                continue
            pos = sum(1 for j in J if j < i)
            key = tuple(sorted(J + (i,)))
            if pos & 1:
                g = -g
            out[key] = out[key] + g if key in out else g
    return Form(a.field, a.n, a.q + 1, a.degree, out)


def contract_radial(a: Form) -> Form:
    """Interior product with the Euler field ``R = sum_i x_i d/dx_i``."""
    if a.q < 1:
        raise ValueError("cannot contract a function")
    out: dict = {}
    for J, f in a.coeffs.items():
        for pos, j in enumerate(J):
            g = f.mul_var(j)
            if pos & 1:
                g = -g
            key = J[:pos] + J[pos + 1:]
            out[key] = out[key] + g if key in out else g
    return Form(a.field, a.n, a.q - 1, a.degree, out)


def radial_value(a: Form) -> Polynomial:
    """``<R, a>`` for a one-form, as a polynomial."""
    if a.q != 1:
        raise ValueError("radial value is defined for one-forms")
    return contract_radial(a).coefficient(())


def is_projective(a: Form) -> bool:
    if a.q != 1:
        raise ValueError("projectivity is tested on one-forms")
    return radial_value(a).is_zero()


def projective_dimension(n: int, d: int) -> int:
    """Dimension of projective one-forms of degree d, from the Euler sequence count."""
    if d < 1:
        return 0
    return (n + 1) * comb(n + d - 1, n) - comb(n + d, n)


def one_form_coordinates(n: int, d: int) -> list:
    """Coordinate labels ``((i,), monomial key)`` of Omega^1(d) in a fixed order."""
    keys = monomial_keys(n, d - 1)
    return [((i,), k) for i in range(n + 1) for k in keys]


def one_form_index(n: int, d: int) -> dict:
    return {c: j for j, c in enumerate(one_form_coordinates(n, d))}


__all__ = [
    "Form",
    "differential",
    "wedge",
    "exterior_derivative",
    "contract_radial",
    "radial_value",
    "is_projective",
    "projective_dimension",
    "one_form_coordinates",
    "one_form_index",
]
