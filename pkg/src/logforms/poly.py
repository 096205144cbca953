"""Sparse homogeneous polynomials over Q or a prime field.

Monomials are stored as packed integer keys: the exponent of ``x_i`` lives in
bits ``[16 i, 16 i + 16)``.  Multiplying monomials is then integer addition,
and integer comparison of keys is a lexicographic term order (``x_n`` is the
most significant variable), which is what the division routine uses.  Display,
enumeration and JSON output use graded reverse-lexicographic order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

SHIFT = 16
MASK = (1 << SHIFT) - 1
MAX_DEGREE = MASK

Monomial = tuple  # exponent vector (e_0, ..., e_n)
Scalar = Union[int, Fraction]

DEFAULT_PRIME = 2147483647
DEFAULT_BOUND = 10**4


class FieldMismatchError(ValueError):
    pass


class DegreeMismatchError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals when ``p`` is None, else GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or self.p < 2 or not _is_prime(self.p):
                raise ValueError(f"field characteristic {self.p!r} is not a prime")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def check_degree(self, d: int) -> None:
        """Require ``p > d`` so that Euler-type scalars ``d`` stay invertible."""
        if self.p is not None and self.p <= d:
            raise ValueError(f"prime {self.p} must exceed the degree {d} in play")

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction or decimal/``a/b`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} to GF({self.p})")

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / a
        return pow(a, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if self.p is None:
            q = Fraction(a) / b
            return q.numerator if q.denominator == 1 else q
        return a * pow(b, -1, self.p) % self.p

    def random_element(self, rng: random.Random, bound: int = DEFAULT_BOUND) -> Scalar:
        if self.p is None:
            return rng.randint(-bound, bound)
        return rng.randrange(self.p)

    def fmt(self, a: Scalar) -> str:
        return str(a)

    def to_json(self):
        return "rational" if self.p is None else {"prime": self.p}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if obj == "rational":
            return cls.rational()
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            return cls.prime(int(obj["prime"]))
        raise ValueError(f"unrecognised field spec {obj!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the command-line form ``rational`` or ``prime:P``."""
        text = text.strip()
        if text == "rational":
            return cls.rational()
        if text.startswith("prime:"):
            return cls.prime(int(text.split(":", 1)[1]))
        if text == "prime":
            return cls.prime()
        raise ValueError(f"unrecognised field {text!r}; use rational or prime:P")

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


def pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (SHIFT * i)
    return key


def unpack(key: int, n: int) -> Monomial:
    return tuple((key >> (SHIFT * i)) & MASK for i in range(n + 1))


def _grevlex_key(exps: Monomial):
    # ascending sort on this key lists monomials of one degree in descending grevlex
    return tuple(reversed(exps))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, k: int) -> tuple:
    """All exponent vectors of degree ``k`` in ``n + 1`` variables, grevlex descending."""
    if n < 0 or k < 0:
        return ()
    out = []

    def rec(i, left, acc):
        if i == n:
            out.append(tuple(acc + [left]))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, acc + [e])

    rec(0, k, [])
    out.sort(key=_grevlex_key)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_keys(n: int, k: int) -> tuple:
    return tuple(pack(e) for e in monomials_of_degree(n, k))


@lru_cache(maxsize=None)
def monomial_index(n: int, k: int) -> dict:
    return {key: i for i, key in enumerate(monomial_keys(n, k))}


class Polynomial:
    """Homogeneous polynomial with a declared degree (also for zero)."""

    __slots__ = ("field", "n", "degree", "terms", "_hash")

    def __init__(self, field: FieldSpec, n: int, degree: int, terms: Mapping[int, Scalar] | None = None):
        self.field = field
        self.n = n
        self.degree = degree
        self.terms = dict(terms) if terms else {}
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec, n: int, degree: int) -> "Polynomial":
        return cls(field, n, degree)

    @classmethod
    def constant(cls, field: FieldSpec, n: int, c) -> "Polynomial":
        c = field(c)
        return cls(field, n, 0, {0: c} if c else None)

    @classmethod
    def variable(cls, field: FieldSpec, n: int, i: int) -> "Polynomial":
        return cls(field, n, 1, {1 << (SHIFT * i): 1})

    @classmethod
    def from_terms(cls, field: FieldSpec, n: int, terms: Mapping[Monomial, object], degree: int | None = None):
        """Build from ``{exponent tuple: coefficient}``; checks homogeneity."""
        packed = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != n + 1:
                raise ValueError(f"monomial {exps} has wrong length for n={n}")
            deg = sum(exps)
            if degree is None:
                degree = deg
            elif deg != degree:
                raise DegreeMismatchError(f"monomial {exps} is not of degree {degree}")
            c = field(c)
            key = pack(exps)
            c = field(packed.get(key, 0) + c)
            if c:
                packed[key] = c
            else:
                packed.pop(key, None)
        if degree is None:
            raise ValueError("degree must be given for an empty term map")
        return cls(field, n, degree, packed)

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        """(exponent tuple, coefficient) pairs in grevlex descending order."""
        pairs = [(unpack(k, self.n), c) for k, c in self.terms.items()]
        pairs.sort(key=lambda t: _grevlex_key(t[0]))
        return pairs

    def coefficient(self, exps: Monomial) -> Scalar:
        return self.terms.get(pack(exps), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.n, self.degree, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[deg {self.degree}]"
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------
    def _check_ring(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.n != other.n:
            raise FieldMismatchError(f"n={self.n} vs n={other.n}")

    def _clean(self, terms: dict) -> dict:
        p = self.field.p
        if p is None:
            return {k: v for k, v in terms.items() if v}
        out = {}
        for k, v in terms.items():
            v %= p
            if v:
                out[k] = v
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        if self.degree != other.degree:
            raise DegreeMismatchError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        get = out.get
        for k, c in other.terms.items():
            out[k] = get(k, 0) + c
        return Polynomial(self.field, self.n, self.degree, self._clean(out))

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial(self.field, self.n, self.degree)
        return Polynomial(
            self.field, self.n, self.degree, self._clean({k: v * c for k, v in self.terms.items()})
        )

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        self._check_ring(other)
        degree = self.degree + other.degree
        if not self.terms or not other.terms:
            return Polynomial(self.field, self.n, degree)
        out: dict = {}
        get = out.get
        bt = list(other.terms.items())
        for ka, ca in self.terms.items():
            for kb, cb in bt:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return Polynomial(self.field, self.n, degree, self._clean(out))

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.field, self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to ``x_i``."""
        shift = SHIFT * i
        step = 1 << shift
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & MASK
            if e:
                out[k - step] = c * e
        return Polynomial(self.field, self.n, self.degree - 1, self._clean(out))

    def mul_var(self, i: int) -> "Polynomial":
        step = 1 << (SHIFT * i)
        return Polynomial(self.field, self.n, self.degree + 1, {k + step: c for k, c in self.terms.items()})

    def reduce_mod(self, field: FieldSpec) -> "Polynomial":
        """Map integer (or p-integral rational) coefficients into another field."""
        return Polynomial(field, self.n, self.degree, {k: field(c) for k, c in self.terms.items() if field(c)})

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Division with remainder by a single polynomial (lex order on packed keys).

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        self._check_ring(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.field
        lead_key = max(divisor.terms)
        lead_exps = unpack(lead_key, self.n)
        lead_inv = field.inv(divisor.terms[lead_key])
        dterms = list(divisor.terms.items())
        work = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        while work:
            k = max(work)
            c = work.pop(k)
            exps = unpack(k, self.n)
            if all(a >= b for a, b in zip(exps, lead_exps)):
                qk = k - lead_key
                qc = c * lead_inv
                if field.p is not None:
                    qc %= field.p
                quot[qk] = qc
                for dk, dc in dterms:
                    if dk == lead_key:
                        continue
                    kk = qk + dk
                    v = work.get(kk, 0) - qc * dc
                    if field.p is not None:
                        v %= field.p
                    if v:
                        work[kk] = v
                    else:
                        work.pop(kk, None)
            else:
                rem[k] = c
        q = Polynomial(field, self.n, self.degree - divisor.degree, self._clean(quot))
        r = Polynomial(field, self.n, self.degree, rem)
        return q, r

    def divisible_by(self, divisor: "Polynomial") -> bool:
        return self.divmod(divisor)[1].is_zero()

    # -- coordinates ------------------------------------------------------
    def to_vector(self) -> list:
        """Dense coefficient list in the ``monomials_of_degree`` order."""
        vec = [0] * len(monomial_keys(self.n, self.degree))
        index = monomial_index(self.n, self.degree)
        for k, c in self.terms.items():
            vec[index[k]] = c
        return vec

    @classmethod
    def from_vector(cls, field: FieldSpec, n: int, degree: int, vec) -> "Polynomial":
        keys = monomial_keys(n, degree)
        terms = {}
        for k, c in zip(keys, vec):
            c = field(c)
            if c:
                terms[k] = c
        return cls(field, n, degree, terms)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"exps": list(e), "coeff": self.field.fmt(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec, n: int) -> "Polynomial":
        degree = int(obj["degree"])
        terms = {}
        for t in obj["terms"]:
            exps = tuple(int(e) for e in t["exps"])
            if exps in terms:
                raise ValueError(f"duplicate monomial {exps}")
            terms[exps] = str(t["coeff"])
        return cls.from_terms(field, n, terms, degree=degree)


def random_poly(n: int, k: int, field: FieldSpec, seed: int, bound: int = DEFAULT_BOUND) -> Polynomial:
    """Dense random form of degree ``k``.

    Every monomial gets an independent coefficient: uniform in ``[-bound, bound]``
    over Q, uniform in GF(p) otherwise.  All-zero draws are rejected.
    """
    if k < 1:
        raise ValueError("random_poly needs degree k >= 1")
    rng = random.Random(seed)
    keys = monomial_keys(n, k)
    while True:
        terms = {}
        for key in keys:
            c = field.random_element(rng, bound)
            if c:
                terms[key] = c
        if terms:
            return Polynomial(field, n, k, terms)


def product(polys: Iterable[Polynomial], field: FieldSpec, n: int) -> Polynomial:
    result = Polynomial.constant(field, n, 1)
    for f in polys:
        result = result * f
    return result
