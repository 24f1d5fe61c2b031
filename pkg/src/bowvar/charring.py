"""Exact Laurent monomials and sparse Laurent polynomials in ``u_1..u_m, h``.

A ``Weight`` is a single character of the torus; a ``KClass`` is a finite
integer combination of characters stored as ``{exponent tuple: coefficient}``
where the exponent tuple is ``(e_1, ..., e_m, e_h)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import INT64_MAX, ExponentOverflow, NegativeCoefficient, check_int64


@dataclass(frozen=True, order=True)
class Weight:
    u: tuple[int, ...]
    h: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", tuple(int(e) for e in self.u))
        for e in (*self.u, self.h):
            check_int64(e, "exponent", ExponentOverflow)

    @classmethod
    def trivial(cls, m: int) -> Weight:
        return cls((0,) * m, 0)

    @classmethod
    def ratio(cls, m: int, num: int, den: int, h: int = 0) -> Weight:
        """``u_num / u_den * h^h`` with 1-based D5 indices."""
        u = [0] * m
        u[num - 1] += 1
        u[den - 1] -= 1
        return cls(tuple(u), h)

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def exponents(self) -> tuple[int, ...]:
        return (*self.u, self.h)

    def __mul__(self, other: Weight) -> Weight:
        if self.m != other.m:
            raise ValueError("weights over different tori")
        return Weight(tuple(a + b for a, b in zip(self.u, other.u)), self.h + other.h)

    def inverse(self) -> Weight:
        return Weight(tuple(-e for e in self.u), -self.h)

    def times_h(self, k: int = 1) -> Weight:
        return Weight(self.u, self.h + k)

    def partner(self) -> Weight:
        """The weight ``h / w`` that pairs with ``w`` in a symplectic tangent space."""
        return self.inverse().times_h(1)

    def reparametrize(self, sigma: Iterable[int]) -> Weight:
        """Substitute ``u_j -> u_j * h^sigma_j``."""
        sigma = tuple(sigma)
        if len(sigma) != self.m:
            raise ValueError("sigma length differs from the number of D5 variables")
        return Weight(self.u, self.h + sum(e * s for e, s in zip(self.u, sigma)))

    def __str__(self) -> str:
        factors = []
        for j, e in enumerate(self.u, start=1):
            if e:
                factors.append(f"u{j}" if e == 1 else f"u{j}^{e}")
        if self.h:
            factors.append("h" if self.h == 1 else f"h^{self.h}")
        return "*".join(factors) if factors else "1"

    def to_json(self) -> dict:
        return {"u": list(self.u), "h": self.h}

    @classmethod
    def from_json(cls, data: Mapping) -> Weight:
        return cls(tuple(data["u"]), int(data["h"]))


def sort_weights(ws: Iterable[Weight]) -> list[Weight]:
    return sorted(ws)


def check_self_dual(ws: Iterable[Weight]) -> bool:
    counts = Counter(ws)
    for w, k in counts.items():
        p = w.partner()
        if p == w:
            if k % 2:
                return False
        elif counts.get(p, 0) != k:
            return False
    return True


class KClass:
    """Sparse Laurent polynomial with integer coefficients; treat as immutable."""

    __slots__ = ("m", "_terms", "_bound")

    def __init__(self, m: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.m = m
        clean: dict[tuple[int, ...], int] = {}
        bound = 0
        for exps, coeff in (terms or {}).items():
            if len(exps) != m + 1:
                raise ValueError(f"exponent vector {exps} has wrong length for m={m}")
            if coeff:
                clean[tuple(exps)] = coeff
                bound = max(bound, max((abs(e) for e in exps), default=0))
        if bound > INT64_MAX:
            raise ExponentOverflow(f"exponent bound {bound} exceeds 64-bit range")
        self._terms = clean
        self._bound = bound

    @classmethod
    def zero(cls, m: int) -> KClass:
        return cls(m)

    @classmethod
    def one(cls, m: int) -> KClass:
        return cls(m, {(0,) * (m + 1): 1})

    @classmethod
    def monomial(cls, w: Weight, coeff: int = 1) -> KClass:
        return cls(w.m, {w.exponents: coeff})

    @classmethod
    def u(cls, m: int, j: int) -> KClass:
        """The class ``u_j`` (1-based)."""
        exps = [0] * (m + 1)
        exps[j - 1] = 1
        return cls(m, {tuple(exps): 1})

    @classmethod
    def h(cls, m: int, k: int = 1) -> KClass:
        return cls(m, {(0,) * m + (k,): 1})

    @classmethod
    def from_weights(cls, m: int, ws: Iterable[Weight]) -> KClass:
        return cls(m, Counter(w.exponents for w in ws))

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def rank(self) -> int:
        return sum(self._terms.values())

    def _check(self, other: KClass) -> None:
        if not isinstance(other, KClass):
            raise TypeError(f"cannot combine KClass with {type(other).__name__}")
        if other.m != self.m:
            raise ValueError(f"KClass over m={self.m} combined with m={other.m}")

    def __add__(self, other: KClass) -> KClass:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return KClass(self.m, out)

    def __neg__(self) -> KClass:
        return KClass(self.m, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: KClass) -> KClass:
        return self + (-other)

    def __mul__(self, other: KClass | int) -> KClass:
        if isinstance(other, int):
            return KClass(self.m, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        if self._bound + other._bound > INT64_MAX:
            raise ExponentOverflow("product exponents may exceed the 64-bit range")
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = get(key, 0) + c1 * c2
        return KClass(self.m, out)

    __rmul__ = __mul__

    def dual(self) -> KClass:
        return KClass(self.m, {tuple(-x for x in e): c for e, c in self._terms.items()})

    def reparametrize(self, sigma: Iterable[int]) -> KClass:
        sigma = tuple(sigma)
        out: dict[tuple[int, ...], int] = {}
        for e, c in self._terms.items():
            key = (*e[:-1], e[-1] + sum(a * s for a, s in zip(e[:-1], sigma)))
            out[key] = out.get(key, 0) + c
        return KClass(self.m, out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KClass) and self.m == other.m and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"KClass({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            w = str(Weight(e[:-1], e[-1]))
            if c == 1:
                parts.append(w)
            elif c == -1:
                parts.append(f"-{w}")
            else:
                parts.append(f"{c}*{w}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [{"u": list(e[:-1]), "h": e[-1], "coeff": c} for e, c in self.items()]


def hom(a: KClass, b: KClass) -> KClass:
    """``Hom(a, b) = b * dual(a)``."""
    return b * a.dual()


def end(a: KClass) -> KClass:
    return a * a.dual()


def weights_of(a: KClass) -> list[Weight]:
    out: list[Weight] = []
    for e, c in a.items():
        if c < 0:
            raise NegativeCoefficient(f"term {Weight(e[:-1], e[-1])} has coefficient {c}")
        out.extend([Weight(e[:-1], e[-1])] * c)
    return out
