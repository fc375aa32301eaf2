"""Exact arithmetic in cyclotomic fields Q(zeta_k).

A CycNum holds a conductor k and the coefficient vector of its canonical
representative modulo the k-th cyclotomic polynomial, with Fraction
entries, so equality, conjugation and rationality tests are exact. Values
built from exponent counters are automatically pushed down to the smallest
conductor the counter's support allows (gcd reduction), which keeps the
working conductor tiny even when characters are defined modulo q^2 - 1.

The module also provides the reduction of a CycNum at a prime ideal above
p, presented as an irreducible factor of Phi_k mod p; the image lives in
F_p[X]/(factor) and is returned as a plain coefficient list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import gfpoly
from .fields import ConsistencyError

_PHI_CACHE: dict[int, list[int]] = {}
_FACTOR_CACHE: dict[tuple[int, int, int], list[list[int]]] = {}

DEFAULT_CONDUCTOR_CAP = 200_000


def _zmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    while out and out[-1] == 0:
        out.pop()
    return out


def _zdiv_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (b monic up to sign)."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c, r = divmod(a[-1], b[-1])
        if r:
            raise ArithmeticError("division is not exact")
        q[shift] = c
        for i, cb in enumerate(b):
            a[shift + i] -= c * cb
        while a and a[-1] == 0:
            a.pop()
    if a:
        raise ArithmeticError("division is not exact")
    return q


def cyclotomic_poly(k: int) -> list[int]:
    """Coefficients of Phi_k, low-degree-first."""
    if k < 1:
        raise ValueError("k must be positive")
    if k in _PHI_CACHE:
        return _PHI_CACHE[k]
    poly = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            poly = _zdiv_exact(poly, cyclotomic_poly(d))
    _PHI_CACHE[k] = poly
    return poly


class CycRing:
    """Reduction tables for Q[X]/(Phi_k); one shared instance per k."""

    _cache: dict[int, "CycRing"] = {}

    def __init__(self, k: int):
        self.k = k
        self.phi_poly = cyclotomic_poly(k)
        self.deg = len(self.phi_poly) - 1
        # rows[e] = X^e reduced mod Phi_k; grown on demand
        self._rows: list[tuple[int, ...]] = [
            tuple(1 if i == e else 0 for i in range(self.deg))
            for e in range(self.deg)
        ]

    @classmethod
    def get(cls, k: int, cap: int = DEFAULT_CONDUCTOR_CAP) -> "CycRing":
        if k > cap:
            raise ValueError(f"conductor {k} exceeds cap {cap}")
        ring = cls._cache.get(k)
        if ring is None:
            ring = cls(k)
            cls._cache[k] = ring
        return ring

    def row(self, e: int) -> tuple[int, ...]:
        e %= self.k
        while len(self._rows) <= e:
            prev = self._rows[-1]
            top = prev[-1]
            nxt = [0] + list(prev[:-1])
            if top:
                for i in range(self.deg):
                    nxt[i] -= top * self.phi_poly[i]
            self._rows.append(tuple(nxt))
        return self._rows[e]

    def reduce_vector(self, vec: list) -> tuple[Fraction, ...]:
        """Reduce a coefficient vector of length <= k to the basis."""
        out = [Fraction(c) for c in vec[: self.deg]]
        out += [Fraction(0)] * (self.deg - len(out))
        for e in range(self.deg, len(vec)):
            c = vec[e]
            if c:
                r = self.row(e)
                for i in range(self.deg):
                    if r[i]:
                        out[i] += c * r[i]
        return tuple(out)

    def embed(self, k_small: int, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        step = self.k // k_small
        vec = [Fraction(0)] * self.k
        for i, c in enumerate(coeffs):
            if c:
                vec[i * step] += c
        return self.reduce_vector(vec)

    def mul(
        self, a: tuple[Fraction, ...], b: tuple[Fraction, ...]
    ) -> tuple[Fraction, ...]:
        k = self.k
        vec = [Fraction(0)] * k
        for i, ci in enumerate(a):
            if ci:
                for j, cj in enumerate(b):
                    if cj:
                        t = i + j
                        vec[t if t < k else t - k] += ci * cj
        return self.reduce_vector(vec)


@dataclass(frozen=True, eq=False)
class CycNum:
    """An element of Q(zeta_k) in canonical coordinates mod Phi_k."""

    k: int
    coeffs: tuple[Fraction, ...]

    __hash__ = None  # cross-conductor equality makes hashing unreliable

    @staticmethod
    def rational(x) -> "CycNum":
        return CycNum(1, (Fraction(x),))

    @staticmethod
    def zeta(k: int, e: int = 1) -> "CycNum":
        return CycNum.from_counter(k, {e: 1})

    @staticmethod
    def from_counter(k: int, counter: dict) -> "CycNum":
        """Sum of c * zeta_k^e over the counter, conductor-reduced.

        The conductor drops by the gcd of k with the exponent support, so
        sums of a few roots of unity stay in small fields regardless of k.
        """
        clean: dict[int, Fraction] = {}
        for e, c in counter.items():
            c = Fraction(c)
            if c:
                e %= k
                clean[e] = clean.get(e, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c}
        if not clean:
            return CycNum.rational(0)
        g = math.gcd(k, *clean.keys())
        k2 = k // g
        if k2 == 1:
            return CycNum.rational(sum(clean.values()))
        if k2 == 2:
            total = Fraction(0)
            for e, c in clean.items():
                total += c if (e // g) % 2 == 0 else -c
            return CycNum.rational(total)
        ring = CycRing.get(k2)
        vec = [Fraction(0)] * k2
        for e, c in clean.items():
            vec[e // g] += c
        return CycNum._make(k2, ring.reduce_vector(vec))

    @staticmethod
    def _make(k: int, coeffs: tuple[Fraction, ...]) -> "CycNum":
        # fold values that reduced to a rational down to conductor 1
        if k > 1 and not any(coeffs[1:]):
            return CycNum(1, (coeffs[0],))
        return CycNum(k, coeffs)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _pair(a: "CycNum", b: "CycNum"):
        if a.k == b.k:
            return a.k, a.coeffs, b.coeffs
        kk = math.lcm(a.k, b.k)
        ring = CycRing.get(kk)
        va = a.coeffs if a.k == kk else ring.embed(a.k, a.coeffs)
        vb = b.coeffs if b.k == kk else ring.embed(b.k, b.coeffs)
        return kk, va, vb

    @staticmethod
    def _coerce(x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.rational(x)
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        kk, va, vb = CycNum._pair(self, other)
        return CycNum._make(kk, tuple(x + y for x, y in zip(va, vb)))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.k, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __mul__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.k == 1:
            c = other.coeffs[0]
            return CycNum._make(self.k, tuple(x * c for x in self.coeffs))
        if self.k == 1:
            c = self.coeffs[0]
            return CycNum._make(other.k, tuple(x * c for x in other.coeffs))
        kk, va, vb = CycNum._pair(self, other)
        return CycNum._make(kk, CycRing.get(kk).mul(va, vb))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycNum":
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.k == 1:
            if other.coeffs[0] == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other.coeffs[0])
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _, va, vb = CycNum._pair(self, other)
        return va == vb

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field structure --------------------------------------------------

    def conj(self) -> "CycNum":
        """Complex conjugation, zeta -> zeta^(-1)."""
        if self.k == 1:
            return self
        return CycNum.from_counter(
            self.k, {(-i) % self.k: c for i, c in enumerate(self.coeffs) if c}
        )

    def abs2(self) -> "CycNum":
        """Squared modulus z * conj(z), exact."""
        return self * self.conj()

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return CycNum.rational(Fraction(1) / self.coeffs[0])
        phi = [Fraction(c) for c in cyclotomic_poly(self.k)]
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        # extended Euclid over Q[X]: u*a + v*phi = 1 since Phi_k is irreducible
        r0, r1 = phi, a
        u0, u1 = [], [Fraction(1)]
        while r1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, _qsub(u0, _qmul(q, u1))
        c = r0[0]
        inv_vec = [x / c for x in u0]
        ring = CycRing.get(self.k)
        return CycNum._make(self.k, ring.reduce_vector(inv_vec))

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction if it is rational, else None."""
        if self.k == 1:
            return self.coeffs[0]
        if not any(self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def to_complex(self) -> complex:
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                ang = 2.0 * math.pi * i / self.k
                total += float(c) * complex(math.cos(ang), math.sin(ang))
        return total

    def to_json_dict(self) -> dict:
        z = self.to_complex()
        return {
            "conductor": self.k,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
            "approx": {"re": z.real, "im": z.imag},
        }

    def __repr__(self) -> str:
        r = self.as_rational()
        if r is not None:
            return f"CycNum({r})"
        z = self.to_complex()
        return f"CycNum(k={self.k}, ~{z.real:.6g}{z.imag:+.6g}j)"


def _qmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    while out and not out[-1]:
        out.pop()
    return out


def _qsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    while out and not out[-1]:
        out.pop()
    return out


def _qdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, cb in enumerate(b):
            a[shift + i] -= c * cb
        while a and not a[-1]:
            a.pop()
    return q, a


def factor_cyclotomic_mod_p(k: int, p: int, seed: int = 0) -> list[list[int]]:
    """Irreducible factors of Phi_k mod p, sorted by coefficient tuple.

    Requires p odd and coprime to k; then all factors share the degree
    d = ord of p modulo k and the list has phi(k)/d entries. Deterministic
    for a fixed seed.
    """
    if p == 2:
        raise ValueError("p must be odd")
    if math.gcd(k, p) != 1:
        raise ValueError("p must not divide k")
    key = (k, p, seed)
    if key in _FACTOR_CACHE:
        return _FACTOR_CACHE[key]
    d = 1
    while pow(p, d, k) != 1:
        d += 1
    f = [c % p for c in cyclotomic_poly(k)]
    while f and f[-1] == 0:
        f.pop()
    if len(f) == d + 1:
        factors = [gfpoly.monic(f, p)]
    else:
        factors = gfpoly.equal_degree_factor(f, d, p, seed)
    _FACTOR_CACHE[key] = factors
    return factors


class PrimeIdealHandle:
    """A prime of Q(zeta_k) above p, given by a factor of Phi_k mod p.

    The residue field is F_p[X]/(factor); the class of X is a primitive
    k-th root of unity there, and reduction sends zeta_k to it.
    """

    def __init__(self, k: int, p: int, factor: list[int]):
        factor = [c % p for c in factor]
        if not factor or factor[-1] != 1:
            raise ValueError("factor must be monic")
        if gfpoly.mod([c % p for c in cyclotomic_poly(k)], factor, p):
            raise ValueError("factor does not divide Phi_k mod p")
        self.k = k
        self.p = p
        self.factor = factor
        self.residue_degree = gfpoly.degree(factor)
        # the residue image of zeta_k must have order exactly k
        x = [0, 1]
        if gfpoly.powmod(x, k, factor, p) != [1]:
            raise ConsistencyError("residue root is not a k-th root of unity")
        for r in gfpoly.factorint(k):
            if gfpoly.powmod(x, k // r, factor, p) == [1]:
                raise ConsistencyError("residue root has too small order")

    def reduce(self, z: CycNum) -> list[int]:
        """Image of z in the residue field, as a poly in the root's class.

        Fails if p divides a denominator of z (the value is not integral
        at this prime) or if z does not lie in Q(zeta_k).
        """
        if self.k % z.k:
            raise ValueError("value lies outside the handle's cyclotomic field")
        p = self.p
        point = gfpoly.powmod([0, 1], self.k // z.k, self.factor, p)
        acc: list[int] = []
        for c in reversed(z.coeffs):
            if c.denominator % p == 0:
                raise ValueError("value is not integral at this prime")
            cc = c.numerator * pow(c.denominator, p - 2, p) % p
            acc = gfpoly.mod(
                gfpoly.add(gfpoly.mul(acc, point, p), [cc], p), self.factor, p
            )
        return acc

    def reduce_to_int(self, z: CycNum) -> int:
        """Reduction when the image lies in the prime field."""
        r = self.reduce(z)
        if gfpoly.degree(r) > 0:
            raise ValueError("residue does not lie in the prime field")
        return r[0] if r else 0

    def __repr__(self) -> str:
        return f"PrimeIdealHandle(k={self.k}, p={self.p}, factor={self.factor})"
