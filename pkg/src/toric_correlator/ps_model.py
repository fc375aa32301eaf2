"""Explicit induced model of the principal series Ps(chi^r).

The representation space has the q + 1 basis vectors

    key -2        f       (the function supported at infinity)
    key -1        f_0     (lambda = 0)
    key e >= 0    f_lam   (lambda the e-th power of the F_q generator)

and vectors are dicts key -> CycNum. The generators act by

    diag(a, 1):  f -> chi(a) f,   f_lam -> chi^(-1)(a) f_{a lam}
    u(b):        f -> f,          f_lam -> f_{lam - b}
    w:           f -> f_0,        f_0 -> f,  f_lam -> chi(-lam^2) f_{1/lam}

and a general matrix acts through its Bruhat factorization. All three
generators act by monomial matrices whose nonzero entries are roots of
unity, so the standard inner product (orthonormal f-basis) is invariant
and exact correlation inner products agree with the class-function
computation in correlation.py.

The H-average and K-average fixed vectors have the closed forms v_H and
v_K below, and their inner product collapses to the character sum

    S = sum over lam != 0 of chi(alpha/lam - lam),

so <v_H, v_K> = S / (|H| |K|) and the normalized squared correlation is
|S|^2 / (q^2 - 1).
"""

from __future__ import annotations

import math

from .chars import AddChar, MulChar
from .cyclo import CycNum
from .fields import ConsistencyError, FqElem
from .pgl2 import PGL2, Label, Mat, mat_det, mat_mul

Vector = dict[int, CycNum]

INF_KEY = -2
ZERO_KEY = -1


class PsModel:
    """Induced model of Ps(chi^r) on PGL2(F_q)."""

    def __init__(self, g: PGL2, r: int):
        q = g.q
        if not 1 <= r <= (q - 3) // 2:
            raise ValueError(f"r = {r} is not an irreducible principal series label")
        self.g = g
        self.r = r
        self.chi = MulChar(q - 1, r)

    # -- keys ---------------------------------------------------------------

    def key_of(self, lam: FqElem) -> int:
        if lam is None:
            return ZERO_KEY
        return self.g.sub_dlog(lam)

    def lam_of(self, key: int) -> FqElem:
        if key == ZERO_KEY:
            return None
        return self.g.sub_exp(key)

    def basis_keys(self) -> list[int]:
        return [INF_KEY, ZERO_KEY] + list(range(self.g.q - 1))

    # -- generator actions ----------------------------------------------------

    def _chi_val(self, x: FqElem) -> CycNum:
        return CycNum.zeta(self.chi.k, self.chi.exponent_at(self.g.tower, x))

    def act_diag(self, a: FqElem, vec: Vector) -> Vector:
        t = self.g.tower
        out: Vector = {}
        ca = self._chi_val(a)
        cai = ca.conj()  # chi^(-1)(a) since chi(a) is a root of unity
        for key, c in vec.items():
            if key == INF_KEY:
                out[INF_KEY] = out.get(INF_KEY, CycNum.rational(0)) + ca * c
            else:
                nk = self.key_of(t.mul(a, self.lam_of(key)))
                out[nk] = out.get(nk, CycNum.rational(0)) + cai * c
        return out

    def act_u(self, b: FqElem, vec: Vector) -> Vector:
        t = self.g.tower
        out: Vector = {}
        for key, c in vec.items():
            nk = key if key == INF_KEY else self.key_of(t.sub(self.lam_of(key), b))
            out[nk] = out.get(nk, CycNum.rational(0)) + c
        return out

    def act_w(self, vec: Vector) -> Vector:
        t = self.g.tower
        out: Vector = {}
        for key, c in vec.items():
            if key == INF_KEY:
                nk, mult = ZERO_KEY, None
            elif key == ZERO_KEY:
                nk, mult = INF_KEY, None
            else:
                lam = self.lam_of(key)
                nk = self.key_of(t.inv(lam))
                mult = self._chi_val(t.neg(t.mul(lam, lam)))
            add = c if mult is None else mult * c
            out[nk] = out.get(nk, CycNum.rational(0)) + add
        return out

    def apply(self, mat: Mat, vec: Vector) -> Vector:
        """Action of a matrix over F_q via its Bruhat factorization."""
        t = self.g.tower
        a, b, c, d = mat
        if c is None:
            # g = u(b/d) diag(a/d, 1)
            out = self.act_diag(t.div(a, d), vec)
            if b is not None:
                out = self.act_u(t.div(b, d), out)
            return out
        det = mat_det(t, mat)
        e = t.neg(t.div(det, c))
        # g = u(a/c) w u(d/e) diag(c/e, 1), applied rightmost-first
        out = self.act_diag(t.div(c, e), vec)
        if d is not None:
            out = self.act_u(t.div(d, e), out)
        out = self.act_w(out)
        if a is not None:
            out = self.act_u(t.div(a, c), out)
        return out

    # -- torus-fixed vectors ---------------------------------------------------

    def vector_h(self) -> Vector:
        """The H-average of f_1; fixed by every diag(a, 1)."""
        q = self.g.q
        scale = CycNum.rational(1) / (q - 1)
        out: Vector = {}
        for e in range(q - 1):
            out[e] = CycNum.zeta(q - 1, -self.r * e) * scale
        return out

    def vector_k(self, a: FqElem = None) -> Vector:
        """The K_alpha'-fixed vector for alpha' = a^2 alpha (a = None: alpha)."""
        g = self.g
        t = g.tower
        q = g.q
        alpha = g.alpha if a is None else t.mul(t.mul(a, a), g.alpha)
        scale = CycNum.rational(1) / (q + 1)
        out: Vector = {INF_KEY: scale}
        for lam in g.q_elements():
            arg = t.inv(t.sub(alpha, t.mul(lam, lam)))
            out[self.key_of(lam)] = self._chi_val(arg) * scale
        return out

    def inner(self, v: Vector, w: Vector) -> CycNum:
        total = CycNum.rational(0)
        for key, c in v.items():
            d = w.get(key)
            if d is not None:
                total = total + c * d.conj()
        return total

    def corr_sum(self) -> CycNum:
        """S = sum over lam != 0 of chi(alpha/lam - lam), as one counter."""
        g = self.g
        t = g.tower
        counter: dict[int, int] = {}
        for lam in g.q_units():
            arg = t.sub(t.div(g.alpha, lam), lam)
            e = self.chi.exponent_at(t, arg)
            counter[e] = counter.get(e, 0) + 1
        return CycNum.from_counter(self.chi.k, counter)

    def model_constant(self) -> CycNum:
        """|S|^2 / (q^2 - 1): the normalized squared correlation."""
        return self.corr_sum().abs2() / (self.g.q**2 - 1)

    def consistency_check(self) -> None:
        """Invariance of v_H and v_K, the inner-product collapse, and the
        scaling rule for conjugate tori; raises on any failure."""
        g = self.g
        t = g.tower
        vh = self.vector_h()
        vk = self.vector_k()
        for a in g.q_units():
            if not vector_equal(self.act_diag(a, vh), vh):
                raise ConsistencyError("v_H is not H-fixed")
        for k in g.K:
            if not vector_equal(self.apply(k, vk), vk):
                raise ConsistencyError("v_K is not K-fixed")
        s = self.corr_sum()
        if self.inner(vh, vk) != s / (g.q**2 - 1):
            raise ConsistencyError("inner product does not collapse to S")
        # conjugate torus: <v_H, v_K_a> = chi(a) <v_H, v_K>
        for a in (t.one, g.tower.sub_exp(g.f, 1), t.power(g.alpha, (g.q - 1) // 2)):
            lhs = self.inner(vh, self.vector_k(a))
            if lhs != self._chi_val(a) * s / (g.q**2 - 1):
                raise ConsistencyError("conjugate-torus scaling fails")


def bessel_value(g: PGL2, rep: Label, mat: Mat) -> CycNum:
    """Bessel function B(g) = (1/q) sum over b of psi(-b) chi_rep(g u(b)).

    B(1) = 1 for every generic rep and B(h) = 0 for nontrivial h in H.
    """
    t = g.tower
    q = g.q
    psi = AddChar(g.f, t.one)
    kk = q * q - 1
    big = math.lcm(kk, g.p)
    counter: dict[int, int] = {}
    one = t.one
    for b in g.q_elements():
        u = (one, b, None, one)
        prod = mat_mul(t, mat, u)
        tpsi = psi.exponent_at(t, t.neg(b)) if b is not None else 0
        base = big // g.p * tpsi
        for e, c in g.char_counter(rep, g.classify(prod)).items():
            ex = (base + big // kk * e) % big
            counter[ex] = counter.get(ex, 0) + c
    return CycNum.from_counter(big, counter) / q


def vector_equal(v: Vector, w: Vector) -> bool:
    keys = set(v) | set(w)
    zero = CycNum.rational(0)
    return all(v.get(k, zero) == w.get(k, zero) for k in keys)
