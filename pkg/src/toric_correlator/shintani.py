"""Base change along F_q -> E = F_(q^ext) and the twisted intertwiner.

A principal series Ps(chi^j) of PGL2(E) is a base change exactly when the
character chi^j of E^* is fixed up to inversion by the relative Frobenius
sigma (x -> x^q):

    split base change   chi^sigma = chi         (chi = chi_0 o Norm)
    cusp base change    chi^sigma = chi^(-1)    (ext even; chi factors
                                                 through the norm to the
                                                 quadratic subextension)

In the split case the descended datum is the character exponent j_0 over
F_q; in the cusp case it is a cuspidal label r_tau of PGL2(F_q). The sign
attached to the descended datum,

    eps_tau = (-1)^(j_0)  or  (-1)^(r_tau - 1),

controls the correlation constant over E: eps_tau = -1 forces the model
sum S = sum over lam of chi(alpha/lam - lam) to vanish, hence the
correlation constant of Ps(chi^j) over E vanishes. This is how extension
fields acquire vanishing correlations whose own epsilon invariant is +1.

The operator realizing sigma on the induced model is

    split:  T f(inf) = f(inf),  T f_lam = f_(lam^sigma)
    cusp:   T = ((-1)^(n-1) / q^n) Ttilde  for ext = 2n, where
            Ttilde f(inf) = sum over mu of f_mu
            Ttilde f_lam  = f(inf) + sum over mu != lam of
                            chi(-(lam - mu)^2) f_(mu^sigma)

T is checked to intertwine (T pi(g) = pi(g^sigma) T on generators), to be
unitary, to fix v_H, and to send v_K to the conjugate-torus vector for
alpha^sigma (scaled by -chi(1/alpha) in the cusp case). Vectors here are
exponent counters: key -> {exponent of zeta mod Q-1: integer}, so every
check is exact integer arithmetic with a cyclotomic fallback for sums of
roots of unity that cancel without matching term by term.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .chars import AddChar, MulChar, gauss_sum
from .cyclo import CycNum
from .fields import ConsistencyError, FqElem
from .pgl2 import PGL2, Label, Mat, mat_det, mat_mul
from .ps_model import INF_KEY, ZERO_KEY

# key -> (zeta exponent -> integer coefficient)
CVec = dict[int, dict[int, int]]


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class BaseChangeClass:
    kind: str  # "split" | "cusp" | "none"
    q_base: int
    ext: int
    j: int
    base_exponent: int | None  # j_0 mod q_base - 1 (split only)
    base_label: Label | None  # irreducible descended label, if any
    regular: bool  # chi differs from its inverse over E

    def epsilon_tau(self) -> int | None:
        if self.kind == "split":
            return -1 if self.base_exponent % 2 else 1
        if self.kind == "cusp":
            return -1 if (self.base_label[1] - 1) % 2 else 1
        return None


def base_change_class(q_base: int, ext: int, j: int) -> BaseChangeClass:
    """Classify chi^j on F_(q_base^ext) against the relative Frobenius."""
    if ext < 2:
        raise ValueError("base change needs a proper extension")
    big = q_base**ext - 1
    j %= big
    regular = j != 0 and 2 * j % big != 0
    if j * q_base % big == j:
        cof = big // (q_base - 1)
        j0 = j // cof % (q_base - 1)
        fold = min(j0, q_base - 1 - j0)
        label: Label | None = None
        if regular and 1 <= fold <= (q_base - 3) // 2:
            label = ("ps", fold)
        return BaseChangeClass("split", q_base, ext, j, j0, label, regular)
    if ext % 2 == 0 and j * q_base % big == -j % big:
        nn = big // (q_base**2 - 1)
        rr = j // nn // (q_base - 1) % (q_base + 1)
        r_tau = min(rr, q_base + 1 - rr)
        return BaseChangeClass(
            "cusp", q_base, ext, j, None, ("cusp", r_tau), regular
        )
    return BaseChangeClass("none", q_base, ext, j, None, None, regular)


def eligible_exponents(q_base: int, ext: int) -> list[int]:
    """The regular j with chi^sigma = chi^(-1), folded modulo inversion."""
    big = q_base**ext - 1
    out = []
    for j in range(1, big // 2 + (big % 2)):
        if 2 * j % big and j * q_base % big == -j % big:
            out.append(j)
    return out


# -- counter vectors ---------------------------------------------------------


def _merge(dst: dict[int, int], src: dict[int, int], shift: int, mult: int, kk: int):
    for e, c in src.items():
        e2 = (e + shift) % kk
        dst[e2] = dst.get(e2, 0) + mult * c


def _counter_zero(kk: int, ctr: dict[int, int]) -> bool:
    if all(c == 0 for c in ctr.values()):
        return True
    return CycNum.from_counter(kk, ctr).is_zero()


def cvec_equal(kk: int, v: CVec, w: CVec) -> bool:
    for key in set(v) | set(w):
        diff = dict(v.get(key, {}))
        _merge(diff, w.get(key, {}), 0, -1, kk)
        if not _counter_zero(kk, diff):
            return False
    return True


def cvec_to_cyc(kk: int, v: CVec) -> dict[int, CycNum]:
    out = {}
    for key, ctr in v.items():
        z = CycNum.from_counter(kk, ctr)
        if not z.is_zero():
            out[key] = z
    return out


# -- the intertwiner ---------------------------------------------------------


class ShintaniOperator:
    """The sigma-twisted intertwiner on the induced model of Ps(chi^j)."""

    def __init__(self, g: PGL2, q_base: int, j: int):
        f0 = 0
        qq = 1
        while qq < q_base:
            qq *= g.p
            f0 += 1
        if qq != q_base or g.f % f0:
            raise ValueError(f"{q_base} is not a subfield size of F_{g.q}")
        self.g = g
        self.q_base = q_base
        self.f0 = f0
        self.ext = g.f // f0
        self.kk = g.q - 1
        self.j = j % self.kk
        self.bc = base_change_class(q_base, self.ext, j)
        if self.bc.kind == "none":
            raise ValueError(f"chi^{j} is not a base change from F_{q_base}")
        self.n = self.ext // 2 if self.bc.kind == "cusp" else None

    # sigma on field elements and on basis keys
    def sigma(self, x: FqElem) -> FqElem:
        return self.g.tower.frobenius(x, self.f0)

    def sigma_key(self, key: int) -> int:
        if key in (INF_KEY, ZERO_KEY):
            return key
        return key * self.q_base % self.kk

    def chi_exp(self, x: FqElem) -> int:
        """Exponent of chi^j at a nonzero element of E."""
        return self.j * self.g.sub_dlog(x) % self.kk

    def basis_keys(self) -> list[int]:
        return [INF_KEY, ZERO_KEY] + list(range(self.kk))

    def all_lams(self) -> list[int]:
        return [ZERO_KEY] + list(range(self.kk))

    # integer-rescaled T: equal to T in the split case and to
    # (-1)^(n-1) q^n T in the cusp case
    def t_scale(self) -> int:
        if self.bc.kind == "split":
            return 1
        return (-1) ** (self.n - 1) * self.q_base**self.n

    def t_tilde(self, vec: CVec) -> CVec:
        g = self.g
        t = g.tower
        kk = self.kk
        out: CVec = {}
        for key, ctr in vec.items():
            if self.bc.kind == "split":
                _merge(out.setdefault(self.sigma_key(key), {}), ctr, 0, 1, kk)
                continue
            if key == INF_KEY:
                for mu in self.all_lams():
                    _merge(out.setdefault(mu, {}), ctr, 0, 1, kk)
                continue
            lam = None if key == ZERO_KEY else g.sub_exp(key)
            _merge(out.setdefault(INF_KEY, {}), ctr, 0, 1, kk)
            for mu_key in self.all_lams():
                if mu_key == key:
                    continue
                mu = None if mu_key == ZERO_KEY else g.sub_exp(mu_key)
                diff = t.sub(lam, mu)
                shift = self.chi_exp(t.neg(t.mul(diff, diff)))
                _merge(
                    out.setdefault(self.sigma_key(mu_key), {}), ctr, shift, 1, kk
                )
        return {k: v for k, v in out.items() if any(v.values())}

    # generator actions, mirroring the induced-model conventions
    def act_diag(self, a: FqElem, vec: CVec) -> CVec:
        g = self.g
        kk = self.kk
        ea = self.chi_exp(a)
        out: CVec = {}
        for key, ctr in vec.items():
            if key == INF_KEY:
                _merge(out.setdefault(INF_KEY, {}), ctr, ea, 1, kk)
            else:
                lam = None if key == ZERO_KEY else g.sub_exp(key)
                nk = self.key_of(g.tower.mul(a, lam))
                _merge(out.setdefault(nk, {}), ctr, -ea, 1, kk)
        return out

    def act_u(self, b: FqElem, vec: CVec) -> CVec:
        g = self.g
        out: CVec = {}
        for key, ctr in vec.items():
            if key == INF_KEY:
                nk = key
            else:
                lam = None if key == ZERO_KEY else g.sub_exp(key)
                nk = self.key_of(g.tower.sub(lam, b))
            _merge(out.setdefault(nk, {}), ctr, 0, 1, self.kk)
        return out

    def act_w(self, vec: CVec) -> CVec:
        g = self.g
        t = g.tower
        out: CVec = {}
        for key, ctr in vec.items():
            if key == INF_KEY:
                _merge(out.setdefault(ZERO_KEY, {}), ctr, 0, 1, self.kk)
            elif key == ZERO_KEY:
                _merge(out.setdefault(INF_KEY, {}), ctr, 0, 1, self.kk)
            else:
                lam = g.sub_exp(key)
                shift = self.chi_exp(t.neg(t.mul(lam, lam)))
                nk = self.key_of(t.inv(lam))
                _merge(out.setdefault(nk, {}), ctr, shift, 1, self.kk)
        return out

    def key_of(self, lam: FqElem) -> int:
        return ZERO_KEY if lam is None else self.g.sub_dlog(lam)

    # -- invariant checks ---------------------------------------------------

    def _generators(self):
        """(action, sigma-twisted action) pairs spanning the group."""
        g = self.g
        gens = [
            (
                lambda v: self.act_diag(g.sub_exp(1), v),
                lambda v: self.act_diag(g.sub_exp(self.q_base % self.kk), v),
            ),
            (self.act_w, self.act_w),
        ]
        for i in range(g.f):
            b = g.sub_exp(i % self.kk)
            bs = self.sigma(b)
            gens.append(
                (
                    lambda v, b=b: self.act_u(b, v),
                    lambda v, bs=bs: self.act_u(bs, v),
                )
            )
        return gens

    def intertwining_check(self) -> None:
        """T pi(g) = pi(g^sigma) T on a generating set, raise on failure."""
        for act, act_s in self._generators():
            for key in self.basis_keys():
                vec: CVec = {key: {0: 1}}
                lhs = self.t_tilde(act(vec))
                rhs = act_s(self.t_tilde(vec))
                if not cvec_equal(self.kk, lhs, rhs):
                    raise ConsistencyError(
                        f"intertwining fails at basis key {key}"
                    )

    def unitarity_check(self) -> None:
        """Columns of Ttilde are orthogonal with squared norm t_scale^2."""
        cols = {k: self.t_tilde({k: {0: 1}}) for k in self.basis_keys()}
        want_diag = self.t_scale() ** 2
        keys = self.basis_keys()
        for i1, k1 in enumerate(keys):
            for k2 in keys[i1:]:
                inner: dict[int, int] = {}
                c1, c2 = cols[k1], cols[k2]
                for key in set(c1) & set(c2):
                    for e1, a1 in c1[key].items():
                        for e2, a2 in c2[key].items():
                            e = (e1 - e2) % self.kk
                            inner[e] = inner.get(e, 0) + a1 * a2
                val = CycNum.from_counter(self.kk, inner)
                want = CycNum.rational(want_diag if k1 == k2 else 0)
                if val != want:
                    raise ConsistencyError(
                        f"unitarity fails at column pair ({k1}, {k2})"
                    )

    def t_power_check(self) -> None:
        """T^ext is the identity (so Ttilde^ext is t_scale^ext times it)."""
        want = self.t_scale() ** self.ext
        for key in self.basis_keys():
            vec: CVec = {key: {0: 1}}
            for _ in range(self.ext):
                vec = self.t_tilde(vec)
            target: CVec = {key: {0: want}}
            if not cvec_equal(self.kk, vec, target):
                raise ConsistencyError(f"T^ext is not scalar at key {key}")

    # -- torus vectors ------------------------------------------------------

    def vector_h(self) -> CVec:
        """(Q - 1) v_H as a counter vector."""
        return {e: {-self.j * e % self.kk: 1} for e in range(self.kk)}

    def vector_k(self, alpha: FqElem | None = None) -> CVec:
        """(Q + 1) v_K(alpha') as a counter vector."""
        g = self.g
        t = g.tower
        alpha = g.alpha if alpha is None else alpha
        out: CVec = {INF_KEY: {0: 1}}
        for mu_key in self.all_lams():
            lam = None if mu_key == ZERO_KEY else g.sub_exp(mu_key)
            arg = t.inv(t.sub(alpha, t.mul(lam, lam)))
            out[mu_key] = {self.chi_exp(arg): 1}
        return out

    def effects_check(self) -> None:
        """T v_H = v_H; T v_K = v_K(alpha^sigma), times -chi(1/alpha) in
        the cusp case. Raises on failure."""
        g = self.g
        kk = self.kk
        scale = self.t_scale()
        vh = self.vector_h()
        got = self.t_tilde(vh)
        want: CVec = {k: {e: scale * c for e, c in ctr.items()} for k, ctr in vh.items()}
        if not cvec_equal(kk, got, want):
            raise ConsistencyError("T does not fix v_H")
        vk = self.vector_k()
        vks = self.vector_k(self.sigma(g.alpha))
        got = self.t_tilde(vk)
        if self.bc.kind == "split":
            want = vks
        else:
            shift = -self.chi_exp(g.alpha) % kk
            mult = -scale
            want = {}
            for key, ctr in vks.items():
                d: dict[int, int] = {}
                _merge(d, ctr, shift, mult, kk)
                want[key] = d
        if not cvec_equal(kk, got, want):
            raise ConsistencyError("T does not map v_K as expected")

    def model_sum(self) -> CycNum:
        """S = sum over nonzero lam in E of chi(alpha/lam - lam)."""
        return model_sum(self.g, self.j)

    def check_all(self) -> None:
        self.intertwining_check()
        self.unitarity_check()
        self.t_power_check()
        self.effects_check()


def model_sum(g: PGL2, j: int) -> CycNum:
    """The correlation character sum of chi^j, for any exponent j."""
    t = g.tower
    kk = g.q - 1
    counter: dict[int, int] = {}
    for lam in g.q_units():
        arg = t.sub(t.div(g.alpha, lam), lam)
        e = j * g.sub_dlog(arg) % kk
        counter[e] = counter.get(e, 0) + 1
    return CycNum.from_counter(kk, counter)


# -- the vanishing theorem ---------------------------------------------------


@dataclass
class BaseChangeReport:
    bc: BaseChangeClass
    epsilon_tau: int
    sum_vanishes: bool
    constant: CycNum | None  # correlation constant over E, when irreducible
    sign_rule_ok: bool

    def to_json_dict(self) -> dict:
        return {
            "kind": self.bc.kind,
            "q_base": self.bc.q_base,
            "ext": self.bc.ext,
            "j": self.bc.j,
            "base_exponent": self.bc.base_exponent,
            "base_label": list(self.bc.base_label) if self.bc.base_label else None,
            "epsilon_tau": self.epsilon_tau,
            "sum_vanishes": self.sum_vanishes,
            "constant": None if self.constant is None else self.constant.to_json_dict(),
            "sign_rule_ok": self.sign_rule_ok,
        }


def theorem_report(g: PGL2, q_base: int, j: int, counts=None) -> BaseChangeReport:
    """Evaluate the descent sign rule for one base-change character.

    eps_tau = -1 must force S = 0 (hence a vanishing correlation constant
    over E); the correlation constant itself is computed when chi^j is
    regular so the principal series is irreducible.
    """
    from .correlation import corr_constant

    big = g.q - 1
    bc = base_change_class(q_base, g.f // _log(q_base, g.p), j)
    eps = bc.epsilon_tau()
    if eps is None:
        raise ValueError(f"chi^{j} is not a base change from F_{q_base}")
    s = model_sum(g, j)
    vanishes = s.is_zero()
    const = None
    if bc.regular:
        fold = min(j % big, (big - j) % big)
        const = corr_constant(g, ("ps", fold), counts)
        if const.is_zero() != vanishes:
            raise ConsistencyError("model sum and correlation constant disagree")
    ok = vanishes if eps == -1 else not vanishes
    return BaseChangeReport(bc, eps, vanishes, const, ok)


def _log(q_base: int, p: int) -> int:
    f0 = 0
    qq = 1
    while qq < q_base:
        qq *= p
        f0 += 1
    if qq != q_base:
        raise ValueError(f"{q_base} is not a power of {p}")
    return f0


# -- auxiliary character sums ------------------------------------------------


def lemma_shift_sum(g: PGL2, j: int) -> CycNum:
    """Sum over lam != 0, 1 in E of chi^j((lam - 1)^2 / lam)."""
    t = g.tower
    kk = g.q - 1
    counter: dict[int, int] = {}
    one = t.one
    for e in range(kk):
        lam = g.sub_exp(e)
        if lam == one:
            continue
        num = t.sub(lam, one)
        arg = t.div(t.mul(num, num), lam)
        ee = j * g.sub_dlog(arg) % kk
        counter[ee] = counter.get(ee, 0) + 1
    return CycNum.from_counter(kk, counter)


def lemma_nonsquare_sum(g: PGL2, j: int, alpha: FqElem | None = None) -> CycNum:
    """Sum over i of chi^j(1 - alpha^(2i - 1)) for i = 1 .. |E| - 1.

    alpha must be a generator of E^* (a primitive nonsquare): the odd
    powers alpha^(2i - 1) then sweep the nonsquares uniformly, which the
    closed form requires. Defaults to the canonical generator.
    """
    t = g.tower
    kk = g.q - 1
    alpha = g.sub_exp(1) if alpha is None else alpha
    counter: dict[int, int] = {}
    for i in range(1, g.q):
        arg = t.sub(t.one, t.power(alpha, 2 * i - 1))
        ee = j * g.sub_dlog(arg) % kk
        counter[ee] = counter.get(ee, 0) + 1
    return CycNum.from_counter(kk, counter)


def lemma_checks(g: PGL2, q_base: int) -> None:
    """The two character-sum lemmas and the Gauss-sum sign, for every
    eligible chi over E = F_(q_base^(2n)); raises on any failure."""
    ext = g.f // _log(q_base, g.p)
    if ext % 2:
        raise ValueError("the lemmas require an even-degree extension")
    n = ext // 2
    big = g.q - 1
    want = CycNum.rational((-1) ** (n - 1) * q_base**n)
    # degenerate diagnostics: the trivial and quadratic characters
    if lemma_shift_sum(g, 0) != CycNum.rational(g.q - 2):
        raise ConsistencyError("trivial-character shift sum is off")
    if lemma_shift_sum(g, big // 2) != CycNum.rational(-1):
        raise ConsistencyError("quadratic-character shift sum is off")
    psi = AddChar(g.f, g.tower.one)
    gauss_want = CycNum.rational((-1) ** (n - 1) * q_base**n)
    for j in eligible_exponents(q_base, ext):
        if lemma_shift_sum(g, j) != want:
            raise ConsistencyError(f"shift sum fails at j = {j}")
        if lemma_nonsquare_sum(g, j) != CycNum.rational(-1 + (-1) ** n * q_base**n):
            raise ConsistencyError(f"nonsquare sum fails at j = {j}")
        if gauss_sum(g.tower, MulChar(big, 2 * j), psi) != gauss_want:
            raise ConsistencyError(f"Gauss sign fails at j = {j}")


def norm_map_check(g: PGL2, q_base: int, trials: int = 50, seed: int = 0) -> None:
    """tr^2/det of the sigma-norm of a matrix over E lies in F_(q_base)."""
    t = g.tower
    f0 = _log(q_base, g.p)
    ext = g.f // f0
    rng = random.Random(seed)
    checked = 0
    while checked < trials:
        mat: Mat = tuple(
            None if rng.randrange(g.q) == 0 else g.sub_exp(rng.randrange(g.q - 1))
            for _ in range(4)
        )
        if mat_det(t, mat) is None:
            continue
        prod = mat
        for k in range(1, ext):
            twisted: Mat = tuple(t.frobenius(x, f0 * k) for x in mat)
            prod = mat_mul(t, prod, twisted)
        tr = t.add(prod[0], prod[3])
        val = None
        if tr is not None:
            val = t.div(t.mul(tr, tr), mat_det(t, prod))
        if val is not None and not t.in_subfield(f0, val):
            raise ConsistencyError("norm of a matrix has unstable invariants")
        checked += 1
