"""PGL2 over F_q: conjugacy classes, character table, and the two tori.

The group is presented through a tower containing F_{q^2}, so eigenvalues
of non-split elements are honest field elements. Conjugacy classes carry
tuple labels:

    ("id",)        the identity, size 1
    ("unip",)      unipotents, size q^2 - 1
    ("split", e)   eigenvalue ratio with subfield dlog +-e, e in 1..(q-1)/2
    ("ell", j)     non-split, angle +-j mod q+1, j in 1..(q+1)/2

and irreducible characters likewise: ("triv",), ("eta",), ("st",),
("steta",), ("ps", r) for r in 1..(q-3)/2, ("cusp", r) for r in
1..(q-1)/2. Character values are kept as exponent counters modulo
q^2 - 1 (dicts exp -> int), so inner products of rows and columns can be
accumulated in integers and only reduced into a cyclotomic field once.

H is the split torus {diag(a, 1)} and K the non-split torus, realized as
multiplication by 1 + z*sqrt(alpha) on the plane with basis {1,
sqrt(alpha)} for the first nonsquare alpha whose torus generator
k_alpha = [[1, alpha], [1, 1]] has projective order exactly q + 1.
"""

from __future__ import annotations

import math

from .cyclo import CycNum
from .fields import ConsistencyError, FieldTower, FqElem, build_tower

Mat = tuple[FqElem, FqElem, FqElem, FqElem]
Label = tuple


def mat_mul(t: FieldTower, x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return (
        t.add(t.mul(a, e), t.mul(b, g)),
        t.add(t.mul(a, f), t.mul(b, h)),
        t.add(t.mul(c, e), t.mul(d, g)),
        t.add(t.mul(c, f), t.mul(d, h)),
    )


def mat_det(t: FieldTower, x: Mat) -> FqElem:
    a, b, c, d = x
    return t.sub(t.mul(a, d), t.mul(b, c))


def mat_trace(t: FieldTower, x: Mat) -> FqElem:
    return t.add(x[0], x[3])


def mat_inv(t: FieldTower, x: Mat) -> Mat:
    a, b, c, d = x
    di = t.inv(mat_det(t, x))
    return (t.mul(d, di), t.mul(t.neg(b), di), t.mul(t.neg(c), di), t.mul(a, di))


def mat_eq_projective(t: FieldTower, x: Mat, y: Mat) -> bool:
    """Equality in PGL2: x = c*y for a scalar c."""
    c = None
    for u, v in zip(x, y):
        if (u is None) != (v is None):
            return False
        if u is not None:
            r = t.div(u, v)
            if c is None:
                c = r
            elif r != c:
                return False
    return c is not None


class PGL2:
    """PGL2(F_q) with its class data, character table and tori."""

    def __init__(
        self,
        p: int,
        f: int,
        chi_modulus: list[int] | None = None,
        table_cap: int | None = None,
    ):
        if p == 2:
            raise ValueError("q must be odd")
        kwargs = {} if table_cap is None else {"table_cap": table_cap}
        pin = None if chi_modulus is None else (f, chi_modulus)
        self.p = p
        self.f = f
        self.q = p**f
        self.tower = build_tower(p, 2 * f, subfield_modulus=pin, **kwargs)
        self.cof = self.q + 1  # ambient dlog step of the subfield F_q
        self.order = self.q * (self.q**2 - 1)
        self._init_classes()
        self._init_tori()
        self._value_cache: dict[tuple[Label, Label], CycNum] = {}
        self._invdim_cache: dict[Label, tuple[int, int]] = {}

    # -- classes ----------------------------------------------------------

    def _init_classes(self) -> None:
        q = self.q
        self.classes: list[Label] = [("id",), ("unip",)]
        self.classes += [("split", e) for e in range(1, (q - 1) // 2 + 1)]
        self.classes += [("ell", j) for j in range(1, (q + 1) // 2 + 1)]
        sizes = {("id",): 1, ("unip",): q * q - 1}
        for e in range(1, (q - 1) // 2 + 1):
            sizes[("split", e)] = q * (q + 1) // (2 if e == (q - 1) // 2 else 1)
        for j in range(1, (q + 1) // 2 + 1):
            sizes[("ell", j)] = q * (q - 1) // (2 if j == (q + 1) // 2 else 1)
        if sum(sizes.values()) != self.order:
            raise ConsistencyError("class sizes do not sum to the group order")
        self.class_size = sizes
        self.class_index = {c: i for i, c in enumerate(self.classes)}

    def q_units(self) -> list[FqElem]:
        return [e * self.cof for e in range(self.q - 1)]

    def q_elements(self) -> list[FqElem]:
        return [None] + self.q_units()

    def sub_exp(self, e: int) -> FqElem:
        return self.tower.sub_exp(self.f, e)

    def sub_dlog(self, x: FqElem) -> int:
        return self.tower.sub_dlog(self.f, x)

    def classify_trace_det(self, tr: FqElem, det: FqElem) -> Label:
        """Class of a non-scalar element with this trace and determinant."""
        t = self.tower
        q = self.q
        disc = t.sub(t.mul(tr, tr), t.mul(self._four, det))
        if disc is None:
            return ("unip",)
        sq = t.sqrt(disc)  # disc is in F_q, so its ambient dlog is even
        if (disc // self.cof) % 2 == 0:
            # split: fold the eigenvalue-ratio dlog into 1..(q-1)/2
            x = t.mul(t.add(tr, sq), self._inv2)
            y = t.mul(t.sub(tr, sq), self._inv2)
            e = (x - y) % t.order // self.cof % (q - 1)
            return ("split", min(e, q - 1 - e))
        x = t.mul(t.add(tr, sq), self._inv2)
        j = x % (q + 1)
        return ("ell", min(j, q + 1 - j))

    def classify(self, mat: Mat) -> Label:
        t = self.tower
        a, b, c, d = mat
        det = mat_det(t, mat)
        if det is None:
            raise ValueError("matrix is singular")
        if b is None and c is None:
            if a == d:
                return ("id",)
            e = self.sub_dlog(t.div(a, d))
            return ("split", min(e, self.q - 1 - e))
        return self.classify_trace_det(mat_trace(t, mat), det)

    # -- tori -------------------------------------------------------------

    def _init_tori(self) -> None:
        t = self.tower
        q = self.q
        one = t.one
        self._four = t.from_prime(4)
        self._inv2 = t.inv(t.from_prime(2))
        self.h0: Mat = (t.neg(one), None, None, one)
        self.H: list[Mat] = [(a, None, None, one) for a in self.q_units()]
        # first nonsquare alpha (ascending subfield dlog) whose k_alpha
        # generates the full torus: 1 + sqrt(alpha) must have ambient dlog
        # prime to q + 1
        alpha = None
        for e in range(1, q - 1, 2):
            cand = self.sub_exp(e)
            root = cand // 2 if cand % 2 == 0 else (cand + t.order) // 2
            d = t.add(one, root)
            if d is not None and math.gcd(d, q + 1) == 1:
                alpha = cand
                self.sqrt_alpha = root
                break
        if alpha is None:
            raise ConsistencyError("no torus generator found")
        self.alpha = alpha
        self.k_alpha: Mat = (one, alpha, one, one)
        self.k0: Mat = (None, alpha, one, None)
        self.K: list[Mat] = [
            (one, t.mul(alpha, z), z, one) for z in self.q_elements()
        ] + [self.k0]

    def h_mat(self, a: FqElem) -> Mat:
        return (a, None, None, self.tower.one)

    # -- character table --------------------------------------------------

    def reps(self) -> list[Label]:
        q = self.q
        out: list[Label] = [("triv",), ("eta",), ("st",), ("steta",)]
        out += [("ps", r) for r in range(1, (q - 3) // 2 + 1)]
        out += [("cusp", r) for r in range(1, (q - 1) // 2 + 1)]
        return out

    def check_rep(self, rep: Label) -> None:
        q = self.q
        kind = rep[0]
        if kind in ("triv", "eta", "st", "steta") and len(rep) == 1:
            return
        if kind == "ps" and len(rep) == 2 and 1 <= rep[1] <= (q - 3) // 2:
            return
        if kind == "cusp" and len(rep) == 2 and 1 <= rep[1] <= (q - 1) // 2:
            return
        raise ValueError(f"{rep} does not label an irreducible of PGL2(F_{q})")

    def dim(self, rep: Label) -> int:
        self.check_rep(rep)
        q = self.q
        return {"triv": 1, "eta": 1, "st": q, "steta": q, "ps": q + 1, "cusp": q - 1}[
            rep[0]
        ]

    def char_counter(self, rep: Label, cls: Label) -> dict[int, int]:
        """chi_rep(cls) as an exponent counter modulo q^2 - 1."""
        self.check_rep(rep)
        q = self.q
        kind, ckind = rep[0], cls[0]
        if kind == "triv":
            return {0: 1}
        if kind == "eta":
            sign = 1 if ckind in ("id", "unip") else (-1) ** cls[1]
            return {0: sign}
        if kind == "st":
            return {
                "id": {0: q},
                "unip": {},
                "split": {0: 1},
                "ell": {0: -1},
            }[ckind]
        if kind == "steta":
            base = self.char_counter(("st",), cls)
            if ckind in ("split", "ell") and cls[1] % 2:
                return {e: -c for e, c in base.items()}
            return base
        r = rep[1]
        kk = q * q - 1
        if kind == "ps":
            if ckind == "id":
                return {0: q + 1}
            if ckind == "unip":
                return {0: 1}
            if ckind == "ell":
                return {}
            e = cls[1]
            out: dict[int, int] = {}
            for ex in (r * e, -r * e):
                ex = ex % (q - 1) * (q + 1)
                out[ex] = out.get(ex, 0) + 1
            return out
        if kind == "cusp":
            if ckind == "id":
                return {0: q - 1}
            if ckind == "unip":
                return {0: -1}
            if ckind == "split":
                return {}
            ee = q + 1 - cls[1]  # an eigenvalue dlog with this angle
            out = {}
            for ex in (r * ee, -r * ee):
                ex = ex * (q - 1) % kk
                out[ex] = out.get(ex, 0) - 1
            return out
        raise ValueError(f"unknown label {rep}")

    def char_value(self, rep: Label, cls: Label) -> CycNum:
        key = (rep, cls)
        val = self._value_cache.get(key)
        if val is None:
            val = CycNum.from_counter(self.q**2 - 1, self.char_counter(rep, cls))
            self._value_cache[key] = val
        return val

    # -- torus-fixed vectors ----------------------------------------------

    def invariant_dims(self, rep: Label) -> tuple[int, int]:
        """(dim of H-fixed vectors, dim of K-fixed vectors) in rep."""
        out = self._invdim_cache.get(rep)
        if out is not None:
            return out
        kk = self.q**2 - 1
        dims = []
        for torus in (self.H, self.K):
            total: dict[int, int] = {}
            for g in torus:
                for e, c in self.char_counter(rep, self.classify(g)).items():
                    total[e] = total.get(e, 0) + c
            val = CycNum.from_counter(kk, total).as_rational()
            if val is None:
                raise ConsistencyError("torus character sum is irrational")
            d = val / len(torus)
            if d.denominator != 1 or d < 0:
                raise ConsistencyError("torus character sum is not a dimension")
            dims.append(int(d))
        out = (dims[0], dims[1])
        self._invdim_cache[rep] = out
        return out

    def orthogonality_check(self) -> None:
        """Row and column orthogonality of the full character table.

        Raises ConsistencyError on any failure; a passing run certifies the
        table (and hence every correlation computed from it) as the
        character table of a group of this order.
        """
        kk = self.q**2 - 1
        reps = self.reps()
        counters = {
            (rep, cls): self.char_counter(rep, cls)
            for rep in reps
            for cls in self.classes
        }
        for i, r1 in enumerate(reps):
            for r2 in reps[i:]:
                total: dict[int, int] = {}
                for cls in self.classes:
                    sz = self.class_size[cls]
                    c2 = counters[(r2, cls)]
                    for e1, a in counters[(r1, cls)].items():
                        for e2, b in c2.items():
                            ex = (e1 - e2) % kk
                            total[ex] = total.get(ex, 0) + sz * a * b
                val = CycNum.from_counter(kk, total)
                want = self.order if r1 == r2 else 0
                if val != want:
                    raise ConsistencyError(f"row orthogonality fails at {r1}, {r2}")
        for i, c1 in enumerate(self.classes):
            for c2 in self.classes[i:]:
                total = {}
                for rep in reps:
                    cc2 = counters[(rep, c2)]
                    for e1, a in counters[(rep, c1)].items():
                        for e2, b in cc2.items():
                            ex = (e1 - e2) % kk
                            total[ex] = total.get(ex, 0) + a * b
                val = CycNum.from_counter(kk, total)
                want = 0 if c1 != c2 else self.order // self.class_size[c1]
                if val != want:
                    raise ConsistencyError(f"column orthogonality fails at {c1}, {c2}")

    def describe(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "q": self.q,
            "field": self.tower.describe(),
            "alpha_dlog": self.sub_dlog(self.alpha),
            "num_classes": len(self.classes),
        }
