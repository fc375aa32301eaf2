"""Correlation constants of PGL2(F_q) representations for the torus pair.

For the split torus H and non-split torus K, the correlation constant of
an irreducible representation pi is

    c(pi) = (1/(|H||K|)) * sum over pairs (h, k) of chi_pi(h k),

computed here from one classification pass over all |H|*|K| = q^2 - 1
products. For multiplicity-one pi (everything except eta and the
Steinberg) this equals |<v_H, v_K>|^2 for unit torus-fixed vectors, so it
is a totally nonnegative cyclotomic number, and it must vanish whenever
the sign epsilon(pi) is -1. The converse holds over prime fields but not
in general: for f > 1 there are representations with epsilon = +1 whose
constant still vanishes, which is what the mod-p digit analysis explains.
The sign itself is computed three independent ways (closed form, an
average over h k_0, an average over h_0 k) which must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycNum
from .fields import ConsistencyError, FqElem
from .pgl2 import PGL2, Label, Mat, mat_det, mat_mul


def pair_class_counts(g: PGL2) -> dict[Label, int]:
    """How many products h*k land in each conjugacy class."""
    t = g.tower
    q = g.q
    counts = {c: 0 for c in g.classes}
    # k = identity: the product is h itself
    counts[("id",)] += 1
    for e in range(1, q - 1):
        counts[("split", min(e, q - 1 - e))] += 1
    # all other k have lower-left entry nonzero, so h*k is never scalar
    # and its class is determined by trace and determinant
    one = t.one
    for k in g.K:
        k00, k01, k10, k11 = k
        if k10 is None:
            continue  # identity, handled above
        detk = mat_det(t, k)
        for a in g.q_units():
            tr = t.add(t.mul(a, k00), k11)
            counts[g.classify_trace_det(tr, t.mul(a, detk))] += 1
    if sum(counts.values()) != q * q - 1:
        raise ConsistencyError("pair classification lost mass")
    return counts


def corr_constant(g: PGL2, rep: Label, counts: dict[Label, int] | None = None) -> CycNum:
    """The correlation constant c(rep), exact."""
    if counts is None:
        counts = pair_class_counts(g)
    kk = g.q**2 - 1
    total: dict[int, int] = {}
    for cls, n in counts.items():
        if n:
            for e, c in g.char_counter(rep, cls).items():
                total[e] = total.get(e, 0) + n * c
    return CycNum.from_counter(kk, total) / kk


def epsilon_closed(g: PGL2, rep: Label) -> int | None:
    """The sign epsilon(rep) in closed form; None when the pair is not
    multiplicity-one for this representation."""
    kind = rep[0]
    if kind == "triv":
        return 1
    if kind == "steta":
        return -1 if (g.q - 1) // 2 % 2 else 1
    if kind == "ps":
        return -1 if rep[1] % 2 else 1
    if kind == "cusp":
        return -1 if (rep[1] - 1) % 2 else 1
    return None


def _sign_average(g: PGL2, rep: Label, dets: list[FqElem]) -> int:
    """Average of chi_rep over trace-zero elements with given determinants."""
    kk = g.q**2 - 1
    total: dict[int, int] = {}
    for d in dets:
        for e, c in g.char_counter(rep, g.classify_trace_det(None, d)).items():
            total[e] = total.get(e, 0) + c
    val = (CycNum.from_counter(kk, total) / len(dets)).as_rational()
    if val is None or val not in (1, -1):
        raise ConsistencyError(f"sign average for {rep} is not a sign: {val}")
    return int(val)


def epsilon_h_average(g: PGL2, rep: Label) -> int:
    """epsilon via (1/|H|) sum over h of chi(h k_0)."""
    t = g.tower
    # h k_0 = [[0, a*alpha], [1, 0]]: trace 0, det -a*alpha
    dets = [t.neg(t.mul(a, g.alpha)) for a in g.q_units()]
    return _sign_average(g, rep, dets)


def epsilon_k_average(g: PGL2, rep: Label) -> int:
    """epsilon via (1/|K|) sum over k of chi(h_0 k)."""
    t = g.tower
    dets = [t.neg(mat_det(t, k)) for k in g.K]
    return _sign_average(g, rep, dets)


def epsilon(g: PGL2, rep: Label) -> int | None:
    """The sign of the pair at rep, cross-checked three ways."""
    closed = epsilon_closed(g, rep)
    if closed is None:
        return None
    ha = epsilon_h_average(g, rep)
    ka = epsilon_k_average(g, rep)
    if not closed == ha == ka:
        raise ConsistencyError(
            f"epsilon disagreement for {rep}: closed {closed}, "
            f"h-average {ha}, k-average {ka}"
        )
    return closed


def regular_identity(g: PGL2, counts: dict[Label, int] | None = None) -> None:
    """sum over pi of dim(pi) * c(pi) must equal q exactly.

    Equivalent to H and K meeting only in the identity; raises on failure.
    """
    if counts is None:
        counts = pair_class_counts(g)
    total = CycNum.rational(0)
    for rep in g.reps():
        total = total + g.dim(rep) * corr_constant(g, rep, counts)
    if total != g.q:
        raise ConsistencyError(f"regular identity fails: {total} != {g.q}")


def enumerate_group(g: PGL2) -> list[Mat]:
    """All q^3 - q elements of PGL2(F_q), one matrix per class mod scalars."""
    t = g.tower
    one = t.one
    out: list[Mat] = []
    for b in g.q_elements():
        for c in g.q_elements():
            for d in g.q_elements():
                if t.sub(d, t.mul(b, c)) is not None:
                    out.append((one, b, c, d))
    for c in g.q_units():
        for d in g.q_elements():
            out.append((None, one, c, d))
    if len(out) != g.order:
        raise ConsistencyError("group enumeration has the wrong size")
    return out


def tensor_identity(g: PGL2, rep: Label) -> None:
    """sum over group elements of |sum over h of chi(hg)|^2 must equal
    |H|^2 |G| m / dim, with m the H-fixed multiplicity. Full enumeration;
    keep q small."""
    t = g.tower
    kk = g.q**2 - 1
    total = CycNum.rational(0)
    for mat in enumerate_group(g):
        inner: dict[int, int] = {}
        for a in g.q_units():
            prod = mat_mul(t, g.h_mat(a), mat)
            for e, c in g.char_counter(rep, g.classify(prod)).items():
                inner[e] = inner.get(e, 0) + c
        total = total + CycNum.from_counter(kk, inner).abs2()
    m = g.invariant_dims(rep)[0]
    want = Fraction((g.q - 1) ** 2 * g.order * m, g.dim(rep))
    if total != want:
        raise ConsistencyError(f"tensor identity fails for {rep}")


def unipotent_pair_report(g: PGL2, counts: dict[Label, int] | None = None) -> dict:
    """Measured count of unipotent products h*k against two predictions.

    The count depends on q mod 4 (it is q - 2 + eta(-1)); a prediction
    keyed to p mod 4 instead agrees with it exactly when f is odd.
    """
    if counts is None:
        counts = pair_class_counts(g)
    measured = counts[("unip",)]
    eta_m1 = 1 if (g.q - 1) // 2 % 2 == 0 else -1
    by_q = g.q - 2 + eta_m1
    by_p = g.q - 1 if g.p % 4 == 1 else g.q - 3
    return {
        "measured": measured,
        "predicted_from_q_mod_4": by_q,
        "predicted_from_p_mod_4": by_p,
        "agrees_with_q_rule": measured == by_q,
        "agrees_with_p_rule": measured == by_p,
    }


@dataclass
class RepRecord:
    rep: Label
    dim: int
    value: CycNum
    epsilon: int | None
    vanishes: bool
    sign_criterion_ok: bool | None

    def to_json_dict(self) -> dict:
        return {
            "rep": list(self.rep),
            "dim": self.dim,
            "value": self.value.to_json_dict(),
            "epsilon": self.epsilon,
            "vanishes": self.vanishes,
            "sign_criterion_ok": self.sign_criterion_ok,
        }


def correlate_all(g: PGL2) -> list[RepRecord]:
    """Correlation constant, sign and sign-criterion verdict for each rep.

    For multiplicity-one reps the criterion is one-directional: epsilon =
    -1 forces the constant to vanish. A False anywhere is a genuine
    failure; epsilon = +1 with a vanishing constant is legal (and occurs
    only over non-prime fields).
    """
    counts = pair_class_counts(g)
    out = []
    for rep in g.reps():
        val = corr_constant(g, rep, counts)
        eps = epsilon(g, rep)
        vanishes = val.is_zero()
        ok = None if eps is None else (eps == 1 or vanishes)
        out.append(RepRecord(rep, g.dim(rep), val, eps, vanishes, ok))
    return out
