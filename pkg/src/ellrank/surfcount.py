"""Point counts of elliptic surfaces over finite fields and what they imply
for the Neron-Severi rank.

The surface count is a sum over fibres.  For t in F_q the Weierstrass cubic
y^2 = x^3 + A(t) x + B(t) contributes q + 1 + sum_x chi(f_t(x)); the same
expression is exact for nodal and cuspidal cubics, so irreducible singular
fibres need no correction.  The fibre at infinity is counted from its type.

Frobenius traces on H^2 then follow from the Lefschetz formula
#S(F_q) = 1 + tr(F | H^2) + q^2 (H^1 = H^3 = 0).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import FqField, Poly, as_ratfunc, rat
from .algebra import modp
from .ellcurve import WeierstrassCurve, chi_of
from .kodaira import FibreConfiguration, classify, fibre_configuration, geometric_configuration_mod_p

DEFAULT_BUDGET = 26_000_000
EXTENDED_BUDGET = 3 * 10**10


class BudgetExceeded(RuntimeError):
    pass


class NotGoodPrime(ValueError):
    pass


# ------------------------------------------------------------------ models
@dataclass
class SurfaceModel:
    curve: WeierstrassCurve
    config: FibreConfiguration | None
    chi: int

    @property
    def b2(self) -> int:
        return 12 * self.chi - 2

    @classmethod
    def from_curve(cls, E: WeierstrassCurve, with_config: bool = True) -> "SurfaceModel":
        cfg = fibre_configuration(E) if with_config else None
        return cls(E, cfg, chi_of(E))

    def polys(self) -> tuple[Poly, Poly]:
        var = self.curve.var or "t"
        return as_ratfunc(self.curve.a4, var).num, as_ratfunc(self.curve.a6, var).num

    def is_even(self) -> bool:
        A, B = self.polys()
        return all(not c for c in A.coeffs[1::2]) and all(not c for c in B.coeffs[1::2])


def _int_mod(c, p: int) -> int:
    c = rat(c)
    if c.denominator % p == 0:
        raise NotGoodPrime(f"{p} divides a denominator of the model")
    return int(c.numerator) * pow(int(c.denominator), -1, p) % p


def good_prime(model: SurfaceModel, p: int, diagnostics: list | None = None) -> bool:
    """Same geometric singular-fibre configuration mod p as in characteristic 0."""
    if p < 5 or not all(p % d for d in range(2, math.isqrt(p) + 1)):
        if diagnostics is not None:
            diagnostics.append(f"{p} is not a prime >= 5")
        return False
    if model.config is None:
        model.config = fibre_configuration(model.curve)
    reduced = geometric_configuration_mod_p(model.curve, p, model.chi)
    if reduced is None:
        if diagnostics is not None:
            diagnostics.append(f"model does not reduce to a minimal model mod {p}")
        return False
    same = reduced == model.config.geometric()
    if not same and diagnostics is not None:
        diagnostics.append(f"configuration mod {p}: {dict(reduced)}")
    return same


def smallest_good_prime(model: SurfaceModel, limit: int = 1000) -> int | None:
    for p in range(5, limit):
        if good_prime(model, p):
            return p
    return None


# ---------------------------------------------------------------- counting
@dataclass
class CountReport:
    p: int
    n: int
    q: int
    total: int
    breakdown: dict = field(default_factory=dict)

    def as_kv(self) -> str:
        lines = [f"p = {self.p}", f"n = {self.n}", f"q = {self.q}", f"total = {self.total}"]
        lines += [f"{k} = {v}" for k, v in self.breakdown.items()]
        return "\n".join(lines)


def _eval_codes(F: FqField, coeffs: list, T: np.ndarray) -> np.ndarray:
    """Horner evaluation of an F_p-coefficient polynomial at code array T."""
    acc = np.zeros_like(T)
    for c in reversed(coeffs):
        acc = F.vec_add(F.vec_mul(acc, T), F.from_int(c))
    return acc


def _orbit_representatives(F: FqField, even: bool) -> tuple[np.ndarray, np.ndarray]:
    """Representatives of F_q under Frobenius (and t -> -t when even), with orbit sizes."""
    T = np.arange(F.q, dtype=np.int64)
    images = [T]
    cur = T
    for _ in range(F.k - 1):
        cur = F.vec_frobenius(cur)
        images.append(cur)
    if even:
        images += [F.vec_mul(im, F.from_int(-1)) for im in images]
    rep = np.min(np.stack(images), axis=0)
    reps, sizes = np.unique(rep, return_counts=True)
    return reps, sizes


def _linear_map(F: FqField, A: np.ndarray) -> list:
    """M[j][i]: digit j of A * p^i, for each A in the array (x -> A x on F_p^k)."""
    cols = [F.vec_digits(F.vec_mul(A, F.p**i)) for i in range(F.k)]
    return [[cols[i][j] for i in range(F.k)] for j in range(F.k)]


def _char_sums(F: FqField, Avals: np.ndarray, Bvals: np.ndarray, threads: int = 1) -> np.ndarray:
    """sum_x chi(x^3 + A x + B) for each (A, B) pair."""
    p, k, q = F.p, F.k, F.q
    X = np.arange(q, dtype=np.int64)
    xd = [d.astype(np.int64) for d in F.vec_digits(X)]
    cube = F.vec_mul(F.vec_mul(X, X), X)
    cd = [d.astype(np.int64) for d in F.vec_digits(cube)]
    M = _linear_map(F, Avals)
    Bd = F.vec_digits(Bvals)
    sq = F.sq
    weights = [p**j for j in range(k)]
    chunk = max(1, (1 << 21) // q)
    out = np.zeros(len(Avals), dtype=np.int64)

    def work(lo: int, hi: int) -> None:
        code = np.zeros((hi - lo, q), dtype=np.int64)
        for j in range(k):
            d = cd[j][None, :] + Bd[j][lo:hi, None]
            for i in range(k):
                d = d + M[j][i][lo:hi, None] * xd[i][None, :]
            code += (d % p) * weights[j]
        out[lo:hi] = sq[code].sum(axis=1, dtype=np.int64)

    ranges = [(lo, min(lo + chunk, len(Avals))) for lo in range(0, len(Avals), chunk)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda r: work(*r), ranges))
    else:
        for r in ranges:
            work(*r)
    return out


def _inf_fibre_count(model: SurfaceModel, F: FqField, Ap: list, Bp: list) -> tuple[str, int]:
    chi = model.chi
    deg = lambda f: len(f) - 1 if f else -math.inf  # noqa: E731
    Dp = modp.scale(modp.add(modp.scale(modp.mul(modp.mul(Ap, Ap, F.p), Ap, F.p), 4, F.p), modp.scale(modp.mul(Bp, Bp, F.p), 27, F.p), F.p), -16 % F.p, F.p)
    ft = classify(4 * chi - deg(Ap), 6 * chi - deg(Bp), 12 * chi - deg(Dp))
    q = F.q
    if ft.name == "I0":
        return "I0", -1
    if ft.multiplicative:
        lead = Bp[6 * chi] if len(Bp) > 6 * chi else 0
        if F.char(F.from_int(6 * lead)) != 1:
            raise NotImplementedError(f"non-split {ft.name} at infinity is not supported")
        return ft.name, ft.n * q
    fixed = {"II": q + 1, "III": 2 * q + 1, "III*": 8 * q + 1, "II*": 9 * q + 1}
    if ft.name not in fixed:
        raise NotImplementedError(f"fibre type {ft.name} at infinity is not supported")
    return ft.name, fixed[ft.name]


def estimate_work(p: int, n: int) -> int:
    return (p**n) ** 2


def count_surface(model: SurfaceModel, p: int, n: int = 1, threads: int | None = None, budget: int = DEFAULT_BUDGET, check_good: bool = True) -> CountReport:
    """#S(F_q), q = p^n, for the Kodaira-Neron model of a short Weierstrass surface."""
    if check_good and not good_prime(model, p):
        raise NotGoodPrime(f"{p} is not a good prime for this surface")
    work = estimate_work(p, n)
    if work > budget:
        raise BudgetExceeded(f"q^2 = {work} exceeds the budget {budget}; needs the extended flag")
    if threads is None:
        threads = int(os.environ.get("ELLRANK_THREADS", "1"))
    A, B = model.polys()
    Ap = modp.trim([_int_mod(c, p) for c in A.coeffs])
    Bp = modp.trim([_int_mod(c, p) for c in B.coeffs])
    F = FqField(p, n, tables=True)
    q = F.q
    inf_name, inf_count = _inf_fibre_count(model, F, Ap, Bp)
    if inf_count < 0:
        inf_count = None

    reps, sizes = _orbit_representatives(F, model.is_even())
    Avals = _eval_codes(F, Ap, reps)
    Bvals = _eval_codes(F, Bp, reps)
    sums = _char_sums(F, Avals, Bvals, threads)
    fibre = q + 1 + sums

    # singular affine fibres: classify and check the cubic count formula
    four_a3 = F.vec_mul(F.vec_mul(F.vec_mul(Avals, Avals), Avals), F.from_int(4))
    disc = F.vec_add(four_a3, F.vec_mul(F.vec_mul(Bvals, Bvals), F.from_int(27)))
    sing = np.nonzero(disc == 0)[0]
    breakdown = {"smooth": 0, "nodal_split": 0, "nodal_nonsplit": 0, "cusp": 0}
    Dpoly = modp.add(modp.scale(modp.mul(modp.mul(Ap, Ap, p), Ap, p), 4, p), modp.scale(modp.mul(Bp, Bp, p), 27, p), p)
    dD = modp.derivative(Dpoly, p)
    dD_vals = _eval_codes(F, dD, reps[sing]) if len(sing) else np.zeros(0, dtype=np.int64)
    for idx, dv in zip(sing, dD_vals):
        a, b = int(Avals[idx]), int(Bvals[idx])
        w = int(sizes[idx])
        if a == 0:
            if dv == 0 and not _second_derivative_nonzero(F, Dpoly, int(reps[idx])):
                raise NotImplementedError("reducible additive fibre at a finite place")
            breakdown["cusp"] += w * int(fibre[idx])
            continue
        if dv == 0:
            raise NotImplementedError("reducible multiplicative fibre at a finite place")
        # node x0 = -3B/(2A), third root -2 x0; tangents rational iff chi(3 x0) = 1
        x0 = F.mul(F.mul(F.neg(F.from_int(3)), b), F.inv(F.mul(F.from_int(2), a)))
        c = F.char(F.mul(F.from_int(3), x0))
        if int(fibre[idx]) != q + 1 - c:
            raise ArithmeticError("nodal fibre count disagrees with the character sum")
        breakdown["nodal_split" if c == 1 else "nodal_nonsplit"] += w * int(fibre[idx])
    total_affine = int(np.dot(sizes, fibre))
    breakdown["smooth"] = total_affine - sum(breakdown.values())
    total = total_affine
    if inf_count is not None:
        breakdown[f"infinity_{inf_name}"] = inf_count
        total += inf_count
    else:
        # smooth fibre at infinity: count it in the 1/t chart
        breakdown["infinity_smooth"] = _smooth_inf_count(model, F, Ap, Bp)
        total += breakdown["infinity_smooth"]
    return CountReport(p, n, q, total, breakdown)


def _second_derivative_nonzero(F: FqField, D: list, t: int) -> bool:
    d2 = modp.derivative(modp.derivative(D, F.p), F.p)
    return int(_eval_codes(F, d2, np.array([t], dtype=np.int64))[0]) != 0


def _smooth_inf_count(model: SurfaceModel, F: FqField, Ap: list, Bp: list) -> int:
    chi = model.chi
    a = Ap[4 * chi] if len(Ap) > 4 * chi else 0
    b = Bp[6 * chi] if len(Bp) > 6 * chi else 0
    s = _char_sums(F, np.array([F.from_int(a)]), np.array([F.from_int(b)]))
    return F.q + 1 + int(s[0])


def inverted_model(model: SurfaceModel) -> SurfaceModel:
    """The same surface in the chart s = 1/t."""
    A, B = model.polys()
    chi = model.chi
    var = A.var
    A2 = Poly(list(A.coeffs) + [0] * (4 * chi + 1 - len(A.coeffs)), var)
    B2 = Poly(list(B.coeffs) + [0] * (6 * chi + 1 - len(B.coeffs)), var)
    E = WeierstrassCurve.short_form(as_ratfunc(Poly(list(reversed(A2.coeffs)), var)), as_ratfunc(Poly(list(reversed(B2.coeffs)), var)))
    return SurfaceModel(E, None, chi)


def brute_force_affine(Acoeffs: list, Bcoeffs: list, p: int) -> int:
    """Points (t, x, y) with t, x, y in F_p, plus one point at infinity per affine fibre."""
    total = 0
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    for t in range(p):
        a = sum(c * pow(t, i, p) for i, c in enumerate(Acoeffs)) % p
        b = sum(c * pow(t, i, p) for i, c in enumerate(Bcoeffs)) % p
        total += 1
        for x in range(p):
            total += squares[(x * x * x + a * x + b) % p]
    return total


# ------------------------------------------------------------ eigenvalues
def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass
class EigenLedger:
    p: int
    counts: dict
    known_p: int = 17
    twist: int = 0  # the (-3/p) in the extra eigenvalue (-3/p) p
    unknown_count: int = 4

    @property
    def traces(self) -> dict:
        return {n: N - 1 - self.p ** (2 * n) for n, N in self.counts.items()}

    def power_sum(self, n: int) -> int:
        return self.traces[n] - self.known_p * self.p**n - (self.twist * self.p) ** n

    @property
    def s1(self) -> int:
        return self.power_sum(1)

    @property
    def s2(self) -> int:
        return self.power_sum(2)

    def known_eigenvalues(self) -> list:
        return [self.p] * self.known_p + [self.twist * self.p]

    def as_kv(self) -> str:
        lines = [f"p = {self.p}"]
        for n in sorted(self.counts):
            lines.append(f"count[{n}] = {self.counts[n]}")
            lines.append(f"trace[{n}] = {self.traces[n]}")
        lines += [f"known = {self.known_p} x p, 1 x ({self.twist})p", f"s1 = {self.s1}", f"s2 = {self.s2}"]
        return "\n".join(lines)


def eigen_ledger(p: int, counts: dict, known_p: int = 17) -> EigenLedger:
    return EigenLedger(p, dict(counts), known_p, legendre(-3, p))


ZETA_ORDERS = (1, 2, 3, 4, 5, 6, 8, 10, 12)


def _cyclotomic(m: int) -> list:
    """Integer coefficients (ascending) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_div_exact(num, _cyclotomic(d))
    return num


def _poly_div_exact(f: list, g: list) -> list:
    f = [Fraction(c) for c in f]
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = f[k + len(g) - 1] / g[-1]
        q[k] = c
        for j, gj in enumerate(g):
            f[k + j] -= c * gj
    if any(f[: len(g) - 1]):
        raise ArithmeticError("inexact division")
    return q


def scaled_cyclotomic(m: int, p: int) -> list:
    """Minimal polynomial of p*zeta_m: p^phi Phi_m(X/p), ascending."""
    c = _cyclotomic(m)
    d = len(c) - 1
    return [Fraction(int(ci) * p ** (d - i)) for i, ci in enumerate(c)]


def _poly_mul(f: list, g: list) -> list:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _eval(f: list, x) -> Fraction:
    return sum((c * Fraction(x) ** i for i, c in enumerate(f)), Fraction(0))


def roots_on_circle(f: list, p: int) -> bool:
    """All complex roots of the (monic, rational, degree <= 3) f have |root| = p."""
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d <= 0:
        return True
    if d == 1:
        return abs(f[0] / f[1]) == p
    if d == 3:
        for r in (p, -p):
            if _eval(f, r) == 0:
                return roots_on_circle(_poly_div_exact(f, [Fraction(-r), Fraction(1)]), p)
        return False
    if d == 2:
        a, b, c = f[2], f[1], f[0]
        disc = b * b - 4 * a * c
        if disc < 0:
            return c / a == p * p
        return all(_eval(f, r) == 0 for r in _real_roots_pm(f, p)) and _is_pm_p_square(f, p)
    raise ValueError("degree > 3 not supported")


def _real_roots_pm(f, p):
    return [r for r in (p, -p) if _eval(f, r) == 0]


def _is_pm_p_square(f, p) -> bool:
    # both real roots must be +-p
    roots = _real_roots_pm(f, p)
    if not roots:
        return False
    g = _poly_div_exact(f, [Fraction(-roots[0]), Fraction(1)])
    return abs(g[0] / g[1]) == p


def count_root_of_unity_eigenvalues(f: list, p: int) -> int:
    """Roots of f (degree <= 3, all on |X| = p) of the form p * root of unity."""
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d <= 0:
        return 0
    for r in (p, -p):
        if _eval(f, r) == 0:
            return 1 + count_root_of_unity_eigenvalues(_poly_div_exact(f, [Fraction(-r), Fraction(1)]), p)
    if d == 2:
        # X^2 + bX + p^2 has roots p*zeta iff b/p is in {0, +-1} (the +-2 cases have roots +-p)
        b = f[1] / f[2]
        return 2 if b / p in (0, 1, -1) else 0
    return 0


@dataclass
class HypothesisOutcome:
    zeta_order: int
    det_sign: int
    verdict: str
    reason: str = ""
    cofactor: list | None = None
    charpoly: list | None = None
    extra_root_of_unity: int = 0

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent"

    def cofactor_str(self) -> str:
        return format_int_poly(self.cofactor) if self.cofactor is not None else "-"


def format_int_poly(f: list, var: str = "X") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        c = int(c) if Fraction(c).denominator == 1 else c
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if i == 0:
            body = f"{mag}"
        else:
            coef = "" if mag == 1 else f"{mag}"
            body = coef + (var if i == 1 else f"{var}^{i}")
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def test_hypotheses(ledger: EigenLedger) -> list[HypothesisOutcome]:
    """For each zeta order and det sign: assume p*zeta is among the 4 unknown
    eigenvalues and solve for the rest of their characteristic polynomial
    X^4 - e1 X^3 + e2 X^2 - e3 X + e4 (e3 free)."""
    p = ledger.p
    e1 = Fraction(ledger.s1)
    e2 = (Fraction(ledger.s1) ** 2 - ledger.s2) / 2
    out = []
    for m in ZETA_ORDERS:
        mp = scaled_cyclotomic(m, p)
        phi = len(mp) - 1
        for sign in (1, -1):
            e4 = Fraction(sign * ledger.twist * p**4)
            out.append(_one_hypothesis(m, sign, mp, phi, e1, e2, e4, p))
    return out


def _one_hypothesis(m, sign, mp, phi, e1, e2, e4, p) -> HypothesisOutcome:
    d = 4 - phi
    # target coefficients (ascending): [e4, -e3, e2, -e1, 1]; unknowns: cofactor c_0..c_{d-1}, and e3
    # m(X) * C(X) with C monic of degree d; equations on X^0, X^2, X^3
    known = {0: e4, 2: e2, 3: -e1, 4: Fraction(1)}
    unknowns = d
    rows, rhs = [], []
    for k in (0, 2, 3):
        row = [Fraction(0)] * unknowns
        const = Fraction(0)
        for i in range(d + 1):
            j = k - i
            if 0 <= j <= phi:
                if i == d:
                    const += mp[j]
                else:
                    row[i] += mp[j]
        rows.append(row)
        rhs.append(known[k] - const)
    sol = _solve_exact(rows, rhs)
    if sol is None:
        return HypothesisOutcome(m, sign, "contradiction", "linear constraints inconsistent")
    C = list(sol) + [Fraction(1)]
    full = _poly_mul(mp, C)
    if any(Fraction(c).denominator != 1 for c in full):
        return HypothesisOutcome(m, sign, "contradiction", "non-integral characteristic polynomial", C, full)
    if not roots_on_circle(C, p):
        return HypothesisOutcome(m, sign, "contradiction", "cofactor violates |root| = p", C, full)
    extra = phi + count_root_of_unity_eigenvalues(C, p)
    return HypothesisOutcome(m, sign, "consistent", "", C, full, extra)


def _solve_exact(rows, rhs):
    """Solve rows * x = rhs (possibly overdetermined); None when inconsistent."""
    n = len(rows[0]) if rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][n] != 0:
            return None
    if r < n:
        raise ValueError("underdetermined hypothesis system")
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = m[i][n]
    return x


@dataclass
class NSBound:
    p: int
    bound: int
    sharp: int
    outcomes: list
    b2: int = 22

    @property
    def conclusive(self) -> bool:
        return all(not o.consistent for o in self.outcomes)


def ns_rank_bound(ledger: EigenLedger, outcomes: list | None = None, b2: int = 22) -> NSBound:
    """Upper bound for rank NS from eigenvalues of the form p*zeta.

    ``bound`` adds the extra p*zeta eigenvalues of every surviving hypothesis
    (capped at b2); ``sharp`` only takes the worst single survivor, which is
    also a valid bound since exactly one characteristic polynomial is true.
    """
    outcomes = outcomes if outcomes is not None else test_hypotheses(ledger)
    base = ledger.known_p + 1
    alive = [o.extra_root_of_unity for o in outcomes if o.consistent]
    return NSBound(ledger.p, min(b2, base + sum(alive)), min(b2, base + max(alive, default=0)), outcomes, b2)


def _power_sum(poly: list, n: int) -> Fraction:
    """Newton: n-th power sum of the roots of a monic ascending polynomial."""
    d = len(poly) - 1
    e = [Fraction(1)] + [Fraction((-1) ** k) * poly[d - k] for k in range(1, d + 1)]
    p = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = Fraction((-1) ** (k - 1) * k) * e[k] if k <= d else Fraction(0)
        for i in range(1, k):
            if k - i <= d:
                acc += Fraction((-1) ** (k - i - 1)) * e[k - i] * p[i]
        p[k] = acc
    return p[n]


def confirm_with_cube(ledger: EigenLedger, count3: int, outcomes: list | None = None) -> list:
    """Consistent hypotheses whose characteristic polynomial also predicts #S(F_{p^3})."""
    counts = dict(ledger.counts)
    counts[3] = count3
    full = EigenLedger(ledger.p, counts, ledger.known_p, ledger.twist)
    s3 = full.power_sum(3)
    outcomes = outcomes if outcomes is not None else test_hypotheses(ledger)
    return [o for o in outcomes if o.consistent and _power_sum(o.charpoly, 3) == s3]


@dataclass
class RankConclusion:
    ns_rank: int | None
    rank_qbar: int | None
    rank_q: int | None
    notes: list = field(default_factory=list)

    def as_kv(self) -> str:
        show = lambda v: "undetermined" if v is None else str(v)  # noqa: E731
        lines = [f"rank NS = {show(self.ns_rank)}", f"rank E(Qbar(t)) = {show(self.rank_qbar)}", f"rank E(Q(t)) = {show(self.rank_q)}"]
        return "\n".join(lines + [f"note = {n}" for n in self.notes])


def rank_conclusions(bound: NSBound, config: FibreConfiguration, qbar_lower: int, q_lower: int, anti_invariant_height=None) -> RankConclusion:
    """Combine the NS upper bound with lower bounds from explicit sections.

    qbar_lower: rank of sections known over Qbar(t); q_lower: rank over Q(t);
    anti_invariant_height: h(Q - sigma Q) for a Galois-moved section Q.
    """
    trivial = 2 + config.correction()
    notes = []
    if bound.sharp > trivial + qbar_lower:
        notes.append(f"bound {bound.sharp} exceeds {trivial} + {qbar_lower}: inconclusive at p = {bound.p}")
        return RankConclusion(None, None, None, notes)
    ns = trivial + qbar_lower
    rank_q = None
    if anti_invariant_height is not None and anti_invariant_height > 0 and q_lower == qbar_lower - 1:
        # all of E(Qbar(t)) (up to finite index) would be Galois-fixed if rank E(Q(t)) were full
        rank_q = q_lower
        notes.append("rank over Q(t) is one less: h(Q - sigma Q) > 0")
    return RankConclusion(ns, qbar_lower, rank_q, notes)


__all__ = [
    "BudgetExceeded",
    "CountReport",
    "EigenLedger",
    "HypothesisOutcome",
    "NSBound",
    "RankConclusion",
    "NotGoodPrime",
    "SurfaceModel",
    "brute_force_affine",
    "confirm_with_cube",
    "count_surface",
    "eigen_ledger",
    "format_int_poly",
    "good_prime",
    "inverted_model",
    "legendre",
    "rank_conclusions",
    "ns_rank_bound",
    "roots_on_circle",
    "scaled_cyclotomic",
    "smallest_good_prime",
    "test_hypotheses",
]
