"""Twisted Laurent polynomials on Z^I: monomials multiply by the rule
x^m * x^m' = q^{Lambda(m,m')/2} x^{m+m'}, with exact coefficients.

Also hosts the dominance order, degrees/pointedness, and the order of
vanishing at frozen variables.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Ring, ring_add, ring_mul, ring_neg


class IncompatibleTorus(ValueError):
    """Operands live on different index sets or different twists."""


class ZeroInput(ValueError):
    pass


class RankError(ValueError):
    pass


class NotFrozen(ValueError):
    pass


class LaurentViolation(ArithmeticError):
    """An exact division that the Laurent phenomenon promises has failed."""


class QuantumTorus:
    """Carrier for twisted Laurent arithmetic: an ordered vertex list, the
    integral skew form Lambda, and a coefficient ring."""

    def __init__(self, vertices: tuple[int, ...], lam: tuple[tuple[int, ...], ...], ring: Ring) -> None:
        n = len(vertices)
        if len(lam) != n or any(len(row) != n for row in lam):
            raise ValueError("Lambda must be square on the vertex set")
        for i in range(n):
            for j in range(n):
                if lam[i][j] != -lam[j][i]:
                    raise ValueError("Lambda must be skew-symmetric")
        self.vertices = tuple(vertices)
        self.lam = tuple(tuple(row) for row in lam)
        self.ring = ring
        self.pos = {v: i for i, v in enumerate(vertices)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def compatible_with(self, other: QuantumTorus) -> bool:
        return self.vertices == other.vertices and self.lam == other.lam and self.ring is other.ring

    def twist(self, m: tuple[int, ...], mp: tuple[int, ...]) -> int:
        """Lambda(m, m') — the v-exponent of the twist q^{Lambda/2}."""
        tot = 0
        for i, mi in enumerate(m):
            if mi:
                row = self.lam[i]
                tot += mi * sum(row[j] * mj for j, mj in enumerate(mp) if mj)
        return tot

    def zero(self) -> TwistedLaurent:
        return TwistedLaurent(self, {})

    def one(self) -> TwistedLaurent:
        return self.monomial((0,) * self.n)

    def monomial(self, m: tuple[int, ...], coeff=None) -> TwistedLaurent:
        c = self.ring.one() if coeff is None else coeff
        if self.ring.is_zero(c):
            return self.zero()
        return TwistedLaurent(self, {tuple(m): c})

    def variable(self, vertex: int) -> TwistedLaurent:
        m = [0] * self.n
        m[self.pos[vertex]] = 1
        return self.monomial(tuple(m))

    def scalar(self, c) -> TwistedLaurent:
        return self.monomial((0,) * self.n, c)

    def v_power(self, k: int) -> TwistedLaurent:
        return self.scalar(self.ring.v_power(k))


class TwistedLaurent:
    """Finite map from exponent vectors to ring elements, bound to a torus."""

    __slots__ = ("torus", "coeffs")

    def __init__(self, torus: QuantumTorus, coeffs: dict[tuple[int, ...], object]) -> None:
        self.torus = torus
        self.coeffs = {m: c for m, c in coeffs.items() if not torus.ring.is_zero(c)}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedLaurent):
            return NotImplemented
        return self.torus.compatible_with(other.torus) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset((m, _freeze(c)) for m, c in self.coeffs.items()))

    def _check(self, other: TwistedLaurent) -> None:
        if not self.torus.compatible_with(other.torus):
            raise IncompatibleTorus("mismatched index sets or twists")

    def __add__(self, other: TwistedLaurent) -> TwistedLaurent:
        self._check(other)
        ring = self.torus.ring
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            if m in out:
                s = ring_add(ring, out[m], c)
                if ring.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        res = TwistedLaurent.__new__(TwistedLaurent)
        res.torus, res.coeffs = self.torus, out
        return res

    def __neg__(self) -> TwistedLaurent:
        ring = self.torus.ring
        return TwistedLaurent(self.torus, {m: ring_neg(ring, c) for m, c in self.coeffs.items()})

    def __sub__(self, other: TwistedLaurent) -> TwistedLaurent:
        return self + (-other)

    def __mul__(self, other: TwistedLaurent) -> TwistedLaurent:
        self._check(other)
        torus, ring = self.torus, self.torus.ring
        out: dict[tuple[int, ...], object] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = ring_mul(ring, ring_mul(ring, c1, c2), ring.v_power(torus.twist(m1, m2)))
                if m in out:
                    s = ring_add(ring, out[m], c)
                    if ring.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                elif not ring.is_zero(c):
                    out[m] = c
        res = TwistedLaurent.__new__(TwistedLaurent)
        res.torus, res.coeffs = torus, out
        return res

    def scale(self, c) -> TwistedLaurent:
        ring = self.torus.ring
        return TwistedLaurent(self.torus, {m: ring_mul(ring, c, cm) for m, cm in self.coeffs.items()})

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.coeffs)

    def __pow__(self, n: int) -> TwistedLaurent:
        if n < 0:
            raise ValueError("negative powers only for monomials; use monomial_inverse")
        out = self.torus.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        ring = self.torus.ring
        bits = [f"({ring.fmt(c)})*x^{list(m)}" for m, c in sorted(self.coeffs.items())]
        return " + ".join(bits)


def _freeze(c) -> object:
    return c if not isinstance(c, dict) else frozenset(c.items())


def monomial_inverse(a: TwistedLaurent) -> TwistedLaurent:
    """Inverse of a single twisted monomial (monomials are units)."""
    if len(a.coeffs) != 1:
        raise ValueError("only monomials are invertible here")
    ((m, c),) = a.coeffs.items()
    torus, ring = a.torus, a.torus.ring
    minv = tuple(-x for x in m)
    # x^{-m} * x^m = q^{Lambda(-m,m)/2} = 1, so the coefficient inverts plainly
    cinv = ring.inv_unit(c)
    return torus.monomial(minv, ring_mul(ring, cinv, ring.v_power(-torus.twist(minv, m))))


def exact_divide_monomial(a: TwistedLaurent, m: tuple[int, ...]) -> TwistedLaurent:
    """x^{-m} * a; total, since monomials are units of the torus."""
    return monomial_inverse(a.torus.monomial(m)) * a


def divide_left_exact(a: TwistedLaurent, b: TwistedLaurent, fuel: int = 100_000) -> TwistedLaurent:
    """The unique z with a * z = b, or LaurentViolation if none exists.

    Works by greedy elimination of the lex-leading monomial.  Over a domain
    the support of z is confined to the coordinate-wise Newton box of b
    minus that of a, which also provides the failure test.
    """
    torus, ring = a.torus, a.torus.ring
    if a.is_zero():
        raise ZeroDivisionError("left division by zero")
    if b.is_zero():
        return torus.zero()
    n = torus.n
    box = None
    if ring.is_domain:
        lo = tuple(
            min(m[i] for m in b.coeffs) - min(m[i] for m in a.coeffs) for i in range(n)
        )
        hi = tuple(
            max(m[i] for m in b.coeffs) - max(m[i] for m in a.coeffs) for i in range(n)
        )
        if any(l > h for l, h in zip(lo, hi)):
            raise LaurentViolation("no Laurent quotient: empty exponent box")
        box = (lo, hi)
    ma = max(a.coeffs)
    ca = a.coeffs[ma]
    rem = b
    out: dict[tuple[int, ...], object] = {}
    while not rem.is_zero():
        if fuel <= 0:
            raise LaurentViolation("no Laurent quotient: division did not terminate")
        fuel -= 1
        mr = max(rem.coeffs)
        mz = tuple(x - y for x, y in zip(mr, ma))
        if box is not None and any(not lo <= x <= hi for x, lo, hi in zip(mz, box[0], box[1])):
            raise LaurentViolation("no Laurent quotient: leading exponent escapes box")
        # a's lead * c x^{mz} contributes ca * c * v^{Lambda(ma,mz)} at mr
        target = ring_mul(ring, rem.coeffs[mr], ring.v_power(-torus.twist(ma, mz)))
        try:
            c = ring.exact_div(target, ca)
        except ArithmeticError as exc:
            raise LaurentViolation(f"no Laurent quotient: {exc}") from exc
        term = torus.monomial(mz, c)
        out[mz] = c
        rem = rem - a * term
    return TwistedLaurent(torus, out)


def ordered_monomial(torus: QuantumTorus, factors: list[TwistedLaurent], exponents: tuple[int, ...], lam: tuple[tuple[int, ...], ...]) -> TwistedLaurent:
    """The normalized monomial prod factors[i]^{exponents[i]} w.r.t. the skew
    form lam of the cluster they belong to: the ascending product corrected
    by q^{-sum_{a<b} m_a m_b lam_{ab} / 2} so that monomial rules match the
    abstract x^m of that cluster's own torus."""
    corr = 0
    idx = [i for i, e in enumerate(exponents) if e]
    for ai in range(len(idx)):
        for bi in range(ai + 1, len(idx)):
            a, b = idx[ai], idx[bi]
            corr -= exponents[a] * exponents[b] * lam[a][b]
    out = torus.v_power(corr)
    for i in idx:
        if exponents[i] < 0:
            raise ValueError("ordered_monomial needs nonnegative exponents")
        out = out * factors[i] ** exponents[i]
    return out


def dominance_leq(mp: tuple[int, ...], m: tuple[int, ...], seed) -> tuple[bool, tuple[int, ...] | None]:
    """Whether m' ≼ m in the dominance order of the seed: m' = m + B~ n with
    n in N^{I_uf} (n = 0 means equality).  Returns (answer, n)."""
    cols = seed.btilde_columns()
    diff = [a - b for a, b in zip(mp, m)]
    n = _solve_nonneg_integer(cols, diff)
    return (n is not None), n


def _solve_nonneg_integer(cols: list[list[int]], target: list[int]) -> tuple[int, ...] | None:
    """Solve sum_k n_k cols[k] = target with n_k nonnegative integers, for a
    full-column-rank matrix; None if no such solution."""
    rows = len(target)
    ncols = len(cols)
    if ncols == 0:
        return () if all(t == 0 for t in target) else None
    # Gaussian elimination over Q on the augmented system
    aug = [[Fraction(cols[k][i]) for k in range(ncols)] + [Fraction(target[i])] for i in range(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            return None  # full column rank is a precondition
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        inv = 1 / pr[c]
        aug[r] = [x * inv for x in pr]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    sol = [Fraction(0)] * ncols
    for rr, cc in pivots:
        sol[cc] = aug[rr][-1]
    # consistency on the remaining rows
    for i in range(rows):
        lhs = sum(sol[k] * cols[k][i] for k in range(ncols))
        if lhs != target[i]:
            return None
    if any(s.denominator != 1 or s < 0 for s in sol):
        return None
    return tuple(int(s) for s in sol)


class NoDegree(Exception):
    """The element has no dominance-maximal exponent dominating all others."""


def degree_of(z: TwistedLaurent, seed) -> tuple[tuple[int, ...], object]:
    """The unique ≺-maximal exponent g of z together with its coefficient,
    provided g dominates every other exponent; NoDegree otherwise."""
    if z.is_zero():
        raise ZeroInput("the zero element has no degree")
    supp = z.support()
    if not seed.full_rank():
        raise RankError("degree needs a full-rank seed")
    candidates = []
    for g in supp:
        if all(dominance_leq(m, g, seed)[0] for m in supp if m != g):
            candidates.append(g)
    if len(candidates) != 1:
        raise NoDegree(f"no unique dominant exponent among {supp}")
    g = candidates[0]
    return g, z.coeffs[g]


def vanishing_order(z: TwistedLaurent, j: int, seed) -> int | float:
    """Order of vanishing at x_j = 0 for frozen j; +inf for z = 0."""
    if j in seed.unfrozen:
        raise NotFrozen(f"vertex {j} is not frozen")
    if j not in seed.pos:
        raise NotFrozen(f"vertex {j} is not in the seed")
    if z.is_zero():
        return float("inf")
    p = z.torus.pos[j]
    return min(m[p] for m in z.coeffs)
