"""Cluster variables along mutation sequences, expanded exactly in a fixed
reference torus: exchange relations, g-vectors and F-polynomials, bounded
upper-membership evidence, and the tropical machinery."""

from __future__ import annotations

from fractions import Fraction

from .rings import Ring, Specialization
from .seeds import BadVertex, Seed
from .torus import (
    LaurentViolation,
    NoDegree,
    QuantumTorus,
    TwistedLaurent,
    degree_of,
    divide_left_exact,
    dominance_leq,
    ordered_monomial,
    vanishing_order,
)


class NotPointed(Exception):
    pass


class ClusterState:
    """The cluster attached to a mutated seed, with every variable stored as
    its exact Laurent expansion in the torus of the reference seed.

    Mutation realizes the exchange relation by exact left division and then
    re-verifies it by multiplication; a failed division is a LaurentViolation
    and means the seed data is invalid (or there is a bug).
    """

    def __init__(
        self,
        ref_seed: Seed,
        ring: Ring,
        seed: Seed | None = None,
        variables: dict[int, TwistedLaurent] | None = None,
        path: tuple[int, ...] = (),
        checks: int = 0,
    ) -> None:
        ref_seed.require_assumption(ring)
        self.ref_seed = ref_seed
        self.ring = ring
        self.torus = QuantumTorus(ref_seed.vertices, ref_seed.lam, ring)
        self.seed = seed if seed is not None else ref_seed
        if variables is None:
            variables = {v: self.torus.variable(v) for v in ref_seed.vertices}
        self.vars = variables
        self.path = path
        self.checks = checks

    def variable(self, vertex: int) -> TwistedLaurent:
        return self.vars[vertex]

    def cluster_monomial(self, m: dict[int, int] | tuple[int, ...]) -> TwistedLaurent:
        """The normalized monomial x(current seed)^m, m >= 0, as an element of
        the reference torus."""
        s = self.seed
        if isinstance(m, dict):
            m = tuple(m.get(v, 0) for v in s.vertices)
        factors = [self.vars[v] for v in s.vertices]
        return ordered_monomial(self.torus, factors, tuple(m), s.lam)

    def exchange_terms(self, k: int) -> TwistedLaurent:
        """Right side of the exchange relation at unfrozen k, in the current
        cluster: q^{L(f_k,a-)/2} x^{a-} + q^{L(f_k,a+)/2} x^{a+} where
        a± = sum_j [±b_jk]_+ f_j."""
        s = self.seed
        col = s.column(k)
        aminus = tuple(max(-b, 0) for b in col)
        aplus = tuple(max(b, 0) for b in col)
        kp = s.pos[k]
        lam_minus = sum(s.lam[kp][j] * aminus[j] for j in range(len(col)))
        lam_plus = sum(s.lam[kp][j] * aplus[j] for j in range(len(col)))
        tm = self.cluster_monomial(aminus).scale(self.ring.v_power(lam_minus))
        tp = self.cluster_monomial(aplus).scale(self.ring.v_power(lam_plus))
        return tm + tp

    def mutate(self, k: int) -> ClusterState:
        if k not in self.seed.unfrozen:
            raise BadVertex(f"{k} is not an unfrozen vertex")
        rhs = self.exchange_terms(k)
        xk = self.vars[k]
        new_xk = divide_left_exact(xk, rhs)
        if xk * new_xk != rhs:
            raise LaurentViolation("exchange relation failed to re-verify")
        newvars = dict(self.vars)
        newvars[k] = new_xk
        return ClusterState(
            self.ref_seed,
            self.ring,
            self.seed.mutate(k),
            newvars,
            self.path + (k,),
            self.checks + 1,
        )

    def mutate_sequence(self, ks: list[int] | tuple[int, ...]) -> ClusterState:
        st = self
        for k in ks:
            st = st.mutate(k)
        return st

    def specialize(self, spec: Specialization) -> ClusterState:
        """Coefficient-wise image of the whole state over the target ring."""
        target_torus = QuantumTorus(self.ref_seed.vertices, self.ref_seed.lam, spec.target)
        newvars = {
            v: TwistedLaurent(target_torus, {m: spec.apply(c) for m, c in z.coeffs.items()})
            for v, z in self.vars.items()
        }
        return ClusterState(self.ref_seed, spec.target, self.seed, newvars, self.path, self.checks)

    def same_cluster(self, other: ClusterState) -> dict[int, int] | None:
        """A frozen-fixing permutation matching seeds and variables, if any."""
        sigma = None
        if self.seed.same_matrices(other.seed) and self.vars == other.vars:
            return {v: v for v in self.seed.unfrozen_list}
        sigma = self.seed.equal_up_to_permutation(other.seed)
        if sigma is None:
            return None
        # x_{sigma i}(sigma s) = x_i(s): try all matrix-matching permutations
        import itertools

        src = self.seed.unfrozen_list
        for perm in itertools.permutations(src):
            cand = dict(zip(src, perm))
            full = {v: cand.get(v, v) for v in self.seed.vertices}
            ok_seed = all(
                self.seed.b(i, kk) == other.seed.b(full[i], cand[kk])
                for i in self.seed.vertices
                for kk in src
            ) and all(
                self.seed.lam[self.seed.pos[i]][self.seed.pos[j]]
                == other.seed.lam[other.seed.pos[full[i]]][other.seed.pos[full[j]]]
                for i in self.seed.vertices
                for j in self.seed.vertices
            )
            if ok_seed and all(other.vars[cand[i]] == self.vars[i] for i in src):
                return cand
        return None


def extract_gf(z: TwistedLaurent, seed: Seed) -> tuple[tuple[int, ...], dict[tuple[int, ...], object]]:
    """g-vector and F-polynomial of a pointed element: z = x^g sum_n c_n x^{Bn}
    with c_0 = 1 and the frozen part of g nonnegative."""
    try:
        g, lead = degree_of(z, seed)
    except NoDegree as exc:
        raise NotPointed(str(exc)) from exc
    ring = z.torus.ring
    if lead != ring.one():
        raise NotPointed(f"leading coefficient is {ring.fmt(lead)}, not 1")
    for j, v in enumerate(seed.vertices):
        if v not in seed.unfrozen and g[j] < 0:
            raise NotPointed(f"frozen part of the degree is negative at vertex {v}")
    fpoly: dict[tuple[int, ...], object] = {}
    for m in z.support():
        ok, n = dominance_leq(m, g, seed)
        if not ok:
            raise NotPointed(f"exponent {m} is not dominated by the degree {g}")
        fpoly[n] = z.coeffs[m]
    return g, fpoly


def tropical_transform(m: tuple[int, ...], seed: Seed, k: int) -> tuple[int, ...]:
    """Adjacent tropical transformation at unfrozen k: m_k flips sign and
    m_i gains [b_ik]_+[m_k]_+ - [-b_ik]_+[-m_k]_+ for i != k."""
    if k not in seed.unfrozen:
        raise BadVertex(f"{k} is not an unfrozen vertex")
    col = seed.column(k)
    kp = seed.pos[k]
    mk = m[kp]
    out = []
    for i in range(len(m)):
        if i == kp:
            out.append(-mk)
        else:
            b = col[i]
            out.append(m[i] + max(b, 0) * max(mk, 0) - max(-b, 0) * max(-mk, 0))
    return tuple(out)


def tropical_transform_path(m: tuple[int, ...], seed: Seed, path: list[int]) -> tuple[int, ...]:
    s = seed
    for k in path:
        m = tropical_transform(m, s, k)
        s = s.mutate(k)
    return m


class FrameExpansionError(Exception):
    """z admits no bounded Laurent expansion in the requested frame."""


def frame_state(seed: Seed, ring: Ring, path: list[int] | tuple[int, ...]) -> ClusterState:
    """The cluster of `seed` expanded inside the torus of the seed reached by
    `path`: anchor a tracker at the far end and mutate back."""
    far = seed.mutate_sequence(list(path))
    st = ClusterState(far, ring)
    return st.mutate_sequence(list(reversed(path)))


def expand_in_frame(
    z: TwistedLaurent,
    seed: Seed,
    ring: Ring,
    path: list[int] | tuple[int, ...],
    dmax: int = 12,
    fuel: int = 20_000,
) -> TwistedLaurent:
    """Laurent-expand z (given in LP(seed)) in the seed reached by `path`.

    Uses the triangularity of pointed cluster monomials: the frame's cluster
    monomials expanded back in LP(seed) have distinct dominance degrees, so
    the expansion is recovered greedily from the top.  Raises
    FrameExpansionError when no expansion with exponents >= -dmax exists
    within the fuel budget (the check is bounded, not a decision procedure).
    """
    far = seed.mutate_sequence(list(path))
    far_torus = QuantumTorus(far.vertices, far.lam, ring)
    if z.is_zero():
        return far_torus.zero()
    # the frame's cluster expanded forward inside LP(seed)
    back = ClusterState(seed, ring).mutate_sequence(list(path))
    # degrees of the frame variables inside LP(seed)
    gmat = []
    for v in seed.vertices:
        g, _ = degree_of(back.vars[v], seed)
        gmat.append(g)
    n = len(seed.vertices)
    for dshift in (0, 1, 2, 4, 8, dmax):
        d = (dshift,) * n
        try:
            coeffs = _peel(z, back, seed, gmat, d, fuel)
        except _RetryLarger:
            continue
        out: dict[tuple[int, ...], object] = {}
        for nu, a in coeffs.items():
            mu = tuple(x - y for x, y in zip(nu, d))
            tw = far_torus.twist(mu, d)
            out[mu] = ring.exact_div(a, ring.v_power(tw)) if tw else a
        return TwistedLaurent(far_torus, out)
    raise FrameExpansionError(f"no Laurent expansion within exponent shift {dmax}")


class _RetryLarger(Exception):
    pass


def _peel(z, back: ClusterState, seed: Seed, gmat, d, fuel):
    """Greedy top-down peel of w = z * x(frame)^d against frame cluster
    monomials.  Dominance is only a partial order, so each step takes *a*
    maximal monomial of the support; by triangularity of pointed monomials it
    is the degree of exactly one component."""
    ring = back.ring
    w = z * back.cluster_monomial(d)
    coeffs: dict[tuple[int, ...], object] = {}
    while not w.is_zero():
        if fuel <= 0:
            raise FrameExpansionError("expansion did not terminate within fuel")
        fuel -= 1
        g = _a_maximal_monomial(w, seed)
        nu = _solve_integer_combination(gmat, g)
        if nu is None:
            raise FrameExpansionError(f"monomial {g} is not a frame cluster degree")
        if any(x < 0 for x in nu):
            raise _RetryLarger
        mono = back.cluster_monomial(tuple(nu))
        if g not in mono.coeffs:
            raise FrameExpansionError("frame monomial does not realize its degree")
        try:
            c = ring.exact_div(w.coeffs[g], mono.coeffs[g])
        except ArithmeticError as exc:
            raise FrameExpansionError(f"leading coefficient not divisible: {exc}") from exc
        coeffs[tuple(nu)] = c
        w = w - mono.scale(c)
    return coeffs


def _a_maximal_monomial(w: TwistedLaurent, seed: Seed) -> tuple[int, ...]:
    supp = w.support()
    g = supp[0]
    changed = True
    while changed:
        changed = False
        for m in supp:
            if m == g:
                continue
            ok, n = dominance_leq(g, m, seed)
            if ok and any(n):
                g = m
                changed = True
    return g


def _solve_integer_combination(gmat, target) -> tuple[int, ...] | None:
    """Solve sum nu_i gmat[i] = target over Z (gmat is a basis of Z^I)."""
    n = len(target)
    aug = [[Fraction(gmat[c][r]) for c in range(n)] + [Fraction(target[r])] for r in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    sol = [aug[r][-1] for r in range(n)]
    if any(s.denominator != 1 for s in sol):
        return None
    return tuple(int(s) for s in sol)


def upper_membership_bounded(
    z: TwistedLaurent,
    seed: Seed,
    ring: Ring,
    depth: int,
    compactified: bool = False,
) -> dict:
    """Bounded evidence that z lies in the (partially compactified) upper
    cluster algebra: Laurent expansion in every seed within `depth` mutations,
    plus nonnegative frozen valuations in the compactified case.  A pass is
    evidence up to the stated depth, not a proof."""
    report: dict = {"depth": depth, "compactified": compactified, "seeds_checked": 0}
    if compactified:
        for j in seed.vertices:
            if j in seed.unfrozen:
                continue
            nu = vanishing_order(z, j, seed)
            if nu < 0:
                report["result"] = "fail"
                report["witness"] = {"kind": "frozen_valuation", "vertex": j, "nu": nu}
                return report
    paths = _paths_up_to_depth(seed, depth)
    for path in paths:
        try:
            exp = expand_in_frame(z, seed, ring, path)
        except FrameExpansionError as exc:
            report["result"] = "fail"
            report["witness"] = {"kind": "no_laurent_expansion", "path": list(path), "detail": str(exc)}
            return report
        if compactified:
            far = seed.mutate_sequence(list(path))
            for j in far.vertices:
                if j in far.unfrozen:
                    continue
                p = far.pos[j]
                if any(m[p] < 0 for m in exp.coeffs):
                    report["result"] = "fail"
                    report["witness"] = {"kind": "frozen_exponent", "path": list(path), "vertex": j}
                    return report
        report["seeds_checked"] += 1
    report["result"] = "pass"
    return report


def _paths_up_to_depth(seed: Seed, depth: int) -> list[tuple[int, ...]]:
    """Mutation paths reaching each distinct seed-matrix within depth, one
    path per seed (matrices compared exactly)."""
    out: list[tuple[int, ...]] = [()]
    seen = [seed]
    frontier = [(seed, ())]
    for _ in range(depth):
        new = []
        for s, path in frontier:
            for k in s.unfrozen_list:
                if path and path[-1] == k:
                    continue
                s2 = s.mutate(k)
                if any(s2.same_matrices(t) for t in seen):
                    continue
                seen.append(s2)
                p2 = path + (k,)
                out.append(p2)
                new.append((s2, p2))
        frontier = new
    return out


def compatibly_pointed_check(
    z: TwistedLaurent,
    seed: Seed,
    ring: Ring,
    paths: list[list[int]],
) -> dict:
    """Check that z's degree transforms tropically to every listed seed:
    re-expand z there and compare its degree with the tropical image."""
    g, _ = degree_of(z, seed)
    for path in paths:
        expected = tropical_transform_path(g, seed, list(path))
        try:
            exp = expand_in_frame(z, seed, ring, path)
            far = seed.mutate_sequence(list(path))
            got, _ = degree_of(exp, far)
        except (FrameExpansionError, NoDegree) as exc:
            return {"result": "no", "witness": {"path": list(path), "detail": str(exc)}}
        if got != expected:
            return {
                "result": "no",
                "witness": {"path": list(path), "expected": list(expected), "got": list(got)},
            }
    return {"result": "yes"}


def optimized_check(seed: Seed, j: int) -> bool:
    """Whether the frozen row j is nonnegative on all unfrozen columns."""
    if j in seed.unfrozen or j not in seed.pos:
        raise BadVertex(f"{j} is not a frozen vertex")
    return all(seed.b(j, k) >= 0 for k in seed.unfrozen_list)


def injective_reachable_witness(
    seed: Seed, ring: Ring, path: list[int], sigma: dict[int, int]
) -> bool:
    """Verify deg x_{sigma k}(seed[1]) = -f_k + (frozen part) for all unfrozen
    k, where seed[1] is reached by `path`."""
    st = ClusterState(seed, ring).mutate_sequence(path)
    for k in seed.unfrozen_list:
        g, _ = degree_of(st.vars[sigma[k]], seed)
        for j, v in enumerate(seed.vertices):
            if v in seed.unfrozen:
                want = -1 if v == k else 0
                if g[j] != want:
                    return False
    return True


def a1_basis_check(seed: Seed, ring: Ring, degree_bound: int) -> dict:
    """Desk-scale check of the rank-1 basis statement: the localized cluster
    monomials {x_k^r, (x'_k)^r} are independent over the frozen Laurent ring
    (via the Z-grading gr x_k = 1, gr x'_k = -1) and sampled products land
    back in their span."""
    if len(seed.unfrozen_list) != 1:
        raise ValueError("exactly one unfrozen vertex required")
    (k,) = seed.unfrozen_list
    seed.require_assumption(ring)
    st = ClusterState(seed, ring)
    st2 = st.mutate(k)
    xk = st.vars[k]
    xkp = st2.vars[k]
    kp = seed.pos[k]
    isolated = seed.is_isolated(k)
    report = {"isolated": isolated, "bound": degree_bound, "checked": []}
    for r in range(1, degree_bound + 1):
        pw = xkp**r
        if pw.is_zero():
            return {**report, "result": "fail", "witness": f"(x'_k)^{r} = 0"}
        if any(m[kp] != -r for m in pw.coeffs):
            return {**report, "result": "fail", "witness": f"(x'_k)^{r} not homogeneous"}
        mr = (xk**r) * pw
        if any(m[kp] != 0 for m in mr.coeffs):
            return {**report, "result": "fail", "witness": f"M_{r} leaves the frozen ring"}
        if isolated:
            want = st.torus.scalar(ring.from_int(2**r))
            if mr != want:
                return {**report, "result": "fail", "witness": f"M_{r} != 2^{r}"}
        report["checked"].append(r)
    # sampled products re-expand in the claimed basis
    for a in range(0, min(3, degree_bound) + 1):
        for b in range(0, min(3, degree_bound) + 1):
            el = (xk**a) * (xkp**b)
            if any(m[kp] != a - b for m in el.coeffs):
                return {**report, "result": "fail", "witness": f"x^{a} x'^{b} inhomogeneous"}
    report["result"] = "pass"
    return report


class ExplorationReport:
    def __init__(self) -> None:
        self.states: list[ClusterState] = []
        self.variables: set[TwistedLaurent] = set()
        self.noninitial_variables: set[TwistedLaurent] = set()
        self.closed = False
        self.exchange_checks = 0

    def summary(self) -> dict:
        return {
            "seeds": len(self.states),
            "distinct_unfrozen_variables": len(self.variables),
            "noninitial_variables": len(self.noninitial_variables),
            "closed": self.closed,
            "exchange_checks": self.exchange_checks,
        }


def explore_exchange_graph(seed: Seed, ring: Ring, max_depth: int, threads: int = 1) -> ExplorationReport:
    """Breadth-first exploration with seeds identified up to frozen-fixing
    permutation of I_uf (matrices and variables both); stops at closure or at
    max_depth.  Vertices are tried in ascending order for determinism."""
    rep = ExplorationReport()
    start = ClusterState(seed, ring)
    rep.states.append(start)
    for v in seed.unfrozen_list:
        rep.variables.add(start.vars[v])
    frontier = [start]
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        new_states: list[ClusterState] = []
        candidates: list[ClusterState] = []
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            def step(sk):
                st, k = sk
                return st.mutate(k)

            jobs = [(st, k) for st in frontier for k in st.seed.unfrozen_list]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                candidates = list(pool.map(step, jobs))
        else:
            for st in frontier:
                for k in st.seed.unfrozen_list:
                    candidates.append(st.mutate(k))
        for st2 in candidates:
            rep.exchange_checks += 1
            mutated_vertex = st2.path[-1]
            rep.variables.add(st2.vars[mutated_vertex])
            rep.noninitial_variables.add(st2.vars[mutated_vertex])
            if any(st2.same_cluster(existing) for existing in rep.states):
                continue
            rep.states.append(st2)
            new_states.append(st2)
        frontier = new_states
        if not frontier:
            rep.closed = True
            break
    if not frontier:
        rep.closed = True
    return rep
