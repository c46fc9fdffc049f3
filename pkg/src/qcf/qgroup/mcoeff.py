"""Matrix coefficients c(xi, v), their products on tensor modules, exact
evaluation on generator words, and a sound equality decision.

Equality of two coefficient expressions is decided on triangular words
F-monomial * (K-monomial) * E-monomial: K-factors reduce to a grouping of the
terms by vector weight, and the F/E evaluations are organized as two span
closures whose orthogonality is equivalent to agreement on every such word.
"""

from __future__ import annotations

from ..rings import FRAC, FracV, qfactorial
from .reps import ModuleRep, Vec, divided_power_apply, op_apply, op_apply_dual, tensor_module


class MatrixCoeff:
    """c^V(xi, v): a functional on the quantized enveloping algebra given by a
    weight-homogeneous functional xi and vector v of a based module."""

    def __init__(self, module: ModuleRep, dual: Vec | int, vec: Vec | int) -> None:
        self.module = module
        self.dual: Vec = {dual: FRAC.one()} if isinstance(dual, int) else dual
        self.vec: Vec = {vec: FRAC.one()} if isinstance(vec, int) else vec
        self.dual_weight = module.weight_of_vec(self.dual)
        self.vec_weight = module.weight_of_vec(self.vec)

    def evaluate(self, word: list[tuple[str, int, int]]) -> FracV:
        """Value on the product of the word's tokens ("E"|"F", i, n) for
        divided powers X_i^{±(n)} and ("K", i, e) for K_i^e; the leftmost
        token acts last."""
        vec = dict(self.vec)
        for kind, i, n in reversed(word):
            if not vec:
                break
            if kind == "K":
                vec = {
                    a: FRAC.mul(c, FRAC.from_laurent(_vpow(n * self.module.k_exponent(i, a))))
                    for a, c in vec.items()
                }
            elif kind in ("E", "F"):
                vec = divided_power_apply(self.module, kind, i, n, vec)
            else:
                raise ValueError(f"unknown token {kind!r}")
        out = FRAC.zero()
        for a, c in vec.items():
            if a in self.dual:
                out = FRAC.add(out, FRAC.mul(self.dual[a], c))
        return out


def _vpow(k: int):
    from ..rings import LaurentZ

    return LaurentZ.v_power(k)


def product_coeff(c1: MatrixCoeff, c2: MatrixCoeff) -> MatrixCoeff:
    """c^{V1}(xi1,v1) c^{V2}(xi2,v2) = c^{V1(x)V2}(xi2(x)xi1, v1(x)v2), with
    the swapped-dual identification of (V1(x)V2)^*."""
    m = tensor_module(c1.module, c2.module)
    d2 = c2.module.dim
    vec: Vec = {}
    for a, ca in c1.vec.items():
        for b, cb in c2.vec.items():
            vec[a * d2 + b] = FRAC.mul(ca, cb)
    dual: Vec = {}
    for a, ca in c1.dual.items():
        for b, cb in c2.dual.items():
            dual[a * d2 + b] = FRAC.mul(ca, cb)
    return MatrixCoeff(m, dual, vec)


class CoeffExpr:
    """A finite sum  sum_t scalar_t * c^{V_t}(xi_t, v_t)  (+ scalar * unit).

    The unit term is the counit: value 1 on the empty word, 0 on any word
    containing an E or F."""

    def __init__(self, terms: list[tuple[FracV, MatrixCoeff | None]]) -> None:
        self.terms = [(s, c) for s, c in terms if not FRAC.is_zero(s)]

    @classmethod
    def of(cls, c: MatrixCoeff, scalar: FracV | None = None) -> CoeffExpr:
        return cls([(scalar if scalar is not None else FRAC.one(), c)])

    @classmethod
    def unit(cls, scalar: FracV | None = None) -> CoeffExpr:
        return cls([(scalar if scalar is not None else FRAC.one(), None)])

    def __add__(self, other: CoeffExpr) -> CoeffExpr:
        return CoeffExpr(self.terms + other.terms)

    def scale(self, s: FracV) -> CoeffExpr:
        return CoeffExpr([(FRAC.mul(s, t), c) for t, c in self.terms])

    def __neg__(self) -> CoeffExpr:
        return self.scale(FRAC.from_int(-1))

    def evaluate(self, word: list[tuple[str, int, int]]) -> FracV:
        out = FRAC.zero()
        nontrivial = any(kind in ("E", "F") for kind, _, _ in word)
        for s, c in self.terms:
            if c is None:
                if not nontrivial:
                    kfactor = FRAC.one()  # counit sends K to 1
                    out = FRAC.add(out, FRAC.mul(s, kfactor))
            else:
                out = FRAC.add(out, FRAC.mul(s, c.evaluate(word)))
        return out


class _Span:
    """Echelonized span of sparse vectors keyed by hashable coordinates."""

    def __init__(self) -> None:
        self.rows: list[tuple[object, dict]] = []

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for key, row in self.rows:
            if key in v:
                f = FRAC.exact_div(v[key], row[key])
                for k2, c2 in row.items():
                    s = FRAC.add(v.get(k2, FRAC.zero()), FRAC.neg(FRAC.mul(f, c2)))
                    if FRAC.is_zero(s):
                        v.pop(k2, None)
                    else:
                        v[k2] = s
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        pivot = max(v.keys(), key=repr)
        self.rows.append((pivot, v))
        return True


def _stacked_closure(vectors: list[dict], ops_per_term, max_depth: int) -> tuple[_Span, int]:
    """Span of all images of the stacked vectors under words in the given
    per-term operator lists (one operator family per generator index)."""
    span = _Span()
    frontier = [v for v in vectors if span.add(v)]
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        new = []
        for vec in frontier:
            for gen in range(len(ops_per_term[0])):
                img: dict = {}
                for (t, a), c in vec.items():
                    if t == "eps":
                        continue
                    op = ops_per_term[t][gen]
                    for row, m in op.get(a, {}).items():
                        key = (t, row)
                        s = FRAC.add(img.get(key, FRAC.zero()), FRAC.mul(m, c))
                        if FRAC.is_zero(s):
                            img.pop(key, None)
                        else:
                            img[key] = s
                if img and span.add(img):
                    new.append(img)
        frontier = new
    return span, depth


def expr_equal(lhs: CoeffExpr, rhs: CoeffExpr, max_depth: int = 64) -> tuple[bool, dict]:
    """Whether two coefficient expressions agree as functionals.

    The difference is grouped by vector weight (K-covariance classes); for
    each class the values on all F-words x E-words coincide iff the span of
    E-word images of the stacked vectors is orthogonal to the span of F-word
    images of the stacked functionals.  Both spans are finite by weight
    boundedness; the closure depths reached are reported."""
    diff = lhs + (-rhs)
    classes: dict[tuple[int, ...], list[tuple[FracV, MatrixCoeff | None]]] = {}
    rank = None
    for s, c in diff.terms:
        if c is None:
            w = ()
        else:
            w = c.vec_weight
            rank = c.module.rd.rank
        classes.setdefault(w if w != () else ("eps",), []).append((s, c))
    if rank is None:
        # only unit terms: compare scalars
        tot = FRAC.zero()
        for s, _ in diff.terms:
            tot = FRAC.add(tot, s)
        return FRAC.is_zero(tot), {"classes": 0, "depth_E": 0, "depth_F": 0}
    # merge the eps class into the zero-weight class (the counit is the
    # matrix coefficient of the trivial module)
    zero_w = tuple(0 for _ in range(rank))
    eps_terms = classes.pop(("eps",), [])
    if eps_terms:
        classes.setdefault(zero_w, []).extend(eps_terms)
    report = {"classes": len(classes), "depth_E": 0, "depth_F": 0}
    for terms in classes.values():
        coeffs = [(s, c) for s, c in terms if c is not None]
        epss = [s for s, c in terms if c is None]
        base_vec: dict = {}
        base_dual: dict = {}
        for t, (s, c) in enumerate(coeffs):
            for a, x in c.vec.items():
                base_vec[(t, a)] = x
            for a, x in c.dual.items():
                base_dual[(t, a)] = FRAC.mul(s, x)
        tot_eps = FRAC.zero()
        for s in epss:
            tot_eps = FRAC.add(tot_eps, s)
        if not FRAC.is_zero(tot_eps):
            base_vec[("eps", 0)] = FRAC.one()
            base_dual[("eps", 0)] = tot_eps
        if not coeffs:
            if not FRAC.is_zero(tot_eps):
                return False, report
            continue
        vec_stack_ops = [c.module.E for _, c in coeffs]
        dual_stack_ops = [c.module.F for _, c in coeffs]
        vspan, de = _stacked_closure([base_vec], vec_stack_ops, max_depth)
        report["depth_E"] = max(report["depth_E"], de)
        dual_images = _dual_closure([base_dual], dual_stack_ops, max_depth)
        span_f, df = dual_images
        report["depth_F"] = max(report["depth_F"], df)
        for _, xi in span_f.rows:
            for _, vv in vspan.rows:
                dot = FRAC.zero()
                for k, c1 in xi.items():
                    if k in vv:
                        dot = FRAC.add(dot, FRAC.mul(c1, vv[k]))
                if not FRAC.is_zero(dot):
                    return False, report
    return True, report


def _dual_closure(duals: list[dict], ops_per_term, max_depth: int) -> tuple[_Span, int]:
    span = _Span()
    frontier = [d for d in duals if span.add(d)]
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        new = []
        for xi in frontier:
            for gen in range(len(ops_per_term[0])):
                img: dict = {}
                for (t, a), c in xi.items():
                    if t == "eps":
                        continue
                    # functional composed with F_gen: pick column entries
                    op = ops_per_term[t][gen]
                    # (xi . F)[col] = sum_row xi[row] F[col][row]
                    for col, column in op.items():
                        if a in column:
                            key = (t, col)
                            s = FRAC.add(img.get(key, FRAC.zero()), FRAC.mul(c, column[a]))
                            if FRAC.is_zero(s):
                                img.pop(key, None)
                            else:
                                img[key] = s
                if img and span.add(img):
                    new.append(img)
        frontier = new
    return span, depth


def coeff_equal(c1: MatrixCoeff, c2: MatrixCoeff) -> tuple[bool, dict]:
    return expr_equal(CoeffExpr.of(c1), CoeffExpr.of(c2))


def minor(module: ModuleRep, w_word: tuple[int, ...], u_word: tuple[int, ...]) -> MatrixCoeff:
    """The generalized quantum minor D_{w lambda, u lambda} on a highest-weight
    based module: matrix coefficient of the extremal functional and vector."""
    from .reps import extremal_vector

    wi, _ = extremal_vector(module, w_word)
    ui, uvec = extremal_vector(module, u_word)
    return MatrixCoeff(module, wi, uvec)


def brute_force_words(rank: int, max_per_sign: int) -> list[list[tuple[str, int, int]]]:
    """All triangular words F-monomial * E-monomial in plain simple generators
    with each sign's length bounded; used to cross-check expr_equal."""
    def monomials(kind: str, n: int):
        out: list[list[tuple[str, int, int]]] = [[]]
        frontier: list[list[tuple[str, int, int]]] = [[]]
        for _ in range(n):
            new = []
            for w in frontier:
                for i in range(1, rank + 1):
                    w2 = w + [(kind, i, 1)]
                    new.append(w2)
            out.extend(new)
            frontier = new
        return out

    words = []
    for fw in monomials("F", max_per_sign):
        for ew in monomials("E", max_per_sign):
            words.append(fw + ew)
    return words
