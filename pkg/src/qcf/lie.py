"""Cartan data, root systems, and Weyl-word machinery.

Dynkin labeling convention used throughout (it differs from the common
textbook ones): node 1 carries the minuscule/quasi-minuscule fundamental
weight, so

  A_r : path 1-2-...-r
  B_r : 1 = 2 - 3 - ... - r with alpha_1 short
  C_r : 1 - 2 - ... - (r-1) = r with alpha_r long
  D_r : path 1..r-2 with both r-1 and r attached to r-2
  E_r : path 1..r-1 with node r attached to node r-3
  F_4 : 1 - 2 = 3 - 4 with alpha_1, alpha_2 short
  G_2 : 1 == 2 with alpha_1 short

Weights are stored in fundamental-weight coordinates, roots in simple-root
coordinates; the Cartan matrix converts between the two.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class NotARoot(ValueError):
    pass


class NotReduced(ValueError):
    pass


_TYPES = ("A", "B", "C", "D", "E", "F", "G")

# highest root in simple-root coordinates, per type (this labeling),
# used as a cross-check against the closure construction
_THETA = {
    "A": lambda r: (1,) * r,
    "B": lambda r: (2,) * (r - 1) + (1,),
    "C": lambda r: (2,) * (r - 1) + (1,),
    "D": lambda r: (1,) + (2,) * (r - 3) + (1, 1),
    ("E", 6): (1, 2, 3, 2, 1, 2),
    ("E", 7): (1, 2, 3, 4, 3, 2, 2),
    ("E", 8): (2, 3, 4, 5, 6, 4, 2, 3),
    ("F", 4): (2, 4, 3, 2),
    ("G", 2): (3, 2),
}


def cartan_matrix(lie_type: str, rank: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix (c_ij) and symmetrizers (d_i) in the labeling above,
    normalized so d_i = (alpha_i, alpha_i)/2 with short roots of square 2."""
    t = lie_type.upper()
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j] = cij
        c[j][i] = cji

    if t == "A":
        if rank < 1:
            raise ValueError("A_r needs r >= 1")
        for i in range(rank - 1):
            edge(i, i + 1)
        d = [1] * rank
    elif t == "B":
        if rank < 2:
            raise ValueError("B_r needs r >= 2")
        edge(0, 1, -2, -1)
        for i in range(1, rank - 1):
            edge(i, i + 1)
        d = [1] + [2] * (rank - 1)
    elif t == "C":
        if rank < 3:
            raise ValueError("C_r needs r >= 3")
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 2, rank - 1, -2, -1)
        d = [1] * (rank - 1) + [2]
    elif t == "D":
        if rank < 4:
            raise ValueError("D_r needs r >= 4")
        for i in range(rank - 3):
            edge(i, i + 1)
        edge(rank - 3, rank - 2)
        edge(rank - 3, rank - 1)
        d = [1] * rank
    elif t == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_r needs r in {6,7,8}")
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 4, rank - 1)
        d = [1] * rank
    elif t == "F":
        if rank != 4:
            raise ValueError("F_4 has rank 4")
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
        d = [1, 1, 2, 2]
    elif t == "G":
        if rank != 2:
            raise ValueError("G_2 has rank 2")
        edge(0, 1, -3, -1)
        d = [1, 3]
    else:
        raise ValueError(f"unknown type {lie_type!r}")
    for i in range(rank):
        for j in range(rank):
            if d[i] * c[i][j] != d[j] * c[j][i]:
                raise AssertionError("Cartan symmetrization failed")
    return c, d


class RootData:
    """A root system with Cartan matrix, symmetrizers, the full root set in
    simple-root coordinates, and the normalized invariant form."""

    def __init__(self, lie_type: str, rank: int) -> None:
        self.type = lie_type.upper()
        self.rank = rank
        self.cartan, self.d = cartan_matrix(lie_type, rank)
        self.roots = self._closure()
        self.positive_roots = sorted(v for v in self.roots if all(x >= 0 for x in v))
        key = (self.type, rank) if (self.type, rank) in _THETA else self.type
        theta = _THETA[key] if isinstance(_THETA[key], tuple) else _THETA[key](rank)
        heights = {v: sum(v) for v in self.positive_roots}
        computed = max(self.positive_roots, key=lambda v: heights[v])
        if computed != tuple(theta):
            raise AssertionError(f"highest-root cross-check failed: {computed} vs {theta}")
        others = [v for v in self.positive_roots if heights[v] == heights[computed]]
        if others != [computed]:
            raise AssertionError("highest root is not the unique maximal root")
        self.theta = computed
        self._cartan_inv = _invert_rational([[Fraction(x) for x in row] for row in self.cartan])

    def _closure(self) -> set[tuple[int, ...]]:
        simples = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for v in frontier:
                for i in range(self.rank):
                    w = self.reflect_root(i, v)
                    if w not in roots:
                        roots.add(w)
                        new.append(w)
            frontier = new
        return roots

    # -- reflections and coordinates ----------------------------------------

    def reflect_root(self, i: int, v: tuple[int, ...]) -> tuple[int, ...]:
        """s_{i+1} acting in simple-root coordinates (i is 0-based here)."""
        pairing = sum(self.cartan[i][j] * v[j] for j in range(self.rank))
        out = list(v)
        out[i] -= pairing
        return tuple(out)

    def reflect_weight(self, i: int, mu: tuple[int, ...]) -> tuple[int, ...]:
        """s_i(mu) = mu - <alpha_i^vee, mu> alpha_i in pi-coordinates; 1-based i."""
        idx = i - 1
        coef = mu[idx]
        return tuple(mu[k] - coef * self.cartan[k][idx] for k in range(self.rank))

    def apply_word_weight(self, word: tuple[int, ...], mu: tuple[int, ...]) -> tuple[int, ...]:
        """Apply w = s_{i_1} ... s_{i_t} to a weight (letters 1-based)."""
        for i in reversed(word):
            mu = self.reflect_weight(i, mu)
        return mu

    def apply_word_root(self, word: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        for i in reversed(word):
            v = self.reflect_root(i - 1, v)
        return v

    def root_to_weight(self, v: tuple[int, ...]) -> tuple[int, ...]:
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(sum(self.cartan[k][j] * v[j] for j in range(self.rank)) for k in range(self.rank))

    def weight_to_root(self, mu: tuple[int, ...]) -> tuple[Fraction, ...]:
        return tuple(
            sum(self._cartan_inv[j][k] * mu[k] for k in range(self.rank)) for j in range(self.rank)
        )

    def fundamental_weight(self, i: int) -> tuple[int, ...]:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def simple_root_weight(self, i: int) -> tuple[int, ...]:
        """alpha_i in pi-coordinates (column i of the Cartan matrix)."""
        return tuple(self.cartan[k][i - 1] for k in range(self.rank))

    def bilinear(self, mu: tuple[int, ...], nu: tuple[int, ...]) -> Fraction:
        """The invariant form on the weight lattice, (alpha_i,alpha_i) = 2 for
        short roots; values are rational on P x P."""
        n = self.weight_to_root(nu)
        return sum((Fraction(self.d[j]) * mu[j] * n[j] for j in range(self.rank)), Fraction(0))

    def height_and_order(self, lam: tuple[int, ...], mu: tuple[int, ...]) -> tuple[bool, int | None]:
        """Whether mu <= lam in the dominance order on P (lam - mu in Q^+),
        and the height of the difference when comparable."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        coords = self.weight_to_root(diff)
        if all(x.denominator == 1 and x >= 0 for x in coords):
            return True, int(sum(coords))
        return False, None

    def root_string(self, i: int, alpha: tuple[int, ...]) -> tuple[int, int]:
        """(p, q): the number of consecutive steps alpha + k alpha_i resp.
        alpha - k alpha_i staying inside Phi; 1-based i."""
        if tuple(alpha) not in self.roots:
            raise NotARoot(f"{alpha} is not a root")
        e = tuple(1 if j == i - 1 else 0 for j in range(self.rank))
        p = 0
        cur = alpha
        while True:
            cur = tuple(a + b for a, b in zip(cur, e))
            if cur in self.roots:
                p += 1
            else:
                break
        q = 0
        cur = alpha
        while True:
            cur = tuple(a - b for a, b in zip(cur, e))
            if cur in self.roots:
                q += 1
            else:
                break
        return p, q

    # -- Weyl words ----------------------------------------------------------

    def word_length(self, word: tuple[int, ...]) -> int:
        """Coxeter length of the product s_{i_1}...s_{i_t}: the number of
        positive roots it sends negative."""
        return sum(
            1
            for a in self.positive_roots
            if not all(x >= 0 for x in self.apply_word_root(word, a))
        )

    def is_reduced(self, word: tuple[int, ...]) -> bool:
        return self.word_length(word) == len(word)

    def longest_element(self) -> tuple[int, ...]:
        """The lexicographically smallest reduced word for w_0, by left-greedy
        descent (at each step the smallest i with l(s_i w) < l(w))."""
        # matrix of w^{-1} on root coordinates; start from w = w_0
        n = self.rank
        winv = self._w0_root_matrix()
        word: list[int] = []
        for _ in range(len(self.positive_roots)):
            for i in range(n):
                col = tuple(winv[k][i] for k in range(n))
                if all(x <= 0 for x in col) and any(x < 0 for x in col):
                    break
            else:
                break
            word.append(i + 1)
            # w := s_i w  =>  w^{-1} := w^{-1} s_i  (right-multiply by s_i)
            winv = _mat_mul(winv, self._refl_root_matrix(i))
        if any(any(winv[a][b] != (1 if a == b else 0) for b in range(n)) for a in range(n)):
            raise AssertionError("longest-element computation did not terminate at e")
        return tuple(word)

    @lru_cache(maxsize=None)
    def _refl_root_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        for j in range(n):
            m[i][j] -= self.cartan[i][j]
        return tuple(tuple(r) for r in m)

    def _w0_root_matrix(self) -> tuple[tuple[int, ...], ...]:
        # any reduced word for w_0 via the descent-from-rho algorithm
        rho = tuple(1 for _ in range(self.rank))
        word: list[int] = []
        mu = rho
        while any(x > 0 for x in mu):
            i = next(k for k in range(self.rank) if mu[k] > 0)
            mu = self.reflect_weight(i + 1, mu)
            word.append(i + 1)
        m = _identity(self.rank)
        for i in word:
            m = _mat_mul(self._refl_root_matrix(i - 1), m)
        return m

    def reduced_words(self, word: tuple[int, ...], limit: int = 10_000) -> list[tuple[int, ...]]:
        """All reduced words of the element given by a reduced word (small
        elements only; guarded by a hard limit)."""
        if not self.is_reduced(word):
            raise NotReduced(f"{word} is not reduced")
        out: list[tuple[int, ...]] = []

        def go(mat, prefix):
            if len(out) >= limit:
                return
            n = self.rank
            if all(mat[a][b] == (1 if a == b else 0) for a in range(n) for b in range(n)):
                out.append(tuple(prefix))
                return
            for i in range(n):
                col = tuple(mat[k][i] for k in range(n))
                if all(x <= 0 for x in col) and any(x < 0 for x in col):
                    go(_mat_mul(mat, self._refl_root_matrix(i)), prefix + [i + 1])

        # mat tracks w^{-1} in root coordinates
        m = _identity(self.rank)
        for i in reversed(word):
            m = _mat_mul(m, self._refl_root_matrix(i - 1))
        go(m, [])
        return out

    def weyl_orbit(self, mu: tuple[int, ...]) -> list[tuple[int, ...]]:
        seen = {tuple(mu)}
        frontier = [tuple(mu)]
        while frontier:
            new = []
            for w in frontier:
                for i in range(1, self.rank + 1):
                    x = self.reflect_weight(i, w)
                    if x not in seen:
                        seen.add(x)
                        new.append(x)
            frontier = new
        return sorted(seen)


def is_reduced_for_pair(rd: RootData, word: list[int], check_lengths: tuple[int, int] | None = None) -> bool:
    """A signed word is reduced for (u, w) when its negative subword (absolute
    values, for u) and its positive subword (for w) are both reduced."""
    neg = tuple(-x for x in word if x < 0)
    pos = tuple(x for x in word if x > 0)
    if check_lengths is not None and (len(neg), len(pos)) != check_lengths:
        return False
    return rd.is_reduced(neg) and rd.is_reduced(pos)


def _identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))


def _mat_mul(a, b) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _invert_rational(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]
