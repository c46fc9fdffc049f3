"""Seed records: exchange matrices, compatible skew forms, and their mutation."""

from __future__ import annotations

import itertools
from fractions import Fraction


class BadVertex(ValueError):
    pass


class Incompatible(ValueError):
    """The pair (Lambda, B~) violates compatibility; carries the first bad (i,k)."""

    def __init__(self, i: int, k: int, value) -> None:
        super().__init__(f"compatibility fails at (i={i}, k={k}): got {value}")
        self.position = (i, k)


class AssumptionError(ValueError):
    """2 is a zero divisor of the coefficient ring and an isolated unfrozen
    vertex exists."""


def _plus(a: int) -> int:
    return a if a > 0 else 0


class Seed:
    """Combinatorial seed data: ordered vertices, frozen/unfrozen split,
    symmetrizers, exchange matrix B~ (rows I, columns I_uf), skew form Lambda.

    Cluster variables are tracked separately (see qcf.cluster); the seed is
    pure matrix data plus optional display labels.
    """

    def __init__(
        self,
        vertices: list[int] | tuple[int, ...],
        unfrozen: set[int] | frozenset[int],
        d: dict[int, int],
        btilde: list[list[int]],
        lam: list[list[int]] | None,
        quantum: bool = True,
        labels: dict[int, str] | None = None,
    ) -> None:
        self.vertices = tuple(sorted(vertices))
        if self.vertices != tuple(vertices):
            raise ValueError("vertices must be listed in ascending label order")
        self.unfrozen = frozenset(unfrozen)
        if not self.unfrozen <= set(self.vertices):
            raise BadVertex("unfrozen vertices must be vertices")
        self.pos = {v: i for i, v in enumerate(self.vertices)}
        self.unfrozen_list = tuple(v for v in self.vertices if v in self.unfrozen)
        self.upos = {v: i for i, v in enumerate(self.unfrozen_list)}
        self.d = dict(d)
        if set(self.d) != set(self.vertices) or any(x <= 0 for x in self.d.values()):
            raise ValueError("need a positive symmetrizer for every vertex")
        n, m = len(self.vertices), len(self.unfrozen_list)
        if len(btilde) != n or any(len(r) != m for r in btilde):
            raise ValueError("B~ must be I x I_uf in canonical order")
        self.btilde = tuple(tuple(r) for r in btilde)
        if lam is None:
            lam = [[0] * n for _ in range(n)]
        if len(lam) != n or any(len(r) != n for r in lam):
            raise ValueError("Lambda must be I x I")
        self.lam = tuple(tuple(r) for r in lam)
        self.quantum = quantum
        self.labels = dict(labels) if labels else {}
        self._validate()

    # -- basic structure ---------------------------------------------------

    def _validate(self) -> None:
        for i in self.unfrozen_list:
            for j in self.unfrozen_list:
                bij = self.b(i, j)
                bji = self.b(j, i)
                if self.d[i] * bij != -self.d[j] * bji:
                    raise ValueError(f"not skew-symmetrizable at ({i},{j})")
        for a in range(len(self.vertices)):
            for b in range(len(self.vertices)):
                if self.lam[a][b] != -self.lam[b][a]:
                    raise ValueError("Lambda must be skew-symmetric")
        if self.quantum:
            self.check_compatible()

    def b(self, i: int, k: int) -> int:
        """Entry b_{ik} for i in I, k in I_uf."""
        return self.btilde[self.pos[i]][self.upos[k]]

    def btilde_columns(self) -> list[list[int]]:
        return [[self.btilde[r][c] for r in range(len(self.vertices))] for c in range(len(self.unfrozen_list))]

    def column(self, k: int) -> list[int]:
        c = self.upos[k]
        return [self.btilde[r][c] for r in range(len(self.vertices))]

    def is_isolated(self, k: int) -> bool:
        return all(x == 0 for x in self.column(k))

    def assumption_holds(self, ring) -> bool:
        """Assumption gating general coefficient rings: 2 regular, or no
        isolated unfrozen vertex."""
        if ring.two_is_regular:
            return True
        return not any(self.is_isolated(k) for k in self.unfrozen_list)

    def require_assumption(self, ring) -> None:
        if not self.assumption_holds(ring):
            raise AssumptionError(
                "2 is a zero divisor of the coefficient ring and the seed has an isolated unfrozen vertex"
            )

    def check_compatible(self) -> dict[int, int]:
        """The forced positive integers d'_k with Lambda B~ = -diag(d')
        on unfrozen columns, or Incompatible."""
        dprime: dict[int, int] = {}
        n = len(self.vertices)
        for k in self.unfrozen_list:
            kc = self.upos[k]
            for i in range(n):
                val = sum(self.lam[i][j] * self.btilde[j][kc] for j in range(n))
                if self.vertices[i] == k:
                    if val >= 0:
                        raise Incompatible(self.vertices[i], k, val)
                    dprime[k] = -val
                elif val != 0:
                    raise Incompatible(self.vertices[i], k, val)
        return dprime

    def full_rank(self) -> bool:
        cols = self.btilde_columns()
        m = len(cols)
        if m == 0:
            return True
        rows = [[Fraction(cols[c][r]) for c in range(m)] for r in range(len(self.vertices))]
        rank = 0
        for c in range(m):
            piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            pr = rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i][c] != 0:
                    f = rows[i][c] / pr[c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
            rank += 1
        return rank == m

    # -- mutation ----------------------------------------------------------

    def psi_map(self, k: int) -> list[list[int]]:
        """Matrix of psi_k in the f-basis: psi_k(f_k) = -f_k + sum [-b_jk]_+ f_j,
        identity on the other basis vectors."""
        if k not in self.unfrozen:
            raise BadVertex(f"{k} is not an unfrozen vertex")
        n = len(self.vertices)
        kp = self.pos[k]
        psi = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        kc = self.upos[k]
        for i in range(n):
            psi[i][kp] = _plus(-self.btilde[i][kc])
        psi[kp][kp] = -1
        return psi

    def mutate(self, k: int) -> Seed:
        """New seed with B~ and Lambda mutated at unfrozen k; involutive."""
        if k not in self.unfrozen:
            raise BadVertex(f"{k} is not an unfrozen vertex")
        n = len(self.vertices)
        kp, kc = self.pos[k], self.upos[k]
        newb = []
        for i in range(n):
            row = []
            for jc, j in enumerate(self.unfrozen_list):
                bij = self.btilde[i][jc]
                if i == kp or j == k:
                    row.append(-bij)
                else:
                    bik = self.btilde[i][kc]
                    bkj = self.btilde[kp][jc]
                    row.append(bij + _plus(bik) * _plus(bkj) - _plus(-bik) * _plus(-bkj))
            newb.append(row)
        psi = self.psi_map(k)
        newlam = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                newlam[i][j] = sum(
                    psi[a][i] * self.lam[a][b] * psi[b][j] for a in range(n) for b in range(n)
                )
        labels = {v: s for v, s in self.labels.items() if v != k}
        return Seed(self.vertices, self.unfrozen, self.d, newb, newlam, self.quantum, labels)

    def mutate_sequence(self, ks: list[int]) -> Seed:
        s = self
        for k in ks:
            s = s.mutate(k)
        return s

    # -- comparison --------------------------------------------------------

    def same_matrices(self, other: Seed) -> bool:
        return (
            self.vertices == other.vertices
            and self.unfrozen == other.unfrozen
            and self.d == other.d
            and self.btilde == other.btilde
            and self.lam == other.lam
        )

    def equal_up_to_permutation(self, other: Seed) -> dict[int, int] | None:
        """A frozen-fixing permutation sigma of I_uf with other = sigma(self),
        i.e. b_{sigma i, sigma k}(other) = b_{ik}(self) and likewise for
        Lambda and d; None if there is none.  Labels are ignored."""
        if self.vertices != other.vertices or self.unfrozen != other.unfrozen:
            return None
        src = self.unfrozen_list
        for perm in itertools.permutations(src):
            sigma = dict(zip(src, perm))
            if any(self.d[i] != other.d[sigma[i]] for i in src):
                continue
            full = {v: sigma.get(v, v) for v in self.vertices}
            ok = True
            for i in self.vertices:
                for k in src:
                    if self.b(i, k) != other.b(full[i], sigma[k]):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            for i in self.vertices:
                for j in self.vertices:
                    if self.lam[self.pos[i]][self.pos[j]] != other.lam[other.pos[full[i]]][other.pos[full[j]]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return sigma
        return None

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [
                {
                    "id": v,
                    "frozen": v not in self.unfrozen,
                    "d": self.d[v],
                    **({"label": self.labels[v]} if v in self.labels else {}),
                }
                for v in self.vertices
            ],
            "B": [list(r) for r in self.btilde],
            "Lambda": [list(r) for r in self.lam],
            "quantum": self.quantum,
        }

    @classmethod
    def from_json(cls, data: dict) -> Seed:
        vs = [entry["id"] for entry in data["vertices"]]
        unfrozen = {entry["id"] for entry in data["vertices"] if not entry["frozen"]}
        d = {entry["id"]: entry["d"] for entry in data["vertices"]}
        labels = {entry["id"]: entry["label"] for entry in data["vertices"] if "label" in entry}
        return cls(vs, unfrozen, d, data["B"], data.get("Lambda"), data.get("quantum", True), labels)

    def __repr__(self) -> str:
        return f"Seed(I={list(self.vertices)}, uf={sorted(self.unfrozen)}, quantum={self.quantum})"


def principal_quantum_seed(b: list[list[int]], d: list[int]) -> Seed:
    """Principal-coefficient quantum seed over a skew-symmetrizable principal
    part: vertices 1..2n with n+1..2n frozen, B~ = [B; Id], and the standard
    compatible form Lambda = [[0, -D], [D, -DB]] where D = diag(d); the
    symmetrizer makes the lower-right block skew and gives d'_k = d_k."""
    n = len(b)
    vertices = list(range(1, 2 * n + 1))
    unfrozen = set(range(1, n + 1))
    btilde = [list(row) for row in b] + [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    lam = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        lam[i][n + i] = -d[i]
        lam[n + i][i] = d[i]
        for j in range(n):
            lam[n + i][n + j] = -d[i] * b[i][j]
    dd = {i + 1: d[i] for i in range(n)}
    dd.update({n + i + 1: d[i] for i in range(n)})
    return Seed(vertices, unfrozen, dd, btilde, lam, quantum=True)


def classical_seed(vertices, unfrozen, d, btilde, labels=None) -> Seed:
    """Classical seed: Lambda = 0 identically, no compatibility requirement."""
    return Seed(vertices, unfrozen, d, btilde, None, quantum=False, labels=labels)
