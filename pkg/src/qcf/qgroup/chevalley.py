"""Integral Chevalley-type basis for simply-laced types via a sign cocycle,
and the classical bracket-witness checks for the zero-weight coefficients."""

from __future__ import annotations

import random

from ..lie import RootData


class ChevalleyAlgebra:
    """Basis {h_i} u {e_alpha}: [h_i, e_alpha] = <alpha_i^vee, alpha> e_alpha,
    [e_alpha, e_beta] = eps(alpha,beta) e_{alpha+beta} when alpha+beta is a
    root, and eps(alpha,-alpha) h_alpha when beta = -alpha.

    eps is the bimultiplicative sign (-1)^{B(.,.)} of an asymmetrized Cartan
    form; all structure constants are integers, +-1 on root pairs."""

    def __init__(self, rd: RootData) -> None:
        if any(d != 1 for d in rd.d):
            raise ValueError("simply-laced types only")
        self.rd = rd
        r = rd.rank
        self.bform = [[0] * r for _ in range(r)]
        for i in range(r):
            self.bform[i][i] = 2
            for j in range(i + 1, r):
                self.bform[i][j] = rd.cartan[i][j]
        self.basis: list[tuple[str, object]] = [("h", i) for i in range(1, r + 1)]
        self.basis += [("e", a) for a in sorted(rd.roots)]
        self.index = {b: n for n, b in enumerate(self.basis)}

    def eps(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        r = self.rd.rank
        tot = sum(a[i] * self.bform[i][j] * b[j] for i in range(r) for j in range(r))
        return -1 if tot % 2 else 1

    def bracket_basis(self, x: tuple[str, object], y: tuple[str, object]) -> dict[int, int]:
        rd = self.rd
        r = rd.rank
        (kx, ax), (ky, ay) = x, y
        if kx == "h" and ky == "h":
            return {}
        if kx == "h":
            pair = sum(rd.cartan[ax - 1][j] * ay[j] for j in range(r))
            return {self.index[y]: pair} if pair else {}
        if ky == "h":
            pair = sum(rd.cartan[ay - 1][j] * ax[j] for j in range(r))
            return {self.index[x]: -pair} if pair else {}
        s = tuple(u + v for u, v in zip(ax, ay))
        if all(v == 0 for v in s):
            sign = self.eps(ax, ay)
            return {self.index[("h", i + 1)]: sign * ax[i] for i in range(r) if ax[i]}
        if s in rd.roots:
            return {self.index[("e", s)]: self.eps(ax, ay)}
        return {}

    def bracket(self, u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for n, c in u.items():
            for m, d in v.items():
                for k, e in self.bracket_basis(self.basis[n], self.basis[m]).items():
                    s = out.get(k, 0) + c * d * e
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def e(self, alpha: tuple[int, ...]) -> dict[int, int]:
        return {self.index[("e", alpha)]: 1}

    def h(self, i: int) -> dict[int, int]:
        return {self.index[("h", i)]: 1}

    def jacobi_holds(self, x: dict, y: dict, z: dict) -> bool:
        lhs = self.bracket(x, self.bracket(y, z))
        rhs = self.bracket(self.bracket(x, y), z)
        for k, v in self.bracket(y, self.bracket(x, z)).items():
            rhs[k] = rhs.get(k, 0) + v
        return lhs == {k: v for k, v in rhs.items() if v}


def chevalley_checks(rd: RootData, jacobi_samples: int = 200, rng_seed: int = 0) -> dict:
    """The bracket-witness suite for the classical zero-weight rewriting:

    (i)  every root vector is a one-step bracket of a simple root vector and
         another root vector, up to signs searched over {1,-1};
    (ii) every Cartan generator is [eps e_{alpha_i}, e_{-alpha_i}];
    (iii) the h(x)h block of the dual bracket of each t_i* vanishes;
    plus the Jacobi identity on sampled basis triples.
    """
    alg = ChevalleyAlgebra(rd)
    r = rd.rank
    report: dict = {"type": f"{rd.type}{rd.rank}", "witnesses": {}, "result": "pass"}
    simples = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    for beta in sorted(rd.roots):
        found = None
        for i in range(r):
            for epsilon in (1, -1):
                step = tuple(epsilon * x for x in simples[i])
                rest = tuple(b - s for b, s in zip(beta, step))
                if rest == (0,) * r or rest not in rd.roots:
                    continue
                br = alg.bracket(alg.e(step), alg.e(rest))
                if br == alg.e(beta):
                    found = (i + 1, epsilon, 1)
                elif br == {k: -v for k, v in alg.e(beta).items()}:
                    found = (i + 1, epsilon, -1)
                if found:
                    break
            if found:
                break
        if not found:
            report["result"] = "fail"
            report.setdefault("failures", []).append(f"no bracket witness for root {beta}")
        else:
            report["witnesses"][str(beta)] = found
    for i in range(1, r + 1):
        ok = False
        for epsilon in (1, -1):
            lhs = alg.bracket({alg.index[("e", simples[i - 1])]: epsilon}, alg.e(tuple(-x for x in simples[i - 1])))
            if lhs == alg.h(i):
                ok = True
                break
        if not ok:
            report["result"] = "fail"
            report.setdefault("failures", []).append(f"no Cartan witness for t_{i}")
    # (iii): h(x)h component of the dual bracket of t_i^*:
    # <m*(t_i^*), h_j (x) h_k> = t_i^*([h_j, h_k])
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            for k in range(1, r + 1):
                val = alg.bracket(alg.h(j), alg.h(k)).get(alg.index[("h", i)], 0)
                if val != 0:
                    report["result"] = "fail"
                    report.setdefault("failures", []).append(
                        f"h(x)h block of m*(t_{i}*) nonzero at ({j},{k})"
                    )
    rng = random.Random(rng_seed)
    bad = 0
    for _ in range(jacobi_samples):
        x, y, z = (dict([(alg.index[rng.choice(alg.basis)], 1)]) for _ in range(3))
        if not alg.jacobi_holds(x, y, z):
            bad += 1
    report["jacobi_samples"] = jacobi_samples
    report["jacobi_failures"] = bad
    if bad:
        report["result"] = "fail"
    return report
