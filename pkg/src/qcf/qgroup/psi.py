"""Decompositions of a root as a sum of two adjoint weights, maximal in the
first component: the combinatorial input for rewriting zero-weight matrix
coefficients."""

from __future__ import annotations

from ..lie import RootData


class OutOfDomain(ValueError):
    pass


def weight_support(rd: RootData) -> set[tuple[int, ...]]:
    """Weights of the adjoint module in root coordinates: all roots and zero."""
    return set(rd.roots) | {(0,) * rd.rank}


def pair_set(rd: RootData, beta: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    support = weight_support(rd)
    out = []
    for b1 in sorted(support):
        b2 = tuple(x - y for x, y in zip(beta, b1))
        if b2 in support:
            out.append((b1, b2))
    return out


def _leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """a <= b in the root-lattice dominance order (difference in Q^+)."""
    return all(y - x >= 0 for x, y in zip(a, b))


def psi_decompose(rd: RootData, beta: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """A pair (b1, b2) of nonzero adjoint weights with b1 + b2 = beta and b1
    dominance-maximal among all such decompositions; beta must be a root
    other than the highest root or its negative."""
    beta = tuple(beta)
    if beta not in rd.roots or beta in (rd.theta, tuple(-x for x in rd.theta)):
        raise OutOfDomain(f"{beta} must be a root different from ±theta")
    r = rd.rank
    simples = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    positive = all(x >= 0 for x in beta)
    seed = None
    for i in range(r):
        if positive:
            up = tuple(a + s for a, s in zip(beta, simples[i]))
            if up in rd.roots:
                seed = (up, tuple(-s for s in simples[i]))
                break
        else:
            dn = tuple(a - s for a, s in zip(beta, simples[i]))
            if dn in rd.roots:
                seed = (simples[i], dn)
                break
    if seed is None:
        raise AssertionError(f"no starting decomposition for {beta}")
    pairs = pair_set(rd, beta)
    cur = seed
    improved = True
    while improved:
        improved = False
        for cand in pairs:
            if cand != cur and _leq(cur[0], cand[0]):
                cur = cand
                improved = True
    if cur[0] == (0,) * r or cur[1] == (0,) * r:
        raise AssertionError(f"maximal pair for {beta} has a zero component")
    return cur


def verify_psi_pair(rd: RootData, beta: tuple[int, ...], pair) -> bool:
    """Exhaustively check the two conditions against the full pair set:
    the first component of no other pair dominates the chosen one, and both
    components are nonzero."""
    b1, b2 = pair
    zero = (0,) * rd.rank
    if b1 == zero or b2 == zero:
        return False
    if tuple(x + y for x, y in zip(b1, b2)) != tuple(beta):
        return False
    for other in pair_set(rd, beta):
        if other == pair:
            continue
        if _leq(b1, other[0]):
            return False
    return True
