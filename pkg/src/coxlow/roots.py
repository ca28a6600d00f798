"""Root enumeration by depth, dominance, dp_inf, small and medium roots, and
maximal dihedral reflection subgroups.

Depth and dp_inf are computed on the roots themselves by greedy descent
(any simple reflection with B(alpha_s, beta) > 0 lowers depth by exactly
one).  The enumerators below only decide which roots to visit.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .coxeter import CoxeterSystem, Root

__all__ = [
    "RootRegistry", "SmallRootSet", "MediumRootSet", "ResourceCapExceeded",
    "enumerate_roots", "dominates", "dp_inf", "dp_inf_oracle", "small_roots",
    "medium_roots", "dominance_height", "Plane", "plane", "canonical_simples",
    "maximal_dihedral_simples", "roots_csv",
]

DEFAULT_LAYER_CAP = 64


class ResourceCapExceeded(RuntimeError):
    """A configured layer/time cap was hit before a computation closed."""


@dataclass
class RootRegistry:
    system: CoxeterSystem
    by_depth: list[list[Root]]
    parents: dict[Root, tuple[int, Root]]

    @property
    def roots(self) -> list[Root]:
        return [r for layer in self.by_depth for r in layer]

    @property
    def max_depth(self) -> int:
        return len(self.by_depth) - 1

    def __contains__(self, r) -> bool:
        return r in self.parents or (r.positive and r._dp == 0)

    def __len__(self):
        return sum(map(len, self.by_depth))


def _children(beta: Root):
    """Roots s(beta) one layer deeper, with their generator."""
    for s in beta.system.gens:
        if beta.b2_cat(s) < 0:
            yield s, beta.reflect(s)


def enumerate_roots(system: CoxeterSystem, max_depth: int) -> RootRegistry:
    """Positive roots of depth <= max_depth, layered by depth."""
    layer = list(system.simple_roots)
    by_depth = [layer]
    parents: dict[Root, tuple[int, Root]] = {}
    seen = set(layer)
    for _ in range(max_depth):
        nxt = []
        for beta in layer:
            for s, gamma in _children(beta):
                if gamma not in seen:
                    seen.add(gamma)
                    parents[gamma] = (s, beta)
                    nxt.append(gamma)
        if not nxt:
            break
        for g in nxt:
            assert g.dp == len(by_depth)
        by_depth.append(nxt)
        layer = nxt
    return RootRegistry(system, by_depth, parents)


def dominates(alpha: Root, beta: Root) -> bool:
    """alpha precedes beta in dominance: dp(alpha) <= dp(beta) and B(alpha, beta) >= 1."""
    if alpha is beta:
        return True
    if alpha.dp > beta.dp:
        return False
    W = alpha.system
    return (W.bilinear2(alpha, beta) - 2).sign() >= 0


def dp_inf(beta: Root) -> int:
    return beta.dp_inf


def dp_inf_oracle(beta: Root) -> int:
    """(#{alpha in Phi(s_beta) : B(alpha, beta) >= 1} - 1) / 2, independent of the recurrence."""
    W = beta.system
    count = sum(1 for a in beta.reflection().inv if (W.bilinear2(a, beta) - 2).sign() >= 0)
    if count % 2 == 0:
        raise AssertionError(f"even dominance count {count} for {beta}")
    return (count - 1) // 2


@dataclass
class SmallRootSet:
    system: CoxeterSystem
    m: int
    roots: frozenset
    closed: bool
    depth: int                         # deepest layer visited

    def __contains__(self, r) -> bool:
        return r in self.roots

    def __len__(self):
        return len(self.roots)

    def sorted(self) -> list[Root]:
        return sorted(self.roots, key=lambda r: (r.dp, r.id))


def _restricted_bfs(system, keep, layer_cap, what):
    """Layered BFS from the simple roots expanding only roots with keep(root).

    Valid whenever keep is inherited downward: if keep(s(beta)) holds with
    dp(s(beta)) = dp(beta)+1 then keep(beta) holds.  Stops at the first layer
    with no kept root.
    """
    layer = [r for r in system.simple_roots if keep(r)]
    found = set(layer)
    seen = set(system.simple_roots)
    depth = 0
    while layer:
        if depth >= layer_cap:
            raise ResourceCapExceeded(f"{what}: layer cap {layer_cap} reached")
        nxt = []
        for beta in layer:
            for _, gamma in _children(beta):
                if gamma not in seen:
                    seen.add(gamma)
                    if keep(gamma):
                        nxt.append(gamma)
        found.update(nxt)
        if nxt:
            depth += 1
        layer = nxt
    return frozenset(found), depth


def small_roots(system: CoxeterSystem, m: int, layer_cap: int = DEFAULT_LAYER_CAP) -> SmallRootSet:
    """Sigma_m, the roots with dp_inf <= m.

    dp_inf never drops along a depth-increasing simple reflection, so every
    m-small root is reached through m-small roots only.
    """
    roots, depth = _restricted_bfs(system, lambda r: r.dp_inf <= m, layer_cap, f"Sigma_{m}")
    return SmallRootSet(system, m, roots, True, depth)


# --- dominance height / medium roots --------------------------------------

def dominated_set(beta: Root) -> list[Root]:
    """Roots strictly dominated by beta; all of them lie in Phi(s_beta)."""
    return [a for a in beta.reflection().inv if a is not beta and dominates(a, beta)]


_height_cache_attr = "_dom_height"


def dominance_height(beta: Root, cache: dict | None = None) -> int:
    """Length of the longest strict dominance chain ending at beta (0 if none)."""
    if cache is None:
        cache = beta.system.__dict__.setdefault(_height_cache_attr, {})
    h = cache.get(beta)
    if h is None:
        below = dominated_set(beta)
        h = 0
        for a in sorted(below, key=lambda r: r.dp):
            h = max(h, 1 + dominance_height(a, cache))
        cache[beta] = h
    return h


@dataclass
class MediumRootSet:
    system: CoxeterSystem
    m: int
    roots: frozenset
    depth_bound: int
    closed: bool                     # the restricted search emptied before the bound
    experimental: bool = True

    def __contains__(self, r) -> bool:
        return r in self.roots

    def __len__(self):
        return len(self.roots)


def medium_roots(system: CoxeterSystem, m: int, depth_bound: int = 32) -> MediumRootSet:
    """Roots admitting no strict dominance chain of length m+1 below them.

    Experimental: the search visits roots of depth <= depth_bound, expanding
    only roots of height <= m (height is non-decreasing along
    depth-increasing reflections).
    """
    layer = [r for r in system.simple_roots]
    found = set(layer)
    seen = set(layer)
    closed = False
    for _ in range(depth_bound):
        nxt = []
        for beta in layer:
            for _, gamma in _children(beta):
                if gamma not in seen:
                    seen.add(gamma)
                    if dominance_height(gamma) <= m:
                        nxt.append(gamma)
        if not nxt:
            closed = True
            break
        found.update(nxt)
        layer = nxt
    else:
        closed = not any(dominance_height(g) <= m for b in layer for _, g in _children(b))
    return MediumRootSet(system, m, frozenset(found), depth_bound, closed)


# --- planes and maximal dihedral subgroups ---------------------------------

class Plane:
    """The linear span of two non-proportional roots, with an exact membership test."""

    def __init__(self, alpha: Root, beta: Root):
        self.alpha, self.beta = alpha, beta
        a, b = alpha.coords, beta.coords
        n = len(a)
        self.minors = {}
        for i in range(n):
            for j in range(i + 1, n):
                p = a[i] * b[j] - a[j] * b[i]
                if not p.is_zero():
                    self.minors[(i, j)] = p
        if not self.minors:
            raise ValueError("roots are proportional")
        self.n = n
        self._member: dict[Root, bool] = {}

    def __contains__(self, g: Root) -> bool:
        res = self._member.get(g)
        if res is None:
            res = self._contains(g.coords)
            self._member[g] = res
        return res

    def _contains(self, c) -> bool:
        n = self.n
        if n <= 2:
            return True
        mins = self.minors
        z = None
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    tot = None
                    for (x, y), sgn, other in (((j, k), 1, i), ((i, k), -1, j), ((i, j), 1, k)):
                        p = mins.get((x, y))
                        if p is None or c[other].is_zero():
                            continue
                        t = c[other] * p
                        if sgn < 0:
                            t = -t
                        tot = t if tot is None else tot + t
                    if tot is not None and not tot.is_zero():
                        return False
        return True

    def is_simple(self, delta: Root) -> bool:
        """delta is a canonical simple root of the maximal dihedral subgroup on this plane."""
        return all(g is delta or g not in self for g in delta.reflection().inv)


def plane(alpha: Root, beta: Root) -> Plane:
    W = alpha.system
    cache = W.__dict__.setdefault("_planes", {})
    key = (alpha, beta) if alpha.id < beta.id else (beta, alpha)
    p = cache.get(key)
    if p is None:
        p = Plane(*key)
        cache[key] = p
    return p


def maximal_dihedral_simples(alpha: Root, beta: Root) -> tuple[Root, Root]:
    """Canonical simple roots of the maximal dihedral subgroup containing s_alpha, s_beta.

    A non-simple root x of the plane is a reflection x = d1 ... (d2): the
    first two plane roots of Phi(s_x) in reduced-word order give d1 and
    s_{d1}(d2).  Reaching the simples this way needs no plane enumeration.
    """
    P = plane(alpha, beta)
    cands = set()
    for x in (alpha, beta):
        if P.is_simple(x):
            cands.add(x)
            continue
        pr = [g for g in x.reflection().inversion_list() if g in P]
        cands.add(pr[0])
        cands.add(_reflect_root(pr[0], pr[1]))
    simples = sorted((d for d in cands if d.positive and P.is_simple(d)), key=lambda r: (r.dp, r.id))
    if len(simples) != 2:
        raise AssertionError(f"expected 2 canonical simples for {alpha}, {beta}, got {simples}")
    return simples[0], simples[1]


def _reflect_root(delta: Root, v: Root) -> Root:
    """s_delta(v), computed through the reflection word of delta."""
    return delta.reflection().act(v)


def canonical_simples(alpha: Root, beta: Root, registry: RootRegistry | None = None) -> tuple[Root, Root]:
    """Canonical simple system of the maximal dihedral reflection subgroup on span(alpha, beta).

    With a registry, candidates are the registry roots in the plane of depth
    at most max(dp(alpha), dp(beta)); otherwise they are derived from the
    reflection words of alpha and beta.
    """
    if registry is None:
        return maximal_dihedral_simples(alpha, beta)
    P = plane(alpha, beta)
    bound = max(alpha.dp, beta.dp)
    if registry.max_depth < bound:
        raise ValueError("registry too shallow for canonical_simples")
    simples = [g for layer in registry.by_depth[:bound + 1] for g in layer
               if g in P and P.is_simple(g)]
    if len(simples) != 2:
        raise ValueError(f"found {len(simples)} simple candidates; registry depth insufficient")
    return simples[0], simples[1]


def roots_csv(roots, with_dp_inf: bool = True) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["id", "label", "coords", "dp", "dp_inf"])
    for r in sorted(roots, key=lambda r: (r.dp, r.id)):
        wr.writerow([r.id, r.label(), r.coords_str(), r.dp, r.dp_inf if with_dp_inf else ""])
    return buf.getvalue()
