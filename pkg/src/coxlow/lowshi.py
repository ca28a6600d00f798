"""Low elements, Shi sign types, the Shi polyhedron and weak-order convexity."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .coxeter import CoxeterSystem, Element, Root
from .roots import SmallRootSet, MediumRootSet, dominates, medium_roots
from .shortinv import short_inversions

__all__ = [
    "SignType", "LowElementSet", "ShiPolyhedron", "sign_type", "is_low", "is_low_by_definition",
    "low_elements", "project_to_low", "boundary_roots", "reduced_boundary", "in_polyhedron", "polyhedron_chambers",
    "weak_interval", "is_convex", "join", "garside_checks", "next_level_check",
    "medium_low_elements", "region_table", "check_regions", "right_descent_roots",
]


@dataclass(frozen=True)
class SignType:
    m: int
    roots: frozenset

    def __len__(self):
        return len(self.roots)


def sign_type(w: Element, sigma) -> SignType:
    roots = sigma.roots if hasattr(sigma, "roots") else sigma
    inv = w.inv
    if len(inv) < len(roots):
        st = frozenset(r for r in inv if r in roots)
    else:
        st = frozenset(r for r in roots if r in inv)
    return SignType(getattr(sigma, "m", -1), st)


def right_descent_roots(w: Element) -> list[Root]:
    W = w.system
    return [-w.act(W.simple(s)) for s in sorted(w.right_descents())]


def is_low(w: Element, sigma) -> bool:
    """Every right descent root of w is m-small (equivalently Phi^1(w) is)."""
    roots = sigma.roots if hasattr(sigma, "roots") else sigma
    return all(r in roots for r in right_descent_roots(w))


def is_low_by_definition(w: Element, sigma) -> bool:
    roots = sigma.roots if hasattr(sigma, "roots") else sigma
    return all(r in roots for r in short_inversions(w))


@dataclass
class LowElementSet:
    m: int
    sigma: object
    elements: list[Element]
    index: dict[frozenset, Element]

    def __contains__(self, w) -> bool:
        return w in self._members

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __post_init__(self):
        self._members = frozenset(self.elements)

    @property
    def system(self) -> CoxeterSystem:
        return self.elements[0].system

    def max_length(self) -> int:
        return max(w.length for w in self.elements)


def _low_bfs(system: CoxeterSystem, test, cap: int | None = None) -> list[Element]:
    found = [system.identity]
    seen = {system.identity}
    frontier = [system.identity]
    while frontier:
        nxt = []
        for u in frontier:
            dl = u.left_descents()
            for s in system.gens:
                if s in dl:
                    continue
                x = u.left_mul(s)
                if x not in seen:
                    seen.add(x)
                    if test(x):
                        nxt.append(x)
        nxt.sort(key=Element.sort_key)
        found.extend(nxt)
        frontier = nxt
        if cap is not None and len(found) > cap:
            from .roots import ResourceCapExceeded
            raise ResourceCapExceeded(f"more than {cap} low elements")
    found.sort(key=Element.sort_key)
    return found


def low_elements(system: CoxeterSystem, sigma: SmallRootSet, cap: int | None = None) -> LowElementSet:
    """L_m by prepending generators; complete since L_m is closed under suffixes."""
    elems = _low_bfs(system, lambda x: is_low(x, sigma), cap)
    index: dict[frozenset, Element] = {}
    for w in elems:
        st = sign_type(w, sigma).roots
        if st in index:
            raise AssertionError(f"{index[st]} and {w} share a sign type")
        index[st] = w
    return LowElementSet(sigma.m, sigma, elems, index)


def project_to_low(w: Element, L: LowElementSet) -> Element:
    st = sign_type(w, L.sigma).roots
    u = L.index.get(st)
    if u is None:
        raise AssertionError(f"sign type of {w} has no low representative")
    if not (u.inv <= w.inv):
        raise AssertionError(f"low representative {u} is not a prefix of {w}")
    return u


def region_table(elements: Iterable[Element], sigma) -> dict[frozenset, list[Element]]:
    groups: dict[frozenset, list[Element]] = {}
    for w in elements:
        groups.setdefault(sign_type(w, sigma).roots, []).append(w)
    return groups


def check_regions(ball: list[Element], L: LowElementSet) -> dict:
    """Each sign-type class of the ball has a unique minimum, the low representative,
    which is a right-weak prefix of every member."""
    groups = region_table(ball, L.sigma)
    violations = []
    for st, members in groups.items():
        lmin = min(w.length for w in members)
        minima = [w for w in members if w.length == lmin]
        u = L.index.get(st)
        problems = []
        if len(minima) != 1:
            problems.append("no unique minimum")
        if u is None:
            problems.append("no low representative")
        else:
            if minima[0] is not u:
                problems.append("minimum is not the low representative")
            for w in members:
                if not u.inv <= w.inv:
                    problems.append(f"{u} not a prefix of {w}")
                    break
        if problems:
            violations.append({"minimum": [str(x) for x in minima], "problems": problems})
    return {"regions": len(groups), "elements": len(ball), "violations": violations}


@dataclass
class ShiPolyhedron:
    m: int
    boundary_roots: frozenset

    def __len__(self):
        return len(self.boundary_roots)


def boundary_roots(L: LowElementSet) -> ShiPolyhedron:
    W = L.system
    out = set()
    for x in L.elements:
        for s in W.gens:
            if x.left_mul(s) not in L:
                out.add(x.act_inverse(W.simple(s)))
    assert all(r.positive for r in out)
    return ShiPolyhedron(L.m, frozenset(out))


def reduced_boundary(P: ShiPolyhedron) -> frozenset:
    """Heuristic: drop beta when some other boundary root is dominated by beta."""
    roots = P.boundary_roots
    return frozenset(b for b in roots if not any(a is not b and dominates(a, b) for a in roots))


def in_polyhedron(v: Element, P: ShiPolyhedron) -> bool:
    return P.boundary_roots.isdisjoint(v.inv)


def polyhedron_chambers(system: CoxeterSystem, P: ShiPolyhedron, radius: int = 64) -> list[Element]:
    """All v with Phi(v) disjoint from the boundary roots (a prefix-closed set)."""
    out = [system.identity]
    frontier = [system.identity]
    seen = {system.identity}
    while frontier:
        nxt = []
        for v in frontier:
            if v.length >= radius:
                continue
            for s in system.gens:
                x = v.right_mul(s)
                if x.length > v.length and x not in seen:
                    seen.add(x)
                    if in_polyhedron(x, P):
                        nxt.append(x)
        out.extend(nxt)
        frontier = nxt
    out.sort(key=Element.sort_key)
    return out


def prefixes(x: Element) -> list[Element]:
    """All p with p <=_R x."""
    W = x.system
    out = [W.identity]
    frontier = [W.identity]
    seen = {W.identity}
    while frontier:
        nxt = []
        for p in frontier:
            for s in W.gens:
                r = p.act(W.simple(s))
                if r.positive and r in x.inv:
                    q = p.right_mul(s)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
        out.extend(nxt)
        frontier = nxt
    return out


def weak_interval(u: Element, v: Element) -> frozenset:
    """Elements on geodesics from u to v: u*p for p <=_R u^-1 v."""
    x = u.inverse() * v
    return frozenset(u * p for p in prefixes(x))


def is_convex(X) -> tuple[bool, Element | None]:
    """Geodesic convexity; returns (False, least missing element) on failure."""
    Xs = set(X)
    xs = sorted(Xs, key=Element.sort_key)
    missing = set()
    for i, u in enumerate(xs):
        for v in xs[i + 1:]:
            missing.update(weak_interval(u, v) - Xs)
    if missing:
        return False, min(missing, key=Element.sort_key)
    return True, None


# --- joins in the right weak order ----------------------------------------

def _longest_parabolic(W: CoxeterSystem, J, limit: int) -> Element | None:
    x = W.identity
    while True:
        for s in sorted(J):
            y = x.right_mul(s)
            if y.length > x.length:
                x = y
                break
        else:
            return x
        if x.length > limit:
            return None


def join(u: Element, v: Element, limit: int, memo: dict | None = None) -> Element | None:
    """Least upper bound of u and v in the right weak order, if it has length <= limit."""
    if memo is None:
        memo = u.system.__dict__.setdefault("_joins", {})
    if u.inv <= v.inv:
        return v if v.length <= limit else None
    if v.inv <= u.inv:
        return u if u.length <= limit else None
    key = (u, v, limit) if id(u) < id(v) else (v, u, limit)
    if key in memo:
        return memo[key]
    W = u.system
    dl_u, dl_v = u.left_descents(), v.left_descents()
    common = dl_u & dl_v
    res = None
    if common:
        s = min(common)
        j = join(u.left_mul(s), v.left_mul(s), limit - 1, memo)
        if j is not None and s not in j.left_descents():
            res = j.left_mul(s)
    else:
        J = dl_u | dl_v
        wJ = _longest_parabolic(W, J, limit)
        if wJ is not None:
            j1 = join(u, wJ, limit, memo)
            if j1 is not None:
                res = join(j1, v, limit, memo)
    memo[key] = res
    return res


def garside_checks(L: LowElementSet, radius: int | None = None) -> dict:
    """Generators, suffix closure and join closure (joins of length <= radius)."""
    W = L.system
    if radius is None:
        radius = L.max_length()
    violations = []
    for s in W.gens:
        if W.from_reduced_word((s,)) not in L:
            violations.append(f"generator {s} missing")
    for x in L.elements:
        for s in x.left_descents():
            if x.left_mul(s) not in L:
                violations.append(f"suffix {x.left_mul(s)} of {x} missing")
    n_joins = 0
    elems = L.elements
    memo: dict = {}
    for i, u in enumerate(elems):
        for v in elems[i + 1:]:
            j = join(u, v, radius, memo)
            if j is not None:
                n_joins += 1
                if j not in L:
                    violations.append(f"join {j} of {u}, {v} missing")
    return {"m": L.m, "size": len(L), "radius": radius, "joins": n_joins,
            "violations": violations}


def next_level_check(Lm: LowElementSet, Lm1: LowElementSet) -> dict:
    W = Lm.system
    m = Lm.m
    violations = []
    checked = 0
    for w in Lm.elements:
        for s in W.gens:
            sw = w.left_mul(s)
            if sw not in Lm1:
                violations.append(f"{sw} = {s}*{w} not in L_{m + 1}")
                continue
            if sw in Lm:
                continue
            checked += 1
            assert sw.length > w.length
            a_s = W.simple(s)
            rs = [r for r in sorted(w.right_descents())
                  if (-sw.act(W.simple(r))).dp_inf == m + 1]
            if not rs:
                violations.append(f"{sw}: no right descent r of {w} with dp_inf = {m + 1}")
            for r in rs:
                if not dominates(a_s, -sw.act(W.simple(r))):
                    violations.append(f"{sw}: alpha_{s} does not dominate for r={r}")
    return {"m": m, "new_elements_checked": checked, "violations": violations}


def medium_low_elements(system: CoxeterSystem, m: int, depth_bound: int = 32,
                        medium: MediumRootSet | None = None) -> list[Element]:
    """Experimental: elements whose right descent roots are m-medium."""
    M = medium or medium_roots(system, m, depth_bound)
    elems = _low_bfs(system, lambda x: all(r in M.roots for r in right_descent_roots(x)))
    es = set(elems)
    for x in elems:
        for s in x.left_descents():
            assert x.left_mul(s) in es, "medium-low set is not suffix-closed"
    return elems
