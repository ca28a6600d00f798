"""Short inversions, descent roots and the short-inversion graph of an element."""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .coxeter import CoxeterSystem, Element, Root, format_word
from .roots import plane

__all__ = [
    "short_inversions", "descent_roots", "has_edge", "build_graph", "ShortInvGraph",
    "opposite_check", "sandwich_check", "descending_witness", "Witness", "graph_dot",
]


def _deleted_is_reduced(W: CoxeterSystem, word: tuple, i: int) -> bool:
    w = word[:i] + word[i + 1:]
    for k, s in enumerate(w):
        v = W.simple_roots[s - 1]
        for t in reversed(w[:k]):
            v = v.reflect(t)
        if not v.positive:
            return False
    return True


def short_inversions(w: Element) -> tuple[Root, ...]:
    """Phi^1(w) in inversion-list order.

    With w = s_1..s_k reduced and beta_i the i-th inversion, s_{beta_i} w is
    the word with letter i deleted, so beta_i is short iff that word is reduced.
    """
    W = w.system
    word = w.word
    return tuple(b for i, b in enumerate(w.inversion_list()) if _deleted_is_reduced(W, word, i))


def descent_roots(w: Element) -> tuple[frozenset, frozenset]:
    W = w.system
    left = frozenset(a for a in W.simple_roots if a in w.inv)
    right = frozenset(-w.act(W.simple(s)) for s in w.right_descents())
    return left, right


def _edge(alpha: Root, beta: Root) -> bool:
    W = alpha.system
    cache = W.__dict__.setdefault("_edges", {})
    key = (alpha, beta)
    res = cache.get(key)
    if res is None:
        res = not plane(alpha, beta).is_simple(beta)
        if (W.bilinear2(alpha, beta) - 2).sign() >= 0:
            # infinite dihedral case: compare with the length criterion
            fast = (alpha.reflection() * beta.reflection()).length < beta.reflection().length
            assert fast == res, f"edge criteria disagree on {alpha}, {beta}"
        cache[key] = res
    return res


def has_edge(w: Element, alpha: Root, beta: Root) -> bool:
    """alpha -> beta in the short-inversion graph of w: beta is not a canonical
    simple root of the maximal dihedral subgroup through alpha and beta."""
    if alpha is beta:
        return False
    return _edge(alpha, beta)


@dataclass
class ShortInvGraph:
    element: Element
    vertices: tuple[Root, ...]
    edges: frozenset                 # pairs (alpha, beta)
    graph: nx.DiGraph

    @property
    def poset(self) -> frozenset:
        """Strict part of the reachability order."""
        tc = nx.transitive_closure_dag(self.graph)
        return frozenset(tc.edges())

    @property
    def hasse(self) -> frozenset:
        return frozenset(nx.transitive_reduction(self.graph).edges())

    def leq(self, a: Root, b: Root) -> bool:
        return a is b or nx.has_path(self.graph, a, b)

    def minimal(self) -> frozenset:
        return frozenset(v for v in self.vertices if self.graph.in_degree(v) == 0)

    def maximal(self) -> frozenset:
        return frozenset(v for v in self.vertices if self.graph.out_degree(v) == 0)


def build_graph(w: Element) -> ShortInvGraph:
    verts = short_inversions(w)
    G = nx.DiGraph()
    G.add_nodes_from(verts)
    edges = set()
    for a in verts:
        for b in verts:
            if a is not b and _edge(a, b):
                edges.add((a, b))
    G.add_edges_from(edges)
    if not nx.is_directed_acyclic_graph(G):
        raise AssertionError(f"short-inversion graph of {w} has a directed cycle")
    return ShortInvGraph(w, verts, frozenset(edges), G)


def opposite_check(w: Element) -> bool:
    """alpha -> -w^{-1}(alpha) is an isomorphism onto the opposite graph of w^{-1}."""
    wi = w.inverse()
    g1, g2 = build_graph(w), build_graph(wi)
    f = {a: -wi.act(a) for a in g1.vertices}
    if set(f.values()) != set(g2.vertices):
        return False
    mapped = {(f[b], f[a]) for a, b in g1.edges}
    return mapped == set(g2.edges)


def sandwich_check(w: Element, graph: ShortInvGraph | None = None) -> bool:
    g = graph or build_graph(w)
    left, right = descent_roots(w)
    return g.minimal() == left and g.maximal() == right


@dataclass(frozen=True)
class Witness:
    root: Root | None          # None when beta is simple
    case: str                  # "simple", "descent", "coset" or "prefix"


def descending_witness(w: Element, beta: Root, g: Element | None = None) -> Witness:
    """A short inversion alpha of w with alpha -> beta, of smaller depth.

    g, when given, must satisfy g(beta) simple with l(g) = dp(beta); by default
    the greedy descent witness is used.
    """
    W = w.system
    if beta.simple_index() is not None:
        return Witness(None, "simple")
    res = None
    for s in sorted(w.left_descents()):
        if beta.reflect(s).dp < beta.dp:
            res, case = W.simple(s), "descent"
            break
    if res is None:
        if g is None:
            letters, _ = beta.descent_path()
            g = W.from_reduced_word(letters[::-1])
        r = g.act(beta).simple_index()
        if r is None or g.length != beta.dp:
            raise ValueError("g is not a depth witness for beta")
        if (g * w).length == g.length + w.length:
            t = min(g.left_descents())
            I = {r, t}
            g1, g2 = W.coset_decompose(g, I)
            (s,) = I - g1.right_descents()
            res, case = g2.act_inverse(W.simple(s)), "coset"
        else:
            word = g.word
            x = W.identity
            for j in range(len(word) - 1, -1, -1):
                tx = x.left_mul(word[j])
                if (tx * w).length != tx.length + w.length:
                    res, case = x.act_inverse(W.simple(word[j])), "prefix"
                    break
                x = tx
            else:  # pragma: no cover
                raise AssertionError("no non-reduced suffix although gw is not reduced")
    if not (res.positive and res.dp < beta.dp and has_edge(w, res, beta)):
        raise AssertionError(f"descending witness {res} for {beta} in {w} is invalid")
    return Witness(res, case)


def graph_dot(g: ShortInvGraph, hasse: bool = False) -> str:
    name = "hasse" if hasse else "shortinv"
    edges = g.hasse if hasse else g.edges
    idx = {v: i for i, v in enumerate(g.vertices)}
    lines = [f'digraph {name} {{', f'  label="{g.element}";']
    for v in g.vertices:
        lines.append(f'  v{idx[v]} [label="{v.label()}"];')
    for a, b in sorted(edges, key=lambda e: (idx[e[0]], idx[e[1]])):
        lines.append(f"  v{idx[a]} -> v{idx[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
