"""Coxeter systems, their root systems and group elements.

Generators are the integers 1..rank.  Roots are interned per system so
identity comparison is equality; each root caches the images under the
simple reflections and the vector (2B(alpha_t, root))_t.  Elements are
identified by their inversion sets, which are canonical; the ShortLex
normal form is derived from the inversion set on demand.

>>> W = CoxeterSystem([[1, 3], [3, 1]])
>>> w = W.element([1, 2, 1, 2])
>>> w.word, w.length
((2, 1), 2)
"""
from __future__ import annotations

import json
import math
import threading
from typing import Iterable, Sequence

from .scalar import FieldSpec, Scalar, make_field, two_cos

__all__ = ["CoxeterSystem", "Root", "Element", "load_system", "parse_matrix", "format_word"]

INF = math.inf


def parse_label(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INF
        x = int(x)
    if x == INF:
        return INF
    if isinstance(x, float) and x.is_integer():
        x = int(x)
    if not isinstance(x, int):
        raise ValueError(f"bad Coxeter label {x!r}")
    return x


def parse_matrix(matrix) -> list[list]:
    M = [[parse_label(x) for x in row] for row in matrix]
    r = len(M)
    if r == 0 or any(len(row) != r for row in M):
        raise ValueError("Coxeter matrix must be square and non-empty")
    for i in range(r):
        if M[i][i] != 1:
            raise ValueError("diagonal of a Coxeter matrix must be 1")
        for j in range(r):
            if M[i][j] != M[j][i]:
                raise ValueError("Coxeter matrix must be symmetric")
            if i != j and not (M[i][j] == INF or M[i][j] >= 2):
                raise ValueError("off-diagonal labels must be >= 2 or inf")
    return M


def format_word(word: Sequence[int], rank: int | None = None) -> str:
    if not word:
        return "e"
    if rank is not None and rank > 9 or any(s > 9 for s in word):
        return ".".join(map(str, word))
    return "".join(map(str, word))


def parse_word(text, rank: int) -> tuple[int, ...]:
    if isinstance(text, str):
        t = text.strip()
        if t in ("", "e"):
            return ()
        parts = t.split(".") if "." in t else (t.split(",") if "," in t else list(t))
        word = tuple(int(p) for p in parts if p.strip())
    else:
        word = tuple(int(s) for s in text)
    for s in word:
        if not 1 <= s <= rank:
            raise ValueError(f"generator {s} out of range 1..{rank}")
    return word


class Root:
    """A root of the geometric representation, interned in its system."""

    __slots__ = ("system", "id", "coords", "positive", "b2", "_refl", "_neg",
                 "_cat", "_dp", "_down", "_dp_inf", "_refl_elem", "__weakref__")

    def __init__(self, system, rid, coords, positive, b2):
        self.system = system
        self.id = rid
        self.coords = coords
        self.positive = positive
        self.b2 = b2            # (2B(alpha_t, self))_t
        self._refl = [None] * system.rank
        self._neg = None
        self._cat = [None] * system.rank
        self._dp = None
        self._down = None       # (s, s(self)) with dp dropping by one
        self._dp_inf = None
        self._refl_elem = None

    # --- action ---------------------------------------------------------
    def reflect(self, s: int) -> "Root":
        i = s - 1
        r = self._refl[i]
        if r is None:
            c = self.b2[i]
            if c.is_zero():
                r = self
            else:
                W = self.system
                coords = list(self.coords)
                coords[i] = coords[i] - c
                G = W.G
                b2 = tuple(self.b2[t] - c * G[t][i] for t in range(W.rank))
                if self.is_simple_index(i):
                    positive = not self.positive
                else:
                    positive = self.positive
                r = W._intern(tuple(coords), positive, b2)
                r._refl[i] = self
            self._refl[i] = r
        return r

    def is_simple_index(self, i: int) -> bool:
        a = self.system.simple_roots[i]
        return self is a or self is a._neg

    def __neg__(self) -> "Root":
        if self._neg is None:
            W = self.system
            n = W._intern(tuple(-c for c in self.coords), not self.positive,
                          tuple(-c for c in self.b2))
            self._neg = n
            n._neg = self
        return self._neg

    def b2_cat(self, s: int) -> int:
        """Classify B(alpha_s, self): -2 (<= -1), -1 (in (-1,0)), 0, 1 (in (0,1)), 2 (>= 1)."""
        i = s - 1
        c = self._cat[i]
        if c is None:
            v = self.b2[i]
            sg = v.sign()
            if sg == 0:
                c = 0
            elif sg > 0:
                c = 2 if (v - 2).sign() >= 0 else 1
            else:
                c = -2 if (v + 2).sign() <= 0 else -1
            self._cat[i] = c
        return c

    # --- depth ----------------------------------------------------------
    def _descend(self):
        """Fill dp, the descent witness and dp_inf along the greedy chain."""
        if not self.positive:
            raise ValueError("depth is defined for positive roots only")
        chain = []
        v = self
        while v._dp is None:
            s = v.simple_index()
            if s is not None:
                v._dp, v._dp_inf = 0, 0
                break
            for t in range(1, v.system.rank + 1):
                if v.b2_cat(t) > 0:
                    break
            else:  # pragma: no cover - impossible for a positive non-simple root
                raise AssertionError("positive non-simple root without descent")
            u = v.reflect(t)
            v._down = (t, u)
            chain.append(v)
            v = u
        for x in reversed(chain):
            t, u = x._down
            x._dp = u._dp + 1
            x._dp_inf = u._dp_inf + (1 if x.b2_cat(t) == 2 else 0)

    @property
    def dp(self) -> int:
        if self._dp is None:
            self._descend()
        return self._dp

    @property
    def dp_inf(self) -> int:
        if self._dp_inf is None:
            self._descend()
        return self._dp_inf

    def simple_index(self) -> int | None:
        """s if self is alpha_s, else None."""
        for i, a in enumerate(self.system.simple_roots):
            if a is self:
                return i + 1
        return None

    def descent_path(self) -> tuple[tuple[int, ...], int]:
        """Letters (s_1, .., s_k) and r with s_k..s_1(self) = alpha_r, k = dp."""
        self.dp
        letters = []
        v = self
        while v._down is not None:
            t, v = v._down
            letters.append(t)
        return tuple(letters), v.simple_index()

    def reflection(self) -> "Element":
        """The reflection s_beta as an element (requires a positive root)."""
        if self._refl_elem is None:
            letters, r = self.descent_path()
            word = letters + (r,) + letters[::-1]
            e = self.system.from_reduced_word(word)
            assert e.length == 2 * self.dp + 1
            self._refl_elem = e
        return self._refl_elem

    # --- display --------------------------------------------------------
    def label(self) -> str:
        """Word form such as '12(a3)': the root 1 2 (alpha_3); negatives get a '-'."""
        if not self.positive:
            return "-" + (-self).label()
        letters, r = self.descent_path()
        w = format_word(letters, self.system.rank)
        return f"a{r}" if not letters else f"{w}(a{r})"

    def coords_str(self) -> str:
        return "[" + ", ".join(c.to_str() for c in self.coords) + "]"

    def __repr__(self):
        return f"Root({self.label()})"

    def __lt__(self, other):
        return self.id < other.id


class Element:
    """A group element, identified by its inversion set."""

    __slots__ = ("system", "inv", "rw", "_word", "_left", "_right", "_inverse",
                 "_dl", "_dr", "_inv_list", "__weakref__")

    def __init__(self, system, inv: frozenset, rw: tuple):
        self.system = system
        self.inv = inv
        self.rw = rw            # some reduced word
        self._word = None
        self._left = [None] * system.rank
        self._right = [None] * system.rank
        self._inverse = None
        self._dl = None
        self._dr = None
        self._inv_list = None

    @property
    def length(self) -> int:
        return len(self.rw)

    def __len__(self):
        return len(self.rw)

    @property
    def word(self) -> tuple[int, ...]:
        """ShortLex-least reduced word (least left descent first)."""
        if self._word is None:
            W = self.system
            cur = set(self.inv)
            out = []
            while cur:
                for i, a in enumerate(W.simple_roots):
                    if a in cur:
                        break
                s = i + 1
                out.append(s)
                cur = {r.reflect(s) for r in cur if r is not a}
            self._word = tuple(out)
        return self._word

    def __str__(self):
        return format_word(self.word, self.system.rank)

    def __repr__(self):
        return f"Element({self})"

    def sort_key(self):
        return (self.length, self.word)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # --- action ---------------------------------------------------------
    def act(self, v: Root) -> Root:
        for s in reversed(self.rw):
            v = v.reflect(s)
        return v

    def act_inverse(self, v: Root) -> Root:
        for s in self.rw:
            v = v.reflect(s)
        return v

    # --- multiplication -------------------------------------------------
    def right_mul(self, s: int) -> "Element":
        i = s - 1
        r = self._right[i]
        if r is None:
            W = self.system
            v = self.act(W.simple_roots[i])
            if v.positive:
                r = W._element(self.inv | {v}, self.rw + (s,))
            else:
                # delete the letter where the suffix image flips sign
                u = W.simple_roots[i]
                word = self.rw
                for j in range(len(word) - 1, -1, -1):
                    nu = u.reflect(word[j])
                    if not nu.positive:
                        break
                    u = nu
                r = W._element(self.inv - {-v}, word[:j] + word[j + 1:])
            self._right[i] = r
            r._right[i] = self
        return r

    def left_mul(self, s: int) -> "Element":
        i = s - 1
        r = self._left[i]
        if r is None:
            W = self.system
            a = W.simple_roots[i]
            if a in self.inv:
                u = a
                word = self.rw
                for j in range(len(word)):
                    nu = u.reflect(word[j])
                    if not nu.positive:
                        break
                    u = nu
                r = W._element(frozenset(x.reflect(s) for x in self.inv if x is not a),
                               word[:j] + word[j + 1:])
            else:
                r = W._element(frozenset([a] + [x.reflect(s) for x in self.inv]),
                               (s,) + self.rw)
            self._left[i] = r
            r._left[i] = self
        return r

    def multiply(self, s: int, side: str = "right") -> "Element":
        return self.right_mul(s) if side == "right" else self.left_mul(s)

    def __mul__(self, other: "Element") -> "Element":
        x = self
        for s in other.rw:
            x = x.right_mul(s)
        return x

    def inverse(self) -> "Element":
        if self._inverse is None:
            inv = self.system.from_reduced_word(self.rw[::-1])
            self._inverse = inv
            inv._inverse = self
        return self._inverse

    # --- descents and order ---------------------------------------------
    def left_descents(self) -> frozenset[int]:
        if self._dl is None:
            self._dl = frozenset(i + 1 for i, a in enumerate(self.system.simple_roots)
                                 if a in self.inv)
        return self._dl

    def right_descents(self) -> frozenset[int]:
        if self._dr is None:
            self._dr = frozenset(s for s in self.system.gens
                                 if not self.act(self.system.simple_roots[s - 1]).positive)
        return self._dr

    def descents(self, side: str = "left") -> frozenset[int]:
        return self.left_descents() if side == "left" else self.right_descents()

    def inversion_list(self) -> tuple[Root, ...]:
        """Phi(w) in the order given by the normal form: a_{s1}, s1(a_{s2}), ..."""
        if self._inv_list is None:
            W = self.system
            word = self.word
            out = []
            for k, s in enumerate(word):
                v = W.simple_roots[s - 1]
                for t in reversed(word[:k]):
                    v = v.reflect(t)
                out.append(v)
            assert len(set(out)) == len(out) and all(v.positive for v in out)
            self._inv_list = tuple(out)
        return self._inv_list

    def leq_weak(self, other: "Element", side: str = "right") -> bool:
        if side == "right":
            return self.inv <= other.inv
        return self.inverse().inv <= other.inverse().inv

    def is_reduced_product(self, other: "Element") -> bool:
        """l(self*other) == l(self) + l(other)."""
        return (self * other).length == self.length + other.length


class CoxeterSystem:
    """A finite-rank Coxeter system with its standard geometric representation."""

    def __init__(self, matrix, name: str | None = None):
        self.matrix = parse_matrix(matrix)
        self.rank = len(self.matrix)
        self.name = name
        self.gens = tuple(range(1, self.rank + 1))
        labels = {self.matrix[i][j] for i in range(self.rank) for j in range(self.rank) if i != j}
        self.field: FieldSpec = make_field(labels)
        F = self.field
        G = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                m = self.matrix[i][j]
                if i == j:
                    row.append(F(2))
                elif m == INF:
                    row.append(F(-2))
                else:
                    row.append(-two_cos(F, m))
            G.append(tuple(row))
        self.G = tuple(G)      # Gram matrix of 2B
        self.B = tuple(tuple(x * F(1) / 2 for x in row) for row in G)
        self._lock = threading.RLock()
        self._roots: dict[tuple, Root] = {}
        self._root_list: list[Root] = []
        self._elements: dict[frozenset, Element] = {}
        self._bruhat: dict = {}
        zero, one = F(0), F(1)
        self.simple_roots: list[Root] = []
        for i in range(self.rank):
            coords = tuple(one if j == i else zero for j in range(self.rank))
            self.simple_roots.append(self._intern(coords, True, tuple(G[t][i] for t in range(self.rank))))
        for a in self.simple_roots:
            -a
        self.identity = self._element(frozenset(), ())

    def __repr__(self):
        return f"CoxeterSystem({self.name or self.matrix_json()})"

    # --- registries -----------------------------------------------------
    def _intern(self, coords, positive, b2) -> Root:
        r = self._roots.get(coords)
        if r is None:
            with self._lock:
                r = self._roots.get(coords)
                if r is None:
                    r = Root(self, len(self._root_list), coords, positive, b2)
                    self._root_list.append(r)
                    self._roots[coords] = r
        return r

    def _element(self, inv: frozenset, rw: tuple) -> Element:
        e = self._elements.get(inv)
        if e is None:
            with self._lock:
                e = self._elements.get(inv)
                if e is None:
                    e = Element(self, inv, rw)
                    self._elements[inv] = e
        return e

    def simple(self, s: int) -> Root:
        return self.simple_roots[s - 1]

    def root(self, coords) -> Root:
        """Look up (or create) the root with the given coordinates, if it is a root."""
        F = self.field
        key = tuple(F(c) for c in coords)
        r = self._roots.get(key)
        if r is None:
            raise KeyError("not a known root; reach it by reflections first")
        return r

    def root_from_word(self, word, s: int) -> Root:
        """The root w(alpha_s) for a word w."""
        v = self.simple(s)
        for t in reversed(parse_word(word, self.rank)):
            v = v.reflect(t)
        return v

    def reflect_simple(self, s: int, v: Root) -> Root:
        return v.reflect(s)

    def bilinear(self, a: Root, b: Root) -> Scalar:
        """B(a, b)."""
        return self.bilinear2(a, b) * self.field(1) / 2

    def bilinear2(self, a: Root, b: Root) -> Scalar:
        """2B(a, b)."""
        tot = self.field(0)
        for c, x in zip(b.coords, a.b2):
            if not c.is_zero():
                tot = tot + c * x
        return tot

    # --- elements -------------------------------------------------------
    def element(self, letters=()) -> Element:
        """Normalize an arbitrary word (1-based letters or a digit string)."""
        w = self.identity
        for s in parse_word(letters, self.rank):
            w = w.right_mul(s)
        return w

    normalize = element

    def from_reduced_word(self, word) -> Element:
        word = parse_word(word, self.rank)
        inv = []
        for k, s in enumerate(word):
            v = self.simple_roots[s - 1]
            for t in reversed(word[:k]):
                v = v.reflect(t)
            if not v.positive:
                raise ValueError(f"word {format_word(word)} is not reduced")
            inv.append(v)
        fs = frozenset(inv)
        if len(fs) != len(inv):
            raise ValueError(f"word {format_word(word)} is not reduced")
        return self._element(fs, word)

    def is_reduced(self, word) -> bool:
        return self.element(word).length == len(parse_word(word, self.rank))

    def ball(self, radius: int) -> list[Element]:
        """All elements of length <= radius, by length then normal form."""
        layers = [[self.identity]]
        seen = {self.identity}
        for _ in range(radius):
            nxt = []
            for w in layers[-1]:
                for s in self.gens:
                    x = w.right_mul(s)
                    if x.length > w.length and x not in seen:
                        seen.add(x)
                        nxt.append(x)
            if not nxt:
                break
            layers.append(nxt)
        out = [w for layer in layers for w in layer]
        out.sort(key=Element.sort_key)
        return out

    def bruhat_leq(self, u: Element, w: Element) -> bool:
        key = (u, w)
        res = self._bruhat.get(key)
        if res is not None:
            return res
        if u.length > w.length:
            res = False
        elif u.length == 0:
            res = True
        elif u.length == w.length:
            res = u is w
        else:
            s = min(w.left_descents())
            if s in u.left_descents():
                res = self.bruhat_leq(u.left_mul(s), w.left_mul(s))
            else:
                res = self.bruhat_leq(u, w.left_mul(s))
        self._bruhat[key] = res
        return res

    def reflection_of(self, beta: Root) -> Element:
        return beta.reflection()

    def coset_decompose(self, g: Element, I) -> tuple[Element, Element]:
        """g = g1*g2 with g1 in W_I and g2 having no left descent in I."""
        I = set(I)
        g1, g2 = self.identity, g
        while True:
            common = sorted(I & g2.left_descents())
            if not common:
                return g1, g2
            s = common[0]
            g1, g2 = g1.right_mul(s), g2.left_mul(s)

    # --- I/O ------------------------------------------------------------
    def matrix_json(self):
        return [["inf" if m == INF else m for m in row] for row in self.matrix]

    def to_json(self) -> dict:
        return {"rank": self.rank, "matrix": self.matrix_json()}

    def is_finite_label(self, s: int, t: int) -> bool:
        return self.matrix[s - 1][t - 1] != INF


def load_system(path) -> CoxeterSystem:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return system_from_json(data, name=str(path))


def system_from_json(data, name: str | None = None) -> CoxeterSystem:
    if not isinstance(data, dict) or "matrix" not in data:
        raise ValueError("system file must be an object with a 'matrix' field")
    W = CoxeterSystem(data["matrix"], name=name or data.get("name"))
    if "rank" in data and int(data["rank"]) != W.rank:
        raise ValueError("'rank' does not match the matrix size")
    return W
