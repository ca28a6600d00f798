"""A finite automaton recognising reduced words, with states the m-Shi sign types.

After reading s_1..s_k the state is Sigma_m(v) for v = (s_1..s_k)^-1.  The
letter s is rejected when alpha_s lies in the state, and otherwise the next
state is Sigma_m(s*u) for the low representative u of the current state.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .coxeter import CoxeterSystem, Element, format_word
from .lowshi import LowElementSet, sign_type

__all__ = ["ReducedWordAutomaton", "AutomatonVerificationError", "build_automaton", "accepts",
           "count_reduced", "export_dot", "transitions_csv", "verify_automaton"]


class AutomatonVerificationError(AssertionError):
    pass


@dataclass
class ReducedWordAutomaton:
    system: CoxeterSystem
    m: int
    states: list[frozenset]
    state_rep: list[Element]
    transitions: dict[tuple[int, int], int]      # (state index, generator) -> state index
    start: int = 0
    verified_radius: int | None = None

    def __len__(self):
        return len(self.states)

    def step(self, q: int, s: int) -> int | None:
        return self.transitions.get((q, s))


def build_automaton(system: CoxeterSystem, L: LowElementSet, radius: int | None = 8) -> ReducedWordAutomaton:
    sigma = L.sigma
    start = frozenset()
    states = [start]
    reps = [L.index[start]]
    where = {start: 0}
    trans = {}
    k = 0
    while k < len(states):
        A, u = states[k], reps[k]
        for s in system.gens:
            if system.simple(s) in A:
                continue
            B = sign_type(u.left_mul(s), sigma).roots
            if B not in where:
                if B not in L.index:
                    raise AutomatonVerificationError(f"sign type of {s}*{u} has no low representative")
                where[B] = len(states)
                states.append(B)
                reps.append(L.index[B])
            trans[(k, s)] = where[B]
        k += 1
    A = ReducedWordAutomaton(system, L.m, states, reps, trans)
    if radius is not None:
        verify_automaton(A, L, radius)
    return A


def verify_automaton(A: ReducedWordAutomaton, L: LowElementSet, radius: int) -> int:
    """Check Sigma_m(s*w) = delta(Sigma_m(w), s) over the ball; returns the number of checks."""
    W = A.system
    where = {st: i for i, st in enumerate(A.states)}
    checks = 0
    for w in W.ball(radius):
        q = where.get(sign_type(w, L.sigma).roots)
        if q is None:
            raise AutomatonVerificationError(f"sign type of {w} is not a state")
        for s in W.gens:
            nxt = A.step(q, s)
            if W.simple(s) in w.inv:
                if nxt is not None:
                    raise AutomatonVerificationError(f"transition on {s} from the state of {w} should be rejected")
                continue
            if nxt is None or A.states[nxt] != sign_type(w.left_mul(s), L.sigma).roots:
                raise AutomatonVerificationError(f"transition mismatch at {w}, generator {s}")
            checks += 1
    A.verified_radius = radius
    return checks


def accepts(A: ReducedWordAutomaton, letters) -> bool:
    q = A.start
    for s in letters:
        q = A.step(q, s)
        if q is None:
            return False
    return True


def count_reduced(A: ReducedWordAutomaton, length: int) -> list[int]:
    """Number of reduced words of each length 0..length (paths from the start state)."""
    vec = {A.start: 1}
    out = [1]
    for _ in range(length):
        nxt: dict[int, int] = {}
        for q, c in vec.items():
            for s in A.system.gens:
                r = A.transitions.get((q, s))
                if r is not None:
                    nxt[r] = nxt.get(r, 0) + c
        vec = nxt
        out.append(sum(vec.values()))
    return out


def _state_name(A: ReducedWordAutomaton, i: int) -> str:
    return str(A.state_rep[i])


def export_dot(A: ReducedWordAutomaton) -> str:
    lines = [f"digraph reduced_words_m{A.m} {{", "  rankdir=LR;"]
    for i in range(len(A.states)):
        shape = "doublecircle" if i == A.start else "circle"
        lines.append(f'  q{i} [label="{_state_name(A, i)}", shape={shape}];')
    for (q, s), r in sorted(A.transitions.items()):
        lines.append(f'  q{q} -> q{r} [label="{s}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def transitions_csv(A: ReducedWordAutomaton) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["state", "generator", "target"])
    for (q, s), r in sorted(A.transitions.items()):
        wr.writerow([_state_name(A, q), s, _state_name(A, r)])
    return buf.getvalue()
