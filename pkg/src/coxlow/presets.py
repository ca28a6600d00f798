"""Bundled Coxeter systems with their published reference values."""
from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import CoxeterSystem

__all__ = ["Preset", "PRESETS", "get_preset", "preset_names", "TABLE_PRESETS", "AFFINE_PRESETS"]

I = "inf"


def _matrix(rank: int, labels: dict[tuple[int, int], object]):
    M = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (a, b), m in labels.items():
        M[a - 1][b - 1] = M[b - 1][a - 1] = m
    return M


@dataclass(frozen=True)
class Preset:
    name: str
    matrix: list
    notes: str
    affine_data: tuple[int, int] | None = None      # (h, n)
    table: dict = field(default_factory=dict)         # m -> (|Sigma_m|, |L_m|)
    finite_order: int | None = None
    n_positive_roots: int | None = None

    def system(self) -> CoxeterSystem:
        return CoxeterSystem(self.matrix, name=self.name)

    def expected_low_count(self, m: int) -> int | None:
        if self.affine_data is not None:
            h, n = self.affine_data
            return ((m + 1) * h + 1) ** n
        if self.finite_order is not None:
            return self.finite_order
        if m in self.table:
            return self.table[m][1]
        return None

    def expected_small_count(self, m: int) -> int | None:
        if self.n_positive_roots is not None:
            return self.n_positive_roots
        if m in self.table:
            return self.table[m][0]
        return None


_ALL = [
    Preset("universal3", _matrix(3, {(1, 2): I, (1, 3): I, (2, 3): I}),
           "universal Coxeter group of rank 3 (reference table)",
           table={0: (3, 4), 1: (9, 10), 2: (21, 22)}),
    Preset("nonconvex3", _matrix(3, {(1, 2): I, (2, 3): I}),
           "rank 3, m12 = m23 = inf, m13 = 2; the non-convex example (reference table)",
           table={0: (3, 5), 1: (7, 10), 2: (14, 19)}),
    Preset("triangle334", _matrix(3, {(1, 2): 3, (1, 3): 3, (2, 3): 4}),
           "hyperbolic triangle with labels 3, 3, 4 (reference table)",
           table={0: (7, 18), 1: (13, 40), 2: (20, 70)}),
    Preset("linear73", _matrix(3, {(1, 2): 7, (2, 3): 3}),
           "linear rank 3 with labels 7 and 3 (reference table)",
           table={0: (12, 40), 1: (18, 72), 2: (24, 110)}),
    Preset("square3444", _matrix(4, {(1, 2): 3, (2, 3): 4, (3, 4): 4, (1, 4): 4}),
           "rank 4 four-cycle with labels 3, 4, 4, 4 (reference table)",
           table={0: (19, 134), 1: (43, 387), 2: (94, 997)}),
    Preset("H3", _matrix(3, {(1, 2): 5, (2, 3): 3}),
           "finite H3 with m12 = 5, m23 = 3", finite_order=120, n_positive_roots=15),
    Preset("A2", _matrix(2, {(1, 2): 3}), "finite A2 (order 6)", finite_order=6, n_positive_roots=3),
    Preset("affineA1", _matrix(2, {(1, 2): I}), "infinite dihedral group", affine_data=(2, 1)),
    Preset("affineA2", _matrix(3, {(1, 2): 3, (1, 3): 3, (2, 3): 3}), "affine A2", affine_data=(3, 2)),
    Preset("affineB2", _matrix(3, {(1, 2): 4, (2, 3): 4}), "affine B2 = C2", affine_data=(4, 2)),
    Preset("rank4example", _matrix(4, {(1, 2): 4, (2, 3): 4, (3, 4): 3, (1, 4): 4}),
           "rank 4 group of the short-inversion graph examples (412343, 1234232314)"),
]

PRESETS = {p.name: p for p in _ALL}
TABLE_PRESETS = ["universal3", "nonconvex3", "triangle334", "linear73", "square3444"]
AFFINE_PRESETS = ["affineA1", "affineA2", "affineB2"]


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
