"""Small roots, low elements, Shi regions and reduced-word automata for Coxeter groups."""

__version__ = "0.1.0"

from .coxeter import CoxeterSystem, Element, Root, load_system  # noqa: E402
from .presets import PRESETS, get_preset  # noqa: E402

__all__ = ["CoxeterSystem", "Element", "Root", "load_system", "PRESETS", "get_preset", "__version__"]
