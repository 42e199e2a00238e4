"""Gesture and voice input control engine."""

from ._core import (
    GestureEngine,
    GesturaError,
    Pointer,
    evaluate,
    fingers_up,
    map_to_screen,
    normalize,
    parse_frame,
    parse_intent,
    plan_intent,
    replay,
    synthesize_suite,
)

__all__ = [
    "GestureEngine",
    "GesturaError",
    "Pointer",
    "evaluate",
    "fingers_up",
    "map_to_screen",
    "normalize",
    "parse_frame",
    "parse_intent",
    "plan_intent",
    "replay",
    "synthesize_suite",
]
