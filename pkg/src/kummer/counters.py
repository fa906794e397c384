"""Field-operation counting.

Counters tally multiplications (M), squarings (S), inversions (I), additions
and subtractions (a) and square-root extractions (Sq) in the working field K,
whether K is a prime field or its quadratic extension.  A counter is activated
for the current execution context with ``count_ops()``; counters nest, and
every active counter in the stack is incremented, so totals are additive
across nested calls.

The active stack lives in a ``contextvars.ContextVar`` so that concurrent
contexts count independently; a module-level flag keeps the disabled path
cheap, since field operations are the innermost hot loop of everything else.
"""

from __future__ import annotations

import contextvars

_STACK: contextvars.ContextVar[tuple] = contextvars.ContextVar("op_counters", default=())

# Fast-path flag: True whenever any context *may* be counting.  Checking a
# module global is much cheaper than ContextVar.get() on the hot path.
_maybe_counting = False

_suspended: contextvars.ContextVar[bool] = contextvars.ContextVar("op_suspended", default=False)


class OpCounter:
    """Mutable tally of K-operations."""

    __slots__ = ("M", "S", "I", "a", "Sq")

    def __init__(self):
        self.reset()

    def reset(self):
        self.M = 0
        self.S = 0
        self.I = 0
        self.a = 0
        self.Sq = 0

    def snapshot(self):
        return {"M": self.M, "S": self.S, "I": self.I, "a": self.a, "Sq": self.Sq}

    def __repr__(self):
        return f"OpCounter(M={self.M}, S={self.S}, I={self.I}, a={self.a}, Sq={self.Sq})"


class count_ops:
    """Context manager activating a fresh (or supplied) counter."""

    def __init__(self, counter: OpCounter | None = None):
        self.counter = counter if counter is not None else OpCounter()
        self._token = None

    def __enter__(self) -> OpCounter:
        global _maybe_counting
        self._token = _STACK.set(_STACK.get() + (self.counter,))
        _maybe_counting = True
        return self.counter

    def __exit__(self, *exc):
        _STACK.reset(self._token)
        return False


class suspend_counting:
    """Temporarily stop counting (used inside unit-cost primitives like sqrt)."""

    def __init__(self):
        self._token = None

    def __enter__(self):
        self._token = _suspended.set(True)

    def __exit__(self, *exc):
        _suspended.reset(self._token)
        return False


def _bump(attr: str, n: int = 1) -> None:
    if not _maybe_counting:
        return
    if _suspended.get():
        return
    for c in _STACK.get():
        setattr(c, attr, getattr(c, attr) + n)


def tick_mul(n: int = 1) -> None:
    _bump("M", n)


def tick_sq(n: int = 1) -> None:
    _bump("S", n)


def tick_inv(n: int = 1) -> None:
    _bump("I", n)


def tick_add(n: int = 1) -> None:
    _bump("a", n)


def tick_sqrt(n: int = 1) -> None:
    _bump("Sq", n)
