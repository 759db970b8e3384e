"""Resource budgets.

Budgets live in a context variable so that threads and nested ``limits``
blocks see consistent values.
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Limits:
    max_gb_pairs: int = 200_000
    max_gb_degree: int = 200
    max_enumeration: int = 10_000_000
    order: str = "grevlex"


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("fatarc_limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits(**changes):
    """Temporarily override budgets, e.g. ``with limits(max_enumeration=10**5): ...``."""
    token = _current.set(dataclasses.replace(_current.get(), **changes))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def set_limits(**changes) -> Limits:
    new = dataclasses.replace(_current.get(), **changes)
    _current.set(new)
    return new
