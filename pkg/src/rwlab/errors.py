"""Exception types and the global size-guard switch."""

from __future__ import annotations

import os

GUARD_ENV = "RWLAB_GUARD_OVERRIDE"


class PreconditionError(ValueError):
    """An operation was called with arguments outside its contract."""


class UnknownVertexError(KeyError):
    """A vertex label is not part of the graph."""


class ResourceLimitError(RuntimeError):
    """A size guard or enumeration cap was exceeded."""


class WeightOverflowError(OverflowError):
    """A weight sum left the signed 64-bit range."""


def guards_lifted() -> bool:
    return os.environ.get(GUARD_ENV, "") not in ("", "0")


def check_guard(what: str, size: int, cap: int) -> None:
    """Raise :class:`ResourceLimitError` if ``size`` exceeds ``cap``.

    Setting ``RWLAB_GUARD_OVERRIDE=1`` disables every guard; expect long runtimes.
    """
    if size > cap and not guards_lifted():
        raise ResourceLimitError(f"{what}: size {size} exceeds guard {cap} (set {GUARD_ENV}=1 to lift)")
