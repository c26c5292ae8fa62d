"""Exception types shared across the package.

Everything raised on purpose derives from :class:`Error`, so callers (and the
command line driver) can distinguish domain failures from genuine bugs.
"""

from __future__ import annotations


class Error(Exception):
    """Base class for all deliberate failures in this package."""


class ParseError(Error, ValueError):
    """Malformed textual input (polynomial, braid word, JSON payload)."""


class NotPolynomial(Error):
    """A rational function was required to be polynomial and is not."""


class NotMutable(Error):
    """Mutation was requested at a frozen vertex."""


class BadIndex(Error):
    """An index (vertex, strand, letter, position) is out of range."""


class BadParameters(Error):
    """Arguments are structurally invalid (sizes, signs, missing fields)."""


class DimensionMismatch(Error):
    """Two objects that must live on the same index set do not."""


class TooManyVertices(Error):
    """Exact canonical-form search refuses quivers above its size bound."""


class RewriteOverflow(Error):
    """Rewrite closure for braid-word equality exceeded its node cap."""


class BudgetExceeded(Error):
    """Point-count search exceeded its node budget."""


class SearchExhausted(Error):
    """A bounded search ended without producing the requested object."""


class InvalidWeave(Error):
    """A weave move sequence violates a move precondition."""


class NotFlags(Error):
    """A matrix that must represent a complete flag is singular."""
