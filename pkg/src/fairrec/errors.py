"""Exception hierarchy shared by every fairrec module."""

from __future__ import annotations


class FairrecError(Exception):
    """Base class for all errors raised by fairrec."""


# -- ingestion -------------------------------------------------------------

class ParseError(FairrecError, ValueError):
    """A row of an input file could not be parsed."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class DanglingReference(FairrecError, KeyError):
    """A record refers to an author or venue that does not exist."""

    def __init__(self, ref: str, owner: str | None = None):
        self.ref = ref
        self.owner = owner
        super().__init__(ref)

    def __str__(self):
        if self.owner:
            return f"{self.owner} refers to unknown id {self.ref!r}"
        return f"unknown id {self.ref!r}"


class DuplicateId(FairrecError, ValueError):
    """Two records of the same kind share an identifier."""

    def __init__(self, ident: str, kind: str = "record"):
        self.ident = ident
        self.kind = kind
        super().__init__(f"duplicate {kind} id {ident!r}")


class InvalidDataset(FairrecError, ValueError):
    """Raised by loaders when validation produced diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(str(d) for d in self.diagnostics[:5])
        more = len(self.diagnostics) - 5
        if more > 0:
            lines += f"; ... {more} more"
        super().__init__(lines)


class MissingCategory(FairrecError, KeyError):
    """A reference table lacks a required rank or category."""

    def __init__(self, table: str, category: str):
        self.table = table
        self.category = category
        super().__init__(f"{table} is missing {category!r}")

    def __str__(self):
        return self.args[0]


class OutOfRangeWeight(FairrecError, ValueError):
    """A reference-table weight lies outside its admissible range."""


# -- profiling -------------------------------------------------------------

class UnknownCountry(FairrecError, KeyError):
    """A country is absent from the HDI table and the developing list."""

    def __str__(self):
        return f"unknown country {self.args[0]!r}"


class MissingState(FairrecError, ValueError):
    """A US author has no state, so EPSCoR membership is undefined."""


class EmptyPool(FairrecError, ValueError):
    """An operation needed at least one author or rank and got none."""


class EmptyAuthorList(FairrecError, ValueError):
    """Profile fusion was asked to combine zero authors."""


class UnknownVenue(FairrecError, KeyError):
    """A paper's venue id does not resolve."""

    def __str__(self):
        return f"unknown venue {self.args[0]!r}"


# -- selection -------------------------------------------------------------

class InvalidRequest(FairrecError, ValueError):
    """A selection request violates its preconditions."""


class PoolTooSmall(InvalidRequest):
    """The pool holds fewer papers than the number requested."""

    def __init__(self, n_papers: int, pool_size: int):
        self.n_papers = n_papers
        self.pool_size = pool_size
        super().__init__(f"requested {n_papers} papers from a pool of {pool_size}")


# -- metrics ---------------------------------------------------------------

class EmptySelection(FairrecError, ValueError):
    """A metric needs at least one selected paper."""


class ZeroBaselineFeature(FairrecError, ZeroDivisionError):
    """Relative gain is undefined because a baseline rate is zero."""

    def __init__(self, features):
        self.features = tuple(features)
        super().__init__("baseline participation is zero for: " + ", ".join(self.features))


class ZeroBaselineUtility(FairrecError, ZeroDivisionError):
    """Utility loss is undefined because the baseline utility is zero."""


class DegenerateDenominator(FairrecError, ZeroDivisionError):
    """The F-measure inputs sum to zero."""


class InvalidSpec(FairrecError, ValueError):
    """A synthetic-pool specification is out of range."""
