"""Loading, validating and persisting the author/paper/venue dataset.

Three CSV files make up a dataset:

``authors.csv``
    ``author_id, gender_label, ethnicity_category, position_title,
    university_name, university_rank, country, us_state, h_index``
``papers.csv``
    ``paper_id, venue_id, author_ids`` (author ids joined with ``;``)
``venues.csv``
    ``venue_id, impact_factor``

The reference tables used by the encoders live in a single JSON document;
a default copy ships in ``fairrec/data/reference_tables.json``.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    DanglingReference,
    DuplicateId,
    InvalidDataset,
    MissingCategory,
    OutOfRangeWeight,
    ParseError,
)

GENDERS = ("female", "male")
ETHNICITIES = ("White", "Black", "Hispanic", "Asian", "Other")
CAREER_RANKS = (
    "Distinguished Professor",
    "Professor",
    "Associate Professor",
    "Assistant Professor or Lecturer",
    "Post-Doctoral or Research Fellow",
    "Graduate Student",
)
SENIOR_RANKS = frozenset(CAREER_RANKS[:3])

US_ALIASES = frozenset({"United States", "USA", "US", "United States of America"})

AUTHOR_COLUMNS = (
    "author_id",
    "gender_label",
    "ethnicity_category",
    "position_title",
    "university_name",
    "university_rank",
    "country",
    "us_state",
    "h_index",
)
PAPER_COLUMNS = ("paper_id", "venue_id", "author_ids")
VENUE_COLUMNS = ("venue_id", "impact_factor")


def is_usa(country: str) -> bool:
    return country in US_ALIASES


@dataclass(frozen=True)
class AuthorRecord:
    author_id: str
    gender_label: str
    ethnicity_category: str
    position_title: str
    university_name: str
    university_rank: int
    country: str
    us_state: str | None
    h_index: int


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    venue_id: str
    author_ids: tuple[str, ...]


@dataclass(frozen=True)
class VenueRecord:
    venue_id: str
    impact_factor: float


@dataclass
class Dataset:
    """Cross-referenced authors, papers and venues keyed by id."""

    authors: dict[str, AuthorRecord] = field(default_factory=dict)
    papers: dict[str, PaperRecord] = field(default_factory=dict)
    venues: dict[str, VenueRecord] = field(default_factory=dict)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.authors), len(self.papers), len(self.venues)

    def papers_in_venue(self, venue_id: str) -> list[PaperRecord]:
        return [self.papers[k] for k in sorted(self.papers) if self.papers[k].venue_id == venue_id]

    def top_venue(self) -> str:
        """Id of the venue with the highest impact factor (ties by id)."""
        if not self.venues:
            raise ValueError("dataset has no venues")
        return min(self.venues.values(), key=lambda v: (-v.impact_factor, v.venue_id)).venue_id


@dataclass(frozen=True)
class ReferenceTables:
    ethnicity_weights: dict[str, float]
    career_weights: dict[str, float]
    hdi_by_country: dict[str, float]
    epscor_states: frozenset[str]
    developing_countries: frozenset[str]
    gender_weights: dict[str, float] = field(
        default_factory=lambda: {"female": 0.73, "male": 0.27}
    )

    def __post_init__(self):
        for rank in CAREER_RANKS:
            if rank not in self.career_weights:
                raise MissingCategory("career_weights", rank)
        for cat in ETHNICITIES:
            if cat not in self.ethnicity_weights:
                raise MissingCategory("ethnicity_weights", cat)
        for g in GENDERS:
            if g not in self.gender_weights:
                raise MissingCategory("gender_weights", g)
        for name in ("ethnicity_weights", "career_weights", "gender_weights"):
            for key, value in getattr(self, name).items():
                if not 0.0 <= value <= 1.0:
                    raise OutOfRangeWeight(f"{name}[{key!r}] = {value} is outside [0, 1]")
        for key, value in self.hdi_by_country.items():
            if not 0.0 < value < 1.0:
                raise OutOfRangeWeight(f"hdi_by_country[{key!r}] = {value} is outside (0, 1)")

    def knows_country(self, country: str) -> bool:
        if is_usa(country):
            country = self.us_key()
        return country in self.hdi_by_country or country in self.developing_countries

    def us_key(self) -> str:
        for alias in sorted(US_ALIASES):
            if alias in self.hdi_by_country:
                return alias
        return "United States"

    def to_dict(self) -> dict:
        return {
            "gender_weights": dict(self.gender_weights),
            "ethnicity_weights": dict(self.ethnicity_weights),
            "career_weights": dict(self.career_weights),
            "hdi_by_country": dict(sorted(self.hdi_by_country.items())),
            "epscor_states": sorted(self.epscor_states),
            "developing_countries": sorted(self.developing_countries),
        }


def _tables_from_dict(doc: dict) -> ReferenceTables:
    for key in ("ethnicity_weights", "career_weights", "hdi_by_country",
                "epscor_states", "developing_countries"):
        if key not in doc:
            raise MissingCategory("reference tables", key)
    kwargs = {}
    if "gender_weights" in doc:
        kwargs["gender_weights"] = {k: float(v) for k, v in doc["gender_weights"].items()}
    return ReferenceTables(
        ethnicity_weights={k: float(v) for k, v in doc["ethnicity_weights"].items()},
        career_weights={k: float(v) for k, v in doc["career_weights"].items()},
        hdi_by_country={k: float(v) for k, v in doc["hdi_by_country"].items()},
        epscor_states=frozenset(doc["epscor_states"]),
        developing_countries=frozenset(doc["developing_countries"]),
        **kwargs,
    )


def load_reference_tables(path=None) -> ReferenceTables:
    """Load reference tables from a JSON document.

    With no path, the default tables bundled with the package are returned.
    """
    if path is None:
        text = resources.files("fairrec").joinpath("data/reference_tables.json").read_text()
    else:
        text = Path(path).read_text()
    return _tables_from_dict(json.loads(text))


def default_tables() -> ReferenceTables:
    return load_reference_tables()


# -- CSV parsing -----------------------------------------------------------

def _read_rows(path, columns):
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty (missing header row)", path, 1) from None
        header = [h.strip() for h in header]
        if tuple(header) != columns:
            raise ParseError(f"expected columns {','.join(columns)}, got {','.join(header)}", path, 1)
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(columns):
                raise ParseError(f"expected {len(columns)} fields, got {len(row)}", path, lineno)
            yield lineno, dict(zip(columns, (c.strip() for c in row)))


def _parse_int(value, name, path, lineno):
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{name} must be an integer, got {value!r}", path, lineno) from None


def _parse_choice(value, name, choices, path, lineno):
    if value not in choices:
        raise ParseError(f"{name} must be one of {', '.join(choices)}; got {value!r}", path, lineno)
    return value


def read_authors(path) -> list[AuthorRecord]:
    out = []
    for lineno, row in _read_rows(path, AUTHOR_COLUMNS):
        if not row["author_id"]:
            raise ParseError("author_id is empty", path, lineno)
        out.append(AuthorRecord(
            author_id=row["author_id"],
            gender_label=_parse_choice(row["gender_label"], "gender_label", GENDERS, path, lineno),
            ethnicity_category=_parse_choice(
                row["ethnicity_category"], "ethnicity_category", ETHNICITIES, path, lineno),
            # Industry titles are not in CAREER_RANKS and are rejected here.
            position_title=_parse_choice(
                row["position_title"], "position_title", CAREER_RANKS, path, lineno),
            university_name=row["university_name"],
            university_rank=_parse_int(row["university_rank"], "university_rank", path, lineno),
            country=row["country"],
            us_state=row["us_state"] or None,
            h_index=_parse_int(row["h_index"], "h_index", path, lineno),
        ))
    return out


def read_papers(path) -> list[PaperRecord]:
    out = []
    for lineno, row in _read_rows(path, PAPER_COLUMNS):
        if not row["paper_id"]:
            raise ParseError("paper_id is empty", path, lineno)
        ids = tuple(a.strip() for a in row["author_ids"].split(";") if a.strip())
        out.append(PaperRecord(row["paper_id"], row["venue_id"], ids))
    return out


def read_venues(path) -> list[VenueRecord]:
    out = []
    for lineno, row in _read_rows(path, VENUE_COLUMNS):
        try:
            impact = float(row["impact_factor"])
        except ValueError:
            raise ParseError(
                f"impact_factor must be a number, got {row['impact_factor']!r}", path, lineno
            ) from None
        if not math.isfinite(impact):
            raise ParseError("impact_factor must be finite", path, lineno)
        out.append(VenueRecord(row["venue_id"], impact))
    return out


def _index(records, key, kind):
    out = {}
    for rec in records:
        ident = getattr(rec, key)
        if ident in out:
            raise DuplicateId(ident, kind)
        out[ident] = rec
    return out


def build_dataset(authors, papers, venues) -> Dataset:
    """Index record lists into a Dataset, rejecting duplicate ids."""
    return Dataset(
        authors=_index(authors, "author_id", "author"),
        papers=_index(papers, "paper_id", "paper"),
        venues=_index(venues, "venue_id", "venue"),
    )


def load_dataset(authors_path, papers_path, venues_path, tables: ReferenceTables | None = None) -> Dataset:
    """Read and cross-check the three dataset files.

    Raises ParseError for malformed rows, DuplicateId, DanglingReference for
    papers citing unknown authors or venues, and InvalidDataset for any other
    invariant violation reported by :func:`validate_dataset`.  Countries are
    checked against ``tables`` when given.
    """
    authors = read_authors(authors_path)
    if not authors:
        raise ParseError("no author rows", authors_path)
    dataset = build_dataset(authors, read_papers(papers_path), read_venues(venues_path))
    diagnostics = validate_dataset(dataset, tables)
    for d in diagnostics:
        if d.rule in ("unknown-author", "unknown-venue"):
            raise DanglingReference(d.ref, owner=f"paper {d.record_id!r}")
    if diagnostics:
        raise InvalidDataset(diagnostics)
    return dataset


# -- validation ------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    record_id: str
    rule: str
    message: str
    ref: str | None = None

    def __str__(self):
        return f"{self.record_id}: [{self.rule}] {self.message}"


def validate_dataset(dataset: Dataset, tables: ReferenceTables | None = None) -> list[Diagnostic]:
    """Return one diagnostic per invariant violation; empty when valid."""
    out: list[Diagnostic] = []
    for aid in sorted(dataset.authors):
        a = dataset.authors[aid]
        if a.author_id != aid:
            out.append(Diagnostic(aid, "id-mismatch", f"keyed as {aid!r} but record says {a.author_id!r}"))
        if a.gender_label not in GENDERS:
            out.append(Diagnostic(aid, "gender", f"unknown gender label {a.gender_label!r}"))
        if a.ethnicity_category not in ETHNICITIES:
            out.append(Diagnostic(aid, "ethnicity", f"unknown ethnicity {a.ethnicity_category!r}"))
        if a.position_title not in CAREER_RANKS:
            out.append(Diagnostic(aid, "position", f"non-academic or unknown title {a.position_title!r}"))
        if a.university_rank < 1:
            out.append(Diagnostic(aid, "university-rank", f"university_rank must be >= 1, got {a.university_rank}"))
        if a.h_index < 0:
            out.append(Diagnostic(aid, "h-index", f"h_index must be non-negative, got {a.h_index}"))
        if is_usa(a.country) and not a.us_state:
            out.append(Diagnostic(aid, "us-state", "us_state is required for authors in the USA"))
        if not is_usa(a.country) and a.us_state:
            out.append(Diagnostic(aid, "us-state", f"us_state given for non-US country {a.country!r}"))
        if tables is not None and not tables.knows_country(a.country):
            out.append(Diagnostic(aid, "country", f"country {a.country!r} not in reference tables", a.country))

    for vid in sorted(dataset.venues):
        v = dataset.venues[vid]
        if not v.impact_factor > 0:
            out.append(Diagnostic(vid, "impact-factor", f"impact_factor must be positive, got {v.impact_factor}"))

    for pid in sorted(dataset.papers):
        p = dataset.papers[pid]
        if not p.author_ids:
            out.append(Diagnostic(pid, "no-authors", "paper lists no authors"))
        if len(set(p.author_ids)) != len(p.author_ids):
            out.append(Diagnostic(pid, "duplicate-author", "author_ids contains duplicates"))
        for aid in p.author_ids:
            if aid not in dataset.authors:
                out.append(Diagnostic(pid, "unknown-author", f"unknown author {aid!r}", aid))
        if p.venue_id not in dataset.venues:
            out.append(Diagnostic(pid, "unknown-venue", f"unknown venue {p.venue_id!r}", p.venue_id))
    return out


# -- persistence -----------------------------------------------------------

def _fmt_number(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def write_dataset(dataset: Dataset, directory) -> dict[str, Path]:
    """Write the dataset as authors.csv, papers.csv and venues.csv (sorted by id)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "authors": directory / "authors.csv",
        "papers": directory / "papers.csv",
        "venues": directory / "venues.csv",
    }
    with paths["authors"].open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AUTHOR_COLUMNS)
        for aid in sorted(dataset.authors):
            a = dataset.authors[aid]
            w.writerow([a.author_id, a.gender_label, a.ethnicity_category, a.position_title,
                        a.university_name, a.university_rank, a.country, a.us_state or "", a.h_index])
    with paths["papers"].open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PAPER_COLUMNS)
        for pid in sorted(dataset.papers):
            p = dataset.papers[pid]
            w.writerow([p.paper_id, p.venue_id, ";".join(p.author_ids)])
    with paths["venues"].open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(VENUE_COLUMNS)
        for vid in sorted(dataset.venues):
            v = dataset.venues[vid]
            w.writerow([v.venue_id, _fmt_number(v.impact_factor)])
    return paths


def load_dataset_dir(directory, tables: ReferenceTables | None = None) -> Dataset:
    directory = Path(directory)
    return load_dataset(directory / "authors.csv", directory / "papers.csv",
                        directory / "venues.csv", tables)
