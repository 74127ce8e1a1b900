import csv
from pathlib import Path

import pytest

from fairrec.ingest import AUTHOR_COLUMNS, PAPER_COLUMNS, VENUE_COLUMNS, default_tables

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n, title = marker.args
        _CRITERIA.setdefault(n, [title, []])[1].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {n}: {status}  {title}  ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tables():
    return default_tables()


AUTHORS = [
    ("a1", "female", "White", "Professor", "U1", 10, "Norway", "", 20),
    ("a2", "male", "Asian", "Graduate Student", "U300", 300, "United States", "Arkansas", 5),
    ("a3", "male", "White", "Distinguished Professor", "U50", 50, "Germany", "", 40),
    ("a4", "female", "Hispanic", "Assistant Professor or Lecturer", "U400", 400, "India", "", 10),
]
PAPERS = [("p1", "v1", "a1;a3"), ("p2", "v1", "a2"), ("p3", "v2", "a3;a4;a1")]
VENUES = [("v1", 87), ("v2", 27)]


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


@pytest.fixture
def raw_files(tmp_path):
    """The four-author, three-paper fixture as CSV files."""
    return (
        write_csv(tmp_path / "authors.csv", AUTHOR_COLUMNS, AUTHORS),
        write_csv(tmp_path / "papers.csv", PAPER_COLUMNS, PAPERS),
        write_csv(tmp_path / "venues.csv", VENUE_COLUMNS, VENUES),
    )


@pytest.fixture
def small_dataset(raw_files, tables):
    from fairrec.ingest import load_dataset
    return load_dataset(*raw_files, tables=tables)


@pytest.fixture
def data_dir(raw_files):
    return Path(raw_files[0]).parent
