"""Link tables: ingestion, batch scanning and golden-table reproduction."""

from __future__ import annotations

import csv
import enum
import functools
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Optional, Sequence

from .braid import BraidParseError, BraidWord, alexander_from_braid, closure_components, parse_braid
from .cover import CoverVerdict, DataInconsistencyError, criterion, homology_order
from .laurent import InexactDivisionError, LaurentPoly, PolyParseError, UnitClass, normalize, parse_poly

log = logging.getLogger(__name__)

__all__ = [
    "AlexForm",
    "LinkRecord",
    "ScanRow",
    "GoldenRow",
    "Mismatch",
    "TableError",
    "CrossCheckError",
    "parse_table",
    "effective_delta",
    "scan",
    "write_scan",
    "load_golden",
    "reproduce_appendix",
    "appendix_golden_path",
    "appendix_table_path",
]

KNOWN_COLUMNS = {"name", "components", "braid", "alexander", "alexander_form"}

_T_MINUS_1 = LaurentPoly({1: 1, 0: -1})


class AlexForm(str, enum.Enum):
    ALEXANDER = "ALEXANDER"
    ALEXANDER_OVER_T_MINUS_1 = "ALEXANDER_OVER_T_MINUS_1"

    @classmethod
    def parse(cls, text: str) -> AlexForm:
        key = text.strip().upper()
        aliases = {"": cls.ALEXANDER, "QUOTIENT": cls.ALEXANDER_OVER_T_MINUS_1}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown alexander_form {text!r}") from None


class TableError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class CrossCheckError(ValueError):
    """Braid-derived and tabulated Alexander polynomials disagree."""


@dataclass(frozen=True)
class LinkRecord:
    name: str
    components: Optional[int] = None
    braid: Optional[BraidWord] = None
    alex: Optional[str] = None
    alex_form: AlexForm = AlexForm.ALEXANDER

    def __post_init__(self):
        if self.braid is None and self.alex is None:
            raise ValueError(f"record {self.name!r} needs a braid or an Alexander polynomial")
        if self.alex is not None:
            parse_poly(self.alex)


@dataclass(frozen=True)
class ScanRow:
    name: str
    normalized_delta: Optional[str] = None
    verdict: Optional[CoverVerdict] = None
    orders: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> dict:
        if self.error is not None:
            return {"name": self.name, "error": self.error}
        return {
            "name": self.name,
            "delta": self.normalized_delta,
            "determinant": self.verdict.determinant,
            "orders": {str(k): v for k, v in self.orders.items()},
            "conclusion": self.verdict.conclusion.value,
        }


def _record_from_row(row: dict, line: int) -> LinkRecord:
    name = (row.get("name") or "").strip()
    if not name:
        raise TableError(line, "missing name")
    comp_text = (row.get("components") or "").strip()
    braid_text = (row.get("braid") or "").strip()
    alex_text = (row.get("alexander") or "").strip()
    try:
        components = int(comp_text) if comp_text else None
        braid = parse_braid(braid_text) if braid_text else None
        form = AlexForm.parse(row.get("alexander_form") or "")
        if alex_text:
            parse_poly(alex_text)
    except (ValueError, BraidParseError, PolyParseError) as exc:
        raise TableError(line, str(exc)) from exc
    if braid is None and not alex_text:
        raise TableError(line, f"{name}: neither braid nor alexander given")
    return LinkRecord(name, components, braid, alex_text or None, form)


def parse_table(
    stream: IO[str] | str,
    skip_bad: bool = False,
    errors: Optional[list] = None,
) -> list[LinkRecord]:
    """Read a CSV link table with a header row.

    A malformed row raises :class:`TableError` unless ``skip_bad`` is set,
    in which case it is logged, appended to ``errors`` if given, and skipped.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise TableError(1, "missing header row") from None
    unknown = set(header) - KNOWN_COLUMNS
    if unknown:
        raise TableError(1, f"unknown columns {sorted(unknown)}")
    if "name" not in header:
        raise TableError(1, "header must include 'name'")
    records = []
    for cells in reader:
        line = reader.line_num
        if not any(c.strip() for c in cells):
            continue
        try:
            if len(cells) != len(header):
                raise TableError(line, f"expected {len(header)} fields, got {len(cells)}")
            records.append(_record_from_row(dict(zip(header, cells)), line))
        except TableError as exc:
            if not skip_bad:
                raise
            log.warning("skipping %s", exc)
            if errors is not None:
                errors.append(exc)
    return records


def effective_delta(r: LinkRecord) -> UnitClass:
    from_table = None
    if r.alex is not None:
        p = parse_poly(r.alex)
        if r.alex_form is AlexForm.ALEXANDER_OVER_T_MINUS_1:
            p = p * _T_MINUS_1
        from_table = normalize(p)
    if r.braid is None:
        return from_table
    from_braid = alexander_from_braid(r.braid)
    if from_table is not None and from_table != from_braid:
        raise CrossCheckError(
            f"{r.name}: braid {r.braid} gives {from_braid}, table says {from_table}"
        )
    return from_braid


def _scan_one(record: LinkRecord, ks: tuple[int, ...]) -> ScanRow:
    try:
        delta = effective_delta(record)
        components = record.components
        if components is None and record.braid is not None:
            components = closure_components(record.braid)
        verdict = criterion(delta, components)
        orders = {k: homology_order(delta, k) for k in ks}
    except (CrossCheckError, DataInconsistencyError, InexactDivisionError,
            PolyParseError, ValueError) as exc:
        return ScanRow(record.name, error=f"{type(exc).__name__}: {exc}")
    return ScanRow(record.name, str(delta), verdict, orders)


def scan(records: Sequence[LinkRecord], k_list: Iterable[int], jobs: int = 1) -> list[ScanRow]:
    """Evaluate every record; failures become error rows. Output keeps input order."""
    ks = tuple(k_list)
    if not ks:
        raise ValueError("k_list must be nonempty")
    for k in ks:
        if k < 2:
            raise ValueError(f"cover degree must be >= 2, got {k}")
    work = functools.partial(_scan_one, ks=ks)
    if jobs <= 1 or len(records) < 2:
        return [work(r) for r in records]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, records, chunksize=max(1, len(records) // (4 * jobs))))


def scan_json(rows: Sequence[ScanRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2) + "\n"


def scan_csv(rows: Sequence[ScanRow], k_list: Sequence[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "delta", "determinant"] + [f"order_{k}" for k in k_list]
               + ["conclusion", "error"])
    for r in rows:
        if r.error is not None:
            w.writerow([r.name, "", ""] + [""] * len(k_list) + ["", r.error])
        else:
            w.writerow([r.name, r.normalized_delta, r.verdict.determinant]
                       + [r.orders[k] for k in k_list]
                       + [r.verdict.conclusion.value, ""])
    return buf.getvalue()


def write_scan(rows: Sequence[ScanRow], path: str, k_list: Sequence[int]) -> None:
    text = scan_csv(rows, k_list) if path.lower().endswith(".csv") else scan_json(rows)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


# golden table -------------------------------------------------------------

@dataclass(frozen=True)
class GoldenRow:
    name: str
    quotient: str
    order3: int


@dataclass(frozen=True)
class Mismatch:
    name: str
    got: int
    expected: int


def appendix_golden_path():
    return resources.files("branchcover") / "data" / "appendix_a.csv"


def appendix_table_path():
    return resources.files("branchcover") / "data" / "appendix_a_links.csv"


def load_golden(stream: IO[str] | str | None = None) -> list[GoldenRow]:
    """Read ``name,quotient,order3`` rows; defaults to the bundled appendix table."""
    if stream is None:
        stream = appendix_golden_path().read_text(encoding="utf-8")
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    rows = []
    for i, row in enumerate(csv.DictReader(stream), start=2):
        try:
            rows.append(GoldenRow(row["name"].strip(), row["quotient"].strip(), int(row["order3"])))
        except (KeyError, ValueError, AttributeError) as exc:
            raise TableError(i, f"bad golden row: {exc}") from exc
    return rows


def golden_delta(row: GoldenRow) -> UnitClass:
    return normalize(parse_poly(row.quotient) * _T_MINUS_1)


def reproduce_appendix(golden: Iterable[GoldenRow | tuple]) -> list[Mismatch]:
    """Recompute the 3-fold cover orders; an empty list means full agreement."""
    diff = []
    for row in golden:
        if not isinstance(row, GoldenRow):
            row = GoldenRow(*row)
        got = homology_order(golden_delta(row), 3)
        if got != row.order3:
            diff.append(Mismatch(row.name, got, row.order3))
    return diff
