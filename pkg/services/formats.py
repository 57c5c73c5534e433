"""
Sequence Formats
JSON, CSV and OEIS b-file codecs for exact rational sequences, plus the seed-file readers
"""

import io
import csv
import json
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from models import CoefficientSequence, FormatError, OutputFormat, RationalError
from services.rational_core import rational_core

logger = logging.getLogger(__name__)

Row = Tuple[int, Fraction]

class SequenceFormats:
    """Renders (index, value) rows and parses seed / transform files"""

    # -------------------------------------------------------------------------
    # Rendering
    # -------------------------------------------------------------------------

    def render(self, rows: Sequence[Row], output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return self.render_json(rows)
        if output_format is OutputFormat.CSV:
            return self.render_csv(rows)
        return self.render_bfile(rows)

    def render_json(self, rows: Sequence[Row]) -> str:
        """Array of "p/q" strings in index order"""
        return json.dumps([rational_core.format(value) for _, value in rows]) + "\n"

    def render_csv(self, rows: Sequence[Row]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "value"])
        for n, value in rows:
            writer.writerow([n, rational_core.format(value)])
        return buffer.getvalue()

    def render_bfile(self, rows: Sequence[Row]) -> str:
        """One "n value" line per index; every value must be an integer"""
        lines = []
        previous = None
        for n, value in rows:
            value = Fraction(value)
            if value.denominator != 1:
                raise FormatError(
                    f"b-file output needs integer values but index {n} is {value}; use --format json"
                )
            if previous is not None and n != previous + 1:
                raise FormatError(f"b-file indices must be contiguous, {previous} is followed by {n}")
            previous = n
            lines.append(f"{n} {value.numerator}")
        return "".join(line + "\n" for line in lines)

    # -------------------------------------------------------------------------
    # Parsing
    # -------------------------------------------------------------------------

    def read_bfile(self, text: str) -> List[Tuple[int, int]]:
        """Parse b-file text; '#' comment lines and blank lines are ignored"""
        rows: List[Tuple[int, int]] = []
        for line_number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.split()
            if len(fields) != 2:
                raise FormatError(f"b-file line {line_number}: expected 'n value', got {line!r}")
            try:
                n, value = int(fields[0]), int(fields[1])
            except ValueError:
                raise FormatError(f"b-file line {line_number}: non-integer field in {line!r}")
            if rows and n != rows[-1][0] + 1:
                raise FormatError(f"b-file line {line_number}: index {n} does not follow {rows[-1][0]}")
            rows.append((n, value))
        return rows

    def _load_json(self, text: str, what: str):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"{what} is not valid JSON: {e}")

    def _rationals(self, items, what: str) -> List[Fraction]:
        if not isinstance(items, list):
            raise FormatError(f"{what} must be a JSON array of rational strings")
        values = []
        for i, item in enumerate(items):
            if isinstance(item, bool) or not isinstance(item, (str, int)):
                raise FormatError(f"{what} entry {i} must be a rational string, got {item!r}")
            try:
                values.append(rational_core.parse(item))
            except RationalError as e:
                raise FormatError(f"{what} entry {i}: {e}")
        return values

    def parse_seed_file(self, text: str) -> Tuple[List[Fraction], Optional[int]]:
        """Seed values and, for the associated object form, its m.

        A bare array lists x_1, x_2, ... (x_0 = 1 implied). An object
        {"m": m, "values": [...]} lists x_m, x_{m+1}, ...
        """
        data = self._load_json(text, "Seed file")
        if isinstance(data, list):
            return self._rationals(data, "Seed file"), None
        if isinstance(data, dict):
            if set(data) != {"m", "values"}:
                raise FormatError(f"Associated seed object needs exactly 'm' and 'values', got {sorted(data)}")
            m = data["m"]
            if isinstance(m, bool) or not isinstance(m, int) or m < 1:
                raise FormatError(f"Associated seed 'm' must be a positive integer, got {m!r}")
            return self._rationals(data["values"], "Seed file values"), m
        raise FormatError("Seed file must hold a JSON array or an {'m', 'values'} object")

    def parse_inline_seed(self, text: str) -> List[Fraction]:
        """Comma-separated rationals such as "1,1" or "1/2,-3" """
        if not text.strip():
            return []
        values = []
        for field in text.split(","):
            try:
                values.append(rational_core.parse(field))
            except RationalError as e:
                raise FormatError(f"Inline seed: {e}")
        return values

    def read_z_file(self, text: str) -> CoefficientSequence:
        """Transform file: JSON array z_0, z_1, ... with z_0 = 1"""
        values = self._rationals(self._load_json(text, "Transform file"), "Transform file")
        if not values:
            raise FormatError("Transform file is empty")
        if values[0] != 1:
            raise FormatError(f"Transform file must start with z_0 = 1, got {values[0]}")
        return CoefficientSequence(tuple(values))

# Global formats instance
sequence_formats = SequenceFormats()
