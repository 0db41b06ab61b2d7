"""CSV rendering of aggregation results.

Every operation's JSON result flattens to rows with a header carrying the
JSON field names; quoting is RFC 4180 (csv module defaults). The json
format is the canonical result unchanged.
"""

from __future__ import annotations

import csv
import io


def result_rows(operation: str, result: dict | list) -> tuple[list[str], list[list]]:
    """(header, rows) for one operation result."""
    if operation == "per_year":
        header = ["year", "count"]
        rows: list[list] = [["NA", result["na"]]] if result["na"] else []
        rows += [[year, count] for year, count in result["years"]]
        return header, rows
    if operation == "grid":
        header = ["name", "first_year", "last_year", "papers", "citations", "avg_citations"]
        if result and isinstance(result[0], dict) and "title" in result[0]:
            header = ["id", "title", "year_published", "authors", "venue", "citations", "url"]
            return header, [
                [
                    row["id"],
                    row["title"],
                    row["year_published"],
                    "; ".join(row["authors"]),
                    row["venue"],
                    row["citations"],
                    row["url"],
                ]
                for row in result
            ]
        return header, [[row[name] for name in header] for row in result]
    if operation == "distribution":
        header = ["min", "q1", "median", "q3", "max", "avg", "n"]
        return header, [[result[name] for name in header]]
    if operation == "top_k":
        header = ["name", "value"]
        return header, [[name, value] for name, value in result]
    if operation == "bins":
        header = ["bin", "count"]
        return header, [[label, count] for label, count in result.items()]
    if operation == "co_occurrence":
        header = ["value", "count"]
        return header, [[value, count] for value, count in sorted(result.items())]
    if operation == "activity":
        header = ["active_count", "new_count"]
        return header, [[result["active_count"], result["new_count"]]]
    raise ValueError(f"no CSV form for operation {operation!r}")


def to_csv(operation: str, result: dict | list) -> str:
    header, rows = result_rows(operation, result)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()
