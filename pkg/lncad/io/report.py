# -*- coding: utf-8 -*-

"""Report rendering.

+ Table: one decimal, the best value of every column is marked with "*".
+ CSV and JSON: full precision.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import List, Dict, Sequence, Optional, Any
from io import StringIO
from csv import writer
from json import dumps, loads
from lncad.errors import ContractError, ValidationError
from lncad.evaluation.report import EvalReport

REPORT_FORMAT = ('table', 'csv', 'json')
BEST_MARK = "*"
MISSING = "--"


def _targets(reports: Sequence[EvalReport]) -> List[float]:
    return sorted({t for r in reports for t in r.sensitivity_at})


def _columns(reports: Sequence[EvalReport]) -> List[str]:
    return ['mAP'] + [f"S@{t:g}" for t in _targets(reports)]


def _table(reports: Sequence[EvalReport]) -> str:
    columns = _columns(reports)
    cells = [r.rounded() for r in reports]
    best: Dict[str, Optional[float]] = {}
    for c in columns:
        values = [row[c] for row in cells if row.get(c) is not None]
        best[c] = max(values) if values else None
    rows = [["Method"] + columns]
    for r, row in zip(reports, cells):
        line = [r.method_name]
        for c in columns:
            value = row.get(c)
            if value is None:
                line.append(MISSING)
            else:
                line.append(f"{value:.1f}" + (BEST_MARK if value == best[c] else ""))
        rows.append(line)
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    text = []
    for n, row in enumerate(rows):
        text.append(" | ".join(
            cell.ljust(w) if i == 0 else cell.rjust(w)
            for i, (cell, w) in enumerate(zip(row, widths))
        ).rstrip())
        if n == 0:
            text.append("-+-".join("-" * w for w in widths))
    return "\n".join(text) + "\n"


def _csv(reports: Sequence[EvalReport]) -> str:
    targets = _targets(reports)
    s = StringIO()
    w = writer(s, lineterminator='\n')
    w.writerow(['method'] + _columns(reports))
    for r in reports:
        values = [r.map] + [r.sensitivity_at.get(t) for t in targets]
        w.writerow([r.method_name] + ["" if v is None else repr(v) for v in values])
    return s.getvalue()


def report_to_dict(r: EvalReport) -> Dict[str, Any]:
    return {
        'method_name': r.method_name,
        'map': r.map,
        'sensitivity_at': {f"{t:g}": v for t, v in r.sensitivity_at.items()},
        'mean_fp_per_volume': r.mean_fp_per_volume,
        'lesion_count': r.lesion_count,
        'volume_count': r.volume_count,
    }


def report_from_dict(data: Dict[str, Any]) -> EvalReport:
    return EvalReport(
        method_name=str(data['method_name']),
        map=data.get('map'),
        sensitivity_at={float(t): v for t, v in data.get('sensitivity_at', {}).items()},
        mean_fp_per_volume=data.get('mean_fp_per_volume'),
        lesion_count=data.get('lesion_count'),
        volume_count=data.get('volume_count'),
    )


def render_report(reports: Sequence[EvalReport], fmt: str = 'table') -> str:
    """Render reports as a table, CSV or JSON text."""
    if not reports:
        raise ContractError("no reports to render")
    if fmt == 'table':
        return _table(reports)
    elif fmt == 'csv':
        return _csv(reports)
    elif fmt == 'json':
        return dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    raise ContractError(f"unsupported format: {fmt}")


def load_reports(path: str) -> List[EvalReport]:
    """Read the JSON format, a single report object is accepted too."""
    with open(path, 'rb') as f:
        raw = f.read()
    try:
        data = loads(raw.decode('utf-8'))
    except UnicodeDecodeError as e:
        raise ValidationError(f"invalid UTF-8: {e}", path=path) from e
    except ValueError as e:
        raise ValidationError(f"invalid JSON: {e}", path=path) from e
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ValidationError("expected a list of reports", path=path)
    reports = []
    for item in data:
        try:
            reports.append(report_from_dict(item))
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed report: {e}", path=path,
                                  field='method_name' if isinstance(e, KeyError) else "") from e
    return reports
