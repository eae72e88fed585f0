"""Known van der Waerden values, published lower bounds, and the derived table.

Entries are compiled-in citation data and never computed here; the derived
table columns (bracket exponent, sqrt(n+1), log_r W) are recomputed from
(r, k, W) on every access and checked against the stored display strings.
The stored real-valued cells are three-decimal renderings whose final digit
reflects the source's mixed truncation/rounding, so a recomputed value is
accepted when it agrees within one unit in the third decimal place; any
larger disagreement raises IntegrityError.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Literal

from .bounds import (
    VdwInstance,
    conjecture_certificate,
    erdos_rado,
    exponent_relations,
    n_range,
)
from .errors import IntegrityError
from .numerics import bracket_exponent, delta
from .search import plan_intervals

# Exact values, in table order.
_EXACT: tuple[tuple[int, int, int, str], ...] = (
    (2, 3, 9, "Chvatal (1970)"),
    (2, 4, 35, "Chvatal (1970)"),
    (2, 5, 178, "Stevens & Shantaram (1978)"),
    (2, 6, 1132, "Kouril & Paul (2008)"),
    (3, 3, 27, "Chvatal (1970)"),
    (3, 4, 293, "Kouril (2012)"),
    (4, 3, 76, "Beeler & O'Neil (1979)"),
)

# Published lower bounds: W(r, k) > value.
_LOWER: tuple[tuple[int, int, int, str], ...] = (
    (5, 3, 170, "Rabung & Lotts (2012)"),
    (6, 3, 223, "Rabung & Lotts (2012)"),
    (2, 7, 3703, "Rabung & Lotts (2012)"),
    (2, 10, 103474, "Rabung & Lotts (2012), cyclic zipper construction"),
)

# Stored display strings for the derived table: sqrt(n+1) and log_r W at
# three decimals, exactly as published alongside the values above.
_TABLE_DISPLAY: dict[tuple[int, int], tuple[str, int, str]] = {
    (2, 3): ("2", 3, "3.170"),
    (2, 4): ("2.449", 5, "5.129"),
    (2, 5): ("2.828", 7, "7.475"),
    (2, 6): ("3.316", 10, "10.144"),
    (3, 3): ("2", 3, "3.000"),
    (3, 4): ("2.449", 5, "5.170"),
    (4, 3): ("2", 3, "3.123"),
}

# Conjectured brackets 5^3 < W(5,3) < 5^4 and 6^3 < W(6,3) < 6^4 rest on the
# unproven guess k = n = 3 for those instances; they are annotations only and
# never enter any bound computation.
CONJECTURED_EXPONENT_BRACKETS: dict[tuple[int, int], dict] = {
    (5, 3): {"low": 5**3, "high": 5**4, "assumption": "k = n = 3 (unproven)"},
    (6, 3): {"low": 6**3, "high": 6**4, "assumption": "k = n = 3 (unproven)"},
}

# One display unit at three decimals; the widest disagreement a faithful
# 3 dp rendering (rounded or truncated) can show against the true value.
_DISPLAY_ULP = Decimal("0.001")


@dataclass(frozen=True)
class KnownValue:
    inst: VdwInstance
    kind: Literal["exact", "lower_bound"]
    value: int
    source: str

    def to_dict(self) -> dict:
        return {
            "instance": self.inst.to_dict(),
            "kind": self.kind,
            "value": self.value,
            "source": self.source,
        }


@dataclass(frozen=True)
class TableARow:
    """One derived-table row; power cells are exact integers rendered base^exp."""

    r: int
    k: int
    sqrt_n_plus_1: str
    n: int
    log_r_w: str
    n_plus_1: int
    r_pow_n: str
    w: int
    r_pow_n_plus_1: str
    r_pow_k_squared: str

    def cells(self) -> tuple:
        return (
            self.r,
            self.k,
            self.sqrt_n_plus_1,
            self.n,
            self.log_r_w,
            self.n_plus_1,
            self.r_pow_n,
            self.w,
            self.r_pow_n_plus_1,
            self.r_pow_k_squared,
        )

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "sqrt_n_plus_1": self.sqrt_n_plus_1,
            "n": self.n,
            "log_r_w": self.log_r_w,
            "n_plus_1": self.n_plus_1,
            "r_pow_n": self.r_pow_n,
            "w": self.w,
            "r_pow_n_plus_1": self.r_pow_n_plus_1,
            "r_pow_k_squared": self.r_pow_k_squared,
        }


TABLE_COLUMNS = (
    "r",
    "k",
    "sqrt_n_plus_1",
    "n",
    "log_r_w",
    "n_plus_1",
    "r_pow_n",
    "w",
    "r_pow_n_plus_1",
    "r_pow_k_squared",
)


def known_values() -> tuple[KnownValue, ...]:
    """Every registry entry: seven exact values, then four lower bounds."""
    exact = tuple(
        KnownValue(VdwInstance(r, k), "exact", value, source)
        for r, k, value, source in _EXACT
    )
    lower = tuple(
        KnownValue(VdwInstance(r, k), "lower_bound", value, source)
        for r, k, value, source in _LOWER
    )
    return exact + lower


def lookup(inst: VdwInstance) -> KnownValue | None:
    for entry in known_values():
        if entry.inst == inst:
            return entry
    return None


def _pow_str(base: int, exp: int) -> str:
    return f"{base}^{exp}"


def _check_display(cell: str, recomputed: Decimal, label: str) -> None:
    stored = Decimal(cell)
    if abs(recomputed - stored) >= _DISPLAY_ULP:
        raise IntegrityError(
            f"table integrity failure: {label} recomputes to {recomputed}, "
            f"stored display is {cell}"
        )


def table_a() -> tuple[TableARow, ...]:
    """The seven-row derived table, recomputed and integrity-checked."""
    rows = []
    for r, k, w, _source in _EXACT:
        stored_sqrt, stored_n, stored_log = _TABLE_DISPLAY[(r, k)]
        n = bracket_exponent(w, r).n
        if n != stored_n:
            raise IntegrityError(
                f"table integrity failure: W({r},{k}) brackets at n={n}, stored {stored_n}"
            )
        _check_display(stored_sqrt, Decimal(repr(math.sqrt(n + 1))), f"sqrt(n+1) of W({r},{k})")
        _check_display(stored_log, delta(w, r, precision=6).value, f"log_{r} W({r},{k})")
        rows.append(
            TableARow(
                r=r,
                k=k,
                sqrt_n_plus_1=stored_sqrt,
                n=n,
                log_r_w=stored_log,
                n_plus_1=n + 1,
                r_pow_n=_pow_str(r, n),
                w=w,
                r_pow_n_plus_1=_pow_str(r, n + 1),
                r_pow_k_squared=_pow_str(r, k * k),
            )
        )
    return tuple(rows)


def table_a_csv() -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in table_a():
        writer.writerow(row.cells())
    return buf.getvalue()


def table_a_markdown() -> str:
    rows = [tuple(str(c) for c in row.cells()) for row in table_a()]
    header = TABLE_COLUMNS
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(len(header))
    ]
    def fmt(cells):
        return "| " + " | ".join(c.ljust(widths[i]) for i, c in enumerate(cells)) + " |"
    lines = [fmt(header), "| " + " | ".join("-" * w for w in widths) + " |"]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines) + "\n"


def report(inst: VdwInstance) -> dict:
    """Consolidated JSON-ready document for one instance.

    Merges the registry entry with the bracket certificate (exact values),
    the exponent window, the Erdos-Rado bound, exponent relations (exact
    values), and the interval plan (lower bounds only).
    """
    entry = lookup(inst)
    doc: dict = {
        "instance": inst.to_dict(),
        "known": None if entry is None else entry.to_dict(),
        "table_row": None,
        "conjecture": None,
        "n_range": None,
        "erdos_rado": None,
        "exponent_relations": None,
        "plan": None,
        "conjectural_bracket": None,
    }
    exact_value = entry.value if entry is not None and entry.kind == "exact" else None
    lower_bound = entry.value if entry is not None and entry.kind == "lower_bound" else None

    if exact_value is not None:
        for row in table_a():
            if (row.r, row.k) == inst.key:
                doc["table_row"] = row.to_dict()
                break
        doc["conjecture"] = conjecture_certificate(exact_value, inst).to_dict()
        doc["exponent_relations"] = exponent_relations(inst, exact_value).to_dict()

    window_bound = exact_value if exact_value is not None else lower_bound
    window = n_range(inst, window_bound)
    doc["n_range"] = window.to_dict()
    doc["n_range"]["upper_power"] = _pow_str(inst.r, window.high + 1)
    doc["n_range"]["upper_power_value"] = inst.r ** (window.high + 1)

    exact_n = bracket_exponent(exact_value, inst.r).n if exact_value is not None else None
    doc["erdos_rado"] = erdos_rado(inst, exact_n).to_dict()

    if lower_bound is not None:
        doc["plan"] = [iv.to_dict() for iv in plan_intervals(inst, lower_bound)]
    annotation = CONJECTURED_EXPONENT_BRACKETS.get(inst.key)
    if annotation is not None:
        doc["conjectural_bracket"] = {**annotation, "conjectural": True}
    return doc
