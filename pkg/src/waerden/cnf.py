"""CNF encoding of "[1, N] admits an r-coloring with no monochromatic k-AP".

For r = 2 one variable per position (true = color 1) and two clauses per AP
(not all true, not all false).  For r > 2 the direct one-hot encoding:
variable (i-1)*r + c says position i has color c-1 (c in 1..r), with one
at-least-one clause per position, pairwise at-most-one clauses, and one
not-all-this-color clause per (AP, color).  The formula is satisfiable
exactly when the search engine reports SAT for the same (N, r, k).

External solvers are reached only through DIMACS files and a subprocess;
the conventions are `s SATISFIABLE` / `s UNSATISFIABLE` status lines,
`v ` model lines terminated by 0, and exit codes 10 (SAT) / 20 (UNSAT)
as a fallback when no status line is printed.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Sequence

from .bounds import VdwInstance
from .errors import DecodeError, DomainError, TriviallySatisfiableError
from .search import Coloring

ENCODING_VERSION = "direct-onehot-1"


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables 1..variable_count; negative literal = negation.

    Comment lines (without the leading "c ") ride along for DIMACS output but
    do not take part in equality.
    """

    variable_count: int
    clauses: tuple[tuple[int, ...], ...]
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not isinstance(self.variable_count, int) or self.variable_count < 0:
            raise DomainError(f"variable_count must be >= 0, got {self.variable_count!r}")
        clauses = tuple(tuple(cl) for cl in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "comments", tuple(self.comments))
        for cl in clauses:
            if not cl:
                raise DomainError("empty clause is not allowed at encode time")
            for lit in cl:
                if not isinstance(lit, int) or isinstance(lit, bool) or lit == 0:
                    raise DomainError(f"invalid literal {lit!r}")
                if abs(lit) > self.variable_count:
                    raise DomainError(
                        f"literal {lit} references a variable beyond {self.variable_count}"
                    )

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def to_dict(self) -> dict:
        return {
            "variable_count": self.variable_count,
            "clauses": [list(cl) for cl in self.clauses],
        }


@dataclass(frozen=True)
class SolverResult:
    """Outcome of parsing solver output: status plus model literals (no 0)."""

    status: str  # "SATISFIABLE" | "UNSATISFIABLE" | "UNKNOWN"
    model: tuple[int, ...] | None
    returncode: int | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "model": None if self.model is None else list(self.model),
            "returncode": self.returncode,
        }


def _aps(N: int, k: int) -> list[tuple[int, ...]]:
    """All k-term APs inside [1, N], (d, a)-lexicographic."""
    out = []
    for d in range(1, (N - 1) // (k - 1) + 1):
        span = (k - 1) * d
        for a in range(1, N - span + 1):
            out.append(tuple(a + j * d for j in range(k)))
    return out


def variable_for(position: int, color: int, r: int) -> int:
    """One-hot variable for (position, 0-based color); positions and colors 1-checked."""
    if r == 2:
        raise DomainError("r = 2 uses one variable per position, not one-hot variables")
    if not 0 <= color < r:
        raise DomainError(f"color {color} outside [0, {r - 1}]")
    return (position - 1) * r + color + 1


def encode(N: int, inst: VdwInstance) -> CnfFormula:
    """CNF satisfiable iff [1, N] has an AP-free r-coloring.

    N < k is rejected: every coloring is trivially AP-free, no formula is
    emitted.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    r, k = inst.r, inst.k
    if N < k:
        raise TriviallySatisfiableError(
            f"N={N} < k={k}: no k-AP fits, every coloring is a certificate"
        )
    aps = _aps(N, k)
    comments = (
        f"waerden instance N={N} r={r} k={k}",
        f"encoding={ENCODING_VERSION}",
    )
    clauses: list[tuple[int, ...]] = []
    if r == 2:
        for positions in aps:
            clauses.append(tuple(-p for p in positions))  # not all color 1
            clauses.append(positions)  # not all color 0
        return CnfFormula(N, tuple(clauses), comments)
    # one-hot: at-least-one, pairwise at-most-one, then per-(AP, color) clauses
    def var(i: int, c: int) -> int:
        return (i - 1) * r + c

    for i in range(1, N + 1):
        clauses.append(tuple(var(i, c) for c in range(1, r + 1)))
    for i in range(1, N + 1):
        for c1 in range(1, r + 1):
            for c2 in range(c1 + 1, r + 1):
                clauses.append((-var(i, c1), -var(i, c2)))
    for positions in aps:
        for c in range(1, r + 1):
            clauses.append(tuple(-var(p, c) for p in positions))
    return CnfFormula(N * r, tuple(clauses), comments)


def expected_clause_count(N: int, inst: VdwInstance) -> int:
    """Closed-form clause count for the encoding of (N, inst)."""
    r, k = inst.r, inst.k
    ap_count = 0
    d = 1
    while N - (k - 1) * d > 0:
        ap_count += N - (k - 1) * d
        d += 1
    if r == 2:
        return 2 * ap_count
    return N + N * (r * (r - 1) // 2) + ap_count * r


def write_dimacs(formula: CnfFormula, sink: IO[str] | str | Path) -> None:
    """Standard DIMACS CNF: `p cnf V C` header, 0-terminated clause lines.

    Metadata comments follow the header.  Write failures propagate.
    """
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="ascii") as handle:
            write_dimacs(formula, handle)
        return
    sink.write(f"p cnf {formula.variable_count} {formula.clause_count}\n")
    for line in formula.comments:
        sink.write(f"c {line}\n")
    for clause in formula.clauses:
        sink.write(" ".join(str(lit) for lit in clause) + " 0\n")


def read_dimacs(source: IO[str] | str | Path) -> CnfFormula:
    """Parse DIMACS CNF text back into a formula; comments are preserved."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="ascii") as handle:
            return read_dimacs(handle)
    variable_count = None
    declared_clauses = None
    comments: list[str] = []
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in source:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DomainError(f"malformed problem line: {line!r}")
            variable_count = int(parts[2])
            declared_clauses = int(parts[3])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                if current:
                    clauses.append(tuple(current))
                    current = []
            else:
                current.append(lit)
    if current:
        raise DomainError("last clause is not 0-terminated")
    if variable_count is None:
        raise DomainError("missing `p cnf` header")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise DomainError(
            f"header declares {declared_clauses} clauses, found {len(clauses)}"
        )
    return CnfFormula(variable_count, tuple(clauses), tuple(comments))


def decode_model(model: Sequence[int], N: int, inst: VdwInstance) -> Coloring:
    """Turn a total assignment into the coloring it denotes.

    For r > 2 exactly one color variable must be true per position; anything
    else is a DecodeError.
    """
    r = inst.r
    var_count = N if r == 2 else N * r
    assignment: dict[int, bool] = {}
    for lit in model:
        if not isinstance(lit, int) or isinstance(lit, bool) or lit == 0:
            raise DecodeError(f"invalid literal {lit!r} in model")
        v = abs(lit)
        if v > var_count:
            raise DecodeError(f"literal {lit} beyond variable range 1..{var_count}")
        value = lit > 0
        if v in assignment and assignment[v] != value:
            raise DecodeError(f"contradictory literals for variable {v}")
        assignment[v] = value
    missing = var_count - len(assignment)
    if missing:
        raise DecodeError(f"model leaves {missing} of {var_count} variables unassigned")
    if r == 2:
        colors = tuple(1 if assignment[i] else 0 for i in range(1, N + 1))
        return Coloring(N=N, r=r, colors=colors)
    colors_list: list[int] = []
    for i in range(1, N + 1):
        true_colors = [c for c in range(1, r + 1) if assignment[(i - 1) * r + c]]
        if len(true_colors) != 1:
            raise DecodeError(
                f"position {i}: one-hot violation, {len(true_colors)} colors true"
            )
        colors_list.append(true_colors[0] - 1)
    return Coloring(N=N, r=r, colors=tuple(colors_list))


def parse_solver_output(text: str) -> SolverResult:
    """Parse `s`/`v` conventions (plus bare SATISFIABLE/UNSATISFIABLE lines)."""
    status = "UNKNOWN"
    literals: list[int] = []
    saw_values = False
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            candidate = line[2:].strip()
            if candidate in ("SATISFIABLE", "UNSATISFIABLE"):
                status = candidate
        elif line in ("SATISFIABLE", "UNSATISFIABLE", "SAT", "UNSAT"):
            status = "SATISFIABLE" if line in ("SATISFIABLE", "SAT") else "UNSATISFIABLE"
        elif line.startswith("v ") or line == "v":
            saw_values = True
            for token in line[1:].split():
                lit = int(token)
                if lit == 0:
                    break
                literals.append(lit)
    model = tuple(literals) if (status == "SATISFIABLE" and saw_values) else None
    return SolverResult(status=status, model=model)


def run_external_solver(
    command: str | Sequence[str],
    formula: CnfFormula,
    timeout: float | None = None,
) -> SolverResult:
    """Write the formula to a temp DIMACS file and run `command <file>`.

    Exit codes 10/20 stand in for a missing status line.  The solver binary
    not existing raises FileNotFoundError; timeouts raise
    subprocess.TimeoutExpired.
    """
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    with tempfile.NamedTemporaryFile(
        "w", suffix=".cnf", encoding="ascii", delete=False
    ) as handle:
        path = Path(handle.name)
        write_dimacs(formula, handle)
    try:
        proc = subprocess.run(
            [*argv, str(path)], capture_output=True, text=True, timeout=timeout
        )
    finally:
        path.unlink(missing_ok=True)
    parsed = parse_solver_output(proc.stdout)
    status = parsed.status
    if status == "UNKNOWN":
        if proc.returncode == 10:
            status = "SATISFIABLE"
        elif proc.returncode == 20:
            status = "UNSATISFIABLE"
    return SolverResult(status=status, model=parsed.model, returncode=proc.returncode)
