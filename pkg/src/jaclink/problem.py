"""Problem files: line-oriented ``key: value`` text; ``#`` starts a comment.

Example::

    # Cayley nodal cubic surface
    char: 32003
    vars: x, y, z, w
    order: grevlex
    f: x*y*z + x*y*w + x*z*w + y*z*w
    seed: 1

``gens: [g0, g1, ...]`` replaces ``f`` for an ideal given by generators;
``by: [...]`` names the divisor ideal for the ``colon`` command.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .polyring import (
    DEFAULT_CHARACTERISTIC,
    ORDERS,
    ParseError,
    Polynomial,
    PolynomialError,
    RingContext,
    parse_polynomial,
)

KEYS = {"char", "characteristic", "vars", "variables", "order", "f", "gens", "by",
        "distinguished", "seed", "bound"}


class ProblemError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str = "<problem>"):
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


@dataclass
class ProblemFile:
    ring: RingContext
    f: Polynomial | None = None
    gens: list | None = None
    by: list | None = None
    distinguished: int | None = None
    seed: int = 0
    bound: int | None = None
    source: str = "<problem>"
    text: dict = field(default_factory=dict)

    @property
    def mode(self) -> str:
        return "hypersurface" if self.f is not None else "generators"

    def generators(self) -> list:
        """The ideal under study: the generators, or the partials of f."""
        if self.gens is not None:
            return list(self.gens)
        from .linkage import jacobian_generators
        return jacobian_generators(self.f)

    def require_full_arity(self):
        if self.gens is not None and len(self.gens) != self.ring.num_vars:
            raise ProblemError(
                f"gens must list n+1 = {self.ring.num_vars} generators, "
                f"got {len(self.gens)}", self.text.get("gens_line"), None, self.source)


def _split_list(value: str, line: int, col: int, source: str) -> list:
    v = value.strip()
    if not (v.startswith("[") and v.endswith("]")):
        raise ProblemError("expected a bracketed list [p1, p2, ...]", line, col, source)
    inner = v[1:-1]
    items, start = [], 0
    offset = col + (len(value) - len(value.lstrip())) + 1
    for i, ch in enumerate(inner + ","):
        if ch == ",":
            items.append((inner[start:i], offset + start))
            start = i + 1
    if len(items) == 1 and not items[0][0].strip():
        return []
    return items


def _parse_poly(text: str, ring, line: int, col: int, source: str) -> Polynomial:
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        raise ProblemError(exc.bare_message, line, col + exc.position, source) from None
    except PolynomialError as exc:
        lead = len(text) - len(text.lstrip())
        raise ProblemError(str(exc), line, col + lead, source) from None


def parse_problem(text: str, source: str = "<problem>", overrides: dict | None = None) -> ProblemFile:
    """Parse problem text; ``overrides`` (from CLI flags) win over file values."""
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    entries: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if ":" not in raw:
            raise ProblemError("expected 'key: value'", lineno, 1, source)
        key, value = raw.split(":", 1)
        value = value.split("#", 1)[0]  # trailing comment
        key_clean = key.strip().lower()
        if key_clean not in KEYS:
            raise ProblemError(f"unknown key {key.strip()!r}", lineno,
                               len(key) - len(key.lstrip()) + 1, source)
        if key_clean == "characteristic":
            key_clean = "char"
        if key_clean == "variables":
            key_clean = "vars"
        if key_clean in entries:
            raise ProblemError(f"duplicate key {key_clean!r}", lineno, 1, source)
        # column (1-based) where the value starts
        entries[key_clean] = (value, lineno, len(key) + 2)

    def scalar_int(name):
        value, line, col = entries[name]
        try:
            return int(value.strip())
        except ValueError:
            raise ProblemError(f"{name} must be an integer", line, col, source) from None

    if "vars" not in entries:
        raise ProblemError("missing 'vars' declaration", None, None, source)
    value, vline, vcol = entries["vars"]
    names = [v.strip() for v in value.split(",") if v.strip()]

    char = DEFAULT_CHARACTERISTIC
    if "char" in entries:
        char = scalar_int("char")
    char = overrides.get("char", char)
    order = entries["order"][0].strip() if "order" in entries else "grevlex"
    order = overrides.get("order", order)
    if order not in ORDERS:
        line = entries["order"][1] if "order" in entries else None
        raise ProblemError(f"unknown order {order!r} (use grevlex or grlex)", line, None, source)
    try:
        ring = RingContext(tuple(names), char, order)
    except ValueError as exc:
        line = entries["char"][1] if "char" in entries and "characteristic" in str(exc) else vline
        raise ProblemError(str(exc), line, None, source) from None

    has_f, has_gens = "f" in entries, "gens" in entries
    if has_f == has_gens:
        raise ProblemError("give exactly one of 'f' and 'gens'", None, None, source)

    prob = ProblemFile(ring, source=source)
    if has_f:
        value, line, col = entries["f"]
        prob.f = _parse_poly(value, ring, line, col, source)
        prob.text["f"] = value.strip()
    else:
        value, line, col = entries["gens"]
        prob.gens = [_parse_poly(t, ring, line, c, source)
                     for t, c in _split_list(value, line, col, source)]
        if not prob.gens:
            raise ProblemError("empty generator list", line, col, source)
        prob.text["gens_line"] = line
    if "by" in entries:
        value, line, col = entries["by"]
        prob.by = [_parse_poly(t, ring, line, c, source)
                   for t, c in _split_list(value, line, col, source)]
    for name in ("distinguished", "seed", "bound"):
        if name in entries:
            setattr(prob, name, scalar_int(name))
        if name in overrides:
            setattr(prob, name, overrides[name])
    return prob


def load_problem(path, overrides: dict | None = None) -> ProblemFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ProblemError("file not found", None, None, str(p)) from None
    except UnicodeDecodeError as exc:
        raise ProblemError(f"not UTF-8 text ({exc.reason})", None, None, str(p)) from None
    return parse_problem(text, str(p), overrides)
