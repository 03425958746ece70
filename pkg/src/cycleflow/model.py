"""Cycle instances, arc paths and flows, plus the line-oriented text formats.

Conventions used throughout the package:

* vertices are ``0..n-1``; edge ``j`` joins ``j`` and ``(j + 1) % n``
  (a 1-based label ``e_j`` in printed tables is edge ``j - 1``);
* "clockwise" means increasing vertex labels mod ``n``;
* a flow is stored as the vector of clockwise amounts ``x_i``; commodity ``i``
  sends ``x_i`` along ``clockwise_path(s_i, t_i)`` and ``r_i - x_i`` along the
  complementary arc.

All quantities are :class:`fractions.Fraction`; nothing is ever rounded.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ParseError(ValueError):
    """Malformed instance or flow text."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise DomainError(f"floats are not accepted, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class Commodity:
    s: int
    t: int
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))
        if self.s == self.t:
            raise DomainError(f"commodity terminals must differ, got s = t = {self.s}")
        if self.r <= 0:
            raise DomainError(f"demand must be positive, got {self.r}")


@dataclass(frozen=True)
class CycleInstance:
    n: int
    commodities: tuple[Commodity, ...]

    def __post_init__(self):
        object.__setattr__(self, "commodities", tuple(self.commodities))
        if self.n < 3:
            raise DomainError(f"cycle needs at least 3 vertices, got {self.n}")
        if not self.commodities:
            raise DomainError("instance needs at least one commodity")
        for c in self.commodities:
            for v in (c.s, c.t):
                if not 0 <= v < self.n:
                    raise DomainError(f"vertex {v} out of range for n={self.n}")

    @classmethod
    def build(cls, n: int, triples: Iterable[tuple[int, int, object]]) -> "CycleInstance":
        """Shorthand: ``CycleInstance.build(6, [(0, 3, 3), ...])``."""
        return cls(n, tuple(Commodity(s, t, as_fraction(r)) for s, t, r in triples))

    @property
    def k(self) -> int:
        return len(self.commodities)

    @property
    def demands(self) -> tuple[Fraction, ...]:
        return tuple(c.r for c in self.commodities)

    @property
    def terminals(self) -> frozenset[int]:
        """The distinct terminal vertices (V*)."""
        return frozenset(v for c in self.commodities for v in (c.s, c.t))


@dataclass(frozen=True)
class ArcPath:
    """The arc walked clockwise from ``start`` to ``end`` on an ``n``-cycle."""

    start: int
    end: int
    n: int

    def __post_init__(self):
        if self.start == self.end:
            raise DomainError("an arc path needs distinct endpoints")
        if not (0 <= self.start < self.n and 0 <= self.end < self.n):
            raise DomainError(f"arc endpoints out of range for n={self.n}")

    @property
    def edges(self) -> tuple[int, ...]:
        length = (self.end - self.start) % self.n
        return tuple((self.start + j) % self.n for j in range(length))

    def __len__(self) -> int:
        return (self.end - self.start) % self.n

    def __contains__(self, edge: int) -> bool:
        return (edge - self.start) % self.n < len(self)

    def complement(self) -> "ArcPath":
        return ArcPath(self.end, self.start, self.n)


@dataclass(frozen=True)
class FlowAssignment:
    x: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(as_fraction(v) for v in self.x))
        for v in self.x:
            if v < 0:
                raise DomainError(f"flow amounts must be nonnegative, got {v}")

    @classmethod
    def of(cls, *values) -> "FlowAssignment":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.x)


EdgeFlowProfile = tuple  # tuple[Fraction, ...], one entry per edge


def check_flow(instance: CycleInstance, flow: FlowAssignment) -> None:
    if len(flow.x) != instance.k:
        raise DomainError(f"flow has {len(flow.x)} entries, instance has {instance.k} commodities")
    for i, (x, c) in enumerate(zip(flow.x, instance.commodities)):
        if not 0 <= x <= c.r:
            raise DomainError(f"x[{i}] = {x} outside [0, {c.r}]")


def clockwise_path(instance: CycleInstance, s: int, t: int) -> ArcPath:
    n = instance.n
    if not (0 <= s < n and 0 <= t < n):
        raise DomainError(f"vertex out of range for n={n}: ({s}, {t})")
    if s == t:
        raise DomainError(f"s and t must differ, got {s}")
    return ArcPath(s, t, n)


def paths_of(instance: CycleInstance, i: int) -> tuple[ArcPath, ArcPath]:
    """(clockwise, counterclockwise) paths of commodity ``i``."""
    if not 0 <= i < instance.k:
        raise DomainError(f"commodity index {i} out of range for k={instance.k}")
    c = instance.commodities[i]
    cw = clockwise_path(instance, c.s, c.t)
    return cw, cw.complement()


def path_flow(instance: CycleInstance, flow: FlowAssignment, i: int, path: ArcPath) -> Fraction:
    """f(p) for commodity ``i``; zero if ``path`` is not one of its two paths."""
    cw, ccw = paths_of(instance, i)
    if path == cw:
        return flow.x[i]
    if path == ccw:
        return instance.commodities[i].r - flow.x[i]
    return Fraction(0)


def edge_flows(instance: CycleInstance, flow: FlowAssignment) -> EdgeFlowProfile:
    check_flow(instance, flow)
    n = instance.n
    # Integer numerators over one common denominator; exact, and much
    # cheaper than summing Fractions edge by edge.
    scale = math.lcm(*(c.r.denominator for c in instance.commodities),
                     *(x.denominator for x in flow.x))
    # Every edge starts with all counterclockwise mass; each clockwise arc
    # then gains x_i - (r_i - x_i). Applied as a difference array.
    base = 0
    diff = [0] * (n + 1)
    for c, x in zip(instance.commodities, flow.x):
        r_num = c.r.numerator * (scale // c.r.denominator)
        x_num = x.numerator * (scale // x.denominator)
        base += r_num - x_num
        gain = 2 * x_num - r_num
        diff[c.s] += gain
        diff[c.t] -= gain
        if c.s > c.t:
            diff[0] += gain
    profile = []
    running = base
    for e in range(n):
        running += diff[e]
        profile.append(Fraction(running, scale))
    return tuple(profile)


# -- text formats -----------------------------------------------------------

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def format_rational(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(token: str, lineno: int = 0) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError(lineno, f"not a rational: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(lineno, f"zero denominator in {token!r}") from None


def _parse_int(token: str, lineno: int) -> int:
    if not re.match(r"^[+-]?\d+$", token):
        raise ParseError(lineno, f"not an integer: {token!r}")
    return int(token)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_instance(text: str) -> CycleInstance:
    n = None
    commodities: list[Commodity] = []
    last = 0
    for lineno, words in _content_lines(text):
        last = lineno
        keyword, args = words[0], words[1:]
        if n is None:
            if keyword != "cycle" or len(args) != 1:
                raise ParseError(lineno, "expected 'cycle <n>' as the first line")
            n = _parse_int(args[0], lineno)
            if n < 3:
                raise ParseError(lineno, f"cycle length must be at least 3, got {n}")
            continue
        if keyword != "commodity" or len(args) != 3:
            raise ParseError(lineno, "expected 'commodity <s> <t> <r>'")
        s, t = _parse_int(args[0], lineno), _parse_int(args[1], lineno)
        r = parse_rational(args[2], lineno)
        if not (0 <= s < n and 0 <= t < n):
            raise ParseError(lineno, f"terminal out of range 0..{n - 1}")
        if s == t:
            raise ParseError(lineno, "s = t")
        if r <= 0:
            raise ParseError(lineno, "demand must be positive")
        commodities.append(Commodity(s, t, r))
    if n is None:
        raise ParseError(1, "empty instance")
    if not commodities:
        raise ParseError(last, "instance has no commodities")
    return CycleInstance(n, tuple(commodities))


def parse_flow_line(words: Sequence[str], lineno: int, instance: CycleInstance) -> FlowAssignment:
    if not words or words[0] != "flow":
        raise ParseError(lineno, "expected 'flow <x_1> ... <x_k>'")
    values = [parse_rational(w, lineno) for w in words[1:]]
    if len(values) != instance.k:
        raise ParseError(lineno, f"expected {instance.k} flow values, got {len(values)}")
    for v, c in zip(values, instance.commodities):
        if v < 0:
            raise ParseError(lineno, "x is negative")
        if v > c.r:
            raise ParseError(lineno, "x exceeds demand")
    return FlowAssignment(tuple(values))


def parse_flow(text: str, instance: CycleInstance) -> FlowAssignment:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        lineno = lines[1][0] if lines else 1
        raise ParseError(lineno, "flow file must hold exactly one 'flow' line")
    lineno, words = lines[0]
    return parse_flow_line(words, lineno, instance)


def serialize_instance(instance: CycleInstance) -> str:
    lines = [f"cycle {instance.n}"]
    lines += [f"commodity {c.s} {c.t} {format_rational(c.r)}" for c in instance.commodities]
    return "\n".join(lines) + "\n"


def serialize_flow(flow: FlowAssignment) -> str:
    return " ".join(["flow", *(format_rational(v) for v in flow.x)]) + "\n"
