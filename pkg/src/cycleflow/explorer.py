"""Violation certificates and searches over pairs of feasible flows."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .dominance import Configuration
from .model import (
    ArcPath,
    CycleInstance,
    DomainError,
    FlowAssignment,
    ParseError,
    as_fraction,
    check_flow,
    edge_flows,
    format_rational,
    parse_flow_line,
    parse_instance,
    parse_rational,
    paths_of,
    serialize_flow,
    serialize_instance,
)

DEFAULT_DENOMINATOR = 16
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class CertificateEntry:
    commodity: int
    path: ArcPath
    edge: int
    f_edge: Fraction
    f_prime_edge: Fraction


@dataclass(frozen=True)
class ViolationCertificate:
    entries: tuple[CertificateEntry, ...]


def paper_instance_k3():
    """Three commodities of demand 3 on a 6-cycle, with the flows f and f'.

    Commodity ``i`` joins vertex ``i`` to the antipodal vertex ``i + 3``.
    """
    instance = CycleInstance.build(6, [(0, 3, 3), (1, 4, 3), (2, 5, 3)])
    return instance, FlowAssignment.of(2, 1, 2), FlowAssignment.of(1, 2, 1)


def _certificate_from_profiles(instance, f, ef, efp):
    entries = []
    for i, c in enumerate(instance.commodities):
        cw, ccw = paths_of(instance, i)
        for path, amount in ((cw, f.x[i]), (ccw, c.r - f.x[i])):
            if amount <= 0:
                continue
            failing = [e for e in path.edges if ef[e] < efp[e]]
            if not failing:
                return None
            e = min(failing)
            entries.append(CertificateEntry(i, path, e, ef[e], efp[e]))
    return ViolationCertificate(tuple(entries))


def check_violation(instance: CycleInstance, f: FlowAssignment,
                    f_prime: FlowAssignment) -> ViolationCertificate | None:
    """Certificate that no path of ``f`` dominates, or None if one does.

    Each positive-flow path cites its smallest-index edge with f(e) < f'(e).
    """
    check_flow(instance, f)
    check_flow(instance, f_prime)
    return _certificate_from_profiles(instance, f, edge_flows(instance, f),
                                      edge_flows(instance, f_prime))


def verify_certificate(instance, f, f_prime, cert: ViolationCertificate) -> bool:
    """Independent re-check of a certificate against freshly computed flows."""
    ef, efp = edge_flows(instance, f), edge_flows(instance, f_prime)
    expected = set()
    for i, c in enumerate(instance.commodities):
        cw, ccw = paths_of(instance, i)
        if f.x[i] > 0:
            expected.add((i, cw))
        if c.r - f.x[i] > 0:
            expected.add((i, ccw))
    cited = [(en.commodity, en.path) for en in cert.entries]
    if len(cited) != len(set(cited)) or set(cited) != expected:
        return False
    return all(en.edge in en.path and ef[en.edge] == en.f_edge
               and efp[en.edge] == en.f_prime_edge and en.f_edge < en.f_prime_edge
               for en in cert.entries)


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    f: FlowAssignment
    f_prime: FlowAssignment
    certificate: ViolationCertificate


@dataclass(frozen=True)
class SearchReport:
    instance: CycleInstance
    mode: str
    params: tuple[tuple[str, str], ...]
    examined: int
    violations: tuple[Violation, ...] = field(default=())

    def to_text(self) -> str:
        lines = [serialize_instance(self.instance).rstrip("\n"),
                 f"mode {self.mode}",
                 "params " + " ".join(f"{k}={v}" for k, v in self.params),
                 f"examined {self.examined}",
                 f"violations {len(self.violations)}"]
        for v in self.violations:
            lines.append(serialize_flow(v.f).rstrip("\n"))
            lines.append(serialize_flow(v.f_prime).rstrip("\n"))
            for en in v.certificate.entries:
                lines.append(f"cert {en.commodity} {en.path.start} {en.path.end} {en.edge} "
                             f"{format_rational(en.f_edge)} {format_rational(en.f_prime_edge)}")
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> SearchReport:
    """Inverse of :meth:`SearchReport.to_text`."""
    raw = text.splitlines()
    head = [ln for ln in raw if ln.split()[:1] in (["cycle"], ["commodity"])]
    instance = parse_instance("\n".join(head))
    header = {}
    violations = []
    pending: list[FlowAssignment] = []
    entries: list[CertificateEntry] = []

    def close():
        if pending:
            if len(pending) != 2:
                raise ParseError(lineno, "violation block needs two flow lines")
            violations.append(Violation(pending[0], pending[1], ViolationCertificate(tuple(entries))))

    lineno = 0
    for lineno, line in enumerate(raw, start=1):
        words = line.split()
        if not words or words[0] in ("cycle", "commodity") or words[0].startswith("#"):
            continue
        key = words[0]
        if key in ("mode", "params", "examined", "violations"):
            header[key] = words[1:]
        elif key == "flow":
            if len(pending) == 2:
                close()
                pending, entries = [], []
            pending.append(parse_flow_line(words, lineno, instance))
        elif key == "cert":
            if len(words) != 7 or len(pending) != 2:
                raise ParseError(lineno, "malformed cert line")
            i, start, end, edge = (int(w) for w in words[1:5])
            entries.append(CertificateEntry(i, ArcPath(start, end, instance.n), edge,
                                            parse_rational(words[5], lineno),
                                            parse_rational(words[6], lineno)))
        else:
            raise ParseError(lineno, f"unknown record {key!r}")
    close()
    params = tuple(tuple(p.split("=", 1)) for p in header.get("params", []))
    report = SearchReport(instance, header["mode"][0], params, int(header["examined"][0]),
                          tuple(violations))
    if int(header["violations"][0]) != len(violations):
        raise ParseError(lineno, "violation count does not match the listed blocks")
    return report


# -- grid search --------------------------------------------------------------


def grid_values(r: Fraction, step: Fraction) -> list[Fraction]:
    """{0, step, 2 step, ...} within [0, r], plus r itself."""
    values = []
    v = Fraction(0)
    while v < r:
        values.append(v)
        v += step
    values.append(r)
    return values


def search_grid(instance: CycleInstance, step) -> SearchReport:
    step = as_fraction(step)
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    axes = [grid_values(c.r, step) for c in instance.commodities]
    flows = [FlowAssignment(xs) for xs in itertools.product(*axes)]
    profiles = [edge_flows(instance, fl) for fl in flows]
    violations = []
    for fl, ef in zip(flows, profiles):
        for fl_p, efp in zip(flows, profiles):
            cert = _certificate_from_profiles(instance, fl, ef, efp)
            if cert is not None:
                violations.append(Violation(fl, fl_p, cert))
    return SearchReport(instance, "grid", (("step", format_rational(step)),),
                        len(flows) ** 2, tuple(violations))


# -- seeded random search -----------------------------------------------------


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent generator for one trial, a pure function of (seed, trial)."""
    return random.Random(((seed & _SEED_MASK) << 64) | trial)


def sample_flow(rng: random.Random, instance: CycleInstance,
                denominator: int = DEFAULT_DENOMINATOR) -> FlowAssignment:
    return FlowAssignment(tuple(c.r * Fraction(rng.randint(0, denominator), denominator)
                                for c in instance.commodities))


def _random_trials(instance, seed, denominator, trials):
    found = []
    for t in trials:
        rng = trial_rng(seed, t)
        f = sample_flow(rng, instance, denominator)
        fp = sample_flow(rng, instance, denominator)
        cert = check_violation(instance, f, fp)
        if cert is not None:
            found.append((t, Violation(f, fp, cert)))
    return found


def search_random(instance: CycleInstance, trials: int, seed: int,
                  denominator: int = DEFAULT_DENOMINATOR, workers: int = 1) -> SearchReport:
    """Sample ``trials`` flow pairs; x_i = j / denominator * r_i with j uniform.

    Trial ``t`` draws from :func:`trial_rng`, so the report does not depend on
    ``workers``.
    """
    if trials < 1:
        raise DomainError(f"trials must be at least 1, got {trials}")
    if denominator < 1:
        raise DomainError(f"denominator must be at least 1, got {denominator}")
    if workers <= 1:
        found = _random_trials(instance, seed, denominator, range(trials))
    else:
        chunks = [range(w, trials, workers) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_random_trials, itertools.repeat(instance), itertools.repeat(seed),
                             itertools.repeat(denominator), chunks)
            found = [item for part in parts for item in part]
        found.sort(key=lambda item: item[0])
    params = (("trials", str(trials)), ("seed", str(seed)), ("denominator", str(denominator)))
    return SearchReport(instance, "random", params, trials, tuple(v for _, v in found))


# -- random instances for verification campaigns --------------------------------


def _random_demand(rng: random.Random, denominator: int) -> Fraction:
    q = rng.randint(1, denominator)
    return Fraction(rng.randint(1, 4 * q), q)


def _layout(rng: random.Random, n: int, config: Configuration) -> list[tuple[int, int]]:
    if config is Configuration.SAME_PAIR:
        a, b = rng.sample(range(n), 2)
        return [(a, b), (a, b)]
    if config is Configuration.SHARED_VERTEX:
        a, b, c = rng.sample(range(n), 3)
        return [(a, b), (a, c)]
    a, b, c, d = sorted(rng.sample(range(n), 4))
    if config is Configuration.NON_CROSSING:
        return [(a, b), (c, d)]
    return [(a, c), (b, d)]


def random_instance(rng: random.Random, k: int, max_n: int,
                    denominator: int = DEFAULT_DENOMINATOR,
                    config: Configuration | None = None) -> CycleInstance:
    """Random instance with ``3 <= n <= max_n``.

    For ``k = 2`` the terminal layout is drawn from the four configurations
    (uniformly unless ``config`` is given) and then scrambled by a random
    commodity order and endpoint orientation, so shared endpoints appear in
    every role.
    """
    if max_n < 3:
        raise DomainError(f"max_n must be at least 3, got {max_n}")
    if k == 2:
        if config is None:
            choices = list(Configuration) if max_n >= 4 else [Configuration.SAME_PAIR,
                                                              Configuration.SHARED_VERTEX]
            config = rng.choice(choices)
        low = 4 if config in (Configuration.NON_CROSSING, Configuration.CROSSING) else 3
        if max_n < low:
            raise DomainError(f"{config.value} needs n >= {low}")
        n = rng.randint(low, max_n)
        pairs = _layout(rng, n, config)
        pairs = [(t, s) if rng.random() < 0.5 else (s, t) for s, t in pairs]
        rng.shuffle(pairs)
    else:
        n = rng.randint(3, max_n)
        pairs = [tuple(rng.sample(range(n), 2)) for _ in range(k)]
    return CycleInstance.build(n, [(s, t, _random_demand(rng, denominator)) for s, t in pairs])


def configuration_of(instance: CycleInstance) -> Configuration:
    """Layout class of a two-commodity instance, irrespective of labeling."""
    (s1, t1), (s2, t2) = ((c.s, c.t) for c in instance.commodities)
    if {s1, t1} == {s2, t2}:
        return Configuration.SAME_PAIR
    if len({s1, t1, s2, t2}) == 3:
        return Configuration.SHARED_VERTEX
    n = instance.n
    inside = (s2 - s1) % n < (t1 - s1) % n
    inside_t = (t2 - s1) % n < (t1 - s1) % n
    return Configuration.CROSSING if inside != inside_t else Configuration.NON_CROSSING
