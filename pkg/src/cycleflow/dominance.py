"""Dominating paths between two feasible flows on a cycle.

A witness for ``(f, f')`` is a commodity ``i`` and one of its paths ``p`` with
``f(p) > 0`` whose every edge satisfies ``f(e) >= f'(e)``.  For one or two
commodities a witness always exists; :func:`witness_constructive` finds it by
replaying the case analysis that proves this, and :func:`witnesses_bruteforce`
is the independent enumeration it is checked against.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    ArcPath,
    Commodity,
    CycleInstance,
    DomainError,
    FlowAssignment,
    check_flow,
    edge_flows,
    paths_of,
)


class UnsupportedError(DomainError):
    """Raised for commodity counts where no witness is guaranteed."""


class InternalError(RuntimeError):
    """The proof-following chain produced something the oracle rejects."""


@dataclass(frozen=True)
class DominanceWitness:
    commodity: int
    path: ArcPath


def path_dominates(instance: CycleInstance, f: FlowAssignment, f_prime: FlowAssignment,
                   p: ArcPath) -> bool:
    if p.n != instance.n:
        raise DomainError(f"path lives on a {p.n}-cycle, instance has n={instance.n}")
    ef, efp = edge_flows(instance, f), edge_flows(instance, f_prime)
    return all(ef[e] >= efp[e] for e in p.edges)


def witnesses_bruteforce(instance: CycleInstance, f: FlowAssignment,
                         f_prime: FlowAssignment) -> list[DominanceWitness]:
    ef, efp = edge_flows(instance, f), edge_flows(instance, f_prime)
    check_flow(instance, f_prime)
    found = []
    for i, c in enumerate(instance.commodities):
        cw, ccw = paths_of(instance, i)
        for path, amount in ((cw, f.x[i]), (ccw, c.r - f.x[i])):
            if amount > 0 and all(ef[e] >= efp[e] for e in path.edges):
                found.append(DominanceWitness(i, path))
    return found


# -- symmetries ---------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryTransform:
    """Relabeling of a cycle problem.

    New commodity ``j`` is old commodity ``perm[j]``, with its endpoints
    exchanged when ``swaps[j]`` is set.  Vertices map by ``v -> -v`` (if
    ``reflect``) followed by ``+ rotation``, all mod ``n``.
    """

    perm: tuple[int, ...]
    swaps: tuple[bool, ...]
    reflect: bool = False
    rotation: int = 0

    @classmethod
    def identity(cls, k: int) -> "SymmetryTransform":
        return cls(tuple(range(k)), (False,) * k)

    def vertex(self, v: int, n: int) -> int:
        return ((-v if self.reflect else v) + self.rotation) % n

    def edge(self, e: int, n: int) -> int:
        return ((-e - 1 if self.reflect else e) + self.rotation) % n

    def inverse(self) -> "SymmetryTransform":
        k = len(self.perm)
        inv_perm = [0] * k
        inv_swaps = [False] * k
        for j, i in enumerate(self.perm):
            inv_perm[i] = j
            inv_swaps[i] = self.swaps[j]
        rotation = self.rotation if self.reflect else -self.rotation
        return SymmetryTransform(tuple(inv_perm), tuple(inv_swaps), self.reflect, rotation)

    def _check(self, k: int):
        if len(self.perm) != k or sorted(self.perm) != list(range(k)):
            raise DomainError(f"transform is not a permutation of {k} commodities")

    def apply_instance(self, instance: CycleInstance) -> CycleInstance:
        self._check(instance.k)
        n = instance.n
        commodities = []
        for j, i in enumerate(self.perm):
            c = instance.commodities[i]
            s, t = (c.t, c.s) if self.swaps[j] else (c.s, c.t)
            commodities.append(Commodity(self.vertex(s, n), self.vertex(t, n), c.r))
        return CycleInstance(n, tuple(commodities))

    def apply_flow(self, instance: CycleInstance, flow: FlowAssignment) -> FlowAssignment:
        """Map ``flow`` (given on ``instance``, the pre-image) forward."""
        self._check(instance.k)
        x = []
        for j, i in enumerate(self.perm):
            v = flow.x[i]
            # Endpoint exchange and reflection each turn the clockwise arc
            # into the counterclockwise one.
            if self.swaps[j] != self.reflect:
                v = instance.commodities[i].r - v
            x.append(v)
        return FlowAssignment(tuple(x))

    def apply_path(self, path: ArcPath) -> ArcPath:
        n = path.n
        a, b = self.vertex(path.start, n), self.vertex(path.end, n)
        return ArcPath(b, a, n) if self.reflect else ArcPath(a, b, n)

    def apply_profile(self, profile) -> tuple:
        n = len(profile)
        out = [None] * n
        for e, v in enumerate(profile):
            out[self.edge(e, n)] = v
        return tuple(out)


class Configuration(enum.Enum):
    SAME_PAIR = "SamePair"
    SHARED_VERTEX = "SharedVertex"
    NON_CROSSING = "NonCrossing"
    CROSSING = "Crossing"


_SEGMENT_COUNT = {
    Configuration.SAME_PAIR: 2,
    Configuration.SHARED_VERTEX: 3,
    Configuration.NON_CROSSING: 4,
    Configuration.CROSSING: 4,
}


def classify(instance: CycleInstance) -> Configuration | None:
    """Canonical two-commodity layout of ``instance``, or None if not canonical.

    Positions are clockwise offsets from ``s1``:

    * SamePair: ``s1 = s2`` and ``t1 = t2``;
    * SharedVertex: ``s1 = s2`` and ``t1`` before ``t2``;
    * NonCrossing: four distinct terminals in order ``s1, t1, s2, t2``;
    * Crossing: four distinct terminals in order ``s1, s2, t1, t2``.
    """
    if instance.k != 2:
        raise DomainError(f"configurations are defined for k = 2, got k = {instance.k}")
    (s1, t1, _), (s2, t2, _) = ((c.s, c.t, c.r) for c in instance.commodities)
    n = instance.n

    def pos(v):
        return (v - s1) % n

    if s1 == s2:
        if t1 == t2:
            return Configuration.SAME_PAIR
        return Configuration.SHARED_VERTEX if pos(t1) < pos(t2) else None
    if len({s1, t1, s2, t2}) != 4:
        return None
    if pos(t1) < pos(s2) < pos(t2):
        return Configuration.NON_CROSSING
    if pos(s2) < pos(t1) < pos(t2):
        return Configuration.CROSSING
    return None


@dataclass(frozen=True)
class SegmentDecomposition:
    """Arcs ``l_1 .. l_m`` between consecutive distinct terminals.

    ``segments[j]`` is ``l_{j+1}``.  Only canonical instances decompose.
    """

    configuration: Configuration
    segments: tuple[ArcPath, ...]


def segment_decomposition(instance: CycleInstance) -> SegmentDecomposition:
    config = classify(instance)
    if config is None:
        raise DomainError("instance is not in a canonical configuration; canonicalize first")
    (s1, t1), (s2, t2) = ((c.s, c.t) for c in instance.commodities)
    n = instance.n
    if config is Configuration.SAME_PAIR:
        ends = [(s1, t1), (t1, s1)]
    elif config is Configuration.SHARED_VERTEX:
        # l1: s -> t1, l2: t2 -> s, l3: t1 -> t2
        ends = [(s1, t1), (t2, s1), (t1, t2)]
    elif config is Configuration.NON_CROSSING:
        ends = [(s1, t1), (t1, s2), (s2, t2), (t2, s1)]
    else:
        ends = [(s1, s2), (s2, t1), (t1, t2), (t2, s1)]
    return SegmentDecomposition(config, tuple(ArcPath(a, b, n) for a, b in ends))


def _candidate_transforms():
    for perm in ((0, 1), (1, 0)):
        for swaps in itertools.product((False, True), repeat=2):
            for reflect in (False, True):
                yield SymmetryTransform(perm, swaps, reflect)


def canonicalize(instance: CycleInstance, f: FlowAssignment, f_prime: FlowAssignment):
    """Relabel a two-commodity problem into a canonical configuration.

    Returns ``(instance', f', f_prime', transform)``.  Among the relabelings
    that reach a canonical layout, one where the first commodity sends
    positive flow clockwise under ``f`` is preferred, since that is the
    branch the case analysis treats directly; the remaining branches are its
    mirror images.  Candidates are tried in a fixed order starting with the
    identity.
    """
    if instance.k != 2:
        raise DomainError(f"canonicalize needs exactly two commodities, got k = {instance.k}")
    check_flow(instance, f)
    check_flow(instance, f_prime)
    fallback = None
    for tr in _candidate_transforms():
        image = tr.apply_instance(instance)
        if classify(image) is None:
            continue
        g = tr.apply_flow(instance, f)
        result = (image, g, tr.apply_flow(instance, f_prime), tr)
        if g.x[0] > 0:
            return result
        if fallback is None:
            fallback = result
    assert fallback is not None, "every two-commodity instance has a canonical image"
    return fallback


# -- proof-following witness search -------------------------------------------


def _single_pair(f_cw: Fraction, fp_cw: Fraction, total: Fraction):
    """Choose between the two arcs of one terminal pair: 0 = clockwise, 1 = other.

    ``f_cw``/``fp_cw`` are the aggregate clockwise amounts, ``total`` the
    aggregate demand on the pair.
    """
    if f_cw >= fp_cw:
        # Every edge of the clockwise arc carries exactly f_cw.
        return 0 if f_cw > 0 else 1
    # Then the other arc carries total - f_cw > total - fp_cw >= 0.
    return 1


def _chain_one(instance, f, fp):
    side = _single_pair(f.x[0], fp.x[0], instance.commodities[0].r)
    return DominanceWitness(0, paths_of(instance, 0)[side])


def _chain_same_pair(instance, f, fp):
    r1, r2 = instance.demands
    side = _single_pair(f.x[0] + f.x[1], fp.x[0] + fp.x[1], r1 + r2)
    amounts = (f.x[0], f.x[1]) if side == 0 else (r1 - f.x[0], r2 - f.x[1])
    i = 0 if amounts[0] > 0 else 1
    return DominanceWitness(i, paths_of(instance, i)[side])


def _chain_shared_vertex(instance, f, fp):
    # P1 = {l1, l2+l3}, P2 = {l2, l1+l3};  f(l1) = x1, f(l2) = r2 - x2.
    r1, r2 = instance.demands
    a, b = f.x[0], r2 - f.x[1]
    ap, bp = fp.x[0], r2 - fp.x[1]
    cw1, ccw1 = paths_of(instance, 0)
    cw2, ccw2 = paths_of(instance, 1)
    if a > 0:
        # l1 edges carry a + r2 - b.
        if a - b >= ap - bp:
            return DominanceWitness(0, cw1)
        # l2 edges carry b + r1 - a, now strictly above f'.
        if b > 0:
            return DominanceWitness(1, ccw2)
        # b = 0: l3 edges carry r1 + r2 - a - b and a + b < a' + b'.
        if r1 - a > 0:
            return DominanceWitness(0, ccw1)
        raise InternalError("SharedVertex: f(l1) = r1 contradicts f(l1) - f(l2) < f'(l1) - f'(l2)")
    if b > 0:
        raise InternalError("SharedVertex: canonicalize should have mirrored f(l2) > 0 onto l1")
    # a = b = 0: l3 carries r1 + r2, so it dominates; one of l1, l2 does too.
    if a - b >= ap - bp:
        return DominanceWitness(1, cw2)  # l1 + l3, carries r2
    return DominanceWitness(0, ccw1)  # l2 + l3, carries r1


def _chain_non_crossing(instance, f, fp):
    # P1 = {l1, l2+l3+l4}, P2 = {l3, l1+l2+l4};  f(l1) = x1, f(l3) = x2.
    r1, r2 = instance.demands
    a, c = f.x
    ap, cp = fp.x
    cw1, ccw1 = paths_of(instance, 0)
    cw2, ccw2 = paths_of(instance, 1)
    if a > 0:
        # l1 edges carry a + r2 - c.
        if a - c >= ap - cp:
            return DominanceWitness(0, cw1)
        # l3 edges carry r1 - a + c, now strictly above f'.
        if c > 0:
            return DominanceWitness(1, cw2)
        # c = 0: l2, l4 carry r1 + r2 - a - c and a + c < a' + c'.
        if r1 - a > 0:
            return DominanceWitness(0, ccw1)
        raise InternalError("NonCrossing: f(l1) = r1 contradicts f(l1) - f(l3) < f'(l1) - f'(l3)")
    if c > 0:
        raise InternalError("NonCrossing: canonicalize should have mirrored f(l3) > 0 onto l1")
    # a = c = 0: l2 and l4 carry r1 + r2.
    if a - c >= ap - cp:
        return DominanceWitness(1, ccw2)  # l1 + l2 + l4, carries r2
    return DominanceWitness(0, ccw1)  # l2 + l3 + l4, carries r1


def _chain_crossing(instance, f, fp):
    # P1 = {l1+l2, l3+l4}, P2 = {l1+l4, l2+l3};  u = f(l1+l2), v = f(l2+l3).
    r1, r2 = instance.demands
    u, v = f.x
    up, vp = fp.x
    cw1, ccw1 = paths_of(instance, 0)
    cw2, ccw2 = paths_of(instance, 1)
    if not u > 0:
        raise InternalError("Crossing: canonicalize should have made f(l1 + l2) positive")
    # Edge loads: l1 = u + r2 - v, l2 = u + v, l3 = v + r1 - u, l4 = r1 + r2 - u - v.
    l1_ok = u - v >= up - vp
    l2_ok = u + v >= up + vp
    if l1_ok and l2_ok:
        return DominanceWitness(0, cw1)
    if not l1_ok:
        # l3 strictly above f'.
        if v > 0:
            if l2_ok:
                return DominanceWitness(1, cw2)
            # l4 strictly above f' as well.
            if r1 - u > 0:
                return DominanceWitness(0, ccw1)
            raise InternalError("Crossing: f(l3 + l4) = 0 contradicts l2 falling below f'")
        # v = 0 forces f(l3 + l4) = r1 - u > 0.
        if u + v <= up + vp:
            return DominanceWitness(0, ccw1)
        raise InternalError("Crossing: f(l2 + l3) = 0 with l1 and l4 both below f'")
    # l1 dominates, l2 does not: l4 strictly above f'.
    if r2 - v > 0:
        return DominanceWitness(1, ccw2)
    raise InternalError("Crossing: f(l1 + l4) = 0 contradicts l2 falling below f'")


_CHAINS = {
    Configuration.SAME_PAIR: _chain_same_pair,
    Configuration.SHARED_VERTEX: _chain_shared_vertex,
    Configuration.NON_CROSSING: _chain_non_crossing,
    Configuration.CROSSING: _chain_crossing,
}


def _validate(instance, f, f_prime, w: DominanceWitness):
    cw, ccw = paths_of(instance, w.commodity)
    c = instance.commodities[w.commodity]
    if w.path == cw:
        amount = f.x[w.commodity]
    elif w.path == ccw:
        amount = c.r - f.x[w.commodity]
    else:
        raise InternalError(f"{w} is not a path of commodity {w.commodity}")
    if not amount > 0:
        raise InternalError(f"{w} carries no flow under f")
    if not path_dominates(instance, f, f_prime, w.path):
        raise InternalError(f"{w} is not dominating")


def witness_constructive(instance: CycleInstance, f: FlowAssignment,
                         f_prime: FlowAssignment) -> DominanceWitness:
    """A dominating path found by following the existence argument.

    One commodity: compare the clockwise amounts directly.  Two commodities:
    canonicalize, run the case chain for the configuration, then map the
    witness back to the caller's labels.  The result is re-checked before it
    is returned.
    """
    check_flow(instance, f)
    check_flow(instance, f_prime)
    if instance.k == 1:
        w = _chain_one(instance, f, f_prime)
    elif instance.k == 2:
        image, g, gp, tr = canonicalize(instance, f, f_prime)
        cw = _CHAINS[classify(image)](image, g, gp)
        inv = tr.inverse()
        w = DominanceWitness(tr.perm[cw.commodity], inv.apply_path(cw.path))
    else:
        raise UnsupportedError(
            f"no dominating path is guaranteed for k = {instance.k} >= 3 "
            "(a 6-cycle, three-commodity counterexample exists)")
    _validate(instance, f, f_prime, w)
    return w
