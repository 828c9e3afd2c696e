"""Matroids over integer-labelled ground sets: graphic, uniform, partition.

Each family is a closed representation: deletion and contraction return a
new matroid of the same family, so rank queries and polytope separation can
stay specialized.  A generic oracle-backed adapter exists for tests that
want to cross-check the closed forms against first principles.

Rank is always computed by greedy augmentation against the independence
oracle, which is exact for any matroid.  Contraction follows the minor
rules: ground shrinks by the contracted element; if {e} was dependent the
independent sets are simply carried over.  For graphic matroids an edge
parallel to a contracted edge becomes a loop and stays in the ground set
as a rank-zero element.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import (
    ElementNotInGround,
    GroundTooLarge,
    NoBasis,
    ParseError,
    ValidationError,
)
from .instance import CostTriple, _cost_field, _int_field, _reject_float
from .multigraph import MultiGraph

ENUMERATION_GROUND_LIMIT = 20


class Matroid:
    """Base class; subclasses implement is_independent and the minor ops."""

    family = "abstract"

    def __init__(self, ground, minor_stack=()):
        self.ground = frozenset(ground)
        self.minor_stack = tuple(minor_stack)

    def is_independent(self, subset) -> bool:
        raise NotImplementedError

    def _check_elements(self, subset):
        bad = set(subset) - self.ground
        if bad:
            raise ElementNotInGround(f"elements {sorted(bad)} not in ground set")

    def rank(self, subset=None) -> int:
        """Size of a maximum independent subset, by greedy augmentation."""
        if subset is None:
            subset = self.ground
        else:
            self._check_elements(subset)
        picked: set[int] = set()
        for e in sorted(subset):
            picked.add(e)
            if not self.is_independent(picked):
                picked.discard(e)
        return len(picked)

    def full_rank(self) -> int:
        return self.rank(self.ground)

    def delete(self, e: int) -> "Matroid":
        raise NotImplementedError

    def contract(self, e: int) -> "Matroid":
        raise NotImplementedError


class GraphicMatroid(Matroid):
    """Forests of a multigraph; loops created by contraction are retained
    as explicit rank-zero elements."""

    family = "graphic"

    def __init__(self, graph: MultiGraph, loops=frozenset(), minor_stack=()):
        self.graph = graph
        self.loops = frozenset(loops)
        super().__init__(set(graph.edges) | self.loops, minor_stack)

    def is_independent(self, subset) -> bool:
        self._check_elements(subset)
        if any(e in self.loops for e in subset):
            return False
        # union-find acyclicity check
        parent: dict[int, int] = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        for e in subset:
            u, v = self.graph.endpoints(e)
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[max(ru, rv)] = min(ru, rv)
        return True

    def delete(self, e: int) -> "GraphicMatroid":
        self._check_elements({e})
        stack = self.minor_stack + (("deleted", e),)
        if e in self.loops:
            return GraphicMatroid(self.graph, self.loops - {e}, stack)
        return GraphicMatroid(self.graph.delete_edge(e), self.loops, stack)

    def contract(self, e: int) -> "GraphicMatroid":
        self._check_elements({e})
        stack = self.minor_stack + (("contracted", e),)
        if e in self.loops:
            # dependent singleton: independence is unchanged, e just leaves
            return GraphicMatroid(self.graph, self.loops - {e}, stack)
        u, v = self.graph.endpoints(e)
        new_loops = set(self.loops)
        for fid, (a, b) in self.graph.edges.items():
            if fid != e and {a, b} == {u, v}:
                new_loops.add(fid)
        return GraphicMatroid(self.graph.contract_edge(e), frozenset(new_loops), stack)


class UniformMatroid(Matroid):
    """Independent iff the subset has at most r elements."""

    family = "uniform"

    def __init__(self, ground, r: int, minor_stack=()):
        if r < 0:
            raise ValidationError(f"uniform rank {r} is negative")
        self.r = r
        super().__init__(ground, minor_stack)

    def is_independent(self, subset) -> bool:
        self._check_elements(subset)
        return len(set(subset)) <= self.r

    def delete(self, e: int) -> "UniformMatroid":
        self._check_elements({e})
        return UniformMatroid(self.ground - {e}, self.r, self.minor_stack + (("deleted", e),))

    def contract(self, e: int) -> "UniformMatroid":
        self._check_elements({e})
        new_r = self.r - 1 if self.r >= 1 else 0
        return UniformMatroid(self.ground - {e}, new_r, self.minor_stack + (("contracted", e),))


class PartitionMatroid(Matroid):
    """Independent iff each block contributes at most its capacity."""

    family = "partition"

    def __init__(self, parts, minor_stack=()):
        # parts: sequence of (elements, cap); blocks must be disjoint
        norm = []
        seen: set[int] = set()
        for elements, cap in parts:
            elements = frozenset(elements)
            if cap < 0:
                raise ValidationError(f"partition capacity {cap} is negative")
            if elements & seen:
                raise ValidationError("partition blocks overlap")
            seen |= elements
            norm.append((elements, cap))
        self.parts = tuple(norm)
        super().__init__(seen, minor_stack)

    def is_independent(self, subset) -> bool:
        self._check_elements(subset)
        s = set(subset)
        return all(len(s & elements) <= cap for elements, cap in self.parts)

    def delete(self, e: int) -> "PartitionMatroid":
        self._check_elements({e})
        parts = [(elements - {e}, cap) for elements, cap in self.parts]
        return PartitionMatroid(parts, self.minor_stack + (("deleted", e),))

    def contract(self, e: int) -> "PartitionMatroid":
        self._check_elements({e})
        parts = []
        for elements, cap in self.parts:
            if e in elements:
                # capacity drops only if {e} was independent in this block
                parts.append((elements - {e}, cap - 1 if cap >= 1 else 0))
            else:
                parts.append((elements, cap))
        return PartitionMatroid(parts, self.minor_stack + (("contracted", e),))


class GenericOracleMatroid(Matroid):
    """Adapter around a raw independence oracle; used in tests to validate
    the closed family representations against definition-level semantics."""

    family = "oracle"

    def __init__(self, ground, oracle, minor_stack=()):
        self._oracle = oracle
        super().__init__(ground, minor_stack)

    def is_independent(self, subset) -> bool:
        self._check_elements(subset)
        return self._oracle(frozenset(subset))

    def delete(self, e: int) -> "GenericOracleMatroid":
        self._check_elements({e})
        inner = self._oracle
        return GenericOracleMatroid(
            self.ground - {e}, inner, self.minor_stack + (("deleted", e),)
        )

    def contract(self, e: int) -> "GenericOracleMatroid":
        self._check_elements({e})
        inner = self._oracle
        if self._oracle(frozenset({e})):
            oracle = lambda subset, _e=e, _f=inner: _f(subset | {_e})
        else:
            oracle = inner
        return GenericOracleMatroid(
            self.ground - {e}, oracle, self.minor_stack + (("contracted", e),)
        )


def greedy_min_basis(matroid: Matroid, weights, required_size=None) -> list[int]:
    """Minimum-weight basis via matroid greedy; ties broken by smaller id.

    required_size lets callers demand a specific basis size; NoBasis is
    raised when the matroid cannot reach it.
    """
    order = sorted(matroid.ground, key=lambda e: (weights[e], e))
    picked: set[int] = set()
    result = []
    for e in order:
        picked.add(e)
        if matroid.is_independent(picked):
            result.append(e)
        else:
            picked.discard(e)
    if required_size is None:
        required_size = matroid.full_rank()
    if len(result) != required_size:
        raise NoBasis(f"maximum independent set has {len(result)} elements, need {required_size}")
    return sorted(result)


def enumerate_bases(matroid: Matroid) -> list[tuple[int, ...]]:
    """All bases as sorted tuples, lexicographic order; guarded by ground size."""
    if len(matroid.ground) > ENUMERATION_GROUND_LIMIT:
        raise GroundTooLarge(
            f"ground has {len(matroid.ground)} elements, enumeration capped at {ENUMERATION_GROUND_LIMIT}"
        )
    r = matroid.full_rank()
    ground = sorted(matroid.ground)
    return [
        combo
        for combo in itertools.combinations(ground, r)
        if matroid.is_independent(frozenset(combo))
    ]


@dataclass(frozen=True)
class MatroidInstance:
    matroid: Matroid
    costs: dict[int, CostTriple]
    k: int

    def __post_init__(self):
        r = self.matroid.full_rank()
        if not 0 <= self.k <= r:
            raise ValidationError(f"k={self.k} outside 0..{r}")
        missing = self.matroid.ground - set(self.costs)
        extra = set(self.costs) - self.matroid.ground
        if missing or extra:
            raise ValidationError(
                f"cost table mismatch: missing={sorted(missing)} extra={sorted(extra)}"
            )

    @property
    def overlap_requirement(self) -> int:
        return self.matroid.full_rank() - self.k


def matroid_from_dict(doc) -> Matroid:
    family = doc.get("family")
    if family == "graphic":
        n = _int_field(doc, "nodes", "matroid")
        raw = doc.get("edges")
        if not isinstance(raw, list):
            raise ParseError("graphic matroid: 'edges' must be a list")
        edges = {}
        for i, e in enumerate(raw):
            where = f"edges[{i}]"
            eid = _int_field(e, "id", where)
            u = _int_field(e, "u", where)
            v = _int_field(e, "v", where)
            if eid in edges:
                raise ParseError(f"{where}: duplicate edge id {eid}")
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(f"{where}: bad endpoints ({u},{v})")
            edges[eid] = (u, v)
        return GraphicMatroid(MultiGraph(range(n), edges))
    if family == "uniform":
        raw = doc.get("elements")
        if not isinstance(raw, list) or not all(isinstance(x, int) for x in raw):
            raise ParseError("uniform matroid: 'elements' must be a list of integers")
        if len(set(raw)) != len(raw):
            raise ParseError("uniform matroid: duplicate elements")
        r = _int_field(doc, "rank", "matroid")
        if r < 0:
            raise ParseError(f"uniform matroid: rank {r} is negative")
        return UniformMatroid(frozenset(raw), r)
    if family == "partition":
        raw = doc.get("parts")
        if not isinstance(raw, list):
            raise ParseError("partition matroid: 'parts' must be a list")
        parts = []
        for i, p in enumerate(raw):
            where = f"parts[{i}]"
            elems = p.get("elements")
            if not isinstance(elems, list) or not all(isinstance(x, int) for x in elems):
                raise ParseError(f"{where}: 'elements' must be a list of integers")
            cap = _int_field(p, "cap", where)
            if cap < 0:
                raise ParseError(f"{where}: cap {cap} is negative")
            parts.append((frozenset(elems), cap))
        try:
            return PartitionMatroid(parts)
        except ValidationError as exc:
            raise ParseError(f"partition matroid: {exc}") from exc
    raise ParseError(f"unknown matroid family {family!r}")


def matroid_instance_from_dict(doc) -> MatroidInstance:
    if not isinstance(doc, dict):
        raise ParseError("matroid instance document must be a JSON object")
    matroid = matroid_from_dict(doc)
    k = _int_field(doc, "k", "matroid instance")
    raw = doc.get("costs")
    if not isinstance(raw, list):
        raise ParseError("matroid instance: 'costs' must be a list")
    costs = {}
    for i, entry in enumerate(raw):
        where = f"costs[{i}]"
        eid = _int_field(entry, "id", where)
        if eid in costs:
            raise ParseError(f"{where}: duplicate cost id {eid}")
        costs[eid] = CostTriple(
            _cost_field(entry, "C", where),
            _cost_field(entry, "c", where),
            _cost_field(entry, "d", where),
        )
    return MatroidInstance(matroid=matroid, costs=costs, k=k)


def load_matroid_instance(path) -> MatroidInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_matroid_instance(fh.read())


def loads_matroid_instance(text: str) -> MatroidInstance:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return matroid_instance_from_dict(doc)
