"""Generated instance categories and their classical oracles.

Three families of finite concrete categories are built here:

* ``Set_fin``: canonical carriers {0..n-1} and all functions.
* ``Top_fin`` over Set_fin: objects are (carrier, topology) pairs,
  morphisms are the continuous functions.
* ``Preord_fin`` over Set_fin: objects are (carrier, preorder) pairs,
  morphisms are the monotone maps.

Alongside the categories live the classical constructions used as
independent oracles: initial topology, final topology, product topology,
and the pullback preorder.  The oracles work directly on bitmask-encoded
open-set families and never touch the category machinery; the value of
the package's cross-checks rests on that independence.

Encodings.  A carrier is {0..n-1}; a subset is an n-bit mask; a topology
is the set of its open masks, summarized as "fambits" (bit m set iff
mask m is open).  Object identifiers embed the encoding: ``T2_11`` is
the 2-point topology with fambits 11, i.e. {∅, {0}, X}; ``P3_311`` is a
preorder on 3 points by row-major relation bits; ``set3`` is a carrier;
``f2_3_01`` is the function {0↦0, 1↦1} from carrier 2 to carrier 3, and
``c_T2_15__T2_11__01`` the continuous map over it.  Identifier-embedded
data keeps generated categories cheap: composition is computed from the
ids instead of stored (the table for all continuous maps between 3-point
spaces alone would hold 3.6M entries).

Categories involving 4-point carriers (355 topologies, millions of
morphisms) cannot be materialized at all; ``build_top_fin`` switches to
a lazy category that enumerates hom-sets on demand and counts them with
vectorized preimage tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .concrete import ConcreteCategory, new_concrete
from .fincat import FinCategory, FunctorData, StructuralError, WorkbenchError


class SizeBoundError(WorkbenchError):
    """A generator was asked for a size outside its guaranteed desk scale."""


MAX_SET_SIZE = 6
MAX_TOP_SIZE = 4
MAX_PREORD_SIZE = 3
MAX_PRODUCT_CARRIER = 16

# Auto-validation budget for generated categories, measured in composable
# pairs and estimated associativity triples; beyond it correctness rests on
# the builders (composition of functions is associative by construction).
_VALIDATE_PAIR_LIMIT = 60_000
_VALIDATE_TRIPLE_LIMIT = 3_000_000


# ---------------------------------------------------------------------------
# topologies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Topology:
    """A topology on the carrier {0..n-1}, opens encoded as n-bit masks.

    For a finite carrier, closure under pairwise union and intersection
    together with ∅ and the full set is the whole topology axiom set.
    """

    n: int
    opens: frozenset[int]

    def __post_init__(self) -> None:
        full = (1 << self.n) - 1
        if 0 not in self.opens or full not in self.opens:
            raise StructuralError(f"topology on {self.n} points must contain ∅ and the carrier")
        for a in self.opens:
            if not 0 <= a <= full:
                raise StructuralError(f"open {a} out of range for carrier size {self.n}")
            for b in self.opens:
                if (a | b) not in self.opens or (a & b) not in self.opens:
                    raise StructuralError(
                        f"opens not closed under union/intersection: {a}, {b}"
                    )

    @property
    def fambits(self) -> int:
        bits = 0
        for m in self.opens:
            bits |= 1 << m
        return bits

    @classmethod
    def from_fambits(cls, n: int, fambits: int) -> "Topology":
        return cls(n, frozenset(m for m in range(1 << n) if (fambits >> m) & 1))

    @classmethod
    def discrete(cls, n: int) -> "Topology":
        return cls(n, frozenset(range(1 << n)))

    @classmethod
    def indiscrete(cls, n: int) -> "Topology":
        return cls(n, frozenset({0, (1 << n) - 1}))

    def is_open(self, mask: int) -> bool:
        return mask in self.opens


def _preimage(values: Sequence[int], mask: int) -> int:
    p = 0
    for x, fx in enumerate(values):
        if (mask >> fx) & 1:
            p |= 1 << x
    return p


def is_continuous(values: Sequence[int], source: Topology, target: Topology) -> bool:
    """Preimage test for a function given by its value tuple."""
    return all(_preimage(values, o) in source.opens for o in target.opens)


@lru_cache(maxsize=None)
def enumerate_topologies(n: int) -> tuple[Topology, ...]:
    """All topologies on {0..n-1} by direct enumeration of open-set families,
    sorted by their fambits encoding."""
    if not 0 <= n <= MAX_TOP_SIZE:
        raise SizeBoundError(f"topology enumeration supports 0 <= n <= {MAX_TOP_SIZE}, got {n}")
    full = (1 << n) - 1
    found = []
    for fam in range(1 << (1 << n)):
        if not fam & 1 or not (fam >> full) & 1:
            continue
        opens = [m for m in range(1 << n) if (fam >> m) & 1]
        ok = True
        for i, a in enumerate(opens):
            for b in opens[i + 1 :]:
                if not (fam >> (a | b)) & 1 or not (fam >> (a & b)) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(Topology(n, frozenset(opens)))
    return tuple(found)


def count_topologies(n: int) -> int:
    """Number of distinct topologies on an n-point carrier, n <= 4."""
    return len(enumerate_topologies(n))


def _closure(masks: Iterable[int], n: int) -> frozenset[int]:
    """Close a family of subsets under pairwise union and intersection,
    adding ∅ and the carrier."""
    current = set(masks)
    current.add(0)
    current.add((1 << n) - 1)
    while True:
        added = set()
        items = list(current)
        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                u, v = a | b, a & b
                if u not in current:
                    added.add(u)
                if v not in current:
                    added.add(v)
        if not added:
            return frozenset(current)
        current |= added


def initial_topology_oracle(
    n: int, family: Sequence[tuple[Sequence[int], Topology]]
) -> Topology:
    """Coarsest topology on {0..n-1} making every family map continuous.

    Each entry is (value tuple, target topology).  The empty family yields
    the indiscrete topology; a single map realizes the inverse-image /
    induced construction.
    """
    masks: set[int] = set()
    for values, target in family:
        if len(values) != n:
            raise StructuralError(f"function {values!r} is not total on a {n}-point carrier")
        if any(not 0 <= v < target.n for v in values):
            raise StructuralError(f"function {values!r} maps outside a {target.n}-point carrier")
        for o in target.opens:
            masks.add(_preimage(values, o))
    return Topology(n, _closure(masks, n))


def final_topology_oracle(
    n: int, family: Sequence[tuple[Sequence[int], Topology]]
) -> Topology:
    """Finest topology on {0..n-1} making every family map continuous.

    Each entry is (value tuple, source topology) for a map into the
    carrier.  A subset is open iff its preimage under every family member
    is open in that member's source; the empty family yields the discrete
    topology.  No closure step is needed: the defining condition is stable
    under union and intersection.
    """
    for values, source in family:
        if len(values) != source.n:
            raise StructuralError(f"function {values!r} is not total on a {source.n}-point carrier")
        if any(not 0 <= v < n for v in values):
            raise StructuralError(f"function {values!r} maps outside a {n}-point carrier")
    opens = [
        mask
        for mask in range(1 << n)
        if all(_preimage(values, mask) in source.opens for values, source in family)
    ]
    return Topology(n, frozenset(opens))


def product_topology_oracle(t1: Topology, t2: Topology) -> Topology:
    """Product topology on the carrier {0..n1*n2-1} with k = i*n2 + j pairing.

    Computed as the initial topology for the two coordinate projections.
    """
    n = t1.n * t2.n
    if n > MAX_PRODUCT_CARRIER:
        raise SizeBoundError(
            f"product carrier {t1.n}x{t2.n} exceeds {MAX_PRODUCT_CARRIER} points"
        )
    p1 = tuple(k // t2.n for k in range(n))
    p2 = tuple(k % t2.n for k in range(n))
    return initial_topology_oracle(n, [(p1, t1), (p2, t2)])


# ---------------------------------------------------------------------------
# preorders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Preorder:
    """A reflexive transitive relation on {0..n-1}; row i is a bitmask of
    the elements above i."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise StructuralError(f"preorder needs {self.n} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if not 0 <= row < (1 << self.n):
                raise StructuralError(f"row {i} out of range")
            if not (row >> i) & 1:
                raise StructuralError(f"preorder not reflexive at {i}")
        for i in range(self.n):
            for j in range(self.n):
                if (self.rows[i] >> j) & 1 and (self.rows[i] | self.rows[j]) != self.rows[i]:
                    raise StructuralError(f"preorder not transitive through {i} <= {j}")

    @property
    def relbits(self) -> int:
        bits = 0
        for i, row in enumerate(self.rows):
            bits |= row << (i * self.n)
        return bits

    @classmethod
    def from_relbits(cls, n: int, relbits: int) -> "Preorder":
        mask = (1 << n) - 1
        return cls(n, tuple((relbits >> (i * n)) & mask for i in range(n)))

    @classmethod
    def discrete(cls, n: int) -> "Preorder":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def chaotic(cls, n: int) -> "Preorder":
        full = (1 << n) - 1
        return cls(n, tuple(full for _ in range(n)))

    def le(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)


def is_monotone(values: Sequence[int], source: Preorder, target: Preorder) -> bool:
    return all(
        target.le(values[i], values[j])
        for i in range(source.n)
        for j in range(source.n)
        if source.le(i, j)
    )


@lru_cache(maxsize=None)
def enumerate_preorders(n: int) -> tuple[Preorder, ...]:
    """All preorders on {0..n-1}, sorted by their relbits encoding."""
    if not 0 <= n <= MAX_PREORD_SIZE:
        raise SizeBoundError(f"preorder enumeration supports 0 <= n <= {MAX_PREORD_SIZE}, got {n}")
    found = []
    for combo in itertools.product(range(1 << n), repeat=n):
        rows = tuple(combo[i] | (1 << i) for i in range(n))
        ok = True
        for i in range(n):
            for j in range(n):
                if (rows[i] >> j) & 1 and (rows[i] | rows[j]) != rows[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(Preorder(n, rows))
    uniq = sorted(set(found), key=lambda p: p.relbits)
    return tuple(uniq)


def initial_preorder_oracle(
    n: int, family: Sequence[tuple[Sequence[int], Preorder]]
) -> Preorder:
    """Coarsest preorder on {0..n-1} making every family map monotone:
    x <= y iff f(x) <= f(y) for every map.  The empty family yields the
    chaotic (complete) preorder."""
    for values, target in family:
        if len(values) != n:
            raise StructuralError(f"function {values!r} is not total on a {n}-point carrier")
        if any(not 0 <= v < target.n for v in values):
            raise StructuralError(f"function {values!r} maps outside a {target.n}-point carrier")
    rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if all(target.le(values[i], values[j]) for values, target in family):
                row |= 1 << j
        rows.append(row)
    return Preorder(n, tuple(rows))


# ---------------------------------------------------------------------------
# identifier schemes
# ---------------------------------------------------------------------------


def _digits(values: Sequence[int]) -> str:
    return "".join(str(v) for v in values) or "e"


def _values_from_digits(digits: str) -> tuple[int, ...]:
    if digits == "e":
        return ()
    return tuple(int(ch) for ch in digits)


def set_object_id(n: int) -> str:
    return f"set{n}"


def fn_morphism_id(m: int, n: int, values: Sequence[int]) -> str:
    return f"f{m}_{n}_{_digits(values)}"


def _parse_fn(mid: str) -> tuple[int, int, tuple[int, ...]]:
    m, n, digits = mid[1:].split("_")
    return int(m), int(n), _values_from_digits(digits)


def top_object_id(t: Topology) -> str:
    return f"T{t.n}_{t.fambits}"


def object_topology(obj: str) -> Topology:
    """Decode a Top_fin object identifier back into its topology."""
    n, fambits = obj[1:].split("_")
    return Topology.from_fambits(int(n), int(fambits))


def preord_object_id(p: Preorder) -> str:
    return f"P{p.n}_{p.relbits}"


def object_preorder(obj: str) -> Preorder:
    n, relbits = obj[1:].split("_")
    return Preorder.from_relbits(int(n), int(relbits))


def structured_morphism_id(dom_obj: str, cod_obj: str, values: Sequence[int]) -> str:
    return f"c_{dom_obj}__{cod_obj}__{_digits(values)}"


def parse_structured_morphism(mid: str) -> tuple[str, str, tuple[int, ...]]:
    dom_obj, cod_obj, digits = mid[2:].split("__")
    return dom_obj, cod_obj, _values_from_digits(digits)


# ---------------------------------------------------------------------------
# Set_fin
# ---------------------------------------------------------------------------


def _compose_values(vg: Sequence[int], vf: Sequence[int]) -> tuple[int, ...]:
    return tuple(vg[x] for x in vf)


def build_set_fin(max_size: int) -> FinCategory:
    """The category of canonical carriers {0..n-1} for n = 0..max_size and
    all functions between them.  Composition is computed from the
    identifier encoding rather than stored."""
    if not 0 <= max_size <= MAX_SET_SIZE:
        raise SizeBoundError(f"Set_fin supports 0 <= max_size <= {MAX_SET_SIZE}, got {max_size}")
    sizes = range(max_size + 1)
    objects = [set_object_id(n) for n in sizes]
    morphisms: dict[str, tuple[str, str]] = {}
    for m in sizes:
        for n in sizes:
            for values in itertools.product(range(n), repeat=m):
                morphisms[fn_morphism_id(m, n, values)] = (set_object_id(m), set_object_id(n))
    identities = {set_object_id(n): fn_morphism_id(n, n, tuple(range(n))) for n in sizes}

    def compose_rule(g: str, f: str) -> str:
        mf, nf, vf = _parse_fn(f)
        _, ng, vg = _parse_fn(g)
        return fn_morphism_id(mf, ng, _compose_values(vg, vf))

    return FinCategory("Set_fin", objects, morphisms, identities, compose_rule=compose_rule)


# ---------------------------------------------------------------------------
# structured function categories (shared by Top_fin and Preord_fin tables)
# ---------------------------------------------------------------------------


def _composition_budget(cat: FinCategory) -> tuple[int, int]:
    """(composable pairs, estimated associativity triples) from degree sums."""
    into: dict[str, int] = {o: 0 for o in cat.objects}
    out_of: dict[str, int] = {o: 0 for o in cat.objects}
    for d, c in cat.morphisms.values():
        out_of[d] += 1
        into[c] += 1
    pairs = sum(into[o] * out_of[o] for o in cat.objects)
    max_out = max(out_of.values(), default=0)
    return pairs, pairs * max_out


def should_validate_generated(cat: FinCategory) -> bool:
    """Whether a generated category is small enough for exhaustive law checks."""
    pairs, triples = _composition_budget(cat)
    return pairs <= _VALIDATE_PAIR_LIMIT and triples <= _VALIDATE_TRIPLE_LIMIT


def _build_structured_concrete(
    cat_name: str,
    functor_name: str,
    carriers: dict[str, int],
    admissible,
) -> ConcreteCategory:
    """Concrete category of structured carriers over Set_fin.

    ``carriers`` maps object id -> carrier size; ``admissible(a, b)``
    yields the value tuples of the structure-preserving functions a -> b
    (it must contain identities and be closed under composition).
    """
    objects = sorted(carriers)
    morphisms: dict[str, tuple[str, str]] = {}
    morphism_map: dict[str, str] = {}
    for a in objects:
        for b in objects:
            for values in admissible(a, b):
                mid = structured_morphism_id(a, b, values)
                morphisms[mid] = (a, b)
                morphism_map[mid] = fn_morphism_id(carriers[a], carriers[b], values)
    identities = {
        a: structured_morphism_id(a, a, tuple(range(carriers[a]))) for a in objects
    }
    for a, mid in identities.items():
        if mid not in morphisms:
            raise StructuralError(f"admissible functions for {a!r} lack the identity")

    def compose_rule(g: str, f: str) -> str:
        da, _, vf = parse_structured_morphism(f)
        _, cb, vg = parse_structured_morphism(g)
        return structured_morphism_id(da, cb, _compose_values(vg, vf))

    cat = FinCategory(cat_name, objects, morphisms, identities, compose_rule=compose_rule)
    x = build_set_fin(max(carriers.values(), default=0))
    u = FunctorData(
        name=functor_name,
        source=cat_name,
        target=x.name,
        object_map={a: set_object_id(n) for a, n in carriers.items()},
        morphism_map=morphism_map,
    )
    return new_concrete(cat, x, u, validate=should_validate_generated(cat))


def build_top_fin(base_sizes: Sequence[int]) -> ConcreteCategory:
    """Top_fin over Set_fin: all (carrier, topology) pairs for the listed
    sizes, with all continuous maps.

    Sizes up to 3 produce an ordinary table category.  Any size-4 carrier
    (355 topologies, millions of continuous maps) switches to the lazy
    implementation whose hom-sets are enumerated on demand.
    """
    sizes = sorted(set(base_sizes))
    if any(not 0 <= n <= MAX_TOP_SIZE for n in sizes):
        raise SizeBoundError(f"Top_fin carriers must have 0 <= size <= {MAX_TOP_SIZE}")
    if any(n >= 4 for n in sizes):
        return _build_top_fin_lazy(sizes)

    topo: dict[str, Topology] = {}
    for n in sizes:
        for t in enumerate_topologies(n):
            topo[top_object_id(t)] = t
    carriers = {obj: t.n for obj, t in topo.items()}

    def admissible(a: str, b: str):
        ta, tb = topo[a], topo[b]
        for values in itertools.product(range(tb.n), repeat=ta.n):
            if is_continuous(values, ta, tb):
                yield values

    return _build_structured_concrete("Top_fin", "U_top", carriers, admissible)


def build_preord_fin(base_sizes: Sequence[int]) -> ConcreteCategory:
    """Preord_fin over Set_fin: all (carrier, preorder) pairs for the listed
    sizes, with all monotone maps."""
    sizes = sorted(set(base_sizes))
    if any(not 0 <= n <= MAX_PREORD_SIZE for n in sizes):
        raise SizeBoundError(f"Preord_fin carriers must have 0 <= size <= {MAX_PREORD_SIZE}")
    pre: dict[str, Preorder] = {}
    for n in sizes:
        for p in enumerate_preorders(n):
            pre[preord_object_id(p)] = p
    carriers = {obj: p.n for obj, p in pre.items()}

    def admissible(a: str, b: str):
        pa, pb = pre[a], pre[b]
        for values in itertools.product(range(pb.n), repeat=pa.n):
            if is_monotone(values, pa, pb):
                yield values

    return _build_structured_concrete("Preord_fin", "U_preord", carriers, admissible)


# ---------------------------------------------------------------------------
# lazy Top_fin for 4-point carriers
# ---------------------------------------------------------------------------


class TopLazyCategory:
    """Top_fin at sizes where the morphism set cannot be materialized.

    Exposes the same read surface as :class:`~structcat.fincat.FinCategory`
    minus the literal ``morphisms``/``composition`` dicts: hom-sets are
    enumerated on demand and memoized, hom-set cardinalities come from
    vectorized preimage tests, and composition is computed from the
    identifier encoding.  Not serializable and not exhaustively law-checked;
    valid by construction (function composition) like the table builders.
    """

    name = "Top_fin"

    def __init__(self, sizes: Sequence[int]) -> None:
        self.sizes = tuple(sorted(set(sizes)))
        self._topos = {n: enumerate_topologies(n) for n in self.sizes}
        self._topo_by_obj: dict[str, Topology] = {}
        self._block_index: dict[str, int] = {}
        for n in self.sizes:
            for i, t in enumerate(self._topos[n]):
                obj = top_object_id(t)
                self._topo_by_obj[obj] = t
                self._block_index[obj] = i
        self.objects = tuple(sorted(self._topo_by_obj))
        self.identities = {
            obj: structured_morphism_id(obj, obj, tuple(range(t.n)))
            for obj, t in self._topo_by_obj.items()
        }
        self._hom_cache: dict[tuple[str, str], tuple[str, ...]] = {}
        self._count_cache: dict[tuple[int, int], np.ndarray] = {}
        self._caches: dict = {}

    def topology(self, obj: str) -> Topology:
        return self._topo_by_obj[obj]

    def has_object(self, obj: str) -> bool:
        return obj in self._topo_by_obj

    def dom(self, m: str) -> str:
        return parse_structured_morphism(m)[0]

    def cod(self, m: str) -> str:
        return parse_structured_morphism(m)[1]

    def identity(self, obj: str) -> str:
        return self.identities[obj]

    def has_morphism(self, m: str) -> bool:
        try:
            a, b, values = parse_structured_morphism(m)
            ta, tb = self._topo_by_obj[a], self._topo_by_obj[b]
        except (ValueError, KeyError):
            return False
        if len(values) != ta.n or any(not 0 <= v < tb.n for v in values):
            return False
        return is_continuous(values, ta, tb)

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        key = (a, b)
        cached = self._hom_cache.get(key)
        if cached is None:
            ta, tb = self._topo_by_obj[a], self._topo_by_obj[b]
            cached = tuple(
                structured_morphism_id(a, b, values)
                for values in itertools.product(range(tb.n), repeat=ta.n)
                if is_continuous(values, ta, tb)
            )
            self._hom_cache[key] = cached
        return cached

    def _count_block(self, na: int, nb: int) -> np.ndarray:
        """Continuous-map counts between all na-point and nb-point topologies."""
        key = (na, nb)
        block = self._count_cache.get(key)
        if block is None:
            sources = self._topos[na]
            targets = self._topos[nb]
            funcs = list(itertools.product(range(nb), repeat=na))
            # req[f, t]: preimage family forced open in the source, as fambits
            req = np.zeros((len(funcs), len(targets)), dtype=np.uint32)
            for fi, values in enumerate(funcs):
                pre = [np.uint32(1) << np.uint32(_preimage(values, mask)) for mask in range(1 << nb)]
                for ti, t in enumerate(targets):
                    bits = np.uint32(0)
                    for o in t.opens:
                        bits |= pre[o]
                    req[fi, ti] = bits
            notfam = np.array(
                [~np.uint32(t.fambits) for t in sources], dtype=np.uint32
            )
            block = np.zeros((len(sources), len(targets)), dtype=np.int64)
            for si in range(len(sources)):
                block[si, :] = ((req & notfam[si]) == 0).sum(axis=0)
            self._count_cache[key] = block
        return block

    def hom_count(self, a: str, b: str) -> int:
        ta, tb = self._topo_by_obj[a], self._topo_by_obj[b]
        block = self._count_block(ta.n, tb.n)
        return int(block[self._block_index[a], self._block_index[b]])

    def composable(self, g: str, f: str) -> bool:
        return self.cod(f) == self.dom(g)

    def compose(self, g: str, f: str) -> Optional[str]:
        da, ca, vf = parse_structured_morphism(f)
        db, cb, vg = parse_structured_morphism(g)
        if ca != db:
            return None
        return structured_morphism_id(da, cb, _compose_values(vg, vf))

    def __repr__(self) -> str:
        return f"TopLazyCategory(sizes={self.sizes}, {len(self.objects)} objects)"


class TopLazyForgetful:
    """Forgetful functor of the lazy Top_fin: reads the underlying carrier
    and function straight out of the identifier encoding."""

    name = "U_top"
    source = "Top_fin"
    target = "Set_fin"

    def __init__(self, lazy: TopLazyCategory) -> None:
        self._lazy = lazy

    def apply_object(self, obj: str) -> str:
        return set_object_id(self._lazy.topology(obj).n)

    def apply_morphism(self, m: str) -> str:
        a, b, values = parse_structured_morphism(m)
        return fn_morphism_id(
            self._lazy.topology(a).n, self._lazy.topology(b).n, values
        )


def _build_top_fin_lazy(sizes: Sequence[int]) -> ConcreteCategory:
    lazy = TopLazyCategory(sizes)
    x = build_set_fin(max(sizes))
    return new_concrete(lazy, x, TopLazyForgetful(lazy), validate=False)
