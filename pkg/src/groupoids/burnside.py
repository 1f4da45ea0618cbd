"""The Burnside rig and ring of a finite groupoid.

Isomorphism classes of finite right G-sets form a commutative rig under
disjoint union and the product over the object set; classes of coset G-sets
G/H, one per conjugacy class of one-object subgroupoids, form a free basis.
Elements are integer coefficient vectors over that basis: the rig is the
cone of componentwise nonnegative vectors and the ring its formal
difference completion, which coincides with plain integer vectors because
the rig is cancellative (the table of marks is invertible over Q).

Multiplication goes through structure constants: the product of two basis
cosets is materialized as a fibered product and decomposed again. A
groupoid morphism induces a ring homomorphism the other way (pull back a
G-set, decompose over the source), and for a disconnected groupoid the
ring splits as a product of one-object Burnside rings, one per component.

A generic difference-pair construction is included for rigs that are not
known to be cancellative; equality of pairs then needs a shifted witness
and is only decidable over a finite search universe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteGroupoid, GroupoidMorphism, OneObjectSubgroupoid, from_group
from .errors import DecompositionMismatch, TableMismatch, UndecidableEquality
from .gset import RightGSet, coset_gset, decompose, fibered_product, unit_gset
from .subconj import (
    DEFAULT_ISOTROPY_CAP,
    conjugated_isotropy_subgroups,
    enumerate_reps,
    mark_table,
    rep_label,
)


@dataclass(frozen=True)
class BurnsideElement:
    """Coefficient vector over the coset basis of a fixed ring."""
    ring: "BurnsideRing"
    coeffs: tuple

    def _match(self, other):
        if not isinstance(other, BurnsideElement) or other.ring is not self.ring:
            raise TableMismatch("elements of different Burnside rings")

    def __add__(self, other):
        self._match(other)
        return BurnsideElement(self.ring, tuple(
            a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._match(other)
        return BurnsideElement(self.ring, tuple(
            a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BurnsideElement(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._match(other)
        return self.ring.mul(self, other)

    def is_effective(self):
        """Whether the element is the class of an actual G-set."""
        return all(a >= 0 for a in self.coeffs)

    def to_json(self):
        return {lab: c for lab, c in zip(self.ring.labels, self.coeffs) if c}


class BurnsideRing:
    """Basis, structure constants, and arithmetic for one groupoid."""

    def __init__(self, g: FiniteGroupoid, cap=DEFAULT_ISOTROPY_CAP):
        self.groupoid = g
        self.reps = tuple(enumerate_reps(g, cap=cap))
        self.labels = tuple(rep_label(g, r) for r in self.reps)
        self._cosets = [None] * len(self.reps)
        self._cube = {}

    @property
    def rank(self):
        return len(self.reps)

    def coset(self, i) -> RightGSet:
        if self._cosets[i] is None:
            self._cosets[i] = coset_gset(self.groupoid, self.reps[i])
        return self._cosets[i]

    def element(self, coeffs) -> BurnsideElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise TableMismatch("coefficient vector has wrong length",
                                expected=self.rank, got=len(coeffs))
        return BurnsideElement(self, coeffs)

    def basis(self, i) -> BurnsideElement:
        return self.element(int(i == j) for j in range(self.rank))

    def zero(self) -> BurnsideElement:
        return self.element([0] * self.rank)

    def one(self) -> BurnsideElement:
        return self.from_gset(unit_gset(self.groupoid))

    def from_gset(self, x: RightGSet) -> BurnsideElement:
        return self.element(decompose(x, self.reps).coefficients)

    def structure_constants(self, i, j):
        """Decomposition vector of the product of basis cosets i and j."""
        key = (min(i, j), max(i, j))
        if key not in self._cube:
            prod = fibered_product(self.coset(key[0]), self.coset(key[1]))
            self._cube[key] = decompose(prod, self.reps).coefficients
        return self._cube[key]

    def mul(self, a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
        out = [0] * self.rank
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(b.coeffs):
                if not bj:
                    continue
                for k, c in enumerate(self.structure_constants(i, j)):
                    out[k] += ai * bj * c
        return self.element(out)

    def mark_table(self):
        return mark_table(self.groupoid)

    def to_json(self):
        # structure constants as sparse triples (i, j, nonzero result terms)
        triples = []
        for i in range(self.rank):
            for j in range(i, self.rank):
                terms = [[k, c]
                         for k, c in enumerate(self.structure_constants(i, j))
                         if c]
                if terms:
                    triples.append([i, j, terms])
        return {
            "basis": list(self.labels),
            "one": list(self.one().coeffs),
            "structure_constants": triples,
        }

    def table_string(self) -> str:
        """Multiplication table of basis elements as readable linear combos."""
        names = ["b%d" % i for i in range(self.rank)]

        def combo(vec):
            terms = ["%s%s" % ("" if c == 1 else "%d·" % c, names[k])
                     for k, c in enumerate(vec) if c]
            return " + ".join(terms) if terms else "0"

        width = max(len(n) for n in names)
        cells = [[combo(self.structure_constants(i, j))
                  for j in range(self.rank)] for i in range(self.rank)]
        colw = [max([len(names[j])] + [len(cells[i][j])
                                       for i in range(self.rank)])
                for j in range(self.rank)]
        lines = ["legend: " + ", ".join(
            "%s = [%s]" % (n, lab) for n, lab in zip(names, self.labels))]
        lines.append(" " * width + " | " + "  ".join(
            names[j].ljust(colw[j]) for j in range(self.rank)))
        lines.append("-" * width + "-+-" + "-" * (sum(colw) + 2 * (self.rank - 1)))
        for i in range(self.rank):
            lines.append(names[i].ljust(width) + " | " + "  ".join(
                cells[i][j].ljust(colw[j]) for j in range(self.rank)))
        return "\n".join(lines)

    def __repr__(self):
        return "BurnsideRing(rank %d over %r)" % (self.rank, self.groupoid)


# -- functoriality ---------------------------------------------------------

@dataclass(frozen=True)
class BurnsideHom:
    """Ring homomorphism B(G) -> B(H) induced by a morphism H -> G."""
    source: BurnsideRing
    target: BurnsideRing
    columns: tuple  # image of each source basis element, as target vectors

    def __call__(self, elem: BurnsideElement) -> BurnsideElement:
        if elem.ring is not self.source:
            raise TableMismatch("element of a different Burnside ring")
        out = [0] * self.target.rank
        for j, c in enumerate(elem.coeffs):
            if not c:
                continue
            for k, v in enumerate(self.columns[j]):
                out[k] += c * v
        return self.target.element(out)

    def then(self, other: "BurnsideHom") -> "BurnsideHom":
        if self.target is not other.source:
            raise TableMismatch("homomorphisms are not composable")
        cols = tuple(other(self.target.element(col)).coeffs
                     for col in self.columns)
        return BurnsideHom(self.source, other.target, cols)


def induction_hom(phi: GroupoidMorphism, source: BurnsideRing,
                  target: BurnsideRing) -> BurnsideHom:
    """B(phi): pull each coset of phi's target groupoid back along phi."""
    from .gset import induction
    if source.groupoid is not phi.target or target.groupoid is not phi.source:
        raise TableMismatch("rings do not match the morphism endpoints")
    cols = tuple(decompose(induction(phi, source.coset(j)),
                           target.reps).coefficients
                 for j in range(source.rank))
    return BurnsideHom(source, target, cols)


# -- product decomposition over components ---------------------------------

@dataclass(frozen=True)
class ProductDecomposition:
    """B(G) as a product of one-object Burnside rings, one per component."""
    ring: BurnsideRing
    factors: tuple            # BurnsideRing of each isotropy group
    base_objects: tuple       # component base in the parent groupoid
    index_maps: tuple         # parent rep index -> (factor, factor rep index)

    def project(self, elem: BurnsideElement):
        """Factorwise coefficient vectors of a parent element."""
        if elem.ring is not self.ring:
            raise TableMismatch("element of a different Burnside ring")
        out = [[0] * f.rank for f in self.factors]
        for i, c in enumerate(elem.coeffs):
            ci, k = self.index_maps[i]
            out[ci][k] += c
        return [f.element(v) for f, v in zip(self.factors, out)]

    def combine(self, parts) -> BurnsideElement:
        if len(parts) != len(self.factors):
            raise TableMismatch("one element per factor required")
        out = [0] * self.ring.rank
        for i in range(self.ring.rank):
            ci, k = self.index_maps[i]
            if parts[ci].ring is not self.factors[ci]:
                raise TableMismatch("element of a different factor ring")
            out[i] = parts[ci].coeffs[k]
        return self.ring.element(out)


def product_decomposition(ring: BurnsideRing) -> ProductDecomposition:
    """Split B(G) along connected components and verify the marks agree.

    Each factor is the Burnside ring of the isotropy group at the
    component's least object, taken as a one-object groupoid. Basis classes
    are matched by conjugacy after transporting arrow sets through the
    isotropy group; the parent's mark table block must match the factor's
    mark table exactly, otherwise DecompositionMismatch is raised.
    """
    g = ring.groupoid
    factors = []
    base_objects = []
    matched = {}
    for ci, comp in enumerate(g.components()):
        base = comp[0]
        iso = g.isotropy(base)
        grp, arrow_at = iso.as_group()
        factor_gpd = from_group(grp)
        factor = BurnsideRing(factor_gpd)
        arrow_to_element = {arr: idx for idx, arr in enumerate(arrow_at)}
        for i, rep in enumerate(ring.reps):
            if g.component_index(rep.base) != ci:
                continue
            if rep.base != base:
                raise DecompositionMismatch(
                    "parent class not based at the component base", index=i)
            elements = sorted(arrow_to_element[a] for a in rep.arrows)
            cand = OneObjectSubgroupoid(factor_gpd, 0, elements, check=False)
            hits = [k for k, frep in enumerate(factor.reps)
                    if conjugated_isotropy_subgroups(cand, frep)[0]]
            if len(hits) != 1:
                raise DecompositionMismatch(
                    "parent class matches %d factor classes" % len(hits),
                    index=i)
            matched[i] = (ci, hits[0])
        factors.append(factor)
        base_objects.append(base)
    if sorted(matched) != list(range(ring.rank)):
        raise DecompositionMismatch("unmatched parent classes")
    per_factor = {}
    for i, (ci, k) in matched.items():
        per_factor.setdefault(ci, set()).add(k)
    for ci, factor in enumerate(factors):
        if per_factor.get(ci) != set(range(factor.rank)):
            raise DecompositionMismatch("basis match is not a bijection",
                                        factor=ci)
    parent_marks = ring.mark_table().matrix
    for ci, factor in enumerate(factors):
        fm = factor.mark_table().matrix
        for i, (c1, k1) in matched.items():
            if c1 != ci:
                continue
            for j, (c2, k2) in matched.items():
                if c2 != ci:
                    continue
                if parent_marks[i][j] != fm[k1][k2]:
                    raise DecompositionMismatch(
                        "mark tables disagree after matching",
                        row=i, column=j)
    index_maps = tuple(matched[i] for i in range(ring.rank))
    return ProductDecomposition(ring, tuple(factors), tuple(base_objects),
                                index_maps)


# -- generic difference completion -----------------------------------------

@dataclass(frozen=True)
class DifferencePair:
    """Formal difference plus - minus of two rig elements."""
    plus: object
    minus: object


class GrothendieckRing:
    """Difference completion of a commutative rig given by callables.

    `universe` is an iterable of rig elements used to search for the shift
    witness t in a + d + t = c + b + t when the rig is not known to be
    cancellative; without it, equality outside the cancellative case raises
    UndecidableEquality.
    """

    def __init__(self, add, mul, zero, cancellative=False, universe=None):
        self._add = add
        self._mul = mul
        self._zero = zero
        self.cancellative = cancellative
        self.universe = None if universe is None else tuple(universe)

    def pair(self, plus, minus=None) -> DifferencePair:
        return DifferencePair(plus, self._zero if minus is None else minus)

    def add(self, p: DifferencePair, q: DifferencePair) -> DifferencePair:
        return DifferencePair(self._add(p.plus, q.plus),
                              self._add(p.minus, q.minus))

    def neg(self, p: DifferencePair) -> DifferencePair:
        return DifferencePair(p.minus, p.plus)

    def sub(self, p: DifferencePair, q: DifferencePair) -> DifferencePair:
        return self.add(p, self.neg(q))

    def mul(self, p: DifferencePair, q: DifferencePair) -> DifferencePair:
        return DifferencePair(
            self._add(self._mul(p.plus, q.plus), self._mul(p.minus, q.minus)),
            self._add(self._mul(p.plus, q.minus), self._mul(p.minus, q.plus)))

    def eq(self, p: DifferencePair, q: DifferencePair) -> bool:
        lhs = self._add(p.plus, q.minus)
        rhs = self._add(q.plus, p.minus)
        if lhs == rhs:
            return True
        if self.cancellative:
            return False
        if self.universe is None:
            raise UndecidableEquality(
                "rig is not cancellative and no search universe was given")
        return any(self._add(lhs, t) == self._add(rhs, t)
                   for t in self.universe)


def burnside_difference_ring(ring: BurnsideRing) -> GrothendieckRing:
    """Difference completion of the effective cone of a Burnside ring.

    Cancellative because the table of marks has nonzero determinant, so
    classes of G-sets already embed in the integer vector model.
    """
    assert ring.mark_table().det() != 0
    return GrothendieckRing(lambda a, b: a + b, lambda a, b: a * b,
                            ring.zero(), cancellative=True)


def boolean_rig_demo():
    """The two-element rig with 1 + 1 = 1: a non-cancellative example.

    Its difference completion collapses: [1] - [0] equals [0] - [0] because
    adding the witness t = 1 equalizes both sides, even though 1 != 0 in
    the rig. Returns (ring, pair_one, pair_zero) for demonstration.
    """
    ring = GrothendieckRing(lambda a, b: a | b, lambda a, b: a & b, 0,
                            cancellative=False, universe=(0, 1))
    return ring, ring.pair(1), ring.pair(0)
