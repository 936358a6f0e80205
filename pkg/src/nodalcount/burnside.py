"""The Burnside ring of a finite group, with exact integer arithmetic.

A virtual G-set is a coefficient vector over the canonical conjugacy
classes of subgroups of G.  Fixed-point counts ("marks") are read off a
cached table of marks; equality of elements is coefficient equality, and
the classical criterion (equal marks at every subgroup) is a theorem the
test suite checks rather than the representation itself.  Multiplication
goes through mark space: multiply mark vectors pointwise and invert the
triangular table of marks by integer back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .permgroup import (
    PermGroup,
    SubgroupClass,
    class_index_of,
    class_labels,
    minimal_generating_set,
    subgroup_classes,
    subgroup_label,
)

__all__ = [
    "TableOfMarks",
    "table_of_marks",
    "BurnsideElement",
    "be_equal",
    "ConcreteGSet",
    "decompose",
    "inflate",
    "inflate_concrete",
    "product_gset",
    "disjoint_union_gset",
]


@dataclass(frozen=True)
class TableOfMarks:
    """marks[h][k] = number of K_k-fixed cosets in G/H_h, classes in canonical order."""

    ambient: PermGroup
    marks: tuple


@lru_cache(maxsize=None)
def table_of_marks(G: PermGroup) -> TableOfMarks:
    """Brute-force table of marks: count cosets gH with K g H = g H.

    A coset gH is K-fixed iff g^-1 K g <= H; checking the generators of K
    suffices.  The canonical class order (ascending subgroup order) makes
    the matrix lower-triangular with positive diagonal |N_G(H)| / |H|.
    """
    classes = subgroup_classes(G)
    rows = []
    for hcls in classes:
        H = hcls.representative
        reps = [coset[0] for coset in G.left_cosets(H)]
        row = []
        for kcls in classes:
            kgens = minimal_generating_set(kcls.representative)
            count = 0
            for r in reps:
                rinv = r.inverse()
                if all((rinv * k * r) in H for k in kgens):
                    count += 1
            row.append(count)
        rows.append(tuple(row))
    return TableOfMarks(G, tuple(rows))


def _coeffs_from_marks(G: PermGroup, mark_vec: Sequence[int]) -> tuple:
    """Invert the (lower-triangular) table of marks over the integers."""
    M = table_of_marks(G).marks
    n = len(mark_vec)
    coeffs = [0] * n
    for k in range(n - 1, -1, -1):
        residue = mark_vec[k] - sum(coeffs[h] * M[h][k] for h in range(k + 1, n))
        diag = M[k][k]
        if residue % diag:
            raise ArithmeticError(
                "mark vector is not integral against the table of marks"
            )
        coeffs[k] = residue // diag
    return tuple(coeffs)


@dataclass(frozen=True)
class BurnsideElement:
    """A virtual G-set: integer coefficient per [G/H_i], H_i a subgroup class."""

    ambient: PermGroup
    coeffs: tuple

    def __post_init__(self):
        expected = len(subgroup_classes(self.ambient))
        if len(self.coeffs) != expected:
            raise ValueError(
                f"coefficient vector has length {len(self.coeffs)}, expected {expected}"
            )

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, G: PermGroup) -> "BurnsideElement":
        return cls(G, (0,) * len(subgroup_classes(G)))

    @classmethod
    def from_class(cls, G: PermGroup, index: int, n: int = 1) -> "BurnsideElement":
        coeffs = [0] * len(subgroup_classes(G))
        coeffs[index] = n
        return cls(G, tuple(coeffs))

    @classmethod
    def from_subgroup(cls, G: PermGroup, H: PermGroup, n: int = 1) -> "BurnsideElement":
        """n * [G/H]."""
        return cls.from_class(G, class_index_of(G, H), n)

    @classmethod
    def point(cls, G: PermGroup) -> "BurnsideElement":
        """The one-point G-set [G/G]."""
        return cls.from_subgroup(G, G)

    # -- ring structure -----------------------------------------------

    def _check_ambient(self, other: "BurnsideElement") -> None:
        if self.ambient != other.ambient:
            raise ValueError("Burnside elements live over different ambient groups")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        self._check_ambient(other)
        return BurnsideElement(
            self.ambient, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.ambient, tuple(-a for a in self.coeffs))

    def __rmul__(self, n: int) -> "BurnsideElement":
        if not isinstance(n, int):
            return NotImplemented
        return BurnsideElement(self.ambient, tuple(n * a for a in self.coeffs))

    def __mul__(self, other):
        """Cartesian product: pointwise product of marks, pulled back to coefficients."""
        if isinstance(other, int):
            return self.__rmul__(other)
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        self._check_ambient(other)
        marks = tuple(
            a * b for a, b in zip(self.mark_vector(), other.mark_vector())
        )
        return BurnsideElement(self.ambient, _coeffs_from_marks(self.ambient, marks))

    # -- marks ----------------------------------------------------------

    def mark(self, k) -> int:
        """Fixed-point count at the subgroup class k (index or SubgroupClass)."""
        if isinstance(k, SubgroupClass):
            if subgroup_classes(self.ambient)[k.class_index] != k:
                raise ValueError("subgroup class belongs to a different group")
            k = k.class_index
        M = table_of_marks(self.ambient).marks
        return sum(c * M[h][k] for h, c in enumerate(self.coeffs))

    def mark_vector(self) -> tuple:
        M = table_of_marks(self.ambient).marks
        n = len(self.coeffs)
        return tuple(
            sum(self.coeffs[h] * M[h][k] for h in range(n)) for k in range(n)
        )

    def cardinality(self) -> int:
        """Mark at the trivial subgroup, i.e. the virtual number of elements."""
        return self.mark(0)

    def is_genuine(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # -- presentation ---------------------------------------------------

    def render(self) -> str:
        labels = class_labels(self.ambient)
        terms = []
        for idx, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = labels[idx]
            body = "[G/G]" if name == "G" else f"[G/{name}]"
            terms.append((c, body))
        if not terms:
            return "0"
        parts = []
        for i, (c, body) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                prefix = "-" if c < 0 else ""
                parts.append(f"{prefix}{mag}*{body}")
            else:
                parts.append(f"{sign} {mag}*{body}")
        return " ".join(parts)

    def to_json(self) -> dict:
        labels = class_labels(self.ambient)
        return {
            "ambient": subgroup_label(self.ambient),
            "coeffs": [
                {"class": labels[i], "n": c}
                for i, c in enumerate(self.coeffs)
                if c != 0
            ],
        }

    def __str__(self) -> str:
        return self.render()


def be_equal(x: BurnsideElement, y: BurnsideElement):
    """Equality via the fixed-point criterion, with witnesses on failure.

    Returns (equal, witnesses) where witnesses lists (class_index, mark_x,
    mark_y) for every subgroup class at which the marks disagree.
    """
    if x.ambient != y.ambient:
        raise ValueError("Burnside elements live over different ambient groups")
    mx = x.mark_vector()
    my = y.mark_vector()
    witnesses = tuple(
        (k, a, b) for k, (a, b) in enumerate(zip(mx, my)) if a != b
    )
    return (not witnesses), witnesses


@dataclass(eq=False)
class ConcreteGSet:
    """A finite set with an explicit G-action given as a callable (g, x) -> x."""

    ambient: PermGroup
    points: tuple
    act: Callable

    def validate(self) -> None:
        """Check the action axioms exhaustively (generator compatibility suffices)."""
        G = self.ambient
        pointset = set(self.points)
        if len(pointset) != len(self.points):
            raise ValueError("duplicate points in a concrete G-set")
        identity = G.identity_element()
        for p in self.points:
            if self.act(identity, p) != p:
                raise ValueError(f"identity axiom fails at {p!r}")
        gens = minimal_generating_set(G) or (identity,)
        for g in gens:
            for p in self.points:
                if self.act(g, p) not in pointset:
                    raise ValueError(f"action leaves the point set at {g} . {p!r}")
            for h in G.elements:
                gh = g * h
                for p in self.points:
                    if self.act(gh, p) != self.act(g, self.act(h, p)):
                        raise ValueError(
                            f"compatibility fails at ({g}, {h}, {p!r})"
                        )

    def orbits(self):
        remaining = list(self.points)
        out = []
        while remaining:
            x = remaining[0]
            orbit = sorted(
                set(self.act(g, x) for g in self.ambient.elements),
                key=self.points.index,
            )
            out.append(tuple(orbit))
            remaining = [p for p in remaining if p not in set(orbit)]
        return out


def decompose(S: ConcreteGSet) -> BurnsideElement:
    """Write a genuine G-set as a sum of orbit classes sum n_i [G/H_i]."""
    S.validate()
    G = S.ambient
    coeffs = [0] * len(subgroup_classes(G))
    for orbit in S.orbits():
        x = orbit[0]
        stab_elems = [g for g in G.elements if S.act(g, x) == x]
        stab = PermGroup(G.degree, stab_elems)
        if len(orbit) * stab.order != G.order:
            raise ValueError("orbit-stabilizer identity fails; invalid action")
        coeffs[class_index_of(G, stab)] += 1
    return BurnsideElement(G, tuple(coeffs))


def inflate(G: PermGroup, H: PermGroup, x: BurnsideElement) -> BurnsideElement:
    """Inflation along H <= G: the coefficient of [H/K] moves to [G/K].

    Linear in x, so virtual elements inflate term by term.
    """
    if x.ambient != H:
        raise ValueError("element to inflate must live over the given subgroup")
    if not H.is_subgroup_of(G):
        raise ValueError("inflation requires H to be a subgroup of G")
    coeffs = [0] * len(subgroup_classes(G))
    for hcls in subgroup_classes(H):
        n = x.coeffs[hcls.class_index]
        if n == 0:
            continue
        coeffs[class_index_of(G, hcls.representative)] += n
    return BurnsideElement(G, tuple(coeffs))


def inflate_concrete(G: PermGroup, H: PermGroup, S: ConcreteGSet) -> ConcreteGSet:
    """The literal quotient (G x X)/~ with (gh, x) ~ (g, h.x), as a concrete G-set.

    Points are (coset representative index, x) pairs with the equivalence
    applied eagerly; used as the independent oracle for ``inflate``.
    """
    if S.ambient != H:
        raise ValueError("concrete inflation expects an H-set")
    if not H.is_subgroup_of(G):
        raise ValueError("concrete inflation requires H <= G")
    cosets = G.left_cosets(H)
    reps = [coset[0] for coset in cosets]
    split = {}
    for g in G.elements:
        for i, r in enumerate(reps):
            h = r.inverse() * g
            if h in H:
                split[g] = (i, h)
                break
    points = tuple((i, x) for i in range(len(reps)) for x in S.points)
    action = {}
    for g in G.elements:
        for (i, x) in points:
            j, h = split[g * reps[i]]
            action[(g, (i, x))] = (j, S.act(h, x))
    return ConcreteGSet(G, points, lambda g, p: action[(g, p)])


def product_gset(S: ConcreteGSet, T: ConcreteGSet) -> ConcreteGSet:
    """Cartesian product with the diagonal action."""
    if S.ambient != T.ambient:
        raise ValueError("product needs a common ambient group")
    points = tuple((x, y) for x in S.points for y in T.points)
    return ConcreteGSet(
        S.ambient, points, lambda g, p: (S.act(g, p[0]), T.act(g, p[1]))
    )


def disjoint_union_gset(S: ConcreteGSet, T: ConcreteGSet) -> ConcreteGSet:
    """Disjoint union, with points tagged by side."""
    if S.ambient != T.ambient:
        raise ValueError("disjoint union needs a common ambient group")
    points = tuple((0, x) for x in S.points) + tuple((1, y) for y in T.points)

    def act(g, p):
        side, x = p
        return (side, S.act(g, x) if side == 0 else T.act(g, x))

    return ConcreteGSet(S.ambient, points, act)
