"""Weighted counting of nodal orbits in a pencil through four points.

A 4-point G-set determines three ways to pair the points into two blocks;
each pairing is the combinatorial shadow of a degenerate member of the
pencil (a pair of lines), and its two blocks are the branches.  For every
orbit of pairings we form a weight in the Burnside ring (inflate the
virtual branch set [X] - {*} from the stabilizer), sum the weights, and
compare against [Sigma] - {*} mark by mark.  The comparison is reported,
not assumed: the verifier prints the full fixed-point table either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .burnside import (
    BurnsideElement,
    ConcreteGSet,
    be_equal,
    decompose,
    inflate,
)
from .permgroup import (
    PermGroup,
    Permutation,
    class_labels,
    minimal_generating_set,
    orbit_and_stabilizer,
    subgroup_classes,
    subgroup_label,
)

__all__ = [
    "Pairing",
    "ALL_PAIRINGS",
    "SigmaConfig",
    "enumerate_sigma_configs",
    "sigma_from_classes",
    "pairing_action",
    "NodalOrbitReport",
    "nodal_orbit_reports",
    "VerificationReport",
    "verify",
    "verify_all",
]


@dataclass(frozen=True, order=True)
class Pairing:
    """A partition of {0,1,2,3} into two unordered blocks of two."""

    blocks: tuple

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int) -> "Pairing":
        if sorted((a, b, c, d)) != [0, 1, 2, 3]:
            raise ValueError("a pairing must partition {0,1,2,3}")
        first = tuple(sorted((a, b)))
        second = tuple(sorted((c, d)))
        return cls(tuple(sorted((first, second))))

    def apply(self, perm: Permutation) -> "Pairing":
        (a, b), (c, d) = self.blocks
        return Pairing.of(perm(a), perm(b), perm(c), perm(d))

    def label(self) -> str:
        """1-based display such as "12|34"."""
        (a, b), (c, d) = self.blocks
        return f"{a + 1}{b + 1}|{c + 1}{d + 1}"

    def __repr__(self) -> str:
        return f"Pairing({self.label()})"


ALL_PAIRINGS = (
    Pairing.of(0, 1, 2, 3),
    Pairing.of(0, 2, 1, 3),
    Pairing.of(0, 3, 1, 2),
)


class SigmaConfig:
    """A 4-point G-set: a homomorphism G -> S4 plus its orbit decomposition."""

    __slots__ = ("ambient", "point_action", "decomposition", "orbit_classes")

    def __init__(
        self,
        ambient: PermGroup,
        point_action: Mapping[Permutation, Permutation],
        decomposition: BurnsideElement,
        orbit_classes: tuple,
    ) -> None:
        self.ambient = ambient
        self.point_action = dict(point_action)
        self.decomposition = decomposition
        self.orbit_classes = orbit_classes

    @classmethod
    def from_action(
        cls, G: PermGroup, point_action: Mapping[Permutation, Permutation]
    ) -> "SigmaConfig":
        """Build from an explicit homomorphism G -> S4, validating it."""
        if set(point_action) != set(G.elements):
            raise ValueError("point action must be defined on every group element")
        for perm in point_action.values():
            if perm.degree != 4:
                raise ValueError("point action must land in S4")
        for g in G.elements:
            for h in G.elements:
                if point_action[g * h] != point_action[g] * point_action[h]:
                    raise ValueError(
                        f"point action is not a homomorphism at ({g}, {h})"
                    )
        concrete = ConcreteGSet(
            G, (0, 1, 2, 3), lambda g, i: point_action[g](i)
        )
        deco = decompose(concrete)
        orbit_classes = []
        for idx, n in enumerate(deco.coeffs):
            orbit_classes.extend([idx] * n)
        return cls(G, dict(point_action), deco, tuple(sorted(orbit_classes)))

    def sigma_string(self) -> str:
        """Display like "2*+[G/(123)]"; "k*" counts fixed points, "[G]" is a free orbit."""
        G = self.ambient
        classes = subgroup_classes(G)
        full_index = len(classes) - 1
        fixed = self.orbit_classes.count(full_index)
        counts: dict = {}
        for idx in self.orbit_classes:
            if idx != full_index:
                counts[idx] = counts.get(idx, 0) + 1
        terms = []
        if fixed:
            terms.append(f"{fixed}*")
        for idx in sorted(counts):
            rep = classes[idx].representative
            if rep.order == 1:
                body = "[G]"
            else:
                gens = ",".join(
                    g.cycle_string() for g in minimal_generating_set(rep)
                )
                body = f"[G/{gens}]"
            mult = counts[idx]
            terms.append(body if mult == 1 else f"{mult}{body}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"SigmaConfig({subgroup_label(self.ambient)}, {self.sigma_string()})"


def sigma_from_classes(G: PermGroup, class_multiset: Sequence[int]) -> SigmaConfig:
    """Realize an abstract orbit-type multiset as a concretely labeled action.

    Points 0..3 are assigned orbit by orbit (classes in ascending index
    order); each orbit carries the left action on the cosets of the class
    representative, cosets in canonical order.  Labeling invariance of
    the verifier makes this one choice as good as any.
    """
    classes = subgroup_classes(G)
    multiset = tuple(sorted(class_multiset))
    sizes = [G.order // classes[idx].representative.order for idx in multiset]
    if sum(sizes) != 4:
        raise ValueError(
            f"orbit sizes {sizes} do not add up to a 4-point configuration"
        )
    images = {g: [] for g in G.elements}
    offset = 0
    for idx in multiset:
        H = classes[idx].representative
        cosets = G.left_cosets(H)
        where = {}
        for j, coset in enumerate(cosets):
            for elem in coset:
                where[elem] = j
        for g in G.elements:
            for j, coset in enumerate(cosets):
                images[g].append(offset + where[g * coset[0]])
        offset += len(cosets)
    point_action = {g: Permutation(images[g]) for g in G.elements}
    return SigmaConfig.from_action(G, point_action)


def enumerate_sigma_configs(G: PermGroup) -> list:
    """All 4-point G-sets up to isomorphism, each realized with one labeling.

    Configurations are the multisets of subgroup classes whose coset
    spaces have sizes summing to 4; the list is sorted by the coefficient
    vector of the decomposition (ascending lexicographic), which is
    deterministic and presentation independent.
    """
    classes = subgroup_classes(G)
    usable = [
        (cls.class_index, G.order // cls.representative.order)
        for cls in classes
        if G.order // cls.representative.order <= 4
    ]

    multisets = []

    def extend(start: int, remaining: int, chosen: tuple) -> None:
        if remaining == 0:
            multisets.append(chosen)
            return
        for pos in range(start, len(usable)):
            idx, size = usable[pos]
            if size <= remaining:
                extend(pos, remaining - size, chosen + (idx,))

    extend(0, 4, ())

    def coeff_vector(multiset: tuple) -> tuple:
        vec = [0] * len(classes)
        for idx in multiset:
            vec[idx] += 1
        return tuple(vec)

    multisets.sort(key=coeff_vector)
    return [sigma_from_classes(G, m) for m in multisets]


def pairing_action(sigma: SigmaConfig) -> Callable:
    """The induced left action of G on the three pairings."""
    table = {
        (g, pairing): pairing.apply(perm)
        for g, perm in sigma.point_action.items()
        for pairing in ALL_PAIRINGS
    }
    return lambda g, pairing: table[(g, pairing)]


@dataclass(frozen=True)
class NodalOrbitReport:
    """One orbit of pairings with its stabilizer, branch set and weight."""

    representative: Pairing
    orbit: tuple
    stabilizer: PermGroup
    branch_set: BurnsideElement
    weight: BurnsideElement

    def to_json(self) -> dict:
        return {
            "representative": self.representative.label(),
            "orbit": [p.label() for p in sorted(self.orbit)],
            "stabilizer": subgroup_label(self.stabilizer),
            "branch_set": self.branch_set.to_json(),
            "weight": self.weight.to_json(),
        }


def nodal_orbit_reports(sigma: SigmaConfig) -> list:
    """Orbit-by-orbit weights: inflate([branches] - {*}) from each stabilizer.

    The representative is the lexicographically least pairing of its
    orbit; the branch set is the two blocks of the representative as a
    set acted on by the stabilizer.
    """
    G = sigma.ambient
    act = pairing_action(sigma)
    reports = []
    done: set = set()
    for start in ALL_PAIRINGS:
        if start in done:
            continue
        orbit, stab = orbit_and_stabilizer(G, act, start)
        done.update(orbit)
        rep = min(orbit)
        if rep != start:
            orbit, stab = orbit_and_stabilizer(G, act, rep)

        def act_on_block(h: Permutation, block: tuple) -> tuple:
            perm = sigma.point_action[h]
            return tuple(sorted(perm(i) for i in block))

        branches = ConcreteGSet(stab, rep.blocks, act_on_block)
        branch_be = decompose(branches)
        weight = inflate(G, stab, branch_be - BurnsideElement.point(stab))
        reports.append(
            NodalOrbitReport(rep, tuple(sorted(orbit)), stab, branch_be, weight)
        )
    return reports


@dataclass(frozen=True)
class VerificationReport:
    """Side-by-side fixed-point comparison of the weighted orbit sum and [Sigma] - {*}."""

    group: PermGroup
    sigma: SigmaConfig
    orbit_reports: tuple
    lhs: BurnsideElement
    rhs: BurnsideElement
    equal: bool
    witnesses: tuple
    table: tuple  # rows (class_index, lhs mark, rhs mark)

    def render_text(self, group_name: str | None = None) -> str:
        labels = class_labels(self.group)
        name = group_name or subgroup_label(self.group)
        lines = [
            f"group: {name}",
            f"sigma: {self.sigma.sigma_string()}  ->  {self.sigma.decomposition.render()}",
            "orbits:",
        ]
        for rep in self.orbit_reports:
            orbit = ", ".join(p.label() for p in rep.orbit)
            lines.append(
                f"  {rep.representative.label()}: orbit {{{orbit}}}, "
                f"stab {subgroup_label(rep.stabilizer, ambient=self.group)}, "
                f"weight {rep.weight.render()}"
            )
        lines.append(f"lhs = {self.lhs.render()}")
        lines.append(f"rhs = {self.rhs.render()}")
        lines.append(f"equal: {'true' if self.equal else 'false'}")
        width = max(len(lbl) for lbl in labels)
        lines.append(f"{'K <= G'.ljust(width)} | LHS^K | RHS^K")
        for idx, lm, rm in self.table:
            lines.append(f"{labels[idx].ljust(width)} | {lm:5d} | {rm:5d}")
        return "\n".join(lines)

    def to_json(self, group_name: str | None = None) -> dict:
        labels = class_labels(self.group)
        return {
            "group": group_name or subgroup_label(self.group),
            "sigma": self.sigma.decomposition.to_json(),
            "sigma_spec": self.sigma.sigma_string(),
            "orbits": [rep.to_json() for rep in self.orbit_reports],
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
            "table": [
                {"class": labels[idx], "lhs": lm, "rhs": rm}
                for idx, lm, rm in self.table
            ],
        }


def verify(sigma: SigmaConfig) -> VerificationReport:
    """Compare the summed orbit weights against [Sigma] - {*}, mark by mark."""
    G = sigma.ambient
    reports = nodal_orbit_reports(sigma)
    lhs = BurnsideElement.zero(G)
    for rep in reports:
        lhs = lhs + rep.weight
    rhs = sigma.decomposition - BurnsideElement.point(G)
    equal, witnesses = be_equal(lhs, rhs)
    lhs_marks = lhs.mark_vector()
    rhs_marks = rhs.mark_vector()
    table = tuple(
        (idx, lhs_marks[idx], rhs_marks[idx]) for idx in range(len(lhs_marks))
    )
    return VerificationReport(
        G, sigma, tuple(reports), lhs, rhs, equal, witnesses, table
    )


def verify_all(G: PermGroup) -> list:
    """One VerificationReport per configuration, in canonical order."""
    return [verify(sigma) for sigma in enumerate_sigma_configs(G)]
