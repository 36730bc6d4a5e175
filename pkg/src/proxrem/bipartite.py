"""Structure analysis of strong bipartite tournaments.

A bipartite tournament is *bad* when some vertex's out-neighborhood nests
properly inside another's (checked within each part; across parts a proper
nesting would need an empty out-neighborhood, impossible in a strong
instance), otherwise *good*.  Good strong instances have eccentricity at
most 4 everywhere, which pins each vertex's distance profile down to a
closed form in (out-degree, out-neighborhood class size); that closed form
is what decides proximity == remoteness here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .digraph import (
    Digraph,
    NotStrongError,
    PartiteStructure,
    bipartite_tournament_structure,
    find_unreachable_pair,
)
from .metrics import sigma_ecc_vectors


@dataclass(frozen=True)
class NeighborhoodClass:
    """Vertices of one part sharing an identical out-neighborhood."""

    representative: int
    members: Tuple[int, ...]

    @property
    def mu(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class BipartiteReport:
    """Equality-criterion verdict for one strong bipartite tournament."""

    structure: PartiteStructure
    good: bool
    bad_witness: Optional[Tuple[int, int]]
    per_vertex: Tuple[Tuple[int, int, int, int], ...]  # (vertex, out_deg, mu, sigma)
    constant_c: Optional[int]
    pi_equals_rho: bool

    def as_json_dict(self) -> dict:
        return {
            "parts": [list(p) for p in self.structure.parts],
            "good": self.good,
            "bad_witness": list(self.bad_witness) if self.bad_witness else None,
            "per_vertex": [
                {"vertex": v, "out_degree": d, "mu": mu, "sigma": s}
                for v, d, mu, s in self.per_vertex
            ],
            "constant_c": self.constant_c,
            "pi_equals_rho": self.pi_equals_rho,
        }


def require_bipartite_tournament(D: Digraph) -> PartiteStructure:
    structure = bipartite_tournament_structure(D)
    if structure is None:
        raise ValueError("input is not an orientation of a complete bipartite graph")
    return structure


def classify_good_bad(
    D: Digraph, structure: Optional[PartiteStructure] = None
) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """(good, witness): witness is the smallest pair (u, v) with
    the out-neighborhood of u properly contained in that of v."""
    if structure is None:
        structure = require_bipartite_tournament(D)
    rows = D.rows
    witness = None
    for part in structure.parts:
        for u in part:
            for v in part:
                if u == v:
                    continue
                ru, rv = rows[u], rows[v]
                if ru != rv and (ru & rv) == ru:
                    if witness is None or (u, v) < witness:
                        witness = (u, v)
    return witness is None, witness


def neighborhood_classes(
    D: Digraph, structure: Optional[PartiteStructure] = None
) -> List[NeighborhoodClass]:
    """Equivalence classes of equal out-neighborhoods within each part."""
    if structure is None:
        structure = require_bipartite_tournament(D)
    classes: List[NeighborhoodClass] = []
    for part in structure.parts:
        groups: Dict[int, List[int]] = {}
        for v in part:
            groups.setdefault(D.rows[v], []).append(v)
        for members in groups.values():
            members.sort()
            classes.append(
                NeighborhoodClass(representative=members[0], members=tuple(members))
            )
    classes.sort(key=lambda c: c.representative)
    return classes


def mu_values(
    D: Digraph, structure: Optional[PartiteStructure] = None
) -> Dict[int, int]:
    """Class size (mu) per vertex."""
    mus: Dict[int, int] = {}
    for cls in neighborhood_classes(D, structure):
        for v in cls.members:
            mus[v] = cls.mu
    return mus


def sigma_by_formula(
    D: Digraph, v: int, structure: Optional[PartiteStructure] = None
) -> int:
    """Closed-form distance sum for a vertex of a good strong bipartite
    tournament: 2*(mu(v) - d+(v)) + 2*|own part| + 3*|other part| - 4.

    The form relies on every vertex having eccentricity at most 4, which
    holds exactly for good strong instances; both preconditions are
    enforced.
    """
    if structure is None:
        structure = require_bipartite_tournament(D)
    pair = find_unreachable_pair(D)
    if pair is not None:
        raise NotStrongError(pair)
    good, witness = classify_good_bad(D, structure)
    if not good:
        raise ValueError(f"formula needs a good instance; bad witness {witness}")
    part_a, part_b = structure.parts
    if v in part_a:
        own, other = len(part_a), len(part_b)
    elif v in part_b:
        own, other = len(part_b), len(part_a)
    else:
        raise ValueError(f"vertex {v} outside 0..{D.n - 1}")
    mu = mu_values(D, structure)[v]
    d_out = D.rows[v].bit_count()
    return 2 * (mu - d_out) + 2 * own + 3 * other - 4


def equality_constant(
    D: Digraph, structure: Optional[PartiteStructure] = None
) -> Optional[int]:
    """The shared constant c with 2*(mu - d+) + |other part| == c for every
    vertex, or None when no such constant exists."""
    if structure is None:
        structure = require_bipartite_tournament(D)
    mus = mu_values(D, structure)
    part_a, part_b = structure.parts
    sizes = {**{v: len(part_b) for v in part_a}, **{v: len(part_a) for v in part_b}}
    values = {2 * (mus[v] - D.rows[v].bit_count()) + sizes[v] for v in range(D.n)}
    if len(values) == 1:
        return values.pop()
    return None


def check_equality_criterion(D: Digraph) -> BipartiteReport:
    """Full verdict: good/bad, per-vertex table, the constant, and whether
    the exact metrics agree that proximity equals remoteness."""
    structure = require_bipartite_tournament(D)
    pair = find_unreachable_pair(D)
    if pair is not None:
        raise NotStrongError(pair)
    good, witness = classify_good_bad(D, structure)
    mus = mu_values(D, structure)
    sigmas, _ = sigma_ecc_vectors(D)
    per_vertex = tuple(
        (v, D.rows[v].bit_count(), mus[v], sigmas[v]) for v in range(D.n)
    )
    constant = equality_constant(D, structure) if good else None
    return BipartiteReport(
        structure=structure,
        good=good,
        bad_witness=witness,
        per_vertex=per_vertex,
        constant_c=constant,
        pi_equals_rho=min(sigmas) == max(sigmas),
    )


def check_cor_reg(D: Digraph) -> bool:
    """Degree test for constant-class instances: every vertex must beat
    exactly half of the opposite part.

    Preconditions: good, strong, and one shared class size over all
    vertices of both parts; raises ValueError otherwise.
    """
    structure = require_bipartite_tournament(D)
    pair = find_unreachable_pair(D)
    if pair is not None:
        raise NotStrongError(pair)
    good, witness = classify_good_bad(D, structure)
    if not good:
        raise ValueError(f"degree test needs a good instance; bad witness {witness}")
    mus = mu_values(D, structure)
    if len(set(mus.values())) != 1:
        raise ValueError("degree test needs one class size shared by every vertex")
    part_a, part_b = structure.parts
    return all(
        2 * D.rows[v].bit_count() == len(part_b) for v in part_a
    ) and all(2 * D.rows[u].bit_count() == len(part_a) for u in part_b)
