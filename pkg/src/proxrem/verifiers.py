"""Per-instance verdicts for the bound-and-equality claims.

Each verifier checks an exact bound on one instance and compares the
*observed* equality (computed from the exact metrics) against the
*predicted* equality (computed from structure alone: degrees, arc counts,
eccentricity certificates, isomorphism).  The two routes never share a
computation, so a faulty characterization shows up as an inconsistent
report rather than a silently agreeing one.

Claim identifiers (the CLI vocabulary):

  thm-2.1-pi    1 <= proximity <= n/2; lower equality iff some vertex has
                out-degree n-1, upper iff the digraph is a dicycle.
  thm-2.1-rho   1 <= remoteness <= n/2; lower iff complete digraph, upper
                iff some vertex has eccentricity n-1.
  thm-2.2       remoteness - proximity <= n/2 - 1; equality iff an
                eccentricity-(n-1) spanning-path ordering exists whose last
                two vertices include one of out-degree n-1.
  prop-3.1      every maximum-out-degree vertex of a tournament reaches
                everything within two steps.
  thm-3.2-pi    tournament proximity window n/(n-1) .. 3/2 (odd order) or
                3/2 - 1/(2(n-1)) (even); lower iff max out-degree n-2,
                upper iff regular / almost regular.
  thm-3.2-rho   tournament remoteness window; lower iff regular / almost
                regular, upper (n/2) iff isomorphic to the extremal
                tournament.
  thm-3.3       tournament proximity == remoteness iff regular.
  lem-3.4       bad strong bipartite tournament => proximity != remoteness.
  lem-3.5       good strong bipartite tournament => every vertex reaches
                everything within four steps.
  lem-3.6       good strong bipartite tournament => the closed-form vertex
                distance sum matches BFS.
  cor-3.7       strong bipartite tournament: proximity == remoteness iff
                good and the shared class/degree constant exists.
  cor-3.8       good, constant class size: proximity == remoteness iff
                every vertex beats exactly half of the opposite part.
  sec5-facts    radius/diameter/remoteness separations on the hub and
                dicycle families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import bipartite as bp
from .canonical import CANONICAL_CEILING, canonical_form
from .constructions import dicycle as make_dicycle
from .constructions import extremal_tournament, hub_digraph
from .digraph import (
    Digraph,
    NotStrongError,
    degree_summary,
    find_unreachable_pair,
    is_regular,
    is_tournament,
)
from .metrics import distance_layers, is_p_king, sigma_ecc_vectors


@dataclass
class VerificationReport:
    """Outcome of one claim on one instance.

    ``consistent`` always equals (equality_observed == equality_predicted);
    for claims with two equality cases both cases must match individually,
    recorded in ``details``.  A verifier failure is any report with
    ``bound_holds`` false or ``consistent`` false.
    """

    theorem: str
    bound_holds: bool
    equality_observed: bool
    equality_predicted: bool
    consistent: bool
    witnesses: Dict[str, object] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.bound_holds and self.consistent

    def as_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "bound_holds": self.bound_holds,
            "equality_observed": self.equality_observed,
            "equality_predicted": self.equality_predicted,
            "consistent": self.consistent,
            "witnesses": self.witnesses,
            "details": self.details,
        }


def _require_strong(D: Digraph) -> None:
    pair = find_unreachable_pair(D)
    if pair is not None:
        raise NotStrongError(pair)


# ---------------------------------------------------------------------------
# Structural predicates (the "predicted" side)
# ---------------------------------------------------------------------------

def has_full_out_degree_vertex(D: Digraph) -> bool:
    return any(r.bit_count() == D.n - 1 for r in D.rows)


def is_complete_digraph(D: Digraph) -> bool:
    return D.m == D.n * (D.n - 1)


def is_dicycle(D: Digraph) -> bool:
    """Structural: n arcs, every semi-degree 1, strong."""
    if D.m != D.n:
        return False
    if any(r.bit_count() != 1 for r in D.rows):
        return False
    if any(r.bit_count() != 1 for r in D.reverse_rows):
        return False
    return find_unreachable_pair(D) is None


def is_regular_tournament(D: Digraph) -> bool:
    n = D.n
    return n % 2 == 1 and all(r.bit_count() == (n - 1) // 2 for r in D.rows)


def is_almost_regular_tournament(D: Digraph) -> bool:
    n = D.n
    if n % 2:
        return False
    want = {n // 2, (n - 2) // 2}
    return all(r.bit_count() in want for r in D.rows)


def spanning_path_ordering(D: Digraph) -> Optional[List[int]]:
    """Vertex ordering v_0..v_{n-1} with d(v_0, v_i) = i, if one exists.

    Such an ordering exists exactly when some vertex has eccentricity n-1;
    its BFS layers are then forced to be singletons.  The smallest starting
    vertex is chosen.
    """
    n = D.n
    for u in range(n):
        layers = distance_layers(D.rows, n, u)
        if len(layers) == n and sum(l.bit_count() for l in layers) == n:
            return [l.bit_length() - 1 for l in layers]
    return None


def _matches_extremal_pattern(D: Digraph, order: List[int]) -> bool:
    n = D.n
    for i, v in enumerate(order):
        want = 0
        if i + 1 < n:
            want |= 1 << order[i + 1]
        for j in range(i - 1):
            want |= 1 << order[j]
        if D.rows[v] != want:
            return False
    return True


def is_iso_to_extremal_tournament(D: Digraph) -> bool:
    """Isomorphism to the remoteness-extremal tournament of the same order.

    Decided by canonical-form comparison up to the all-permutations ceiling;
    beyond it, by reconstructing the forced spanning-path ordering and
    matching the arc pattern exactly (an explicit isomorphism certificate).
    """
    if not is_tournament(D):
        return False
    n = D.n
    if n < 3:
        return False
    scores = sorted(r.bit_count() for r in D.rows)
    want = sorted([1, 1] + list(range(2, n - 1)) + [n - 2])
    if scores != want:
        return False
    if n <= CANONICAL_CEILING:
        return canonical_form(D) == canonical_form(extremal_tournament(n))
    order = spanning_path_ordering(D)
    return order is not None and _matches_extremal_pattern(D, order)


def thm22_degree_certificate(D: Digraph) -> Optional[Dict[str, object]]:
    """A spanning-path ordering whose last two vertices include one of
    out-degree n-1, or None.  All eccentricity-(n-1) candidates are tried."""
    n = D.n
    for u in range(n):
        layers = distance_layers(D.rows, n, u)
        if len(layers) != n or sum(l.bit_count() for l in layers) != n:
            continue
        order = [l.bit_length() - 1 for l in layers]
        for v in (order[-2], order[-1]):
            if D.rows[v].bit_count() == n - 1:
                return {"ordering": order, "dominant_vertex": v}
    return None


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def verify_thm_2_1(D: Digraph) -> Tuple[VerificationReport, VerificationReport]:
    _require_strong(D)
    n = D.n
    if n < 3:
        raise ValueError(f"claim needs n >= 3, got {n}")
    sigmas, eccs = sigma_ecc_vectors(D)
    smin, smax = min(sigmas), max(sigmas)
    den = n - 1

    pi_lower_obs = smin == den
    pi_lower_pred = has_full_out_degree_vertex(D)
    pi_upper_obs = 2 * smin == n * den
    pi_upper_pred = is_dicycle(D)
    rep_pi = VerificationReport(
        theorem="thm-2.1-pi",
        bound_holds=smin >= den and 2 * smin <= n * den,
        equality_observed=pi_lower_obs or pi_upper_obs,
        equality_predicted=pi_lower_pred or pi_upper_pred,
        consistent=(pi_lower_obs == pi_lower_pred) and (pi_upper_obs == pi_upper_pred),
        witnesses={"prox_witness": sigmas.index(smin)},
        details={
            "proximity": [smin, den],
            "lower": {"observed": pi_lower_obs, "predicted": pi_lower_pred},
            "upper": {"observed": pi_upper_obs, "predicted": pi_upper_pred},
        },
    )

    rho_lower_obs = smax == den
    rho_lower_pred = is_complete_digraph(D)
    rho_upper_obs = 2 * smax == n * den
    rho_upper_pred = max(eccs) == n - 1
    witnesses: Dict[str, object] = {"rem_witness": sigmas.index(smax)}
    if rho_upper_pred:
        witnesses["ordering"] = spanning_path_ordering(D)
    rep_rho = VerificationReport(
        theorem="thm-2.1-rho",
        bound_holds=smax >= den and 2 * smax <= n * den,
        equality_observed=rho_lower_obs or rho_upper_obs,
        equality_predicted=rho_lower_pred or rho_upper_pred,
        consistent=(rho_lower_obs == rho_lower_pred)
        and (rho_upper_obs == rho_upper_pred),
        witnesses=witnesses,
        details={
            "remoteness": [smax, den],
            "lower": {"observed": rho_lower_obs, "predicted": rho_lower_pred},
            "upper": {"observed": rho_upper_obs, "predicted": rho_upper_pred},
        },
    )
    return rep_pi, rep_rho


def verify_thm_2_2(D: Digraph) -> VerificationReport:
    _require_strong(D)
    n = D.n
    if n < 2:
        raise ValueError("claim needs n >= 2")
    sigmas, _ = sigma_ecc_vectors(D)
    spread = max(sigmas) - min(sigmas)
    # rho - pi <= n/2 - 1 at denominator n-1: 2*spread <= (n-1)(n-2)
    observed = 2 * spread == (n - 1) * (n - 2)
    cert = thm22_degree_certificate(D)
    predicted = cert is not None
    return VerificationReport(
        theorem="thm-2.2",
        bound_holds=2 * spread <= (n - 1) * (n - 2),
        equality_observed=observed,
        equality_predicted=predicted,
        consistent=observed == predicted,
        witnesses=cert or {},
        details={"spread": [spread, n - 1]},
    )


def verify_prop_3_1(D: Digraph) -> VerificationReport:
    if not is_tournament(D):
        raise ValueError("claim applies to tournaments")
    max_out = max(r.bit_count() for r in D.rows)
    leaders = [v for v in range(D.n) if D.rows[v].bit_count() == max_out]
    failing = [v for v in leaders if not is_p_king(D, v, 2)]
    two_king_exists = not failing and bool(leaders)
    return VerificationReport(
        theorem="prop-3.1",
        bound_holds=not failing and two_king_exists,
        equality_observed=True,
        equality_predicted=True,
        consistent=True,
        witnesses={"max_out_degree_vertices": leaders, "violations": failing},
        details={"max_out_degree": max_out},
    )


def verify_thm_3_2(D: Digraph) -> Tuple[VerificationReport, VerificationReport]:
    if not is_tournament(D):
        raise ValueError("claim applies to tournaments")
    _require_strong(D)
    n = D.n
    if n < 3:
        raise ValueError(f"claim needs n >= 3, got {n}")
    sigmas, _ = sigma_ecc_vectors(D)
    smin, smax = min(sigmas), max(sigmas)
    odd = n % 2 == 1
    reg_or_almost = is_regular_tournament(D) or is_almost_regular_tournament(D)

    # Proximity window: sigma_min between n and 3(n-1)/2 (odd) or (3n-4)/2.
    pi_upper_cap = 3 * (n - 1) if odd else 3 * n - 4
    pi_lower_obs = smin == n
    pi_lower_pred = degree_summary(D).max_out == n - 2
    pi_upper_obs = 2 * smin == pi_upper_cap
    rep_pi = VerificationReport(
        theorem="thm-3.2-pi",
        bound_holds=smin >= n and 2 * smin <= pi_upper_cap,
        equality_observed=pi_lower_obs or pi_upper_obs,
        equality_predicted=pi_lower_pred or reg_or_almost,
        consistent=(pi_lower_obs == pi_lower_pred)
        and (pi_upper_obs == reg_or_almost),
        witnesses={"prox_witness": sigmas.index(smin)},
        details={
            "proximity": [smin, n - 1],
            "lower": {"observed": pi_lower_obs, "predicted": pi_lower_pred},
            "upper": {"observed": pi_upper_obs, "predicted": reg_or_almost},
        },
    )

    rho_lower_cap = 3 * (n - 1) if odd else 3 * n - 2
    rho_lower_obs = 2 * smax == rho_lower_cap
    rho_upper_obs = 2 * smax == n * (n - 1)
    rho_upper_pred = is_iso_to_extremal_tournament(D)
    rep_rho = VerificationReport(
        theorem="thm-3.2-rho",
        bound_holds=2 * smax >= rho_lower_cap and 2 * smax <= n * (n - 1),
        equality_observed=rho_lower_obs or rho_upper_obs,
        equality_predicted=reg_or_almost or rho_upper_pred,
        consistent=(rho_lower_obs == reg_or_almost)
        and (rho_upper_obs == rho_upper_pred),
        witnesses={"rem_witness": sigmas.index(smax)},
        details={
            "remoteness": [smax, n - 1],
            "lower": {"observed": rho_lower_obs, "predicted": reg_or_almost},
            "upper": {"observed": rho_upper_obs, "predicted": rho_upper_pred},
        },
    )
    return rep_pi, rep_rho


def verify_thm_3_3(D: Digraph) -> VerificationReport:
    if not is_tournament(D):
        raise ValueError("claim applies to tournaments")
    _require_strong(D)
    sigmas, _ = sigma_ecc_vectors(D)
    observed = min(sigmas) == max(sigmas)
    predicted = is_regular(D)
    return VerificationReport(
        theorem="thm-3.3",
        bound_holds=True,
        equality_observed=observed,
        equality_predicted=predicted,
        consistent=observed == predicted,
        witnesses={},
        details={"sigma_min": min(sigmas), "sigma_max": max(sigmas)},
    )


# ---------------------------------------------------------------------------
# Bipartite claims
# ---------------------------------------------------------------------------

def _bipartite_context(D: Digraph):
    structure = bp.require_bipartite_tournament(D)
    _require_strong(D)
    good, witness = bp.classify_good_bad(D, structure)
    sigmas, eccs = sigma_ecc_vectors(D)
    return structure, good, witness, sigmas, eccs


def verify_lem_3_4(D: Digraph) -> VerificationReport:
    structure, good, witness, sigmas, _ = _bipartite_context(D)
    observed = min(sigmas) == max(sigmas)
    predicted = observed if good else False
    return VerificationReport(
        theorem="lem-3.4",
        bound_holds=True,
        equality_observed=observed,
        equality_predicted=predicted,
        consistent=observed == predicted,
        witnesses={"bad_witness": witness} if witness else {},
        details={"applicable": not good},
    )


def verify_lem_3_5(D: Digraph) -> VerificationReport:
    structure, good, witness, _, eccs = _bipartite_context(D)
    violations = [v for v, e in enumerate(eccs) if e > 4] if good else []
    return VerificationReport(
        theorem="lem-3.5",
        bound_holds=not violations,
        equality_observed=True,
        equality_predicted=True,
        consistent=True,
        witnesses={"violations": violations},
        details={"applicable": good, "max_ecc": max(eccs)},
    )


def verify_lem_3_6(D: Digraph) -> VerificationReport:
    structure, good, witness, sigmas, _ = _bipartite_context(D)
    mismatches = []
    if good:
        for v in range(D.n):
            formula = bp.sigma_by_formula(D, v, structure)
            if formula != sigmas[v]:
                mismatches.append({"vertex": v, "formula": formula, "bfs": sigmas[v]})
    return VerificationReport(
        theorem="lem-3.6",
        bound_holds=not mismatches,
        equality_observed=True,
        equality_predicted=True,
        consistent=True,
        witnesses={"mismatches": mismatches},
        details={"applicable": good},
    )


def verify_cor_3_7(D: Digraph) -> VerificationReport:
    structure, good, witness, sigmas, _ = _bipartite_context(D)
    observed = min(sigmas) == max(sigmas)
    constant = bp.equality_constant(D, structure) if good else None
    predicted = good and constant is not None
    # When equality holds, the per-part class/degree differences must agree
    # pairwise (same part) and match across parts after the size shift.
    relations_ok = True
    if observed and good:
        mus = bp.mu_values(D, structure)
        diffs = []
        for part in structure.parts:
            vals = {mus[v] - D.rows[v].bit_count() for v in part}
            diffs.append(vals)
            if len(vals) != 1:
                relations_ok = False
        if relations_ok:
            a, b = structure.parts
            lhs = 2 * next(iter(diffs[0])) + len(b)
            rhs = 2 * next(iter(diffs[1])) + len(a)
            relations_ok = lhs == rhs
    return VerificationReport(
        theorem="cor-3.7",
        bound_holds=relations_ok,
        equality_observed=observed,
        equality_predicted=predicted,
        consistent=observed == predicted,
        witnesses={"bad_witness": witness} if witness else {},
        details={"good": good, "constant_c": constant},
    )


def verify_cor_3_8(D: Digraph) -> VerificationReport:
    structure, good, witness, sigmas, _ = _bipartite_context(D)
    mus = bp.mu_values(D, structure)
    applicable = good and len(set(mus.values())) == 1
    observed = min(sigmas) == max(sigmas)
    if applicable:
        predicted = bp.check_cor_reg(D)
    else:
        predicted = observed
    return VerificationReport(
        theorem="cor-3.8",
        bound_holds=True,
        equality_observed=observed,
        equality_predicted=predicted,
        consistent=observed == predicted,
        witnesses={},
        details={"applicable": applicable},
    )


# ---------------------------------------------------------------------------
# Radius/diameter separations on the two discussion families
# ---------------------------------------------------------------------------

def verify_sec5_facts(kind: str, n: int, c: Optional[int] = None) -> VerificationReport:
    """Checks that the digraph families break the undirected radius rules.

    kind="hub": diameter exceeds twice the radius (n >= 4) and the radius
    stays below the remoteness (n >= 3).  kind="dicycle": the radius
    exceeds the remoteness, every distance layer from every vertex is a
    single vertex, and the radius exceeds floor(n/2).
    """
    checks: Dict[str, bool] = {}
    if kind == "hub":
        if c is None:
            c = n - 1
        D = hub_digraph(n, c)
        sigmas, eccs = sigma_ecc_vectors(D)
        rad, diam = min(eccs), max(eccs)
        rho = Fraction(max(sigmas), n - 1)
        checks["rad_is_1"] = rad == 1
        checks["diam_is_n_minus_1"] = diam == n - 1
        checks["rho_is_half_n"] = rho == Fraction(n, 2)
        if n >= 4:
            checks["diam_gt_2_rad"] = diam > 2 * rad
        if n >= 3:
            checks["rad_lt_rho"] = Fraction(rad) < rho
    elif kind == "dicycle":
        D = make_dicycle(n)
        sigmas, eccs = sigma_ecc_vectors(D)
        rad = min(eccs)
        rho = Fraction(max(sigmas), n - 1)
        checks["rad_is_n_minus_1"] = rad == n - 1
        if n >= 3:
            checks["rad_gt_rho"] = Fraction(rad) > rho
            checks["rad_gt_half_n"] = rad > n // 2
        singleton = True
        for v in range(n):
            layers = distance_layers(D.rows, n, v)
            if any(l.bit_count() != 1 for l in layers[1 : n - 1]):
                singleton = False
        checks["one_vertex_per_layer"] = singleton
    else:
        raise ValueError(f"kind must be 'hub' or 'dicycle', got {kind!r}")
    ok = all(checks.values())
    return VerificationReport(
        theorem="sec5-facts",
        bound_holds=ok,
        equality_observed=True,
        equality_predicted=True,
        consistent=True,
        witnesses={},
        details={"kind": kind, "n": n, "c": c, "checks": checks},
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

Verifier = Callable[[Digraph], List[VerificationReport]]

THEOREMS: Dict[str, Verifier] = {
    "thm-2.1-pi": lambda D: [verify_thm_2_1(D)[0]],
    "thm-2.1-rho": lambda D: [verify_thm_2_1(D)[1]],
    "thm-2.2": lambda D: [verify_thm_2_2(D)],
    "prop-3.1": lambda D: [verify_prop_3_1(D)],
    "thm-3.2-pi": lambda D: [verify_thm_3_2(D)[0]],
    "thm-3.2-rho": lambda D: [verify_thm_3_2(D)[1]],
    "thm-3.3": lambda D: [verify_thm_3_3(D)],
    "lem-3.4": lambda D: [verify_lem_3_4(D)],
    "lem-3.5": lambda D: [verify_lem_3_5(D)],
    "lem-3.6": lambda D: [verify_lem_3_6(D)],
    "cor-3.7": lambda D: [verify_cor_3_7(D)],
    "cor-3.8": lambda D: [verify_cor_3_8(D)],
}

#: Minimum order each claim needs (per-instance precondition).
THEOREM_MIN_N: Dict[str, int] = {
    "thm-2.1-pi": 3,
    "thm-2.1-rho": 3,
    "thm-2.2": 2,
    "prop-3.1": 2,
    "thm-3.2-pi": 3,
    "thm-3.2-rho": 3,
    "thm-3.3": 3,
}
