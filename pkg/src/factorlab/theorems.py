"""Registry of executable hypothesis checkers and conclusion verifiers, the
threshold-function evaluator, and the audit/campaign engine.

Every registry entry turns a sufficient condition (or an exact criterion)
into code: the hypothesis side evaluates the quantified inequalities exactly
over all removal sets, the conclusion side runs a complete finder, and the
verdict is PASS / VACUOUS / COUNTEREXAMPLE (INCONCLUSIVE only when a search
budget runs out, never folded into PASS).  Strict and non-strict inequalities
are kept exactly as stated; all arithmetic is exact.

Star-component terms charge the worst admissible center of each star, which
reads "any arbitrary specified center" as universal quantification.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import DEFAULT_BUDGETS, Budgets, PreconditionError, ScaleExceeded
from .factors import (
    FactorCertificate,
    certificate_from_ids,
    check_critical_criterion,
    check_gf_criterion,
    check_near_f_criterion,
    check_one_f_factor,
    check_one_factor,
    check_restricted_component_criterion,
    find_gf_factor,
    find_near_f_factor,
)
from .graphs import MultiGraph, VertexFn, bits
from .independent import caro_wei, greedy_weighted_independent, surplus_independent
from .matching import max_matching
from .resilience import CriterionWitness, check_iso_tough, is_t_tough, set_witness
from .treeconn import (
    MtcIndex,
    bounded_mtc_factor,
    connected_24_factor,
    is_m_tree_connected,
    spanning_eulerian,
    worst_omega_set,
    _factor_is_mtc,
)


def eval_t0(a: Fraction, f_v: int, h_v: Fraction) -> Fraction:
    """Threshold t0(a, f, h) at one vertex:

        (1 / (4(a-1))) * ((f + a - 1)^2 - 4h - eps0),

    where eps0 is 1 exactly when a is an integer of the same parity as f.
    Requires a > 1.
    """
    a = Fraction(a)
    h_v = Fraction(h_v)
    if a <= 1:
        raise PreconditionError("t0 needs a > 1")
    return ((f_v + a - 1) ** 2 - 4 * h_v - eps0_flag(a, f_v)) / (4 * (a - 1))


def eps0_flag(a: Fraction, f_v: int) -> int:
    """1 iff a is an integer with the same parity as f_v (0 for non-integers)."""
    a = Fraction(a)
    if a.denominator != 1:
        return 0
    return 1 if (int(a) - f_v) % 2 == 0 else 0


@dataclass(frozen=True)
class ThresholdParams:
    """Free parameters of the registry entries; unused fields stay None.

    Constant-valued functions are given as rationals (f_const and friends) and
    materialized per graph; explicit per-vertex functions override them.
    """

    r: Optional[int] = None
    m: Optional[int] = None
    a: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    n_div: Optional[Fraction] = None
    i_shift: int = 0
    f_const: Optional[Fraction] = None
    g_const: Optional[Fraction] = None
    h_const: Optional[Fraction] = None
    phi_const: Optional[Fraction] = None
    f_fn: Optional[VertexFn] = None
    g_fn: Optional[VertexFn] = None
    h_fn: Optional[VertexFn] = None
    phi_fn: Optional[VertexFn] = None
    factor_edge_ids: Optional[tuple[int, ...]] = None

    _KEYMAP = {
        "r": ("r", int),
        "m": ("m", int),
        "i": ("i_shift", int),
        "a": ("a", Fraction),
        "eps": ("epsilon", Fraction),
        "epsilon": ("epsilon", Fraction),
        "n": ("n_div", Fraction),
        "f": ("f_const", Fraction),
        "g": ("g_const", Fraction),
        "h": ("h_const", Fraction),
        "phi": ("phi_const", Fraction),
    }

    @classmethod
    def from_mapping(cls, mapping: dict) -> "ThresholdParams":
        kwargs = {}
        for key, raw in mapping.items():
            if key not in cls._KEYMAP:
                raise PreconditionError(f"unknown theorem parameter {key!r}")
            fieldname, conv = cls._KEYMAP[key]
            try:
                kwargs[fieldname] = conv(raw)
            except (ValueError, ZeroDivisionError) as exc:
                raise PreconditionError(f"bad value for parameter {key!r}: {raw!r}") from exc
        return cls(**kwargs)

    def to_json(self) -> dict:
        from .core import fmt_rational

        out = {}
        for key, (fieldname, _) in self._KEYMAP.items():
            val = getattr(self, fieldname)
            if val is not None and not (key == "i" and val == 0):
                out[key] = fmt_rational(val) if isinstance(val, Fraction) else val
        return out

    # -- materialization ----------------------------------------------------

    def fn(self, g: MultiGraph, which: str, default=None) -> VertexFn:
        explicit = getattr(self, f"{which}_fn")
        if explicit is not None:
            if len(explicit) != g.n:
                raise PreconditionError(f"{which} function has wrong length")
            return explicit
        const = getattr(self, f"{which}_const")
        if const is None:
            if default is None:
                raise PreconditionError(f"registry entry needs parameter {which!r}")
            const = default
        return VertexFn.constant(g.n, const)


@dataclass(frozen=True)
class HypothesisResult:
    holds: bool
    witness: Optional[CriterionWitness]
    condition_id: str

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "condition": self.condition_id,
            "witness": self.witness.to_json() if self.witness else None,
        }


HOLDS = HypothesisResult(True, None, "all")


@dataclass(frozen=True)
class CaseReport:
    theorem_id: str
    graph_id: str
    params: ThresholdParams
    hypothesis: HypothesisResult
    found: bool
    certificate: Optional[FactorCertificate]
    verdict: str                      # PASS | VACUOUS | COUNTEREXAMPLE | INCONCLUSIVE
    note: str = ""
    graph_dump: str = ""              # edgelist text, populated for counterexamples
    elapsed: float = 0.0              # excluded from canonical JSON: reports stay byte-stable

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "theorem": self.theorem_id,
            "graph": self.graph_id,
            "params": self.params.to_json(),
            "hypothesis": self.hypothesis.to_json(),
            "found": self.found,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "verdict": self.verdict,
            "note": self.note,
        }
        if self.graph_dump:
            out["graph_dump"] = self.graph_dump
        if timings:
            out["elapsed"] = self.elapsed
        return out


# ---------------------------------------------------------------------------
# Removal-set profiles and generic inequality sweeps
# ---------------------------------------------------------------------------


def _star_charges(g: MultiGraph, comp_masks, charge: Callable[[int], Fraction]) -> Fraction:
    """Sum, over star components, of the worst admissible-center charge."""
    from .graphs import _star_centers

    total = Fraction(0)
    for comp in comp_masks:
        centers = _star_centers(g, comp)
        if centers:
            total += max(charge(v) for v in bits(centers))
    return total


def _sweep(g: MultiGraph, budgets: Budgets, check) -> Optional[CriterionWitness]:
    """Run ``check(s_mask, comp_masks)`` over every removal set; first violation wins."""
    if g.n > budgets.subset_n_cap:
        raise ScaleExceeded(f"hypothesis sweep: n={g.n} exceeds cap {budgets.subset_n_cap}")
    full = g.full_mask
    for s_mask in range(full + 1):
        comps = g.component_masks(full & ~s_mask)
        witness = check(s_mask, comps)
        if witness is not None:
            return witness
    return None


def _iso_of(g: MultiGraph, comps) -> int:
    return sum(1 for c in comps if c.bit_count() == 1)


def _cond_omega_bound(g, budgets, coeff: Fraction, shift: Fraction, strict: bool,
                      per_vertex: Optional[VertexFn] = None):
    """omega(G-S) </<= sum_{v in S} pv(v) (or coeff*|S|) + shift, for all S."""

    def check(s_mask, comps):
        omega = len(comps)
        if per_vertex is not None:
            rhs = per_vertex.mask_sum(s_mask) + shift
        else:
            rhs = coeff * s_mask.bit_count() + shift
        bad = omega >= rhs if strict else omega > rhs
        if bad:
            return set_witness(s_mask, omega, rhs, "omega-bound")
        return None

    return _sweep(g, budgets, check)


def _cond_iso_omega(g, budgets, iso_coeff: Fraction, s_coeff: Fraction, shift: Fraction):
    """iso_coeff*iso(G-S) + omega(G-S) <= s_coeff*|S| + shift, for all S."""

    def check(s_mask, comps):
        lhs = iso_coeff * _iso_of(g, comps) + len(comps)
        rhs = s_coeff * s_mask.bit_count() + shift
        if lhs > rhs:
            return set_witness(s_mask, lhs, rhs, "iso-omega-bound")
        return None

    return _sweep(g, budgets, check)


def _cond_star_omega(g, budgets, charge: Callable[[int], Fraction]):
    """sum over worst star centers of charge(v) + omega(G-S) <= |S| + 1."""

    def check(s_mask, comps):
        lhs = _star_charges(g, comps, charge) + len(comps)
        rhs = Fraction(s_mask.bit_count() + 1)
        if lhs > rhs:
            return set_witness(s_mask, lhs, rhs, "star-omega-bound")
        return None

    return _sweep(g, budgets, check)


def _hyp_from(witness: Optional[CriterionWitness], condition_id: str) -> Optional[HypothesisResult]:
    if witness is None:
        return None
    return HypothesisResult(False, witness, condition_id)


def _iso_tough_fn(g, budgets, t: VertexFn, condition_id: str) -> Optional[HypothesisResult]:
    return _hyp_from(check_iso_tough(g, t, budgets), condition_id)


def _tough(g, budgets, t: Fraction, condition_id: str) -> Optional[HypothesisResult]:
    return _hyp_from(is_t_tough(g, t, budgets), condition_id)


# ---------------------------------------------------------------------------
# Conclusion searches shared by the tree-connectivity entries
# ---------------------------------------------------------------------------


def _tree_conclusion_m1(g: MultiGraph, budgets: Budgets, require_all_u: bool):
    """Spanning trees with max degree <= 3 (and degree <= 2 at each prescribed
    vertex, when required).  Complete: enumerates every spanning tree."""
    n = g.n
    if n <= 1:
        return True, certificate_from_ids(g, [])
    edges = g.edges
    E = len(edges)
    need = n - 1
    sat_u: set[int] = set()
    plain: Optional[list[int]] = None
    parent = list(range(n))

    # no path compression: the DFS rolls unions back, compressed pointers
    # would survive the rollback and corrupt component queries
    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    degs = [0] * n
    chosen: list[int] = []
    budget = budgets.search_budget
    visited = 0
    done = False

    def dfs(i: int):
        nonlocal visited, plain, done
        if done:
            return
        visited += 1
        if visited > budget:
            raise ScaleExceeded("spanning-tree enumeration budget exhausted")
        if len(chosen) == need:
            if plain is None:
                plain = list(chosen)
            for u in range(n):
                if degs[u] <= 2:
                    sat_u.add(u)
            if not require_all_u or len(sat_u) == n:
                done = True
            return
        if i == E or len(chosen) + (E - i) < need:
            return
        a, b = edges[i]
        ra, rb = find(a), find(b)
        if ra != rb and degs[a] < 3 and degs[b] < 3:
            saved = parent[ra]
            parent[ra] = rb
            degs[a] += 1
            degs[b] += 1
            chosen.append(i)
            dfs(i + 1)
            chosen.pop()
            degs[a] -= 1
            degs[b] -= 1
            parent[ra] = saved
        if not done:
            dfs(i + 1)

    dfs(0)
    ok = plain is not None and (not require_all_u or len(sat_u) == n)
    cert = certificate_from_ids(g, plain) if plain is not None else None
    return ok, cert


def _tree_conclusion(g: MultiGraph, m: int, budgets: Budgets, require_all_u: bool):
    """m-tree-connected factor, max degree <= 2m+1, plus (optionally) the
    per-vertex variants with degree <= m+1 at each prescribed vertex."""
    if m == 1:
        return _tree_conclusion_m1(g, budgets, require_all_u)
    base = bounded_mtc_factor(g, m, None, budgets)
    if base is None:
        return False, None
    if require_all_u:
        for u in range(g.n):
            if bounded_mtc_factor(g, m, u, budgets) is None:
                return False, None
    return True, base


def _search_range_mtc(g: MultiGraph, m: int, lo: list[int], hi: list[int], budgets: Budgets):
    """Spanning m-tree-connected subgraph with lo <= degree <= hi pointwise;
    exhaustive branch-and-bound (None only after full exhaustion)."""
    n = g.n
    if n <= 1:
        return certificate_from_ids(g, []) if all(x <= 0 for x in lo) else None
    edges = g.edges
    E = len(edges)
    degs = [0] * n
    rem = list(g.deg)
    chosen: list[int] = []
    budget = budgets.search_budget
    visited = 0
    need_min = m * (n - 1)

    def dfs(i: int):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise ScaleExceeded("range factor search budget exhausted")
        if i == E:
            if len(chosen) >= need_min and all(lo[v] <= degs[v] for v in range(n)):
                if _factor_is_mtc(g, chosen, m):
                    return list(chosen)
            return None
        if len(chosen) + (E - i) < need_min:
            return None
        a, b = edges[i]
        rem[a] -= 1
        rem[b] -= 1
        got = None
        if degs[a] < hi[a] and degs[b] < hi[b]:
            degs[a] += 1
            degs[b] += 1
            chosen.append(i)
            got = dfs(i + 1)
            chosen.pop()
            degs[a] -= 1
            degs[b] -= 1
        if got is None and degs[a] + rem[a] >= lo[a] and degs[b] + rem[b] >= lo[b]:
            got = dfs(i + 1)
        rem[a] += 1
        rem[b] += 1
        return got

    found = dfs(0)
    return certificate_from_ids(g, found) if found is not None else None


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremEntry:
    tid: str
    title: str
    statement: str
    kind: str                        # implication | iff | certificate
    hypothesis: Callable             # (g, params, budgets) -> HypothesisResult
    conclusion: Callable             # (g, params, budgets) -> (found, cert)


REGISTRY: dict[str, TheoremEntry] = {}


def _register(tid, title, statement, kind, hypothesis, conclusion):
    REGISTRY[tid] = TheoremEntry(tid, title, statement, kind, hypothesis, conclusion)


def _int_param(params: ThresholdParams, name: str) -> int:
    val = getattr(params, name if name != "i" else "i_shift")
    if val is None:
        raise PreconditionError(f"registry entry needs integer parameter {name!r}")
    return int(val)


def _f_int(g, params, default=None) -> VertexFn:
    fn = params.fn(g, "f", default)
    if not fn.is_integer_valued():
        raise PreconditionError("f must be integer-valued")
    return fn


# -- exact criteria (iff entries) -------------------------------------------


def _hyp_one_factor(g, params, budgets):
    w = check_one_factor(g, budgets)
    return HOLDS if w is None else HypothesisResult(False, w, "odd-components")


def _con_one_factor(g, params, budgets):
    pairs = max_matching(g)
    if 2 * len(pairs) != g.n:
        return False, None
    ids = []
    used = set()
    want = set(pairs)
    for eid, (u, v) in enumerate(g.edges):
        if (u, v) in want and (u, v) not in used:
            ids.append(eid)
            used.add((u, v))
    return True, certificate_from_ids(g, ids)


_register(
    "T-1F", "Perfect-matching criterion",
    "a 1-factor exists iff odd(G-S) <= |S| for all S",
    "iff", _hyp_one_factor, _con_one_factor,
)


def _hyp_vergnas(g, params, budgets):
    f = _f_int(g, params)
    w = check_one_f_factor(g, f, budgets)
    return HOLDS if w is None else HypothesisResult(False, w, "iso-vs-f-sum")


def _con_vergnas(g, params, budgets):
    f = _f_int(g, params)
    ones = VertexFn.constant(g.n, 1)
    cert = find_gf_factor(g, ones, f)
    return cert is not None, cert


_register(
    "T-VG", "(1,f)-factor criterion (f >= 2)",
    "a (1,f)-factor exists iff iso(G-S) <= sum_{v in S} f(v) for all S",
    "iff", _hyp_vergnas, _con_vergnas,
)


def _hyp_near_criterion(g, params, budgets):
    f = _f_int(g, params)
    w = check_near_f_criterion(g, f, budgets)
    return HOLDS if w is None else HypothesisResult(False, w, "near-f-criterion")


def _con_near(g, params, budgets):
    f = _f_int(g, params)
    cert = find_near_f_factor(g, f)
    return cert is not None, cert


_register(
    "T-NF", "Near f-factor criterion",
    "a near f-factor exists iff omega_f(G,A,B) <= sum_A f + sum_B (d_{G-A}-f) + 1 "
    "(+1 more when sum f is odd) for all disjoint A, B",
    "iff", _hyp_near_criterion, _con_near,
)


def _hyp_gf_criterion(g, params, budgets):
    f = _f_int(g, params)
    gl = params.fn(g, "g")
    w = check_gf_criterion(g, gl, f, budgets)
    return HOLDS if w is None else HypothesisResult(False, w, "gf-criterion")


def _con_gf(g, params, budgets):
    f = _f_int(g, params)
    gl = params.fn(g, "g")
    cert = find_gf_factor(g, gl, f)
    return cert is not None, cert


_register(
    "T-LV", "(g,f)-factor criterion",
    "a (g,f)-factor exists iff omega_{g,f}(G,A,B) <= sum_A f + sum_B (d_{G-A}-g) "
    "for all disjoint A, B",
    "iff", _hyp_gf_criterion, _con_gf,
)


# -- component-bound implications for near factors ---------------------------


def _hyp_restricted(g, params, budgets):
    f = _f_int(g, params)
    w = check_restricted_component_criterion(g, f, budgets)
    return HOLDS if w is None else HypothesisResult(False, w, "restricted-pairs")


_register(
    "T-CM", "Near f-factor from the restricted-pair component bound",
    "omega(G-(A+B)) <= sum_A f + sum_B (d_{G-A}-f) + 1 (+1 when sum f odd) over "
    "pairs with d_{G[B]}(v) <= f(v)-2 and d_{G-A}(v) <= 2f(v)-1 on B",
    "implication", _hyp_restricted, _con_near,
)


def _hyp_critical(g, params, budgets):
    f = _f_int(g, params)
    if int(f.total()) % 2 == 0:
        return HypothesisResult(False, None, "sum-f-odd")
    if not g.is_connected():
        return HypothesisResult(False, None, "connected")
    w = check_critical_criterion(g, f, budgets)
    return HOLDS if w is None else HypothesisResult(False, w, "strict-criterion")


def _con_critical(g, params, budgets):
    f = _f_int(g, params)
    last = None
    for u in range(g.n):
        cert = find_near_f_factor(g, f, forced_vertex=u)
        if cert is None:
            return False, None
        last = cert
    return True, last


_register(
    "T-FC", "Near f-factor with the exception at any prescribed vertex",
    "when sum f is odd, G connected, and omega_f(G,A,B) <= sum_A f + sum_B "
    "(d_{G-A}-f) for all disjoint nonempty-union pairs, every vertex u admits "
    "a near f-factor with degree f(u)+1 at u",
    "implication", _hyp_critical, _con_critical,
)


# -- greedy independence certificates ----------------------------------------


def _hyp_weights(g, params, budgets):
    phi = params.fn(g, "phi", default=Fraction(1))
    if any(q < 0 for q in phi.values):
        return HypothesisResult(False, None, "nonnegative-weights")
    return HOLDS


def _con_greedy(g, params, budgets):
    phi = params.fn(g, "phi", default=Fraction(1))
    rep = greedy_weighted_independent(g, phi)
    return rep.lhs <= rep.rhs, None


_register(
    "T-IS", "Greedy weighted independent-set certificate",
    "some independent I has sum_V phi <= sum_I phi(v) * (deg(v)+1)",
    "certificate", _hyp_weights, _con_greedy,
)


def _con_caro_wei(g, params, budgets):
    bound = caro_wei(g)
    phi = VertexFn.of([Fraction(1, 1 + g.deg[v]) for v in range(g.n)])
    rep = greedy_weighted_independent(g, phi)
    import math

    return len(rep.set) >= math.ceil(bound), None


_register(
    "T-CW", "Caro-Wei bound realized by the greedy set",
    "alpha(G) >= sum_v 1/(1+deg(v)); the unit-weight greedy set reaches the ceiling",
    "certificate", lambda g, p, b: HOLDS, _con_caro_wei,
)


def _hyp_surplus(g, params, budgets):
    if params.phi_fn is None and params.phi_const is None:
        return HypothesisResult(False, None, "needs-phi")
    phi = params.fn(g, "phi")
    if any(phi[v] < g.deg[v] for v in range(g.n)):
        return HypothesisResult(False, None, "phi>=deg")
    return HOLDS


def _con_surplus(g, params, budgets):
    phi = params.fn(g, "phi")
    d = VertexFn.of([Fraction(g.deg[v]) for v in range(g.n)])
    rep = surplus_independent(g, phi, d)
    return rep.lhs <= rep.rhs, None


_register(
    "T-SB", "Surplus independent-set certificate",
    "some independent I has sum_V (phi-d) <= sum_I (d(v)+1)(phi(v)-d(v)) when phi >= d >= deg",
    "certificate", _hyp_surplus, _con_surplus,
)


# -- iso-toughness near-factor theorems --------------------------------------


def _hyp_iso_f(g, params, budgets):
    f = _f_int(g, params)
    eps = params.epsilon
    if eps is None or not (0 < eps <= 1):
        raise PreconditionError("needs 0 < eps <= 1")
    if any(x < 1 for x in f.as_ints()):
        return HypothesisResult(False, None, "f-positive")
    t = VertexFn.of([f[v] * (f[v] + 1) / eps for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:f(f+1)/eps")
    if bad:
        return bad
    per = VertexFn.of([f[v] - eps for v in range(g.n)])
    w = _cond_omega_bound(g, budgets, None, Fraction(2), True, per_vertex=per)
    if w:
        return HypothesisResult(False, w, "omega<sum(f-eps)+2")
    return HOLDS


_register(
    "T-IF", "Near f-factor from f(f+1)/eps iso-toughness",
    "f(f+1)/eps-iso-tough and omega(G-S) < sum_{v in S}(f(v)-eps) + 2 for all S "
    "imply a near f-factor (0 < eps <= 1)",
    "implication", _hyp_iso_f, _con_near,
)


def _hyp_iso_f1(g, params, budgets):
    f = _f_int(g, params)
    if any(x < 1 for x in f.as_ints()):
        return HypothesisResult(False, None, "f-positive")
    t = VertexFn.of([f[v] * (f[v] + 1) for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:f(f+1)")
    if bad:
        return bad
    per = VertexFn.of([f[v] - 1 for v in range(g.n)])
    w = _cond_omega_bound(g, budgets, None, Fraction(1), False, per_vertex=per)
    if w:
        return HypothesisResult(False, w, "omega<=sum(f-1)+1")
    return HOLDS


_register(
    "T-IE", "Near f-factor from f(f+1) iso-toughness",
    "f(f+1)-iso-tough and omega(G-S) <= sum_{v in S}(f(v)-1) + 1 for all S imply "
    "a near f-factor",
    "implication", _hyp_iso_f1, _con_near,
)


def _hyp_toughness_less_one(g, params, budgets):
    f = _f_int(g, params)
    a = params.a
    if a is None or a < 1:
        raise PreconditionError("needs a >= 1")
    if any(Fraction(x) < a for x in f.as_ints()):
        return HypothesisResult(False, None, "f>=a")
    t = VertexFn.of([(f[v] + a / 2) ** 2 / a for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:(f+a/2)^2/a")
    if bad:
        return bad
    per = VertexFn.of([f[v] - a for v in range(g.n)])
    w = _cond_omega_bound(g, budgets, None, Fraction(2), True, per_vertex=per)
    if w:
        return HypothesisResult(False, w, "omega<sum(f-a)+2")
    return HOLDS


_register(
    "T-TL", "Near f-factor below toughness one",
    "(1/a)(f+a/2)^2-iso-tough and omega(G-S) < sum_{v in S}(f(v)-a) + 2 for all S "
    "imply a near f-factor (f >= a >= 1)",
    "implication", _hyp_toughness_less_one, _con_near,
)


def _hyp_second_method(g, params, budgets):
    f = _f_int(g, params)
    a = params.a
    if a is None or a <= 1:
        raise PreconditionError("needs a > 1")
    h = params.fn(g, "h", default=Fraction(0))
    if any(q < 0 for q in h.values):
        raise PreconditionError("h must be nonnegative")
    if any(Fraction(x) < a for x in f.as_ints()):
        return HypothesisResult(False, None, "f>=a")
    t = VertexFn.of([eval_t0(a, int(f[v]), h[v]) for v in range(g.n)])
    t = VertexFn.of([max(q, Fraction(0)) for q in t.values])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:t0(a,f,h)")
    if bad:
        return bad
    w = _cond_star_omega(g, budgets, lambda v: f[v] + h[v] - 1)
    if w:
        return HypothesisResult(False, w, "star-centers+omega<=|S|+1")
    return HOLDS


_register(
    "T-SM", "Near f-factor, star-component form",
    "t0(a,f,h)-iso-tough and sum_{v in I*}(f(v)+h(v)-1) + omega(G-S) <= |S| + 1 "
    "for all S (I* = worst admissible star centers) imply a near f-factor (f >= a > 1)",
    "implication", _hyp_second_method, _con_near,
)


def _hyp_r_tough_star(g, params, budgets):
    r = _int_param(params, "r")

    def check(s_mask, comps):
        from .graphs import _star_centers

        w_star = sum(1 for c in comps if _star_centers(g, c))
        lhs = (r - 1) * w_star + len(comps)
        rhs = s_mask.bit_count() + 1
        if lhs > rhs:
            return set_witness(s_mask, lhs, rhs, "(r-1)w*+omega<=|S|+1")
        return None

    w = _sweep(g, budgets, check)
    if w:
        return HypothesisResult(False, w, "star-count-bound")
    t = VertexFn.constant(g.n, r)
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:r")
    if bad:
        return bad
    return HOLDS


def _con_near_r(g, params, budgets):
    r = _int_param(params, "r")
    cert = find_near_f_factor(g, VertexFn.constant(g.n, r))
    return cert is not None, cert


_register(
    "T-RT", "Near r-factor from iso-toughness r and the star-component bound",
    "iso(G-S) <= |S|/r and (r-1) w*(G-S) + omega(G-S) <= |S| + 1 for all S imply "
    "a near r-factor",
    "implication", _hyp_r_tough_star, _con_near_r,
)


def _hyp_r_tough(g, params, budgets):
    r = _int_param(params, "r")
    if g.n < r + 1:
        return HypothesisResult(False, None, "order>=r+1")
    bad = _tough(g, budgets, Fraction(r), "r-tough")
    if bad:
        return bad
    return HOLDS


_register(
    "T-A", "Near r-factor in r-tough graphs",
    "every r-tough graph of order at least r+1 admits a near r-factor",
    "implication", _hyp_r_tough, _con_near_r,
)


def _hyp_onlyiso(g, params, budgets):
    f = _f_int(g, params)
    a, nd = params.a, params.n_div
    if a is None or a <= 1 or nd is None or nd <= 1:
        raise PreconditionError("needs a > 1 and n > 1")
    if any(Fraction(x) < a for x in f.as_ints()):
        return HypothesisResult(False, None, "f>=a")
    t = VertexFn.of([
        max(nd / (nd - 1) * f[v], ((f[v] + a - 1) ** 2 + f[v]) / (4 * (a - Fraction(1) / nd)))
        for v in range(g.n)
    ])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:max-form")
    if bad:
        return bad
    w = _cond_omega_bound(g, budgets, Fraction(1) / nd, Fraction(1), False)
    if w:
        return HypothesisResult(False, w, "omega<=|S|/n+1")
    return HOLDS


_register(
    "T-OI", "Near f-factor from iso-toughness plus the 1/n component bound",
    "max(n f/(n-1), ((f+a-1)^2+f)/(4(a-1/n)))-iso-tough and omega(G-S) <= |S|/n + 1 "
    "for all S imply a near f-factor (f >= a > 1, n > 1)",
    "implication", _hyp_onlyiso, _con_near,
)


def _hyp_a1(g, params, budgets):
    f = _f_int(g, params)
    if any(x < 1 for x in f.as_ints()):
        return HypothesisResult(False, None, "f-positive")
    w = _cond_star_omega(g, budgets, lambda v: Fraction((f[v] - 1) * (f[v] + 5), 4))
    if w:
        return HypothesisResult(False, w, "star-quarter-bound")
    return HOLDS


_register(
    "T-A1", "Near f-factor, star-component form without iso-toughness",
    "sum_{v in I*} (f(v)-1)(f(v)+5)/4 + omega(G-S) <= |S| + 1 for all S implies "
    "a near f-factor",
    "implication", _hyp_a1, _con_near,
)


def _hyp_a1c(g, params, budgets):
    f = _f_int(g, params)
    nd = params.n_div
    if nd is None or nd <= 1:
        raise PreconditionError("needs n > 1")
    if any(x < 1 for x in f.as_ints()):
        return HypothesisResult(False, None, "f-positive")
    t = VertexFn.of([nd * f[v] * (f[v] + 4) / (4 * nd - 4) for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:nf(f+4)/(4n-4)")
    if bad:
        return bad
    w = _cond_omega_bound(g, budgets, Fraction(1) / nd, Fraction(1), False)
    if w:
        return HypothesisResult(False, w, "omega<=|S|/n+1")
    return HOLDS


_register(
    "T-A1C", "Near f-factor from n f(f+4)/(4n-4) iso-toughness",
    "n f(f+4)/(4n-4)-iso-tough and omega(G-S) <= |S|/n + 1 for all S imply a near "
    "f-factor (n > 1)",
    "implication", _hyp_a1c, _con_near,
)


# -- (g,f)-factors from iso-toughness alone ----------------------------------


def _gf_piecewise_t(g, gl: VertexFn, f: VertexFn) -> VertexFn:
    min_f = min(f.as_ints())
    vals = []
    for v in range(g.n):
        gv = gl[v]
        if gv <= min_f + 2:
            vals.append(gv - 1 + gv / min_f)
        else:
            e0 = eps0_flag(Fraction(min_f), int(gv))
            vals.append(((gv + min_f + 1) ** 2 - e0) / (4 * min_f) - 1)
    return VertexFn.of([max(q, Fraction(0)) for q in vals])


def _hyp_gf_iso(g, params, budgets):
    f = _f_int(g, params)
    gl = params.fn(g, "g")
    if not gl.is_integer_valued():
        raise PreconditionError("g must be integer-valued")
    if any(a >= b for a, b in zip(gl.as_ints(), f.as_ints())):
        return HypothesisResult(False, None, "g<f")
    if any(x < 0 for x in gl.as_ints()):
        return HypothesisResult(False, None, "g-nonnegative")
    if min(f.as_ints()) < 1:
        return HypothesisResult(False, None, "f-positive")
    t = _gf_piecewise_t(g, gl, f)
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:piecewise")
    if bad:
        return bad
    return HOLDS


_register(
    "T-GF", "(g,f)-factor from piecewise iso-toughness (g < f)",
    "t-iso-tough with t(v) = g-1+g/min f when g(v) <= min f + 2 and "
    "((g+min f+1)^2 - eps0)/(4 min f) - 1 otherwise implies a (g,f)-factor",
    "implication", _hyp_gf_iso, _con_gf,
)


def _hyp_gf1(g, params, budgets):
    f = _f_int(g, params)
    gl = params.fn(g, "g")
    if max(gl.as_ints(), default=0) >= min(f.as_ints(), default=1):
        return HypothesisResult(False, None, "max-g<min-f")
    if any(x < 0 for x in gl.as_ints()) or min(f.as_ints()) < 1:
        return HypothesisResult(False, None, "nonnegative")
    min_f = min(f.as_ints())
    t = VertexFn.of([max(gl[v] - 1 + gl[v] / min_f, Fraction(0)) for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:g-1+g/minf")
    if bad:
        return bad
    return HOLDS


_register(
    "T-GF1", "(g,f)-factor when max g < min f",
    "(g - 1 + g/min f)-iso-tough implies a (g,f)-factor when max g < min f",
    "implication", _hyp_gf1, _con_gf,
)


def _hyp_gf2(g, params, budgets):
    f = _f_int(g, params)
    if any(x < 0 for x in f.as_ints()):
        return HypothesisResult(False, None, "f-nonnegative")
    t = VertexFn.of([f[v] * (f[v] + 1) for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:f(f+1)")
    if bad:
        return bad
    return HOLDS


def _con_gf2(g, params, budgets):
    f = _f_int(g, params)
    f_plus = VertexFn.of([f[v] + 1 for v in range(g.n)])
    cert = find_gf_factor(g, f, f_plus)
    return cert is not None, cert


_register(
    "T-GF2", "(f,f+1)-factor from f(f+1) iso-toughness",
    "every f(f+1)-iso-tough graph admits an (f,f+1)-factor",
    "implication", _hyp_gf2, _con_gf2,
)


# -- constant-f sharpening and tree-connected factors ------------------------


def _hyp_main(g, params, budgets):
    r = _int_param(params, "r")
    nd = params.n_div
    if nd is None or nd < 1:
        raise PreconditionError("needs n >= 1")
    t = VertexFn.constant(g.n, r + Fraction(1) / nd)
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:r+1/n")
    if bad:
        return bad
    w = _cond_omega_bound(g, budgets, Fraction(1) / nd, Fraction(2), True)
    if w:
        return HypothesisResult(False, w, "omega<|S|/n+2")
    return HOLDS


_register(
    "T-MT", "Near r-factor from (r+1/n) iso-toughness",
    "(r+1/n)-iso-tough (n >= 1) and omega(G-S) < |S|/n + 2 for all S imply a "
    "near r-factor",
    "implication", _hyp_main, _con_near_r,
)


def _side_tree_bound(params) -> Optional[HypothesisResult]:
    m = _int_param(params, "m")
    eps = params.epsilon
    r = _int_param(params, "r")
    if eps is None or eps <= 0:
        raise PreconditionError("needs eps > 0")
    if Fraction(r) < (2 * m - 1) * (2 * m / eps + 1):
        return HypothesisResult(False, None, "r>=(2m-1)(2m/eps+1)")
    return None


def _hyp_mr(g, params, budgets):
    side = _side_tree_bound(params)
    if side:
        return side
    m = _int_param(params, "m")
    r = _int_param(params, "r")
    eps = params.epsilon
    t = VertexFn.constant(g.n, r + 1)
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:r+1")
    if bad:
        return bad
    w = _cond_omega_bound(g, budgets, Fraction(1) / (2 * m + eps), Fraction(1), False)
    if w:
        return HypothesisResult(False, w, "omega<=|S|/(2m+eps)+1")
    return HOLDS


def _con_mr(g, params, budgets):
    m = _int_param(params, "m")
    r = _int_param(params, "r")
    cert = _search_range_mtc(g, m, [r] * g.n, [r + 1] * g.n, budgets)
    return cert is not None, cert


_register(
    "T-MR", "m-tree-connected {r,r+1}-factor from (r+1) iso-toughness",
    "(r+1)-iso-tough, r >= (2m-1)(2m/eps+1), and omega(G-S) <= |S|/(2m+eps) + 1 "
    "for all S imply an m-tree-connected {r,r+1}-factor",
    "implication", _hyp_mr, _con_mr,
)


def _hyp_mrc(g, params, budgets):
    m = _int_param(params, "m")
    r = _int_param(params, "r")
    if r < 6 * m - 3:
        return HypothesisResult(False, None, "r>=6m-3")
    bad = _tough(g, budgets, Fraction(3 * m), "3m-tough")
    if bad:
        return bad
    t = VertexFn.constant(g.n, r + 1)
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:r+1")
    if bad:
        return bad
    return HOLDS


_register(
    "T-MRC", "m-tree-connected {r,r+1}-factor in 3m-tough graphs",
    "every 3m-tough (r+1)-iso-tough graph with r >= 6m-3 admits an "
    "m-tree-connected {r,r+1}-factor",
    "implication", _hyp_mrc, _con_mr,
)


def _hyp_tf(g, params, budgets):
    f = _f_int(g, params)
    m = _int_param(params, "m")
    eps = params.epsilon
    if eps is None or eps <= 0:
        raise PreconditionError("needs eps > 0")
    if any(Fraction(x) < (2 * m - 1) * (2 * m / eps + 1) for x in f.as_ints()):
        return HypothesisResult(False, None, "f>=(2m-1)(2m/eps+1)")
    t = VertexFn.of([f[v] * (f[v] + 1) for v in range(g.n)])
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:f(f+1)")
    if bad:
        return bad
    w = _cond_omega_bound(g, budgets, Fraction(1) / (2 * m + eps), Fraction(1), False)
    if w:
        return HypothesisResult(False, w, "omega<=|S|/(2m+eps)+1")
    return HOLDS


def _con_tf(g, params, budgets):
    f = _f_int(g, params)
    m = _int_param(params, "m")
    fi = list(f.as_ints())
    cert = _search_range_mtc(g, m, fi, [x + 1 for x in fi], budgets)
    return cert is not None, cert


_register(
    "T-TF", "m-tree-connected (f,f+1)-factor from f(f+1) iso-toughness",
    "f(f+1)-iso-tough, f >= (2m-1)(2m/eps+1), and omega(G-S) <= |S|/(2m+eps) + 1 "
    "for all S imply an m-tree-connected (f,f+1)-factor",
    "implication", _hyp_tf, _con_tf,
)


def _hyp_xt(g, params, budgets):
    if params.factor_edge_ids is None:
        return HypothesisResult(False, None, "needs-factor")
    m = _int_param(params, "m")
    eps = params.epsilon
    if eps is None or eps <= 0:
        raise PreconditionError("needs eps > 0")
    degs = [0] * g.n
    for eid in params.factor_edge_ids:
        u, v = g.edges[eid]
        degs[u] += 1
        degs[v] += 1
    if any(Fraction(d) < (2 * m - 1) * (2 * m / eps + 1) for d in degs):
        return HypothesisResult(False, None, "min-deg-F")
    w = _cond_omega_bound(g, budgets, Fraction(1) / (2 * m + eps), Fraction(1), False)
    if w:
        return HypothesisResult(False, w, "omega<=|S|/(2m+eps)+1")
    return HOLDS


def _con_xt(g, params, budgets):
    from .treeconn import augment_factor

    m = _int_param(params, "m")
    base = certificate_from_ids(g, params.factor_edge_ids)
    cert = augment_factor(g, base, m, None, budgets)
    return cert is not None, cert


_register(
    "T-XT", "Tree-connected extension of a high-minimum-degree factor",
    "a factor F with min degree >= (2m-1)(2m/eps+1) in a graph with omega(G-S) "
    "<= |S|/(2m+eps) + 1 extends to an m-tree-connected H with d_H <= d_F + 1",
    "implication", _hyp_xt, _con_xt,
)


def _hyp_tc(g, params, budgets):
    m = _int_param(params, "m")
    w = _cond_iso_omega(g, budgets, Fraction(m + 1, 2), Fraction(1, m), Fraction(1))
    if w:
        return HypothesisResult(False, w, "(m+1)/2*iso+omega<=|S|/m+1")
    return HOLDS


def _con_tc(g, params, budgets):
    m = _int_param(params, "m")
    return _tree_conclusion(g, m, budgets, require_all_u=True)


_register(
    "T-TC", "Bounded-degree m-tree-connected factor from the iso/omega bound",
    "(m+1)/2 * iso(G-S) + omega(G-S) <= |S|/m + 1 for all S implies an "
    "m-tree-connected factor with max degree <= 2m+1 and degree <= m+1 at any "
    "prescribed vertex",
    "implication", _hyp_tc, _con_tc,
)


def _hyp_lt(g, params, budgets):
    m = _int_param(params, "m")
    if g.n > budgets.subset_n_cap:
        raise ScaleExceeded("Omega_m sweep too large")
    index = MtcIndex(g, m, budgets)
    full = g.full_mask
    for s_mask in range(full + 1):
        num = index.omega_m_times_m(full & ~s_mask)  # m * Omega_m
        # Omega_m(G-S) <= |S|/m + 1  <=>  num <= |S| + m
        if num > s_mask.bit_count() + m:
            w = set_witness(s_mask, Fraction(num, m),
                            Fraction(s_mask.bit_count(), m) + 1, "Omega_m<=|S|/m+1")
            return HypothesisResult(False, w, "Omega_m-bound")
    return HOLDS


_register(
    "T-LT", "Bounded-degree m-tree-connected factor from the Omega_m bound",
    "Omega_m(G-S) <= |S|/m + 1 for all S implies an m-tree-connected factor with "
    "max degree <= 2m+1 and degree <= m+1 at any prescribed vertex",
    "implication", _hyp_lt, _con_tc,
)


def _con_lo(g, params, budgets):
    m = _int_param(params, "m")
    rep = worst_omega_set(g, m, budgets)
    return rep.audit_ok(), None


_register(
    "T-LO", "Extremal-set component dichotomy",
    "for S maximizing Omega_m(G-S) - |S|/m with |S| maximal, every component of "
    "G-S is m-tree-connected or has max degree <= m",
    "certificate", lambda g, p, b: HOLDS, _con_lo,
)


def _hyp_tcc1(g, params, budgets):
    m = _int_param(params, "m")
    eps = params.epsilon
    if eps is None or eps <= 0:
        raise PreconditionError("needs eps > 0")
    bad = _tough(g, budgets, m + eps, "(m+eps)-tough")
    if bad:
        return bad
    t = VertexFn.constant(g.n, Fraction(m * m + m, 2) * (m / eps + 1))
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:(m^2+m)(m/eps+1)/2")
    if bad:
        return bad
    return HOLDS


def _con_tc_plain(g, params, budgets):
    m = _int_param(params, "m")
    return _tree_conclusion(g, m, budgets, require_all_u=False)


_register(
    "T-TCC1", "Bounded-degree m-tree-connected factor in (m+eps)-tough graphs",
    "every (m+eps)-tough, (m^2+m)(m/eps+1)/2-iso-tough graph has an "
    "m-tree-connected factor with max degree <= 2m+1",
    "implication", _hyp_tcc1, _con_tc_plain,
)


def _hyp_tcc2(g, params, budgets):
    m = _int_param(params, "m")
    bad = _tough(g, budgets, Fraction(2 * m), "2m-tough")
    if bad:
        return bad
    t = VertexFn.constant(g.n, m * m + m)
    bad = _iso_tough_fn(g, budgets, t, "iso-tough:m^2+m")
    if bad:
        return bad
    return HOLDS


_register(
    "T-TCC2", "Bounded-degree m-tree-connected factor in 2m-tough graphs",
    "every 2m-tough (m^2+m)-iso-tough graph has an m-tree-connected factor with "
    "max degree <= 2m+1",
    "implication", _hyp_tcc2, _con_tc_plain,
)


def _hyp_24(g, params, budgets):
    w = _cond_iso_omega(g, budgets, Fraction(3, 2), Fraction(1, 2), Fraction(1))
    if w:
        return HypothesisResult(False, w, "3/2*iso+omega<=|S|/2+1")
    return HOLDS


def _con_24(g, params, budgets):
    cert = connected_24_factor(g, "exhaustive", budgets)
    return cert is not None, cert


_register(
    "T-24", "Connected {2,4}-factor from the 3/2-iso/omega bound",
    "3/2 * iso(G-S) + omega(G-S) <= |S|/2 + 1 for all S implies a connected "
    "{2,4}-factor",
    "implication", _hyp_24, _con_24,
)


def _hyp_jg(g, params, budgets):
    if g.n < 2:
        return HypothesisResult(False, None, "order>=2")
    if not is_m_tree_connected(g, 2):
        return HypothesisResult(False, None, "2-tree-connected")
    return HOLDS


def _con_jg(g, params, budgets):
    cert = spanning_eulerian(g, "construct", budgets)
    return cert is not None, cert


_register(
    "T-JG", "Spanning Eulerian subgraph of 2-tree-connected graphs",
    "every 2-tree-connected graph has a connected spanning subgraph with all "
    "degrees even",
    "implication", _hyp_jg, _con_jg,
)


def _hyp_lb(g, params, budgets):
    if params.r is None:
        return HypothesisResult(False, None, "needs-r")
    return HOLDS


def _con_lb(g, params, budgets):
    from .constructions import lowerbound_family, verify_family_metadata

    r = _int_param(params, "r")
    h = int(params.h_const) if params.h_const is not None else 2
    nd = int(params.n_div) if params.n_div is not None else 1
    if h < 2:
        return False, None
    family, spec = lowerbound_family(r, h, nd)
    problems = verify_family_metadata(family, spec)
    return not problems, None


_register(
    "T-LB", "Lower-bound family metadata audit",
    "the 2nr+1-copy blowup family assembles with the predicted counts "
    "(p = 2nr+1, |V| = n + 10(h+1)p, prescribed joins and apex degrees)",
    "certificate", _hyp_lb, _con_lb,
)


# ---------------------------------------------------------------------------
# Audit and campaign engine
# ---------------------------------------------------------------------------


def registry_ids() -> list[str]:
    return sorted(REGISTRY)


def check_hypothesis(
    g: MultiGraph,
    theorem_id: str,
    params: ThresholdParams,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> HypothesisResult:
    entry = REGISTRY.get(theorem_id)
    if entry is None:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}")
    return entry.hypothesis(g, params, budgets)


def verify_conclusion(
    g: MultiGraph,
    theorem_id: str,
    params: ThresholdParams,
    budgets: Budgets = DEFAULT_BUDGETS,
):
    entry = REGISTRY.get(theorem_id)
    if entry is None:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}")
    return entry.conclusion(g, params, budgets)


def audit(
    g: MultiGraph,
    theorem_id: str,
    params: ThresholdParams,
    budgets: Budgets = DEFAULT_BUDGETS,
    graph_id: str = "",
) -> CaseReport:
    entry = REGISTRY.get(theorem_id)
    if entry is None:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}")
    start = time.perf_counter()
    note = ""
    try:
        hyp = entry.hypothesis(g, params, budgets)
        if entry.kind == "iff":
            found, cert = entry.conclusion(g, params, budgets)
            if hyp.holds and found:
                verdict = "PASS"
            elif not hyp.holds and not found:
                verdict = "VACUOUS"
            else:
                verdict = "COUNTEREXAMPLE"
                note = "criterion and finder disagree"
        elif not hyp.holds:
            found, cert = False, None
            verdict = "VACUOUS"
        else:
            found, cert = entry.conclusion(g, params, budgets)
            verdict = "PASS" if found else "COUNTEREXAMPLE"
    except ScaleExceeded as exc:
        hyp = HypothesisResult(False, None, "budget")
        found, cert = False, None
        verdict = "INCONCLUSIVE"
        note = str(exc)
    elapsed = time.perf_counter() - start
    dump = ""
    if verdict == "COUNTEREXAMPLE":
        from .graphs import emit_graph

        dump = emit_graph(g, "edgelist")
    return CaseReport(
        theorem_id=theorem_id,
        graph_id=graph_id,
        params=params,
        hypothesis=hyp,
        found=found,
        certificate=cert,
        verdict=verdict,
        note=note,
        graph_dump=dump,
        elapsed=elapsed,
    )


def parse_theorem_spec(spec: str) -> tuple[str, ThresholdParams]:
    """Parse "T-A:r=2" / "T-MT:r=2,n=1" into (id, params)."""
    tid, _, rest = spec.partition(":")
    tid = tid.strip()
    if tid not in REGISTRY:
        raise PreconditionError(f"unknown theorem id {tid!r}")
    mapping = {}
    if rest.strip():
        for tok in rest.split(","):
            key, _, val = tok.partition("=")
            if not val:
                raise PreconditionError(f"bad theorem parameter {tok!r}")
            mapping[key.strip()] = val.strip()
    return tid, ThresholdParams.from_mapping(mapping)


@dataclass
class CampaignSummary:
    counts: dict = field(default_factory=dict)   # theorem -> verdict -> count
    counterexamples: list = field(default_factory=list)

    def add(self, report: CaseReport) -> None:
        per = self.counts.setdefault(report.theorem_id, {})
        per[report.verdict] = per.get(report.verdict, 0) + 1
        if report.verdict == "COUNTEREXAMPLE":
            self.counterexamples.append(report)

    def total(self, verdict: str) -> int:
        return sum(per.get(verdict, 0) for per in self.counts.values())

    def to_json(self) -> dict:
        return {
            "counts": {tid: dict(sorted(per.items())) for tid, per in sorted(self.counts.items())},
            "counterexamples": [r.to_json() for r in self.counterexamples],
        }


def _run_case(args):
    gid, g, tid, params, budgets = args
    return audit(g, tid, params, budgets, graph_id=gid)


def campaign(
    corpus,
    theorem_specs: list[str],
    budgets: Budgets = DEFAULT_BUDGETS,
    jobs: int = 1,
) -> tuple[CampaignSummary, list[CaseReport]]:
    """Audit every theorem spec against every corpus graph.

    ``corpus`` is an iterable of (graph_id, MultiGraph).  Case order (and the
    report stream) is by case index, not completion time.
    """
    parsed = [parse_theorem_spec(s) for s in theorem_specs]
    cases = []
    for gid, g in corpus:
        for tid, params in parsed:
            cases.append((gid, g, tid, params, budgets))
    if jobs > 1 and len(cases) > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_case, cases, chunksize=max(1, len(cases) // (4 * jobs))))
    else:
        reports = [_run_case(c) for c in cases]
    summary = CampaignSummary()
    for rep in reports:
        summary.add(rep)
    return summary, reports
