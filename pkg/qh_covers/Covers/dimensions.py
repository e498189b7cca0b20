# Relative dominant dimension, Hemmer-Nakano dimensions and global dimension.
#
# Values are Dimension objects: an exact integer, a lower bound "at-least:cap"
# when every test up to the cap passed, "infinite" when the relevant algebra
# is certified semisimple, or "minus-infinity" for Hemmer-Nakano dimensions of
# pairs that are not covers. Each report keeps the unit verdicts and the
# per-degree Ext/Tor groups it was computed from.

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from ..Core.algebra import Algebra, Representation, RightRepresentation, dual_module, regular_module
from ..Core.exceptions import InvalidInputError, VerificationError
from ..Core.homology import ExtResult, UnitMap, ext, free_resolution, projective_dimension, tor, unit_map
from ..Core.qh_structure import HeredityChain, standard_module
from ..Core.radical import basic_idempotents, is_semisimple, projective_module, simple_modules, socle
from ..Core.ring_arith import CoefficientDomain
from ..Schur.tensor_space import TensorSpace
from .cover import CoverSpec, require_rqf3

logger = logging.getLogger(__name__)

KINDS = ("domdim-module", "domdim-algebra", "hn-proj", "hn-standard")

FINITE = "finite"
AT_LEAST = "at-least"
INFINITE = "infinite"
MINUS_INFINITY = "minus-infinity"


@dataclass(frozen=True)
class Dimension:
    """A value in Z together with -inf, +inf and "at least n"."""

    kind: str
    value: int = 0

    @classmethod
    def finite(cls, n: int) -> Dimension:
        return cls(FINITE, int(n))

    @classmethod
    def at_least(cls, n: int) -> Dimension:
        return cls(AT_LEAST, int(n))

    @classmethod
    def infinite(cls) -> Dimension:
        return cls(INFINITE)

    @classmethod
    def minus_infinity(cls) -> Dimension:
        return cls(MINUS_INFINITY)

    @classmethod
    def parse(cls, text: str) -> Dimension:
        """Inverse of str(): "2", "-1", "at-least:8", "infinite", "minus-infinity"."""
        text = str(text).strip()
        if text in (INFINITE, MINUS_INFINITY):
            return cls(text)
        if text.startswith(AT_LEAST + ":"):
            return cls.at_least(int(text.split(":", 1)[1]))
        try:
            return cls.finite(int(text))
        except ValueError:
            raise InvalidInputError(f"not a dimension value: {text!r}") from None

    @property
    def lower(self) -> float:
        """Greatest certified lower bound."""
        if self.kind == MINUS_INFINITY:
            return -math.inf
        if self.kind == INFINITE:
            return math.inf
        return self.value

    @property
    def upper(self) -> float:
        """Least certified upper bound."""
        if self.kind == MINUS_INFINITY:
            return -math.inf
        if self.kind in (INFINITE, AT_LEAST):
            return math.inf
        return self.value

    def sort_key(self) -> tuple[int, int]:
        order = {MINUS_INFINITY: 0, FINITE: 1, AT_LEAST: 2, INFINITE: 3}
        return order[self.kind], self.value

    def __str__(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == AT_LEAST:
            return f"{AT_LEAST}:{self.value}"
        return self.kind


def minimum(values: Sequence[Dimension]) -> Dimension:
    """The least value; exact numbers sort before lower bounds and infinity."""
    return min(values, key=Dimension.sort_key)


@dataclass(frozen=True)
class DimensionReport:
    """One computed dimension with the evidence it was read from.

    Attributes:
        kind (str): one of KINDS.
        value (Dimension): the result.
        cap (int): the degree cap used.
        evidence (dict): unit verdicts and [degree, free rank, torsion] Ext/Tor rows.
    """

    kind: str
    value: Dimension
    cap: int
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "value": str(self.value), "cap": self.cap, "evidence": self.evidence}


def _leading_vanishing(groups: Sequence[ExtResult]) -> int:
    count = 0
    for g in groups:
        if not g.vanishes:
            break
        count += 1
    return count


def _check_cap(cap: int) -> None:
    if cap < 2:
        raise InvalidInputError("the degree cap must be at least 2")


def schur_domdim_formula(domain: CoefficientDomain, d: int) -> Dimension:
    """2 inf{k : (k+1) 1 is not a unit, 1 <= k < d}; infinite over the empty set."""
    for k in range(1, d):
        if not domain.is_unit(domain.element(k + 1)):
            return Dimension.finite(2 * k)
    return Dimension.infinite()


def qschur_domdim_formula(domain: CoefficientDomain, u: Any, d: int) -> Dimension:
    """2 inf{s : 1 + q + ... + q^s is not a unit, 1 <= s < d} with q = u^-2."""
    u = domain.element(u)
    if not domain.is_unit(u):
        raise InvalidInputError(f"u = {domain.format_element(u)} is not a unit of {domain}")
    q = domain.element(domain.inverse(u) * domain.inverse(u))
    total, power = domain.element(1), domain.element(1)
    for s in range(1, d):
        power = domain.element(power * q)
        total = domain.element(total + power)
        if not domain.is_unit(total):
            return Dimension.finite(2 * s)
    return Dimension.infinite()


def _unit_evidence(unit: UnitMap) -> dict[str, Any]:
    return {**unit.verdicts(), "rank": unit.source.rank, "hom_rank": len(unit.hom_basis)}


def _tor_route(cover: CoverSpec, fx: Representation, x_rank: int, cap: int) -> tuple[bool, list[ExtResult]]:
    """Phi_X test and Tor_i^B(D(FX), FA) for i = 0..cap-2.

    D(FX) (x)_B FA must be free of rank X for Phi_X to be an isomorphism.
    """
    res = cover.fa_resolution(cap - 1)
    groups = tor(RightRepresentation(dual_module(fx)), cover.fa, cap - 2, res)
    phi_iso = not groups[0].torsion_factors and groups[0].free_rank == x_rank
    return phi_iso, groups


def _domdim(cover: CoverSpec, x: Representation, cap: int, kind: str) -> DimensionReport:
    _check_cap(cap)
    require_rqf3(cover)
    dom = cover.algebra.domain
    fx, units = cover.functor.apply_with_units(x)
    unit = unit_map(cover.functor, x, fx, units)
    evidence: dict[str, Any] = {"unit": _unit_evidence(unit)}
    if x.rank == 0:
        return DimensionReport(kind, Dimension.infinite(), cap, evidence)
    res = cover.fa_resolution(cap - 1)
    ext_groups = ext(cover.fa, fx, cap - 2, res)[1:]
    evidence["ext"] = [g.evidence() for g in ext_groups]
    if dom.is_field:
        if not unit.is_mono:
            return DimensionReport(kind, Dimension.finite(0), cap, evidence)
        if not unit.is_iso:
            return DimensionReport(kind, Dimension.finite(1), cap, evidence)
        phi_iso, tor_groups = _tor_route(cover, fx, x.rank, cap)
        evidence["tor"] = [g.evidence() for g in tor_groups[1:]]
        vanishing = _leading_vanishing(ext_groups)
        if not phi_iso or _leading_vanishing(tor_groups[1:]) != vanishing:
            raise VerificationError(f"Ext and Tor routes disagree for {x.name} over {cover!r}")
    else:
        if not unit.is_split_mono:
            return DimensionReport(kind, Dimension.finite(0), cap, evidence)
        phi_iso, tor_groups = _tor_route(cover, fx, x.rank, cap)
        evidence["tor"] = [g.evidence() for g in tor_groups]
        evidence["phi_iso"] = phi_iso
        if not (unit.is_iso and phi_iso):
            return DimensionReport(kind, Dimension.finite(1), cap, evidence)
        vanishing = _leading_vanishing(tor_groups[1:])
    if cover.b_semisimple:
        value = Dimension.infinite()
    elif vanishing >= cap - 2:
        value = Dimension.at_least(cap)
    else:
        value = Dimension.finite(2 + vanishing)
    logger.info("%s of %s over %r: %s", kind, x.name, cover, value)
    return DimensionReport(kind, value, cap, evidence)


def domdim_of(cover: CoverSpec, x: Representation, cap: int) -> DimensionReport:
    """domdim_(A,R) X for the relative QF3 algebra given by a cover."""
    return _domdim(cover, x, cap, "domdim-module")


@lru_cache(maxsize=16)
def _cover_of(v: RightRepresentation) -> CoverSpec:
    return CoverSpec.from_right_module(v)


def domdim_module(a: Algebra, v: RightRepresentation, x: Representation, cap: int) -> DimensionReport:
    """domdim_(A,R) X relative to the right module V.

    Over a field the unit alpha_X = eta_X decides the values 0 and 1, and
    then 2 + the number of leading vanishing Ext^i_B(V, V (x)_A X); the same
    count read from Tor_i^B(D(V (x)_A X), V) must agree. Over Z_(p) the Tor
    route decides and Ext is kept as evidence.

    Raises:
        NotProjectiveError: when V fails the relative QF3 conditions.
        InvalidInputError: for a cap below 2.
    """
    if v.algebra is not a:
        raise InvalidInputError("V is not a right module over the given algebra")
    return domdim_of(_cover_of(v), x, cap)


def domdim_algebra(cover: CoverSpec, cap: int) -> DimensionReport:
    """domdim (A, R): the relative dominant dimension of the regular module."""
    return _domdim(cover, regular_module(cover.algebra), cap, "domdim-algebra")


def _is_projective_injective(gamma: Algebra, types: Sequence[int], faithful: Representation | None,
                             cache: dict[int, bool]) -> bool:
    """Every summand Gamma eps_s is injective: simple socle S_j and dim Gamma eps_s = dim eps_j Gamma."""
    dom = gamma.domain
    idems = basic_idempotents(gamma, faithful)
    for s in types:
        if s not in cache:
            p, _ = projective_module(gamma, idems[s])
            soc = socle(p, faithful)
            hits = [j for j, e in enumerate(idems) if np.count_nonzero(dom.matmul(p.matrix_of(e), soc))]
            ok = False
            if len(hits) == 1:
                j = hits[0]
                simple = simple_modules(gamma, faithful)[j]
                right_rank = projective_module(gamma.opposite, idems[j])[0].rank
                ok = soc.shape[1] == simple.rank and p.rank == right_rank
            cache[s] = ok
        if not cache[s]:
            return False
    return True


def domdim_brute(a: Algebra, x: Representation, cap: int, faithful: Representation | None = None) -> DimensionReport:
    """Count leading projective-injective terms of a minimal injective coresolution of X.

    The coresolution is D of a minimal projective resolution of DX over the
    opposite algebra; it stops at the first term that is not projective-injective.
    """
    a.domain.require_field("injective coresolution")
    _check_cap(cap)
    gamma = a.opposite
    dual_faithful = dual_module(faithful) if faithful is not None else None
    if is_semisimple(a, faithful):
        return DimensionReport("domdim-module", Dimension.infinite(), cap, {"semisimple": True})
    cache: dict[int, bool] = {}
    res = free_resolution(dual_module(x), cap - 1, minimal=True, faithful=dual_faithful,
                          stop_when=lambda types: not _is_projective_injective(gamma, types, dual_faithful, cache))
    flags = [_is_projective_injective(gamma, types, dual_faithful, cache) for types in res.generators]
    count = _leading_vanishing_flags(flags)
    evidence = {"terms": list(res.terms), "projective_injective": flags, "complete": res.complete}
    # an injective X has no finite bound below the cap; only semisimplicity certifies infinity
    if count >= cap or (count == len(flags) and res.complete):
        value = Dimension.at_least(cap)
    else:
        value = Dimension.finite(count)
    logger.info("brute-force domdim of %s: %s", x.name, value)
    return DimensionReport("domdim-module", value, cap, evidence)


def _leading_vanishing_flags(flags: Sequence[bool]) -> int:
    count = 0
    for f in flags:
        if not f:
            break
        count += 1
    return count


def hn_dim_proj(cover: CoverSpec, cap: int) -> DimensionReport:
    """Hemmer-Nakano dimension of A-proj: -inf when (A, P) is not a cover,
    otherwise the number of leading vanishing Ext^i_B(FA, FA), i >= 1."""
    _check_cap(cap)
    unit = cover.regular_unit
    evidence: dict[str, Any] = {"unit": _unit_evidence(unit)}
    if not unit.is_iso:
        return DimensionReport("hn-proj", Dimension.minus_infinity(), cap, evidence)
    res = cover.fa_resolution(cap + 1)
    groups = ext(cover.fa, cover.fa, cap, res)[1:]
    evidence["ext"] = [g.evidence() for g in groups]
    vanishing = _leading_vanishing(groups)
    if cover.b_semisimple:
        value = Dimension.infinite()
    elif vanishing >= cap:
        value = Dimension.at_least(cap)
    else:
        value = Dimension.finite(vanishing)
    logger.info("hn-proj of %r: %s", cover, value)
    return DimensionReport("hn-proj", value, cap, evidence)


def tensor_space_dimensions(ts: TensorSpace, cap: int) -> dict[str, DimensionReport]:
    """domdim and hn-proj of S = End_H(V^{(x)d}) read on the side of H.

    S is built as the commutant of H, so for n >= d the pair (S, S xi_omega)
    is a cover with xi_omega S xi_omega = H and F(S) = V^{(x)d}. Both
    dimensions then come from Ext^i_H(V^{(x)d}, V^{(x)d}) and the structure
    constants of S are never formed. Fields only.

    Returns:
        dict[str, DimensionReport]: keyed "domdim" and "hn_proj".
    """
    ts.domain.require_field("tensor space route")
    _check_cap(cap)
    if ts.n < ts.d:
        raise InvalidInputError(f"n = {ts.n} is smaller than d = {ts.d}")
    v = ts.module()
    evidence: dict[str, Any] = {"route": "tensor-space", "rank_h": v.algebra.rank, "rank_v": v.rank}
    if is_semisimple(v.algebra):
        evidence["semisimple"] = True
        return {"domdim": DimensionReport("domdim-algebra", Dimension.infinite(), cap, evidence),
                "hn_proj": DimensionReport("hn-proj", Dimension.infinite(), cap, evidence)}
    groups = ext(v, v, cap, free_resolution(v, cap + 1))[1:]
    evidence["ext"] = [g.evidence() for g in groups]
    vanishing = _leading_vanishing(groups)
    domdim = Dimension.at_least(cap) if vanishing >= cap - 2 else Dimension.finite(2 + vanishing)
    hn = Dimension.at_least(cap) if vanishing >= cap else Dimension.finite(vanishing)
    logger.info("tensor space route for n=%d d=%d over %s: domdim %s, hn-proj %s", ts.n, ts.d, ts.domain, domdim, hn)
    return {"domdim": DimensionReport("domdim-algebra", domdim, cap, evidence),
            "hn_proj": DimensionReport("hn-proj", hn, cap, evidence)}


def _standard_data(cover: CoverSpec, chain: HeredityChain, k: int, cap: int) -> tuple[str, UnitMap, list[ExtResult]]:
    delta = standard_module(chain, k).module
    fx, units = cover.functor.apply_with_units(delta)
    unit = unit_map(cover.functor, delta, fx, units)
    groups = ext(cover.fa, fx, cap, cover.fa_resolution(cap + 1))[1:]
    return chain.weights[k], unit, groups


def _map_weights(fn, size: int, workers: int) -> list:  # type: ignore[no-untyped-def,type-arg]
    if workers <= 1 or size <= 1:
        return [fn(k) for k in range(size)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, range(size)))


def hn_dim_standard(cover: CoverSpec, chain: HeredityChain, cap: int, workers: int = 1) -> DimensionReport:
    """Hemmer-Nakano dimension of F(Delta).

    -inf when (A, P) is not a cover or some eta_Delta is not (split) mono; -1
    when all are but some is not an isomorphism; otherwise the least number of
    leading vanishing Ext^i_B(FA, F Delta(lambda)), i >= 1, over all lambda.
    """
    _check_cap(cap)
    split = cover.algebra.domain.is_local
    cover.fa_resolution(cap + 1)
    rows = _map_weights(lambda k: _standard_data(cover, chain, k, cap), chain.size, workers)
    evidence: dict[str, Any] = {"cover": cover.is_cover,
                                "unit": {w: _unit_evidence(u) for w, u, _ in rows},
                                "ext": {w: [g.evidence() for g in groups] for w, _, groups in rows}}
    monos = [u.is_split_mono if split else u.is_mono for _, u, _ in rows]
    if not cover.is_cover or not all(monos):
        value = Dimension.minus_infinity()
    elif not all(u.is_iso for _, u, _ in rows):
        value = Dimension.finite(-1)
    else:
        vanishing = min(_leading_vanishing(groups) for _, _, groups in rows)
        if cover.b_semisimple:
            value = Dimension.infinite()
        elif vanishing >= cap:
            value = Dimension.at_least(cap)
        else:
            value = Dimension.finite(vanishing)
    logger.info("hn-standard of %r: %s", cover, value)
    return DimensionReport("hn-standard", value, cap, evidence)


def inf_domdim_standards(a: Algebra, v: RightRepresentation | CoverSpec, chain: HeredityChain, cap: int,
                         workers: int = 1) -> DimensionReport:
    """inf over lambda of domdim_(A,R) Delta(lambda)."""
    cover = v if isinstance(v, CoverSpec) else _cover_of(v)
    if cover.algebra is not a:
        raise InvalidInputError("cover and algebra differ")
    cover.fa_resolution(cap - 1)
    reports = _map_weights(lambda k: domdim_of(cover, standard_module(chain, k).module, cap), chain.size, workers)
    evidence = {w: {"value": str(r.value), **r.evidence} for w, r in zip(chain.weights, reports)}
    value = minimum([r.value for r in reports])
    logger.info("inf domdim over standards of %r: %s", cover, value)
    return DimensionReport("domdim-module", value, cap, evidence)


def global_dimension(a: Algebra, cap: int, faithful: Representation | None = None) -> Dimension:
    """max pdim of the simple modules; "at-least:cap" when a resolution runs past the cap."""
    a.domain.require_field("global dimension")
    if is_semisimple(a, faithful):
        return Dimension.finite(0)
    pdims = []
    for s in simple_modules(a, faithful):
        pd = projective_dimension(s, cap, faithful)
        if pd is None:
            return Dimension.at_least(cap)
        pdims.append(pd)
    return Dimension.finite(max(pdims))
