# Cross-checks between computed dimensions: rigidity of covers, the
# characteristic 2 obstruction for cell modules, and relations between the
# values over Z_(p), over F_p and between the different calculators.
#
# A relation between two Dimension values fails only when it is refuted by
# their certified bounds; "at-least" values never refute a lower bound.

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..Core.algebra import hom_space, idempotent_block, regular_module
from ..Core.linear_algebra import unit_rank
from ..Core.qh_structure import HeredityChain, standard_module
from ..Core.radical import simple_modules, top_of_module
from ..Core.ring_arith import CoefficientDomain
from ..Schur.partitions import format_partition, longest_chain
from ..Schur.schur_algebra import schur_algebra, schur_heredity_chain
from .cover import CoverSpec
from .dimensions import AT_LEAST, FINITE, Dimension

logger = logging.getLogger(__name__)


def _scaled(x: Dimension, factor: int) -> Dimension:
    if x.kind in (FINITE, AT_LEAST):
        return Dimension(x.kind, factor * x.value)
    return x


def _shifted(x: Dimension, offset: int) -> Dimension:
    if x.kind in (FINITE, AT_LEAST):
        return Dimension(x.kind, x.value + offset)
    return x


def _possibly_geq(x: Dimension, y: Dimension) -> bool:
    """x >= y is not refuted by the bounds."""
    return x.upper >= y.lower


def _possibly_equal(x: Dimension, y: Dimension) -> bool:
    return max(x.lower, y.lower) <= min(x.upper, y.upper)


def functor_is_equivalence(cover: CoverSpec) -> bool:
    """F is an equivalence iff P is a progenerator.

    For F = e- this is A e A = A (tested modulo p over Z_(p)); otherwise every
    simple A-module must survive F (fields only).
    """
    a = cover.algebra
    dom = a.domain
    trunc = cover.functor.truncation
    if trunc is not None:
        ea = idempotent_block(regular_module(a), trunc.idempotent)[0]
        images = dom.matmul(a.left_matrices, ea)
        gens = np.ascontiguousarray(np.asarray(images).transpose(1, 0, 2)).reshape(a.rank, -1)
        return unit_rank(dom, dom.normalize(gens)) == a.rank
    return all(cover.functor.apply(s).rank for s in simple_modules(a, cover.faithful))


@dataclass(frozen=True)
class RigidityVerdict:
    """Lambda* = {lambda : F L(lambda) != 0} with d(Lambda*), and whether hn_value is compatible with it."""

    consistent: bool
    surviving: tuple[str, ...]
    depth: int
    equivalence: bool
    hn_value: Dimension

    def to_json(self) -> dict[str, Any]:
        return {"consistent": self.consistent, "surviving": list(self.surviving), "depth": self.depth,
                "equivalence": self.equivalence, "hn_value": str(self.hn_value)}


def surviving_weights(cover: CoverSpec, chain: HeredityChain) -> list[int]:
    """Indices k with F(L(lambda^k)) != 0, L(lambda^k) the top of Delta(lambda^k)."""
    out = []
    for k in range(chain.size):
        top, _ = top_of_module(standard_module(chain, k).module, cover.faithful)
        if cover.functor.apply(top).rank:
            out.append(k)
    return out


def rigidity_check(cover: CoverSpec, chain: HeredityChain, hn_value: Dimension) -> RigidityVerdict:
    """If the Hemmer-Nakano dimension of F(Delta) reaches d(Lambda*) + 1, F must be an equivalence."""
    cover.algebra.domain.require_field("rigidity check")
    kept = surviving_weights(cover, chain)
    if chain.partitions:
        depth = longest_chain([chain.partitions[k] for k in kept])
        names = tuple(format_partition(chain.partitions[k]) for k in kept)
    else:
        depth = max(len(kept) - 1, 0)
        names = tuple(chain.weights[k] for k in kept)
    equivalence = functor_is_equivalence(cover)
    forced = hn_value.lower >= depth + 1
    verdict = RigidityVerdict(equivalence or not forced, names, depth, equivalence, hn_value)
    logger.info("rigidity for %r: Lambda* = %s, d = %d, consistent %s", cover, names, depth, verdict.consistent)
    return verdict


@dataclass(frozen=True)
class SpechtProbe:
    hom_rank: int
    characteristic: int
    d: int

    @property
    def nonzero(self) -> bool:
        return self.hom_rank > 0


def specht_uniqueness_probe(domain: CoefficientDomain, d: int) -> SpechtProbe:
    """rank Hom_B(F Delta((d)), F Delta((1^d))) for the Schur algebra S(d, d) over a field.

    Nonzero in characteristic 2, where the two cell modules coincide.
    """
    domain.require_field("cell module probe")
    data = schur_algebra(d, d, domain)
    chain = schur_heredity_chain(data)
    top = data.functor.apply(standard_module(chain, 0).module)
    bottom = data.functor.apply(standard_module(chain, chain.size - 1).module)
    rank = len(hom_space(top, bottom))
    logger.info("Hom(F Delta(%d), F Delta(1^%d)) over %s has rank %d", d, d, domain, rank)
    return SpechtProbe(rank, domain.characteristic, d)


def truncation_consistency(field_value: Dimension, local_value: Dimension) -> bool:
    """F_p value >= Z_(p) value - 1 and Z_(p) value >= F_p value."""
    return _possibly_geq(field_value, _shifted(local_value, -1)) and _possibly_geq(local_value, field_value)


def gendo_symmetric_halving(domdim_algebra: Dimension, inf_standards: Dimension) -> bool:
    """domdim A = 2 inf_lambda domdim Delta(lambda)."""
    return _possibly_equal(domdim_algebra, _scaled(inf_standards, 2))


def hn_domdim_bound(hn_proj: Dimension, domdim_algebra: Dimension, exact: bool = False) -> bool:
    """hn-proj >= domdim A - 2, with equality when ``exact``."""
    target = _shifted(domdim_algebra, -2)
    if exact:
        return _possibly_equal(hn_proj, target)
    return _possibly_geq(hn_proj, target)


def equivalence_implication(hn_proj: Dimension, gldim: Dimension, equivalence: bool) -> bool:
    """hn-proj >= gldim A forces F to be an equivalence."""
    forced = hn_proj.lower >= gldim.upper and not math.isinf(gldim.upper)
    return equivalence or not forced
