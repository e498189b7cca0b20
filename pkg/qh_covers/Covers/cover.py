# Covers (A, P) of B = End_A(P)^op: the Schur functor F, the regular module
# FA, the unit eta_A and the relative QF3 conditions on V = FA.

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from ..Core.algebra import (Algebra, Representation, RightRepresentation, dual_module, reduce_algebra_mod_p,
                            regular_module)
from ..Core.exceptions import NotProjectiveError
from ..Core.homology import FreeResolution, SchurFunctor, UnitMap, free_resolution, is_projective
from ..Core.linear_algebra import unit_rank
from ..Core.qh_structure import HeredityChain
from ..Core.radical import is_semisimple, projective_module
from ..Schur.schur_algebra import SchurData, schur_heredity_chain

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class CoverSpec:
    """A pair (A, P) with P projective, and the functor F = Hom_A(P, -).

    Attributes:
        functor (SchurFunctor): F, realised by an idempotent, a projective or
            a right module.
        projective (Representation | None): P as a left A-module.
        faithful (Representation | None): a faithful A-module used for radicals
            (the tensor space for Schur algebras).
        chain (HeredityChain | None): a split heredity chain of A, if known.
        name (str): label for reports.
    """

    functor: SchurFunctor
    projective: Representation | None = None
    faithful: Representation | None = None
    chain: HeredityChain | None = None
    name: str = ""
    _resolution: FreeResolution | None = field(default=None, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    @classmethod
    def from_idempotent(cls, a: Algebra, e: np.ndarray, faithful: Representation | None = None,
                        chain: HeredityChain | None = None, name: str = "") -> CoverSpec:
        functor = SchurFunctor.from_idempotent(a, e)
        p, _ = projective_module(a, e, "Ae")
        return cls(functor, p, faithful, chain, name or a.name)

    @classmethod
    def from_projective(cls, p: Representation, faithful: Representation | None = None,
                        chain: HeredityChain | None = None, name: str = "") -> CoverSpec:
        """Raises NotProjectiveError when P fails the splitting test."""
        return cls(SchurFunctor.from_projective(p), p, faithful, chain, name or p.algebra.name)

    @classmethod
    def from_right_module(cls, v: RightRepresentation, faithful: Representation | None = None,
                          chain: HeredityChain | None = None, name: str = "") -> CoverSpec:
        """F = V (x)_A -, or F = e- when V = eA remembers its idempotent."""
        a = v.algebra
        p = projective_module(a, v.idempotent, "Ae")[0] if v.idempotent is not None else None
        return cls(SchurFunctor.from_right_module(v), p, faithful, chain, name or a.name)

    @classmethod
    def from_schur(cls, data: SchurData, with_chain: bool = True) -> CoverSpec:
        """(S, V^{(x)d}) realised by e = xi_omega, with the dominance-ordered chain."""
        chain = schur_heredity_chain(data) if with_chain else None
        return cls.from_idempotent(data.algebra, data.idempotent, data.module, chain, data.algebra.name)

    @property
    def algebra(self) -> Algebra:
        return self.functor.algebra

    @property
    def b(self) -> Algebra:
        return self.functor.b

    @property
    def fa(self) -> Representation:
        """FA as a left B-module."""
        return self.functor.regular

    @cached_property
    def v(self) -> RightRepresentation:
        """FA as a right A-module."""
        return self.functor.regular_right_module()

    @cached_property
    def dual_faithful(self) -> Representation | None:
        """D of the faithful module: faithful over the opposite algebra."""
        return dual_module(self.faithful) if self.faithful is not None else None

    @cached_property
    def regular_unit(self) -> UnitMap:
        """eta_A : A -> Hom_B(FA, FA)."""
        return self.functor.unit(regular_module(self.algebra))

    @property
    def is_cover(self) -> bool:
        return self.regular_unit.is_iso

    @cached_property
    def rqf3(self) -> RQF3Verdict:
        return rqf3_check(self)

    @cached_property
    def b_semisimple(self) -> bool:
        """B has zero radical (over Z_(p): B mod p has zero radical)."""
        b = self.b
        if b.domain.is_local:
            return is_semisimple(reduce_algebra_mod_p(b))
        return is_semisimple(b)

    def fa_resolution(self, length: int) -> FreeResolution:
        """A projective resolution of FA over B of at least the given length, shared by all calculators."""
        with self._lock:
            res = self._resolution
            if res is None or (res.length < length and not res.complete):
                res = free_resolution(self.fa, length)
                self._resolution = res
                logger.debug("resolution of FA over %r: terms %s", self.b, res.terms)
            return res

    def __repr__(self) -> str:
        return f"CoverSpec({self.name}, A rank {self.algebra.rank}, B rank {self.b.rank})"


@dataclass(frozen=True)
class CoverVerdict:
    holds: bool
    evidence: dict[str, Any]


def double_centralizer_check(cover: CoverSpec) -> CoverVerdict:
    """Decide whether the canonical map A -> End_B(FA)^op is bijective.

    The canonical map is eta_A read in a basis of Hom_B(FA, FA); it is an
    isomorphism exactly when the pair is a cover.
    """
    unit = cover.regular_unit
    evidence = {"rank_a": cover.algebra.rank, "rank_end": len(unit.hom_basis), **unit.verdicts()}
    logger.info("double centralizer for %r: %s", cover, unit.is_iso)
    return CoverVerdict(unit.is_iso, evidence)


@dataclass(frozen=True)
class RQF3Verdict:
    """V projective, (A, R)-injective and (A, R)-strongly faithful as a right A-module."""

    projective: bool
    injective: bool
    strongly_faithful: bool

    @property
    def holds(self) -> bool:
        return self.projective and self.injective and self.strongly_faithful


def rqf3_check(cover: CoverSpec) -> RQF3Verdict:
    """Check the relative QF3 conditions on V = FA as a right A-module.

    V = eA is projective by construction. It is (A, R)-injective when D(V) is
    a projective left module, and (A, R)-strongly faithful when a -> (v a)_v
    embeds A split into a sum of copies of V.
    """
    a = cover.algebra
    dom = a.domain
    v = cover.v
    projective = cover.functor.kind == "idempotent" or is_projective(v.left)
    injective = is_projective(dual_module(v.left))
    embedding = np.ascontiguousarray(v.left.action.reshape(a.rank, -1).T)
    strongly_faithful = unit_rank(dom, embedding) == a.rank
    verdict = RQF3Verdict(projective, injective, strongly_faithful)
    logger.debug("relative QF3 conditions for %r: %s", cover, verdict)
    return verdict


def require_rqf3(cover: CoverSpec) -> None:
    verdict = cover.rqf3
    if not verdict.holds:
        raise NotProjectiveError(f"FA is not a projective, injective and strongly faithful right module of {cover!r}: "
                                 f"{verdict}")
