# Heredity chains, standard and costandard modules, and the split
# quasi-hereditary axioms.
#
# Weights are listed most dominant first, lambda^1 > lambda^2 > ... > lambda^t,
# one idempotent e_k per weight. With E_k = e_1 + ... + e_k:
#   heredity ideals   J^(k) = A E_k A  (J^(t) = A for a heredity chain),
#   standard modules  Delta(lambda^k) = A e_k / J^(k-1) e_k,
#   kernels           C(lambda^k) = J^(k-1) e_k,
# so Delta(lambda^1) = A e_1 is projective and C(lambda^k) is filtered by the
# standard modules of the weights above lambda^k.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Sequence

import numpy as np

from .algebra import (Algebra, Representation, dual_module, hom_space, idempotent_block, quotient_module,
                      reduce_algebra_mod_p, reduce_representation, regular_module, submodule, submodule_generated)
from .exceptions import InvalidInputError, VerificationError
from .homology import ExtResult, ext, free_resolution
from .linear_algebra import unit_rank
from .radical import projective_module
from .ring_arith import Matrix, cokernel_invariants

logger = logging.getLogger(__name__)

Partition = tuple[int, ...]


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """lam >= mu in the dominance order (partial sums of lam bound those of mu)."""
    total_l = total_m = 0
    for i in range(max(len(lam), len(mu))):
        total_l += lam[i] if i < len(lam) else 0
        total_m += mu[i] if i < len(mu) else 0
        if total_l < total_m:
            return False
    return True


@dataclass(frozen=True, eq=False)
class HeredityChain:
    """An ordered family of idempotents labelled by weights, most dominant first.

    Attributes:
        algebra (Algebra): A.
        weights (tuple[str, ...]): weight labels lambda^1 > ... > lambda^t.
        idempotents (tuple[np.ndarray, ...]): e_k in A-coordinates.
        partitions (tuple[Partition, ...]): partition of each weight when the
            labels are partitions; the partial order is then dominance,
            otherwise the chain order itself.
    """

    algebra: Algebra
    weights: tuple[str, ...]
    idempotents: tuple[np.ndarray, ...]
    partitions: tuple[Partition, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.weights or len(self.weights) != len(self.idempotents):
            raise InvalidInputError("a heredity chain needs one idempotent per weight")
        if len(set(self.weights)) != len(self.weights):
            raise InvalidInputError("chain weights must be distinct")
        if self.partitions and len(self.partitions) != len(self.weights):
            raise InvalidInputError("one partition per weight expected")
        dom = self.algebra.domain
        idems = tuple(dom.normalize(np.asarray(e, dtype=dom.dtype)) for e in self.idempotents)
        for w, e in zip(self.weights, idems):
            if e.shape != (self.algebra.rank,) or not self.algebra.is_idempotent(e):
                raise InvalidInputError(f"chain element for {w} is not an idempotent of {self.algebra!r}")
        object.__setattr__(self, "idempotents", idems)

    @property
    def size(self) -> int:
        return len(self.weights)

    def index(self, weight: str) -> int:
        if weight not in self.weights:
            raise InvalidInputError(f"unknown weight {weight!r}")
        return self.weights.index(weight)

    def leq(self, i: int, j: int) -> bool:
        """weight i <= weight j in the partial order."""
        if self.partitions:
            return dominates(self.partitions[j], self.partitions[i])
        return i >= j

    def upper_idempotent(self, k: int) -> np.ndarray:
        """e_1 + ... + e_k (zero for k = 0)."""
        dom = self.algebra.domain
        total = dom.zeros(self.algebra.rank)
        for e in self.idempotents[:k]:
            total = dom.normalize(total + e)
        return total

    @cached_property
    def opposite(self) -> HeredityChain:
        """The same idempotents over the opposite algebra."""
        return HeredityChain(self.algebra.opposite, self.weights, self.idempotents, self.partitions)

    def __repr__(self) -> str:
        return f"HeredityChain({' > '.join(self.weights)} over {self.algebra!r})"


@dataclass(frozen=True, eq=False)
class StandardModule:
    """Delta(lambda) = P(lambda) / C(lambda) with the data of its presentation.

    ``kernel_basis`` and ``projection`` are written in coordinates of
    ``projective``; ``projective_basis`` places P(lambda) = A e inside A.
    """

    weight: str
    index: int
    module: Representation
    projective: Representation
    projective_basis: np.ndarray
    projection: np.ndarray
    kernel: Representation
    kernel_basis: np.ndarray


def standard_module(chain: HeredityChain, k: int) -> StandardModule:
    """Delta(lambda^k) as the quotient of A e_k by J^(k-1) e_k.

    Raises:
        InvalidInputError: for an index outside the chain.
        VerificationError: when the quotient is zero or not free over Z_(p).
    """
    if not 0 <= k < chain.size:
        raise InvalidInputError(f"chain index {k} out of range 0..{chain.size - 1}")
    return _standard(chain, k)


@lru_cache(maxsize=256)
def _standard(chain: HeredityChain, k: int) -> StandardModule:
    a = chain.algebra
    dom = a.domain
    w = chain.weights[k]
    p, basis = projective_module(a, chain.idempotents[k], f"P({w})")
    if k == 0:
        kernel = dom.zeros((p.rank, 0))
    else:
        corner, _ = idempotent_block(p, chain.upper_idempotent(k))
        kernel = submodule_generated(p, corner)
    if dom.is_local and kernel.shape[1]:
        inv = cokernel_invariants(Matrix(dom, kernel))
        if inv.torsion_factors:
            raise VerificationError(f"Delta({w}) is not free over {dom}")
    if kernel.shape[1] == p.rank:
        raise VerificationError(f"Delta({w}) is zero: e_{k} lies in the ideal of the weights above it")
    delta, projection = quotient_module(p, kernel, f"Delta({w})")
    c = submodule(p, kernel, f"C({w})")
    logger.debug("Delta(%s): rank %d, C rank %d", w, delta.rank, c.rank)
    return StandardModule(w, k, delta, p, basis, projection, c, kernel)


def standard_modules(chain: HeredityChain) -> list[StandardModule]:
    return [standard_module(chain, k) for k in range(chain.size)]


def costandard_modules(chain: HeredityChain, verify: bool = False) -> list[Representation]:
    """nabla(lambda) = D(Delta^op(lambda)), the dual of the standard of the opposite chain.

    With ``verify`` the orthogonality Ext^1(Delta(mu), nabla(lambda)) = 0 is
    checked for every pair and a VerificationError raised when it fails.
    """
    nablas = []
    for k in range(chain.size):
        delta_op = standard_module(chain.opposite, k).module
        dual = dual_module(delta_op)
        nablas.append(Representation(chain.algebra, dual.action, f"nabla({chain.weights[k]})"))
    if verify:
        for s in standard_modules(chain):
            res = free_resolution(s.module, 2)
            for l, nabla in enumerate(nablas):
                if not ext(s.module, nabla, 1, res)[1].vanishes:
                    raise VerificationError(f"Ext^1(Delta({s.weight}), nabla({chain.weights[l]})) is not zero")
    return nablas


@lru_cache(maxsize=32)
def reduce_chain(chain: HeredityChain) -> HeredityChain:
    """The chain reduced from Z_(p) to F_p."""
    reduced = reduce_algebra_mod_p(chain.algebra)
    dom = chain.algebra.domain
    return HeredityChain(reduced, chain.weights, tuple(dom.residue_array(e) for e in chain.idempotents),
                         chain.partitions)


@dataclass(frozen=True)
class FiltrationVerdict:
    """Membership in F(Delta), with the layers of a filtration when it holds.

    ``layers`` lists (weight, multiplicity) from the top of the module down:
    least dominant weights first, the most dominant standards at the bottom.
    """

    holds: bool
    layers: tuple[tuple[str, int], ...]
    certificate: dict[str, Any]


def _orthogonality(m: Representation, nablas: Sequence[Representation]) -> list[tuple[ExtResult, ExtResult]]:
    """(Hom, Ext^1) of M against every costandard module."""
    res = free_resolution(m, 2)
    out = []
    for nabla in nablas:
        groups = ext(m, nabla, 1, res)
        out.append((groups[0], groups[1]))
    return out


def _field_filtration(m: Representation, chain: HeredityChain, allowed: Sequence[int] | None = None) -> FiltrationVerdict:
    """Ext^1-against-nabla test over a field; ``allowed`` restricts the weights that may occur."""
    if m.rank == 0:
        return FiltrationVerdict(True, (), {"ext1": [], "hom": []})
    nablas = costandard_modules(chain)
    data = _orthogonality(m, nablas)
    hom = [h.free_rank for h, _ in data]
    ext1 = [e.free_rank for _, e in data]
    ranks = [standard_module(chain, k).module.rank for k in range(chain.size)]
    total = sum(h * r for h, r in zip(hom, ranks))
    holds = not any(ext1) and total == m.rank
    if allowed is not None:
        holds = holds and all(hom[k] == 0 for k in range(chain.size) if k not in allowed)
    layers = tuple((chain.weights[k], hom[k]) for k in reversed(range(chain.size)) if hom[k])
    certificate = {"hom": hom, "ext1": ext1, "rank": m.rank, "filtered_rank": total}
    return FiltrationVerdict(holds, layers if holds else (), certificate)


def has_delta_filtration(m: Representation, chain: HeredityChain) -> FiltrationVerdict:
    """Decide M in F(Delta) and return the layers of a filtration.

    Over a field M is filtered by standards iff Ext^1(M, nabla(lambda)) = 0 for
    all lambda; the multiplicity of Delta(lambda) is then dim Hom(M, nabla(lambda)).
    Over Z_(p) M is free by construction and the test runs on M mod p against
    the reduced chain.
    """
    dom = m.domain
    if not dom.is_local:
        return _field_filtration(m, chain)
    reduced = reduce_chain(chain)
    verdict = _field_filtration(reduce_representation(m, reduced.algebra), reduced)
    certificate = {"free_rank": m.rank, "residue": verdict.certificate}
    return FiltrationVerdict(verdict.holds, verdict.layers, certificate)


@dataclass(frozen=True)
class QHVerdict:
    passed: bool
    axioms: dict[str, bool]
    evidence: dict[str, Any]


AXIOMS = ("i", "ii", "iii", "iv", "v")


def _progenerator(chain: HeredityChain) -> bool:
    """A E_t A = A for the sum of all chain idempotents (tested mod p over Z_(p))."""
    a = chain.algebra
    dom = a.domain
    e = chain.upper_idempotent(chain.size)
    right_ideal = idempotent_block(regular_module(a), e)[0]  # eA
    images = dom.matmul(a.left_matrices, right_ideal)  # (n, n, k)
    gens = np.ascontiguousarray(np.asarray(images).transpose(1, 0, 2)).reshape(a.rank, -1)
    return unit_rank(dom, dom.normalize(gens)) == a.rank


def verify_split_qh(chain: HeredityChain) -> QHVerdict:
    """Check the five axioms of a split heredity chain.

    (i) Delta(lambda) is free over the domain; (ii) Hom(Delta(lambda),
    Delta(mu)) != 0 implies lambda <= mu; (iii) End(Delta(lambda)) has rank 1;
    (iv) C(lambda) is filtered by standards of weights above lambda; (v) the
    projectives A e_k generate A.
    """
    axioms = dict.fromkeys(AXIOMS, False)
    evidence: dict[str, Any] = {"weights": list(chain.weights)}
    try:
        stds = standard_modules(chain)
    except VerificationError as exc:
        evidence["i"] = str(exc)
        logger.info("%r fails axiom (i): %s", chain, exc)
        return QHVerdict(False, axioms, evidence)
    axioms["i"] = True
    evidence["ranks"] = [s.module.rank for s in stds]

    t = chain.size
    hom_ranks = [[len(hom_space(stds[k].module, stds[l].module)) for l in range(t)] for k in range(t)]
    evidence["hom"] = hom_ranks
    axioms["ii"] = all(chain.leq(k, l) for k in range(t) for l in range(t) if hom_ranks[k][l])
    axioms["iii"] = all(hom_ranks[k][k] == 1 for k in range(t))

    dom = chain.algebra.domain
    try:
        field_chain = reduce_chain(chain) if dom.is_local else chain
        kernel_checks = []
        for s in stds:
            c = reduce_representation(s.kernel, field_chain.algebra) if dom.is_local else s.kernel
            verdict = _field_filtration(c, field_chain, allowed=range(s.index))
            kernel_checks.append({"weight": s.weight, "holds": verdict.holds, **verdict.certificate})
        evidence["iv"] = kernel_checks
        axioms["iv"] = all(item["holds"] for item in kernel_checks)
    except VerificationError as exc:
        evidence["iv"] = str(exc)
    axioms["v"] = _progenerator(chain)
    passed = all(axioms.values())
    logger.info("%r: %s", chain, "split quasi-hereditary" if passed else f"fails {[k for k, v in axioms.items() if not v]}")
    return QHVerdict(passed, axioms, evidence)
