# Classical and q-Schur algebras S = End_H(V^{(x)d}), their weight idempotents,
# heredity chains and Schur functors.
#
# At u = 1 the commutant of the place permutations is spanned by the orbit
# sums xi[i|j]: indicator matrices of the S_d-orbits on pairs of indices. The
# orbits are the connected components of the graph (i, j) ~ (i s, j s) for
# simple transpositions s, and the structure constants are read off products
# of indicators at one representative pair per orbit. For u != 1 the commutant
# is the solution space of the intertwiner equations for the Hecke action.

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Any

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..Core.algebra import (Algebra, ModuleMap, Representation, RightRepresentation, Truncation, endomorphism_algebra,
                            right_ideal_module, verify_algebra, verify_representation)
from ..Core.exceptions import InvalidInputError, VerificationError
from ..Core.homology import SchurFunctor
from ..Core.linear_algebra import Span
from ..Core.qh_structure import HeredityChain, verify_split_qh
from ..Core.radical import projective_module
from ..Core.ring_arith import CoefficientDomain
from .partitions import PartitionSet, compositions
from .tensor_space import TensorSpace, tensor_space

logger = logging.getLogger(__name__)


def _index_label(i: tuple[int, ...]) -> str:
    return "".join(str(x + 1) for x in i)


def _orbit_indicators(ts: TensorSpace) -> tuple[np.ndarray, np.ndarray]:
    """(k, N, N) 0/1 indicators of the S_d-orbits on I(n,d) x I(n,d), and (k, 2) representatives.

    Orbits are numbered by their smallest pair in row-major order.
    """
    size = ts.rank * ts.rank
    index = {i: k for k, i in enumerate(ts.indices)}
    pair = np.arange(size).reshape(ts.rank, ts.rank)
    sources, targets = [], []
    for t in range(ts.d - 1):
        perm = np.array([index[i[:t] + (i[t + 1], i[t]) + i[t + 2:]] for i in ts.indices])
        sources.append(pair.reshape(-1))
        targets.append(pair[np.ix_(perm, perm)].reshape(-1))
    if sources:
        src, tgt = np.concatenate(sources), np.concatenate(targets)
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, tgt)), shape=(size, size)).tocsr()
        _, component = connected_components(graph, directed=False)
    else:
        component = np.arange(size)
    _, first, orbit_of = np.unique(component, return_index=True, return_inverse=True)
    # renumber so that orbit k has the k-th smallest representative
    order = np.argsort(first)
    renumber = np.empty_like(order)
    renumber[order] = np.arange(order.size)
    orbit_of = renumber[orbit_of.reshape(-1)]
    reps = first[order]
    indicators = np.zeros((reps.size, ts.rank, ts.rank), dtype=np.int64)
    flat = np.arange(size)
    indicators[orbit_of, flat // ts.rank, flat % ts.rank] = 1
    return indicators, np.stack([reps // ts.rank, reps % ts.rank], axis=1)


def _orbit_structure_constants(indicators: np.ndarray, reps: np.ndarray) -> np.ndarray:
    """mult[a, b, c] = (xi_a xi_b)[r_c, s_c]; the product is constant on orbits."""
    rows = indicators[:, reps[:, 0], :]  # (a, c, t)
    cols = indicators[:, :, reps[:, 1]]  # (b, t, c)
    return np.einsum("act,btc->abc", rows, cols, optimize=True)


@dataclass(frozen=True, eq=False)
class SchurData:
    """A Schur algebra S with its tensor space, weight idempotents and e = xi_omega.

    Attributes:
        family (str): "schur" or "qschur".
        tensor (TensorSpace): V^{(x)d} with the group (Hecke) action.
        algebra (Algebra): S, with the weight idempotents as Peirce family.
        module (Representation): V^{(x)d} as a faithful left S-module.
        weights (tuple[tuple[int, ...], ...]): Lambda(n, d), in Peirce order.
        idempotent (np.ndarray): e = xi_omega for omega = (1^d, 0^{n-d}).
    """

    family: str
    tensor: TensorSpace
    algebra: Algebra
    module: Representation
    weights: tuple[tuple[int, ...], ...]
    idempotent: np.ndarray

    @property
    def n(self) -> int:
        return self.tensor.n

    @property
    def d(self) -> int:
        return self.tensor.d

    @property
    def u(self) -> Any:
        return self.tensor.u

    @property
    def domain(self) -> CoefficientDomain:
        return self.algebra.domain

    @property
    def omega(self) -> tuple[int, ...]:
        return (1,) * self.d + (0,) * (self.n - self.d)

    @cached_property
    def partition_set(self) -> PartitionSet:
        return PartitionSet(self.n, self.d)

    def weight_idempotent(self, mu: tuple[int, ...]) -> np.ndarray:
        """xi_mu in S-coordinates."""
        key = tuple(mu) + (0,) * (self.n - len(mu))
        if key not in self.weights:
            raise InvalidInputError(f"{key} is not a composition of {self.d} into {self.n} parts")
        return self.algebra.peirce[self.weights.index(key)]

    @cached_property
    def functor(self) -> SchurFunctor:
        """The Schur functor F = e- : S-mod -> eSe-mod."""
        return SchurFunctor.from_idempotent(self.algebra, self.idempotent, f"e{self.algebra.name}e")

    @property
    def truncation(self) -> Truncation:
        assert self.functor.truncation is not None
        return self.functor.truncation

    @cached_property
    def right_module(self) -> RightRepresentation:
        """eS as a right S-module."""
        return right_ideal_module(self.algebra, self.idempotent)

    @cached_property
    def projective(self) -> tuple[Representation, np.ndarray]:
        """Se as a left module, with its basis in S-coordinates."""
        return projective_module(self.algebra, self.idempotent, "Se")

    def __repr__(self) -> str:
        return f"SchurData({self.algebra.name}, rank={self.algebra.rank})"


def _commutant(ts: TensorSpace) -> tuple[np.ndarray, tuple[str, ...], np.ndarray]:
    """A basis of End_H(V^{(x)d}) as (k, N, N) matrices, its labels and its structure constants."""
    dom = ts.domain
    if ts.classical:
        indicators, reps = _orbit_indicators(ts)
        labels = tuple(f"xi[{_index_label(ts.indices[r])}|{_index_label(ts.indices[c])}]" for r, c in reps)
        maps = dom.normalize(np.asarray(indicators, dtype=dom.dtype))
        mult = dom.normalize(np.asarray(_orbit_structure_constants(indicators, reps), dtype=dom.dtype))
        return maps, labels, mult
    end = endomorphism_algebra(ts.module())
    return np.stack([f.matrix for f in end.maps]), end.algebra.labels, end.algebra.mult


def schur_algebra(n: int, d: int, domain: CoefficientDomain, u: Any = 1, family: str | None = None) -> SchurData:
    """Build S_R(n, d) (u = 1) or S_{R,q}(n, d) with q = u^-2.

    Args:
        n (int): rank of V; must be at least d.
        d (int): tensor degree.
        domain (CoefficientDomain): coefficients.
        u (Any): deformation parameter, a unit of the domain.
        family (str | None): label for reports; "schur" at u = 1, otherwise "qschur".

    Returns:
        SchurData: the algebra, its natural module and its distinguished idempotents.

    Raises:
        InvalidInputError: when n < d or u is not a unit.
    """
    if n < d:
        raise InvalidInputError(f"n = {n} is smaller than d = {d}; the idempotent xi_omega needs n >= d")
    ts = tensor_space(n, d, domain, u)
    family = family or ("schur" if ts.classical else "qschur")
    maps, labels, mult = _commutant(ts)
    k, r = maps.shape[0], ts.rank
    span = Span.of(domain, np.ascontiguousarray(maps.reshape(k, r * r).T))
    if ts.classical and k != comb(n * n + d - 1, d):
        raise VerificationError(f"orbit basis has rank {k}, expected {comb(n * n + d - 1, d)}")
    unit = span.coordinates(domain.eye(r).reshape(r * r))
    weights = tuple(compositions(n, d))
    peirce = tuple(span.coordinates(ts.weight_projection(mu).reshape(r * r)) for mu in weights)
    if ts.classical:
        name = f"S_{domain}({n},{d})"
    else:
        name = f"S_{domain}({n},{d};u={domain.format_element(ts.u)})"
    algebra = Algebra(domain, labels, mult, unit, peirce, name)
    verify_algebra(algebra)
    module = Representation(algebra, maps, f"V^{d}")
    verify_representation(module)
    e = algebra.peirce[weights.index((1,) * d + (0,) * (n - d))]
    logger.info("built %r with %d weight idempotents", algebra, len(weights))
    return SchurData(family, ts, algebra, module, weights, e)


def schur_heredity_chain(data: SchurData, verify: bool = False) -> HeredityChain:
    """xi_lambda for lambda in Lambda+(n, d), most dominant first.

    Raises:
        VerificationError: with ``verify`` set, when the chain fails one of the
            split quasi-hereditary axioms.
    """
    ps = data.partition_set
    idempotents = tuple(data.weight_idempotent(ps.padded(lam)) for lam in ps.labels)
    chain = HeredityChain(data.algebra, ps.names, idempotents, ps.labels)
    if verify:
        verdict = verify_split_qh(chain)
        if not verdict.passed:
            failed = [k for k, ok in verdict.axioms.items() if not ok]
            raise VerificationError(f"{data.algebra.name} fails quasi-hereditary axioms {failed}")
    return chain


def schur_functor_image(data: SchurData, m: Representation) -> Representation:
    """F(M) = eM as a module over eSe."""
    return data.functor.apply(m)


def tensor_space_intertwiner(data: SchurData) -> ModuleMap:
    """Se -> V^{(x)d}, s e -> s(v_omega) with v_omega = e_{(1, 2, ..., d)}.

    An isomorphism of S-modules: e V^{(x)d} is free of rank one over H on v_omega.
    """
    dom = data.domain
    p, basis = data.projective
    v_omega = data.tensor.indices.index(tuple(range(data.d)))
    columns = np.ascontiguousarray(data.module.action[:, :, v_omega].T)  # (N, rank S)
    return ModuleMap(p, data.module, dom.normalize(dom.matmul(columns, basis)))
