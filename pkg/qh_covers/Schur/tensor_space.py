# The tensor space V^{(x)d} with its right action of R S_d or H_{R,q}(d).
#
# Basis vectors e_i are indexed by I(n, d), sequences i = (i_1, ..., i_d) with
# entries in {0, ..., n-1}, in lexicographic order. T_{s_t} acts on the right:
#   i_t < i_{t+1}:  e_i T_s = e_{i s}
#   i_t = i_{t+1}:  e_i T_s = u e_i
#   i_t > i_{t+1}:  e_i T_s = (u - u^-1) e_i + e_{i s}
# where i s swaps the entries in positions t and t+1. At u = 1 this is the
# action by place permutations, e_i sigma = e_{i o sigma}.

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any

import numpy as np

from ..Core.algebra import Algebra, Representation
from ..Core.exceptions import InvalidInputError
from ..Core.ring_arith import CoefficientDomain
from .symmetric_group import hecke_algebra, permutations, reduced_word, symmetric_group_algebra

logger = logging.getLogger(__name__)


def weight_of(i: tuple[int, ...], n: int) -> tuple[int, ...]:
    """The composition mu with mu_a = #{t : i_t = a}."""
    return tuple(sum(1 for x in i if x == a) for a in range(n))


@dataclass(frozen=True, eq=False)
class TensorSpace:
    """V^{(x)d} for V free of rank n, with the (q-deformed) place permutation action.

    Attributes:
        n (int): rank of V.
        d (int): tensor degree.
        domain (CoefficientDomain): coefficients.
        u (Any): the deformation parameter, a unit; q = u^-2.
    """

    n: int
    d: int
    domain: CoefficientDomain
    u: Any = 1

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise InvalidInputError("n and d must be positive")
        u = self.domain.element(self.u)
        if not self.domain.is_unit(u):
            raise InvalidInputError(f"u = {self.domain.format_element(u)} is not a unit of {self.domain}")
        object.__setattr__(self, "u", u)

    @property
    def classical(self) -> bool:
        return bool(self.u == 1)

    @property
    def rank(self) -> int:
        return self.n ** self.d

    @cached_property
    def indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(product(range(self.n), repeat=self.d))

    @cached_property
    def group_algebra(self) -> Algebra:
        """H_{R,q}(d); the group algebra R S_d at u = 1."""
        if self.classical:
            return symmetric_group_algebra(self.d, self.domain)
        return hecke_algebra(self.d, self.u, self.domain)

    def generator_matrix(self, t: int) -> np.ndarray:
        """Matrix (columns e_i T_{s_t}) of the right action of T_{s_t}."""
        dom = self.domain
        index = {i: k for k, i in enumerate(self.indices)}
        shift = dom.element(self.u - dom.inverse(self.u))
        mat = dom.zeros((self.rank, self.rank))
        for k, i in enumerate(self.indices):
            swapped = list(i)
            swapped[t], swapped[t + 1] = swapped[t + 1], swapped[t]
            target = index[tuple(swapped)]
            if i[t] < i[t + 1]:
                mat[target, k] = 1
            elif i[t] == i[t + 1]:
                mat[k, k] = self.u
            else:
                mat[k, k] = shift
                mat[target, k] = 1
        return dom.normalize(mat)

    @cached_property
    def action_matrices(self) -> np.ndarray:
        """(d!, N, N): M_sigma with M_sigma e_i = e_i T_sigma, along reduced words."""
        dom = self.domain
        gens = [self.generator_matrix(t) for t in range(self.d - 1)]
        mats = []
        for sigma in permutations(self.d):
            m = dom.eye(self.rank)
            # e_i T_{s_1} ... T_{s_k}: apply T_{s_1} first
            for t in reduced_word(sigma):
                m = dom.matmul(gens[t], m)
            mats.append(m)
        return np.stack(mats)

    def module(self) -> Representation:
        """V^{(x)d} as a left module over the opposite of the group (Hecke) algebra."""
        return Representation(self.group_algebra.opposite, self.action_matrices, f"V^{self.d}")

    def weight_projection(self, mu: tuple[int, ...]) -> np.ndarray:
        """The diagonal projection onto span{e_i : weight(i) = mu}."""
        dom = self.domain
        mat = dom.zeros((self.rank, self.rank))
        for k, i in enumerate(self.indices):
            if weight_of(i, self.n) == tuple(mu):
                mat[k, k] = 1
        return mat

    def place_permutation(self, sigma: tuple[int, ...]) -> np.ndarray:
        """Permutation matrix of e_i -> e_{i o sigma}."""
        index = {i: k for k, i in enumerate(self.indices)}
        mat = self.domain.zeros((self.rank, self.rank))
        for k, i in enumerate(self.indices):
            mat[index[tuple(i[s] for s in sigma)], k] = 1
        return mat


def tensor_space(n: int, d: int, domain: CoefficientDomain, u: Any = 1) -> TensorSpace:
    ts = TensorSpace(n, d, domain, u)
    logger.debug("tensor space n=%d d=%d over %s, u=%s: rank %d", n, d, domain, domain.format_element(ts.u), ts.rank)
    return ts
