# Group algebras of symmetric groups and Iwahori-Hecke algebras.
#
# Permutations are tuples of images, sigma[i] = sigma(i) on {0, ..., d-1},
# listed in lexicographic order, and sigma*tau = sigma o tau (tau first).
# s_t is the simple transposition of t and t+1.

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import permutations as all_permutations
from typing import Any

import numpy as np
from sympy.combinatorics import Permutation

from ..Core.algebra import Algebra, verify_algebra
from ..Core.exceptions import InvalidInputError
from ..Core.ring_arith import CoefficientDomain

logger = logging.getLogger(__name__)

Perm = tuple[int, ...]


@lru_cache(maxsize=8)
def permutations(d: int) -> tuple[Perm, ...]:
    if d < 1:
        raise InvalidInputError("d must be at least 1")
    return tuple(all_permutations(range(d)))


def compose(sigma: Perm, tau: Perm) -> Perm:
    """sigma o tau."""
    return tuple(sigma[t] for t in tau)


def simple_transposition(d: int, t: int) -> Perm:
    images = list(range(d))
    images[t], images[t + 1] = images[t + 1], images[t]
    return tuple(images)


def length(sigma: Perm) -> int:
    """Coxeter length: the number of inversions."""
    return int(Permutation(list(sigma)).inversions())


def reduced_word(sigma: Perm) -> tuple[int, ...]:
    """Indices t_1, ..., t_k with sigma = s_{t_1} ... s_{t_k} and k = length(sigma)."""
    current = sigma
    word: list[int] = []
    d = len(sigma)
    while True:
        descent = next((t for t in range(d - 1) if current[t] > current[t + 1]), None)
        if descent is None:
            break
        word.append(descent)
        current = compose(current, simple_transposition(d, descent))
    return tuple(reversed(word))


def permutation_label(sigma: Perm) -> str:
    return "".join(str(x + 1) for x in sigma)


def symmetric_group_algebra(d: int, domain: CoefficientDomain) -> Algebra:
    """R S_d with basis the permutations and product by composition."""
    perms = permutations(d)
    index = {s: i for i, s in enumerate(perms)}
    n = len(perms)
    mult = domain.zeros((n, n, n))
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            mult[i, j, index[compose(s, t)]] = 1
    unit = domain.zeros(n)
    unit[index[tuple(range(d))]] = 1
    alg = Algebra(domain, tuple(permutation_label(s) for s in perms), mult, unit, (), f"{domain}S_{d}")
    logger.info("built %r", alg)
    return alg


def _times_generator(domain: CoefficientDomain, vec: dict[Perm, Any], t: int, u: Any, d: int) -> dict[Perm, Any]:
    """(sum c_sigma T_sigma) * T_{s_t} by the two-case Hecke relation."""
    s = simple_transposition(d, t)
    shift = domain.element(u - domain.inverse(u))
    out: dict[Perm, Any] = {}

    def add(key: Perm, value: Any) -> None:
        out[key] = domain.element(out.get(key, 0) + value)

    for sigma, c in vec.items():
        moved = compose(sigma, s)
        add(moved, c)
        if length(moved) < length(sigma):
            add(sigma, shift * c)
    return {k: v for k, v in out.items() if v != 0}


def hecke_algebra(d: int, u: Any, domain: CoefficientDomain) -> Algebra:
    """H_{R,q}(d) with q = u^-2 in the basis T_sigma.

    T_sigma T_s = T_{sigma s} when l(sigma s) > l(sigma), and
    (u - u^-1) T_sigma + T_{sigma s} otherwise. Products T_sigma T_tau are
    computed by right multiplication along a reduced word of tau.
    """
    u = domain.element(u)
    if not domain.is_unit(u):
        raise InvalidInputError(f"u = {domain.format_element(u)} is not a unit of {domain}")
    perms = permutations(d)
    index = {s: i for i, s in enumerate(perms)}
    n = len(perms)
    mult = domain.zeros((n, n, n))
    words = {tau: reduced_word(tau) for tau in perms}
    for i, sigma in enumerate(perms):
        for j, tau in enumerate(perms):
            vec: dict[Perm, Any] = {sigma: domain.element(1)}
            for t in words[tau]:
                vec = _times_generator(domain, vec, t, u, d)
            for key, c in vec.items():
                mult[i, j, index[key]] = c
    unit = domain.zeros(n)
    unit[index[tuple(range(d))]] = 1
    alg = Algebra(domain, tuple(f"T{permutation_label(s)}" for s in perms), mult, unit, (),
                  f"H_{domain}({d}, u={domain.format_element(u)})")
    verify_algebra(alg)
    logger.info("built %r", alg)
    return alg


def quadratic_relation_holds(h: Algebra, d: int, u: Any) -> bool:
    """T_s^2 = (u - u^-1) T_s + 1 for every simple reflection s."""
    dom = h.domain
    u = dom.element(u)
    shift = dom.element(u - dom.inverse(u))
    index = {s: i for i, s in enumerate(permutations(d))}
    for t in range(d - 1):
        ts = h.basis_element(index[simple_transposition(d, t)])
        expected = dom.normalize(np.asarray(shift * ts, dtype=dom.dtype) + h.unit)
        if not np.array_equal(h.multiply(ts, ts), expected):
            return False
    return True
