# Radical, socle, primitive idempotents and simple modules over fields.
#
# The radical uses the characteristic-p trace iteration on a faithful matrix
# representation (Dickson's trace form in characteristic 0). Idempotents are
# split in the semisimple quotient with minimal polynomials factored by sympy
# and lifted through the radical by a <- 3a^2 - 2a^3.

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Poly, Rational, Symbol

from .algebra import Algebra, Representation, center, idempotent_truncation, quotient_module, regular_module, submodule
from .exceptions import InvalidInputError, VerificationError
from .linear_algebra import Span, column_span, kernel_basis, rank, split_basis
from .ring_arith import PRIME_FIELD, CoefficientDomain, row_reduce

logger = logging.getLogger(__name__)

_X = Symbol("x")
# elements tried per split before giving up
_MAX_TRIES = 200


def _faithful_action(a: Algebra, faithful: Representation | None) -> np.ndarray:
    if faithful is None:
        return a.left_matrices
    if faithful.algebra is not a:
        raise InvalidInputError("faithful representation belongs to another algebra")
    act = faithful.action
    if rank(a.domain, act.reshape(a.rank, -1)) != a.rank:
        raise InvalidInputError(f"{faithful!r} is not faithful")
    return act


def _trace_functional(dom: CoefficientDomain, xs: np.ndarray, ys: np.ndarray, level: int) -> np.ndarray:
    """G[y, s] = g_level(x_s y_y) for integer-lifted matrices over F_p (trace over Q)."""
    k, m = xs.shape[0], xs.shape[1]
    if level == 0:
        # Tr(XY) = sum of X * Y^T entries
        left = np.ascontiguousarray(ys.transpose(0, 2, 1)).reshape(ys.shape[0], m * m)
        return dom.matmul(left, np.ascontiguousarray(xs.reshape(k, m * m).T))
    p = dom.p
    modulus = p ** (level + 1)
    exponent = p ** level
    out = np.zeros((ys.shape[0], k), dtype=np.int64)
    for s in range(k):
        base = np.mod(xs[s] @ ys, p)  # (n, m, m), entries lifted to [0, p)
        power = np.broadcast_to(np.eye(m, dtype=np.int64), base.shape).copy()
        e = exponent
        while e:
            if e & 1:
                power = np.mod(power @ base, modulus)
            e >>= 1
            if e:
                base = np.mod(base @ base, modulus)
        traces = np.mod(np.trace(power, axis1=1, axis2=2), modulus)
        out[:, s] = np.mod(traces // exponent, p)
    return out


@lru_cache(maxsize=32)
def _radical_cached(a: Algebra, faithful: Representation | None) -> np.ndarray:
    dom = a.domain
    act = _faithful_action(a, faithful)
    n, m = a.rank, act.shape[1]
    ideal = dom.eye(n)
    levels = 1
    if dom.kind == PRIME_FIELD:
        while dom.p ** levels <= m:
            levels += 1
    for level in range(levels):
        if ideal.shape[1] == 0:
            break
        xs = dom.matmul(np.ascontiguousarray(ideal.T), act.reshape(n, m * m)).reshape(-1, m, m)
        gram = _trace_functional(dom, xs, act, level)
        ideal = dom.normalize(dom.matmul(ideal, kernel_basis(dom, dom.normalize(gram))))
        logger.debug("trace iteration %d on %r: dimension %d", level, a, ideal.shape[1])
    return ideal


def radical(a: Algebra, faithful: Representation | None = None) -> np.ndarray:
    """Basis (columns, A-coordinates) of the Jacobson radical of A over a field.

    Args:
        a (Algebra): an algebra over F_p or Q.
        faithful (Representation | None): a faithful module used for traces;
            the regular module when omitted.

    Returns:
        np.ndarray: radical basis as columns.
    """
    a.domain.require_field("radical")
    return _radical_cached(a, faithful)


def is_semisimple(a: Algebra, faithful: Representation | None = None) -> bool:
    return radical(a, faithful).shape[1] == 0


def radical_powers(a: Algebra, faithful: Representation | None = None) -> list[np.ndarray]:
    """Bases of J, J^2, ... down to 0; raises VerificationError if J is not nilpotent."""
    dom = a.domain
    j = radical(a, faithful)
    powers = [j]
    current = j
    while current.shape[1]:
        if len(powers) > a.rank + 1:
            raise VerificationError(f"radical of {a!r} is not nilpotent")
        products = [dom.matmul(a.left_matrix(current[:, s]), j) for s in range(current.shape[1])]
        current = column_span(dom, np.concatenate(products, axis=1)) if products else current[:, :0]
        powers.append(current)
    return powers


def socle(m: Representation, faithful: Representation | None = None) -> np.ndarray:
    """Basis (columns) of soc(M) = {x in M : J x = 0}."""
    dom = m.domain
    dom.require_field("socle")
    j = radical(m.algebra, faithful)
    if j.shape[1] == 0:
        return dom.eye(m.rank)
    stacked = np.concatenate([m.matrix_of(j[:, s]) for s in range(j.shape[1])], axis=0)
    return kernel_basis(dom, stacked)


def radical_of_module(m: Representation, faithful: Representation | None = None) -> np.ndarray:
    """Basis (columns) of J M."""
    dom = m.domain
    j = radical(m.algebra, faithful)
    if j.shape[1] == 0 or m.rank == 0:
        return dom.zeros((m.rank, 0))
    images = np.concatenate([m.matrix_of(j[:, s]) for s in range(j.shape[1])], axis=1)
    return column_span(dom, images)


def top_of_module(m: Representation, faithful: Representation | None = None) -> tuple[Representation, np.ndarray]:
    """M / JM with the projection matrix."""
    return quotient_module(m, radical_of_module(m, faithful), f"top({m.name})")


@dataclass(frozen=True, eq=False)
class SemisimpleQuotient:
    """A/J with lift (A/J -> A) and projection (A -> A/J) matrices."""

    algebra: Algebra
    lift: np.ndarray
    projection: np.ndarray


@lru_cache(maxsize=32)
def semisimple_quotient(a: Algebra, faithful: Representation | None = None) -> SemisimpleQuotient:
    dom = a.domain
    j = radical(a, faithful)
    t = j.shape[1]
    full, full_inv = split_basis(dom, j)
    lift, proj = np.ascontiguousarray(full[:, t:]), np.ascontiguousarray(full_inv[t:, :])
    k = a.rank - t
    mult = dom.zeros((k, k, k))
    for i in range(k):
        mult[i] = dom.matmul(proj, dom.matmul(a.left_matrix(lift[:, i]), lift)).T
    unit = dom.matmul(proj, a.unit.reshape(-1, 1))[:, 0]
    quotient = Algebra(dom, tuple(f"q{i}" for i in range(k)), mult, unit, (), f"{a.name}/J")
    return SemisimpleQuotient(quotient, lift, proj)


def _candidates(dom: CoefficientDomain, dim: int, seed: int):  # type: ignore[no-untyped-def]
    for i in range(dim):
        v = dom.zeros(dim)
        v[i] = 1
        yield v
    for i in range(dim):
        for j in range(i + 1, dim):
            v = dom.zeros(dim)
            v[i], v[j] = 1, 1
            yield v
    rng = np.random.default_rng(seed)
    bound = dom.p if dom.kind == PRIME_FIELD else 5
    while True:
        yield dom.array(rng.integers(0, bound, size=dim).tolist())


def minimal_polynomial(c: Algebra, x: np.ndarray) -> Poly:
    """Minimal polynomial of x in the algebra c (over its field)."""
    dom = c.domain
    powers = [c.unit]
    for _ in range(c.rank + 1):
        powers.append(c.multiply(powers[-1], x))
    mat = np.stack(powers, axis=1)
    reduced, pivots = row_reduce(dom, mat)
    deg = len(pivots)
    if pivots != list(range(deg)):
        raise VerificationError("powers of an element are not in echelon order")
    coeffs = [-reduced[i, deg] for i in range(deg)] + [1]
    return _poly(dom, list(reversed(coeffs)))


def _poly(dom: CoefficientDomain, coeffs: list) -> Poly:  # type: ignore[type-arg]
    if dom.kind == PRIME_FIELD:
        return Poly([int(v) for v in coeffs], _X, modulus=dom.p)
    return Poly([Rational(Fraction(v).numerator, Fraction(v).denominator) for v in coeffs], _X, domain="QQ")


def _poly_coeffs(dom: CoefficientDomain, poly: Poly) -> list:  # type: ignore[type-arg]
    out = []
    for v in poly.all_coeffs():
        out.append(dom.element(int(v)) if dom.kind == PRIME_FIELD else dom.element(Fraction(int(v.p), int(v.q))))
    return out


def evaluate(c: Algebra, poly: Poly, x: np.ndarray) -> np.ndarray:
    acc = c.domain.zeros(c.rank)
    for coeff in _poly_coeffs(c.domain, poly):
        acc = c.domain.normalize(c.multiply(acc, x) + c.domain.normalize(c.unit * coeff))
    return acc


def _crt_idempotents(c: Algebra, x: np.ndarray) -> list[np.ndarray] | None:
    """Orthogonal idempotents summing to 1 from the factorisation of minpoly(x), or None."""
    mu = minimal_polynomial(c, x)
    _, factors = mu.factor_list()
    if len(factors) < 2:
        return None
    if any(mult > 1 for _, mult in factors):
        raise VerificationError("minimal polynomial in a semisimple algebra has a repeated factor")
    out = []
    for q, _ in factors:
        h = mu.exquo(q)
        s = h.invert(q)
        out.append(evaluate(c, (h * s).rem(mu), x))
    return out


def _split_commutative(c: Algebra, seed: int) -> list[np.ndarray]:
    """Primitive idempotents of a commutative semisimple algebra c."""
    if c.rank == 1:
        return [c.unit]
    for tries, x in enumerate(_candidates(c.domain, c.rank, seed)):
        if tries > _MAX_TRIES:
            break
        mu = minimal_polynomial(c, x)
        if mu.degree() == c.rank and mu.is_irreducible:
            return [c.unit]
        parts = _crt_idempotents(c, x)
        if parts is None:
            continue
        out = []
        for e in parts:
            corner = idempotent_truncation(c, e)
            for f in _split_commutative(corner.algebra, seed + 1):
                out.append(c.domain.normalize(c.domain.matmul(corner.inclusion, f.reshape(-1, 1))[:, 0]))
        return out
    raise VerificationError(f"could not split the commutative algebra {c!r}")


def _split_block(c: Algebra, field_degree: int, seed: int, basic: bool) -> list[np.ndarray]:
    """Primitive idempotents of a simple algebra c (one if ``basic``)."""
    if c.rank <= field_degree:
        return [c.unit]
    for tries, x in enumerate(_candidates(c.domain, c.rank, seed)):
        if tries > _MAX_TRIES:
            break
        parts = _crt_idempotents(c, x)
        if parts is None:
            continue
        parts.sort(key=lambda e: rank(c.domain, c.left_matrix(e)))
        out = []
        for e in parts[:1] if basic else parts:
            corner = idempotent_truncation(c, e)
            for f in _split_block(corner.algebra, field_degree, seed + 1, basic):
                out.append(c.domain.normalize(c.domain.matmul(corner.inclusion, f.reshape(-1, 1))[:, 0]))
        return out
    logger.warning("no splitting element found in %r; treating its unit as primitive", c)
    return [c.unit]


def _lift_orthogonal(a: Algebra, quotient: SemisimpleQuotient, family: list[np.ndarray], complete: bool) -> list[np.ndarray]:
    """Lift orthogonal idempotents of A/J to orthogonal idempotents of A."""
    dom = a.domain
    lifted: list[np.ndarray] = []
    taken = dom.zeros(a.rank)
    for idx, bar in enumerate(family):
        if complete and idx == len(family) - 1:
            lifted.append(dom.normalize(a.unit - taken))
            break
        rest = dom.normalize(a.unit - taken)
        x = dom.matmul(quotient.lift, bar.reshape(-1, 1))[:, 0]
        x = a.multiply(a.multiply(rest, x), rest)
        for _ in range(a.rank + 2):
            sq = a.multiply(x, x)
            if np.array_equal(sq, x):
                break
            x = dom.normalize(3 * sq - 2 * a.multiply(sq, x))
        else:
            raise VerificationError("idempotent lifting did not converge")
        lifted.append(x)
        taken = dom.normalize(taken + x)
    return lifted


@lru_cache(maxsize=32)
def _block_data(a: Algebra, faithful: Representation | None) -> tuple[tuple[np.ndarray, int], ...]:
    """Central primitive idempotents of A/J with the degree of each block's center."""
    quotient = semisimple_quotient(a, faithful)
    qa = quotient.algebra
    if qa.rank == 0:
        return ()
    z = center(qa)
    zdom = qa.domain
    z_span = Span.of(zdom, z)
    k = z.shape[1]
    mult = zdom.zeros((k, k, k))
    for i in range(k):
        mult[i] = z_span.coordinates(zdom.matmul(qa.left_matrix(z[:, i]), z)).T
    z_alg = Algebra(zdom, tuple(f"z{i}" for i in range(k)), mult, z_span.coordinates(qa.unit), (), "Z(A/J)")
    blocks = []
    for f in _split_commutative(z_alg, seed=k):
        f_bar = zdom.normalize(zdom.matmul(z, f.reshape(-1, 1))[:, 0])
        degree = rank(zdom, z_alg.left_matrix(f))
        blocks.append((f_bar, degree))
    logger.debug("A/J of %r has %d blocks", a, len(blocks))
    return tuple(blocks)


def _idempotents(a: Algebra, faithful: Representation | None, basic: bool) -> list[np.ndarray]:
    a.domain.require_field("primitive idempotents")
    quotient = semisimple_quotient(a, faithful)
    qa = quotient.algebra
    family: list[np.ndarray] = []
    for f_bar, degree in _block_data(a, faithful):
        corner = idempotent_truncation(qa, f_bar)
        for e in _split_block(corner.algebra, degree, seed=corner.algebra.rank, basic=basic):
            family.append(qa.domain.normalize(qa.domain.matmul(corner.inclusion, e.reshape(-1, 1))[:, 0]))
    return _lift_orthogonal(a, quotient, family, complete=not basic)


def primitive_idempotents(a: Algebra, faithful: Representation | None = None) -> list[np.ndarray]:
    """A complete family of orthogonal primitive idempotents of A (A-coordinates)."""
    return _idempotents(a, faithful, basic=False)


@lru_cache(maxsize=32)
def basic_idempotents(a: Algebra, faithful: Representation | None = None) -> tuple[np.ndarray, ...]:
    """Orthogonal primitive idempotents, one for each simple module, in block order."""
    return tuple(_idempotents(a, faithful, basic=True))


def projective_module(a: Algebra, e: np.ndarray, name: str = "") -> tuple[Representation, np.ndarray]:
    """The left ideal Ae as a module, with its basis inside A (columns)."""
    dom = a.domain
    basis = kernel_basis(dom, dom.normalize(dom.eye(a.rank) - a.right_matrix(e)))
    return submodule(regular_module(a), basis, name or "Ae"), basis


def simple_modules(a: Algebra, faithful: Representation | None = None) -> list[Representation]:
    """The simple modules Ae/Je for the basic idempotents, in block order."""
    out = []
    for idx, e in enumerate(basic_idempotents(a, faithful)):
        proj, _ = projective_module(a, e, f"P{idx}")
        top, _ = top_of_module(proj, faithful)
        out.append(Representation(a, top.action, f"S{idx}"))
    return out
