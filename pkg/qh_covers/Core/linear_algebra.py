# Kernels, images, coordinates and lattice saturation on raw numpy arrays.
#
# Everything here works for all three domains. Over Z_(p) a "basis" always
# means a basis of a free Z_(p)-module, and kernels are returned saturated,
# so they are direct summands of the ambient lattice.

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import InvalidInputError, VerificationError
from .ring_arith import CoefficientDomain, kernel_from_reduced, residue_rank, row_reduce, smith_arrays

logger = logging.getLogger(__name__)


def _over_fraction_field(domain: CoefficientDomain, arr: np.ndarray) -> tuple[CoefficientDomain, np.ndarray]:
    field_ = domain.fraction_field()
    if field_ is domain or field_ == domain:
        return domain, arr
    return field_, np.asarray(arr, dtype=object)


def rank(domain: CoefficientDomain, arr: np.ndarray) -> int:
    """Rank over the fraction field."""
    if arr.size == 0:
        return 0
    field_, work = _over_fraction_field(domain, arr)
    return len(row_reduce(field_, work)[1])


def unit_rank(domain: CoefficientDomain, arr: np.ndarray) -> int:
    """Rank over the residue field for Z_(p), ordinary rank otherwise.

    Over Z_(p) this is the number of unit invariant factors, so it equals the
    number of columns exactly when they span a direct summand.
    """
    return residue_rank(domain, arr) if domain.is_local else rank(domain, arr)


def saturate(domain: CoefficientDomain, basis: np.ndarray) -> np.ndarray:
    """Basis of (Q-span of the columns) ∩ Z_(p)^m; identity over fields."""
    if not domain.is_local or basis.shape[1] == 0:
        return basis
    scaled = np.array(basis, dtype=object, copy=True)
    for j in range(scaled.shape[1]):
        dens = [x.denominator for x in scaled[:, j] if not isinstance(x, int)]
        if dens:
            scaled[:, j] = domain.normalize(scaled[:, j] * math.lcm(*dens))
    _, left, _, factors = smith_arrays(domain, scaled)
    inv = inverse(domain, left)
    assert inv is not None
    return inv[:, :len(factors)]


def kernel_basis(domain: CoefficientDomain, arr: np.ndarray) -> np.ndarray:
    """Columns spanning the null space of ``arr`` (saturated over Z_(p))."""
    cols = arr.shape[1]
    if arr.shape[0] == 0 or cols == 0:
        return domain.eye(cols)
    field_, work = _over_fraction_field(domain, arr)
    reduced, pivots = row_reduce(field_, work)
    basis = kernel_from_reduced(field_, reduced, pivots, cols)
    if domain.is_local and not domain.contains(basis):
        basis = saturate(domain, basis)
    return domain.normalize(basis)


def kernel_basis_blocked(domain: CoefficientDomain, arr: np.ndarray) -> np.ndarray:
    """Null space of a sparse system, solved one connected block of unknowns at a time."""
    n_rows, n_cols = arr.shape
    if n_rows == 0 or n_cols == 0:
        return domain.eye(n_cols)
    rows, cols = np.nonzero(arr)
    pattern = csr_matrix((np.ones(rows.size, dtype=np.int32), (rows, cols)), shape=(n_rows, n_cols))
    graph = (pattern.T @ pattern).tocsr()
    n_blocks, labels = connected_components(graph, directed=False)
    if n_blocks == 1:
        return kernel_basis(domain, arr)
    logger.debug("splitting %d x %d system into %d blocks", n_rows, n_cols, n_blocks)
    row_block = np.full(n_rows, -1)
    row_block[rows] = labels[cols]
    pieces: list[np.ndarray] = []
    for block in range(n_blocks):
        unknowns = np.flatnonzero(labels == block)
        equations = np.flatnonzero(row_block == block)
        local = kernel_basis(domain, arr[np.ix_(equations, unknowns)]) if equations.size else domain.eye(unknowns.size)
        if local.shape[1] == 0:
            continue
        piece = domain.zeros((n_cols, local.shape[1]))
        piece[unknowns] = local
        pieces.append(piece)
    if not pieces:
        return domain.zeros((n_cols, 0))
    return np.concatenate(pieces, axis=1)


def column_span(domain: CoefficientDomain, gens: np.ndarray) -> np.ndarray:
    """A basis of the module spanned by the columns of ``gens``.

    Over fields this is a set of independent columns; over Z_(p) it is a
    basis of the (possibly non-saturated) sublattice they generate.
    """
    if gens.shape[1] == 0:
        return gens
    if domain.is_local:
        diagonal, left, right, factors = smith_arrays(domain, gens)
        return domain.normalize(domain.matmul(gens, right)[:, :len(factors)])
    _, pivots = row_reduce(domain, gens)
    return gens[:, pivots]


def inverse(domain: CoefficientDomain, arr: np.ndarray) -> np.ndarray | None:
    """Inverse of a square matrix over the domain, or None if it is not invertible there."""
    n = arr.shape[0]
    if arr.shape != (n, n):
        raise InvalidInputError(f"cannot invert a {arr.shape} matrix")
    field_, work = _over_fraction_field(domain, arr)
    augmented = np.concatenate([np.asarray(work, dtype=field_.dtype), field_.eye(n)], axis=1)
    reduced, pivots = row_reduce(field_, augmented)
    if pivots[:n] != list(range(n)):
        return None
    inv = reduced[:n, n:]
    if not domain.contains(inv):
        return None
    return domain.normalize(inv)


def solve(domain: CoefficientDomain, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """A solution X of ``a @ X == b`` over the domain, or None."""
    field_, work = _over_fraction_field(domain, a)
    rhs = np.asarray(b, dtype=field_.dtype)
    if rhs.ndim == 1:
        rhs = rhs.reshape(-1, 1)
    augmented = np.concatenate([np.asarray(work, dtype=field_.dtype), rhs], axis=1)
    reduced, pivots = row_reduce(field_, augmented)
    n = a.shape[1]
    if any(p >= n for p in pivots):
        return None
    x = field_.zeros((n, rhs.shape[1]))
    for i, c in enumerate(pivots):
        x[c] = reduced[i, n:]
    if not domain.contains(x):
        return None
    return domain.normalize(x)


@dataclass(frozen=True)
class Span:
    """A free submodule given by basis columns, with fast coordinate extraction.

    ``coordinates(v)`` reads coordinates from a fixed set of rows on which the
    basis restricts to an invertible square block.
    """

    domain: CoefficientDomain
    basis: np.ndarray
    rows: tuple[int, ...] = field(default=())
    block_inverse: np.ndarray | None = None

    @classmethod
    def of(cls, domain: CoefficientDomain, basis: np.ndarray) -> Span:
        basis = domain.normalize(basis)
        k = basis.shape[1]
        if k == 0:
            return cls(domain, basis, (), domain.zeros((0, 0)))
        field_, work = _over_fraction_field(domain, basis.T)
        _, pivots = row_reduce(field_, work)
        if len(pivots) != k:
            raise VerificationError("span basis columns are linearly dependent")
        square = np.asarray(work.T[pivots, :], dtype=field_.dtype)
        block_inv = inverse(field_, square)
        return cls(domain, basis, tuple(pivots), block_inv)

    @property
    def ambient(self) -> int:
        return int(self.basis.shape[0])

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def coordinates(self, vectors: np.ndarray, check: bool = True) -> np.ndarray:
        """Coordinates of column vectors lying in the span."""
        vecs = np.asarray(vectors)
        single = vecs.ndim == 1
        if single:
            vecs = vecs.reshape(-1, 1)
        if self.dim == 0:
            coords = self.domain.zeros((0, vecs.shape[1]))
        else:
            field_ = self.domain.fraction_field()
            picked = np.asarray(vecs[list(self.rows), :], dtype=field_.dtype)
            coords = field_.matmul(self.block_inverse, picked)  # type: ignore[arg-type]
            coords = self.domain.normalize(coords) if self.domain.contains(coords) else coords
        if check:
            back = self.domain.fraction_field().matmul(np.asarray(self.basis, dtype=self.domain.fraction_field().dtype),
                                                       np.asarray(coords, dtype=self.domain.fraction_field().dtype))
            target = np.asarray(vecs, dtype=self.domain.fraction_field().dtype)
            if not np.array_equal(self.domain.fraction_field().normalize(back), self.domain.fraction_field().normalize(target)):
                raise VerificationError("vector does not lie in the span")
            if not self.domain.contains(coords):
                raise VerificationError("vector lies in the rational span only")
        return coords[:, 0] if single else coords

    def contains(self, vectors: np.ndarray) -> bool:
        try:
            self.coordinates(vectors)
        except VerificationError:
            return False
        return True


def split_basis(domain: CoefficientDomain, sub: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Extend a basis of a direct summand to a basis of the whole lattice.

    Returns (T, T_inv): the columns of T form a basis of R^m whose first k
    columns span the same module as ``sub``; ``T_inv @ x`` gives the new
    coordinates, the last m - k of which are quotient coordinates.
    """
    m, k = sub.shape
    if k == 0:
        return domain.eye(m), domain.eye(m)
    _, left, _, factors = smith_arrays(domain, sub)
    if len(factors) != k or any(not domain.is_unit(f) for f in factors):
        raise VerificationError("submodule is not a direct summand")
    left_inv = inverse(domain, left)
    assert left_inv is not None
    return left_inv, left


def independent_columns(domain: CoefficientDomain, arr: np.ndarray) -> list[int]:
    """Greedy list of column indices independent over the fraction field."""
    if arr.shape[1] == 0:
        return []
    field_, work = _over_fraction_field(domain, arr)
    return list(row_reduce(field_, work)[1])


def stack_columns(domain: CoefficientDomain, blocks: Sequence[np.ndarray], rows: int) -> np.ndarray:
    if not blocks:
        return domain.zeros((rows, 0))
    return np.concatenate([np.asarray(b, dtype=domain.dtype) for b in blocks], axis=1)
