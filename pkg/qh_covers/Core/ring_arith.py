# Exact scalar arithmetic and dense matrices over the supported coefficient
# domains: prime fields F_p, the rationals Q and the localisation Z_(p).
#
# Matrices are numpy arrays. Over F_p they are int64 arrays reduced mod p.
# Over Q and Z_(p) they are object arrays holding Python ints and
# fractions.Fraction values, with integral fractions stored as ints.
# No floating point is used anywhere.

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np
from sympy import isprime

from .exceptions import DomainMismatchError, InvalidInputError

logger = logging.getLogger(__name__)

PRIME_FIELD = "prime-field"
RATIONALS = "rationals"
LOCAL_INTEGERS = "localized-integers"

Scalar = int | Fraction

# int64 fast paths keep every entry below this bound before multiplying
_INT64_BOUND = 1 << 31


def _canonical_scalar(x: Any) -> Any:
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    if isinstance(x, np.integer):
        return int(x)
    return x


_canonical = np.frompyfunc(_canonical_scalar, 1, 1)


def _is_python_int(x: Any) -> bool:
    return type(x) is int


_is_int_vec = np.frompyfunc(_is_python_int, 1, 1)


def int64_view(arr: np.ndarray) -> np.ndarray | None:
    """Return an int64 copy of ``arr`` when every entry is a small integer."""
    if arr.dtype == np.int64:
        return arr
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=np.int64)
    if not all(_is_int_vec(arr).flat):
        return None
    lo, hi = min(arr.flat), max(arr.flat)
    if max(-lo, hi) >= _INT64_BOUND:
        return None
    return arr.astype(np.int64)


@dataclass(frozen=True)
class CoefficientDomain:
    """One of F_p, Q or Z_(p).

    Attributes:
        kind (str): ``"prime-field"``, ``"rationals"`` or ``"localized-integers"``.
        p (int | None): the prime, unless ``kind`` is ``"rationals"``.
    """

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == RATIONALS:
            if self.p is not None:
                raise InvalidInputError("the rationals take no modulus")
        elif self.kind in (PRIME_FIELD, LOCAL_INTEGERS):
            if self.p is None or not isprime(self.p):
                raise InvalidInputError(f"{self.p} is not a prime")
        else:
            raise InvalidInputError(f"unknown domain kind {self.kind!r}")

    @classmethod
    def parse(cls, spec: str) -> CoefficientDomain:
        """Parse a ring spec string: ``"f2"``, ``"f5"``, ``"q"``, ``"zloc3"``."""
        text = spec.strip().lower()
        if text == "q":
            return cls(RATIONALS)
        for prefix, kind in (("zloc", LOCAL_INTEGERS), ("f", PRIME_FIELD)):
            rest = text[len(prefix):]
            if text.startswith(prefix) and rest.isdigit():
                return cls(kind, int(rest))
        raise InvalidInputError(f"cannot parse ring spec {spec!r}")

    @property
    def spec(self) -> str:
        if self.kind == RATIONALS:
            return "q"
        return ("f" if self.kind == PRIME_FIELD else "zloc") + str(self.p)

    def __str__(self) -> str:
        if self.kind == RATIONALS:
            return "Q"
        return f"F_{self.p}" if self.kind == PRIME_FIELD else f"Z_({self.p})"

    @property
    def is_field(self) -> bool:
        return self.kind != LOCAL_INTEGERS

    @property
    def is_local(self) -> bool:
        return self.kind == LOCAL_INTEGERS

    @property
    def dtype(self) -> Any:
        return np.int64 if self.kind == PRIME_FIELD else object

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME_FIELD else 0  # type: ignore[return-value]

    def fraction_field(self) -> CoefficientDomain:
        return CoefficientDomain(RATIONALS) if self.is_local else self

    def residue_field(self) -> CoefficientDomain:
        if self.kind == RATIONALS:
            raise DomainMismatchError("Q has no residue field of positive characteristic")
        return CoefficientDomain(PRIME_FIELD, self.p)

    def require_field(self, what: str) -> None:
        if not self.is_field:
            raise DomainMismatchError(f"{what} needs a field, got {self}")

    # scalars

    def element(self, value: Any) -> Scalar:
        """Coerce an int, Fraction or exact string into this domain."""
        if isinstance(value, str):
            value = parse_scalar(value)
        if isinstance(value, np.integer):
            value = int(value)
        if isinstance(value, int):
            return value % self.p if self.kind == PRIME_FIELD else value  # type: ignore[operator]
        if isinstance(value, Fraction):
            if self.kind == PRIME_FIELD:
                den = value.denominator % self.p  # type: ignore[operator]
                if den == 0:
                    raise InvalidInputError(f"{value} is not defined in {self}")
                return value.numerator * pow(den, -1, self.p) % self.p  # type: ignore[operator]
            if self.is_local and value.denominator % self.p == 0:  # type: ignore[operator]
                raise InvalidInputError(f"{value} does not lie in {self}")
            return value.numerator if value.denominator == 1 else value
        raise InvalidInputError(f"unsupported scalar {value!r}")

    def format_element(self, x: Scalar) -> str:
        x = _canonical_scalar(x)
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def is_unit(self, x: Scalar) -> bool:
        if x == 0:
            return False
        if self.is_local:
            return Fraction(x).numerator % self.p != 0  # type: ignore[operator]
        return True

    def inverse(self, x: Scalar) -> Scalar:
        if not self.is_unit(x):
            raise InvalidInputError(f"{x} is not a unit of {self}")
        if self.kind == PRIME_FIELD:
            return pow(int(x), -1, self.p)
        return _canonical_scalar(1 / Fraction(x))  # type: ignore[no-any-return]

    def valuation(self, x: Scalar) -> int | None:
        """p-adic valuation over Z_(p); 0 for nonzero field elements; None for 0."""
        if x == 0:
            return None
        if not self.is_local:
            return 0
        num, v = abs(Fraction(x).numerator), 0
        while num % self.p == 0:  # type: ignore[operator]
            num //= self.p  # type: ignore[operator]
            v += 1
        return v

    def unit_part(self, x: Scalar) -> Scalar:
        if not self.is_local:
            return x
        v = self.valuation(x)
        return _canonical_scalar(Fraction(x) / self.p ** v)  # type: ignore[operator,no-any-return]

    def residue(self, x: Scalar) -> int:
        """Image of a Z_(p) (or F_p) element in the residue field."""
        return self.residue_field().element(Fraction(x))  # type: ignore[return-value]

    # arrays

    def array(self, entries: Any, shape: Sequence[int] | None = None) -> np.ndarray:
        raw = np.array(entries, dtype=object)
        if shape is not None:
            raw = raw.reshape(tuple(shape))
        coerced = np.frompyfunc(self.element, 1, 1)(raw) if raw.size else raw
        coerced = np.asarray(coerced, dtype=object).reshape(raw.shape)
        return coerced.astype(np.int64) if self.kind == PRIME_FIELD else coerced

    def zeros(self, shape: int | Sequence[int]) -> np.ndarray:
        if self.kind == PRIME_FIELD:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.kind == PRIME_FIELD:
            return np.mod(np.asarray(arr, dtype=np.int64), self.p)
        arr = np.asarray(arr, dtype=object)
        if arr.size == 0:
            return arr
        return np.asarray(_canonical(arr), dtype=object).reshape(arr.shape)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product ``a @ b`` (batched shapes allowed)."""
        if self.kind == PRIME_FIELD:
            return _matmul_mod(np.asarray(a, np.int64), np.asarray(b, np.int64), self.p)  # type: ignore[arg-type]
        fa, fb = int64_view(a), int64_view(b)
        if fa is not None and fb is not None:
            bound = int(np.abs(fa).max(initial=0)) * int(np.abs(fb).max(initial=0)) * a.shape[-1]
            if bound < (1 << 62):
                return (fa @ fb).astype(object)
        return self.normalize(np.asarray(a, dtype=object) @ np.asarray(b, dtype=object))

    def contains(self, arr: np.ndarray) -> bool:
        """True when every entry of an exact array lies in this domain."""
        if self.kind != LOCAL_INTEGERS:
            return True
        return all(type(x) is int or x.denominator % self.p != 0 for x in np.asarray(arr).flat)

    def residue_array(self, arr: np.ndarray) -> np.ndarray:
        """Reduce a Z_(p) (or F_p) array to the residue field F_p."""
        field = self.residue_field()
        if self.kind == PRIME_FIELD:
            return np.asarray(arr, dtype=np.int64)
        fast = int64_view(np.asarray(arr, dtype=object))
        if fast is not None:
            return np.mod(fast, field.p)  # type: ignore[arg-type]
        return field.array(np.asarray(arr, dtype=object))

    def lift_array(self, arr: np.ndarray) -> np.ndarray:
        """View an array as an exact object array (integer lifts over F_p)."""
        return np.asarray(arr).astype(object)


def parse_scalar(text: str) -> Scalar:
    """Parse an exact scalar string such as ``"3"``, ``"-1/2"``."""
    cleaned = text.strip()
    if not cleaned or any(ch in cleaned for ch in ".eE"):
        raise InvalidInputError(f"not an exact scalar: {text!r}")
    try:
        return _canonical_scalar(Fraction(cleaned))  # type: ignore[no-any-return]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not an exact scalar: {text!r}") from exc


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[-1]
    step = max(1, (1 << 62) // max(1, (p - 1) ** 2))
    if inner <= step:
        return np.mod(a @ b, p)
    out = np.mod(a[..., :step] @ b[..., :step, :], p)
    for start in range(step, inner, step):
        out = np.mod(out + np.mod(a[..., start:start + step] @ b[..., start:start + step, :], p), p)
    return out


@dataclass(frozen=True, eq=False)
class Matrix:
    """An immutable dense matrix over a coefficient domain."""

    domain: CoefficientDomain
    data: np.ndarray

    def __post_init__(self) -> None:
        data = self.domain.normalize(np.array(self.data, dtype=self.domain.dtype, copy=True))
        if data.ndim != 2:
            raise InvalidInputError(f"a matrix needs two axes, got shape {data.shape}")
        if not self.domain.contains(data):
            raise InvalidInputError(f"matrix entries do not lie in {self.domain}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, domain: CoefficientDomain, rows: Iterable[Iterable[Any]], cols: int | None = None) -> Matrix:
        listed = [list(r) for r in rows]
        if not listed:
            return cls(domain, domain.zeros((0, cols or 0)))
        return cls(domain, domain.array(listed))

    @classmethod
    def zeros(cls, domain: CoefficientDomain, rows: int, cols: int) -> Matrix:
        return cls(domain, domain.zeros((rows, cols)))

    @classmethod
    def identity(cls, domain: CoefficientDomain, n: int) -> Matrix:
        return cls(domain, domain.eye(n))

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Scalar:
        return _canonical_scalar(self.data[i, j])  # type: ignore[no-any-return]

    def _check(self, other: Matrix) -> None:
        if self.domain != other.domain:
            raise DomainMismatchError(f"cannot combine matrices over {self.domain} and {other.domain}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise InvalidInputError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.domain, self.domain.matmul(self.data, other.data))

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.domain, self.data + other.data)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix(self.domain, self.data - other.data)

    def __neg__(self) -> Matrix:
        return Matrix(self.domain, -self.data)

    @property
    def T(self) -> Matrix:
        return Matrix(self.domain, self.data.T)

    def is_zero(self) -> bool:
        return int(np.count_nonzero(self.data)) == 0

    def tolist(self) -> list[list[Scalar]]:
        return [[_canonical_scalar(x) for x in row] for row in self.data]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.domain == other.domain and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Matrix({self.domain}, {self.tolist()})"


# Row reduction over fields


def row_reduce(domain: CoefficientDomain, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over a field; returns (reduced, pivot columns)."""
    domain.require_field("row reduction")
    if domain.kind == PRIME_FIELD:
        return _row_reduce_mod(np.array(arr, dtype=np.int64), domain.p)  # type: ignore[arg-type]
    return _row_reduce_rational(np.asarray(arr, dtype=object))


def _row_reduce_mod(work: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    work = np.mod(work, p)
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(work[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            work[[r, i]] = work[[i, r]]
        work[r] = np.mod(work[r] * pow(int(work[r, c]), -1, p), p)
        others = np.flatnonzero(work[:, c])
        others = others[others != r]
        if others.size:
            work[others] = np.mod(work[others] - np.outer(work[others, c], work[r]), p)
        pivots.append(c)
        r += 1
    return work, pivots


def _row_reduce_rational(arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    # int64 while pivots stay +-1 and entries stay small, Fractions otherwise
    fast = int64_view(arr)
    work = fast.copy() if fast is not None else np.array(arr, dtype=object, copy=True)
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(work[r:, c])
        if nz.size == 0:
            continue
        if work.dtype == np.int64:
            units = nz[np.abs(work[r + nz, c]) == 1]
            if units.size == 0:
                work = work.astype(object)
                pick = int(nz[0])
            else:
                pick = int(units[0])
        else:
            pick = int(nz[0])
        i = r + pick
        if i != r:
            work[[r, i]] = work[[i, r]]
        pivot = work[r, c]
        if work.dtype == np.int64:
            if pivot == -1:
                work[r] = -work[r]
        elif pivot != 1:
            work[r] = _canonical(work[r] * (1 / Fraction(pivot)))
        others = np.flatnonzero(work[:, c])
        others = others[others != r]
        if others.size:
            work[others] = work[others] - np.outer(work[others, c], work[r])
            if work.dtype == np.int64:
                if int(np.abs(work).max()) >= _INT64_BOUND:
                    work = work.astype(object)
            else:
                work[others] = _canonical(work[others])
        pivots.append(c)
        r += 1
    out = work.astype(object) if work.dtype == np.int64 else np.asarray(_canonical(work), dtype=object).reshape(work.shape)
    return out, pivots


def kernel_from_reduced(domain: CoefficientDomain, reduced: np.ndarray, pivots: Sequence[int], cols: int) -> np.ndarray:
    """Null-space basis (as columns) read off a reduced row echelon form."""
    taken = set(pivots)
    free = [c for c in range(cols) if c not in taken]
    kernel = domain.zeros((cols, len(free)))
    for k, f in enumerate(free):
        kernel[f, k] = 1
        for i, c in enumerate(pivots):
            kernel[c, k] = -reduced[i, f]
    return domain.normalize(kernel)


@dataclass(frozen=True)
class RowReduction:
    """Result of :func:`rref`: kernel and image bases are stored as columns."""

    reduced: Matrix
    rank: int
    pivots: tuple[int, ...]
    kernel: Matrix
    image: Matrix


def rref(m: Matrix) -> RowReduction:
    """Exact reduced row echelon form of a matrix over F_p or Q.

    Args:
        m (Matrix): a matrix over a field.

    Returns:
        RowReduction: reduced matrix, rank, pivot columns, kernel basis and
        image basis (both as matrix columns).
    """
    domain = m.domain
    domain.require_field("rref")
    reduced, pivots = row_reduce(domain, m.data)
    kernel = kernel_from_reduced(domain, reduced, pivots, m.cols)
    image = m.data[:, pivots] if pivots else domain.zeros((m.rows, 0))
    return RowReduction(Matrix(domain, reduced), len(pivots), tuple(pivots),
                        Matrix(domain, kernel), Matrix(domain, image))


# Smith normal form over the local PID Z_(p) (degenerates to rank over fields)


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right == diagonal`` with ``invariant_factors`` on the diagonal.

    Invariant factors are the nonzero diagonal entries; units are normalised
    to 1 and non-units to powers of p, in divisibility order.
    """

    invariant_factors: tuple[Scalar, ...]
    left: Matrix
    right: Matrix
    diagonal: Matrix


def _pivot_position(domain: CoefficientDomain, sub: np.ndarray) -> tuple[int, int] | None:
    rows, cols = np.nonzero(sub)
    if rows.size == 0:
        return None
    if not domain.is_local:
        return int(rows[0]), int(cols[0])
    best, best_val = (int(rows[0]), int(cols[0])), None
    for r, c in zip(rows, cols):
        v = domain.valuation(sub[r, c])
        if v == 0:
            return int(r), int(c)
        if best_val is None or v < best_val:  # type: ignore[operator]
            best, best_val = (int(r), int(c)), v
    return best


def _scale(domain: CoefficientDomain, arr: np.ndarray, factor: Scalar) -> np.ndarray:
    if domain.kind == PRIME_FIELD:
        return np.mod(arr * int(factor), domain.p)  # type: ignore[arg-type,no-any-return]
    return np.asarray(_canonical(arr * factor), dtype=object)


def _divide(domain: CoefficientDomain, arr: np.ndarray, pivot: Scalar) -> np.ndarray:
    if domain.kind == PRIME_FIELD:
        return _scale(domain, arr, pow(int(pivot), -1, domain.p))
    return _scale(domain, arr, 1 / Fraction(pivot))  # type: ignore[arg-type]


def smith_arrays(domain: CoefficientDomain, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[Scalar]]:
    """Smith normal form on raw arrays: returns (D, U, V, factors) with U A V = D."""
    work = np.array(arr, dtype=object, copy=True)
    m, n = work.shape
    left, right = domain.eye(m).astype(object), domain.eye(n).astype(object)
    factors: list[Scalar] = []
    for t in range(min(m, n)):
        pos = _pivot_position(domain, work[t:, t:])
        if pos is None:
            break
        i, j = pos[0] + t, pos[1] + t
        if i != t:
            work[[t, i]] = work[[i, t]]
            left[[t, i]] = left[[i, t]]
        if j != t:
            work[:, [t, j]] = work[:, [j, t]]
            right[:, [t, j]] = right[:, [j, t]]
        scale = domain.inverse(domain.unit_part(work[t, t]))
        work[t] = _scale(domain, work[t], scale)
        left[t] = _scale(domain, left[t], scale)
        pivot = work[t, t]
        below = np.flatnonzero(work[t + 1:, t]) + t + 1
        if below.size:
            coeff = _divide(domain, work[below, t], pivot)
            work[below] = domain.normalize(work[below] - np.outer(coeff, work[t])).astype(object)
            left[below] = domain.normalize(left[below] - np.outer(coeff, left[t])).astype(object)
        across = np.flatnonzero(work[t, t + 1:]) + t + 1
        if across.size:
            coeff = _divide(domain, work[t, across], pivot)
            work[:, across] = domain.normalize(work[:, across] - np.outer(work[:, t], coeff)).astype(object)
            right[:, across] = domain.normalize(right[:, across] - np.outer(right[:, t], coeff)).astype(object)
        factors.append(_canonical_scalar(pivot))
    cast = domain.dtype
    return (domain.normalize(work.astype(cast)), domain.normalize(left.astype(cast)),
            domain.normalize(right.astype(cast)), factors)


def smith_normal_form(m: Matrix) -> SmithForm:
    """Smith normal form of a matrix over Z_(p) (or a field, where it is rank normal form).

    Args:
        m (Matrix): the matrix A.

    Returns:
        SmithForm: invariant factors and transforms with U A V = D exactly.
    """
    diagonal, left, right, factors = smith_arrays(m.domain, m.data)
    return SmithForm(tuple(factors), Matrix(m.domain, left), Matrix(m.domain, right), Matrix(m.domain, diagonal))


@dataclass(frozen=True)
class CokernelInvariants:
    """Cokernel ≅ R^free_rank ⊕ ⊕ R/(t) for t in torsion_factors."""

    free_rank: int
    torsion_factors: tuple[Scalar, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors


def cokernel_invariants(m: Matrix) -> CokernelInvariants:
    """Structure of the cokernel of ``m`` viewed as a map R^cols -> R^rows."""
    smith = smith_normal_form(m)
    torsion = tuple(f for f in smith.invariant_factors if not m.domain.is_unit(f))
    return CokernelInvariants(m.rows - len(smith.invariant_factors), torsion)


def residue_rank(domain: CoefficientDomain, arr: np.ndarray) -> int:
    """Rank after reduction to the residue field: the number of unit invariant factors."""
    reduced = domain.residue_array(arr)
    _, pivots = row_reduce(domain.residue_field(), reduced)
    return len(pivots)
