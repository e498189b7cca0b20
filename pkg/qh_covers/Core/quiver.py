# Path algebras of finite quivers modulo zero relations.
#
# A path is written as a product of arrows, rightmost arrow first, so
# "beta*alpha" means alpha then beta, and p*q is nonzero only when q ends
# where p starts. With this convention A*e_v is spanned by the paths that
# start at v, i.e. it is the indecomposable projective P(v).

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Algebra, verify_algebra
from .exceptions import InvalidInputError
from .ring_arith import CoefficientDomain

logger = logging.getLogger(__name__)

# paths longer than this mean the relations do not bound the path length
MAX_PATH_LENGTH = 24


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A nonzero path: a trivial path at ``vertex`` or arrows in product order."""

    vertex: str
    arrows: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.vertex}"


def _contains_relation(arrows: tuple[str, ...], relations: Sequence[tuple[str, ...]]) -> bool:
    for rel in relations:
        k = len(rel)
        if any(arrows[i:i + k] == rel for i in range(len(arrows) - k + 1)):
            return True
    return False


def enumerate_paths(vertices: Sequence[str], arrows: Sequence[Arrow],
                    relations: Sequence[tuple[str, ...]]) -> list[Path]:
    """All paths not containing a relation, trivial paths first, then by length."""
    by_name = {a.name: a for a in arrows}
    paths = [Path(v) for v in vertices]
    layer = [(a.name,) for a in arrows if not _contains_relation((a.name,), relations)]
    length = 1
    while layer:
        if length > MAX_PATH_LENGTH:
            raise InvalidInputError("relations do not bound the length of paths")
        layer.sort()
        paths.extend(Path(by_name[p[-1]].source, p) for p in layer)
        longer = []
        for p in layer:
            end = by_name[p[0]].target
            for a in arrows:
                if a.source == end:
                    cand = (a.name,) + p
                    if not _contains_relation(cand, relations):
                        longer.append(cand)
        layer = longer
        length += 1
    return paths


def quiver_algebra(vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]],
                   relations: Sequence[Sequence[str]], domain: CoefficientDomain, name: str = "") -> Algebra:
    """The bound quiver algebra kQ/I with I generated by zero relations.

    Args:
        vertices (Sequence[str]): vertex names.
        arrows (Sequence[tuple[str, str, str]]): (name, source, target) triples.
        relations (Sequence[Sequence[str]]): paths, in product order, that
            are set to zero.
        domain (CoefficientDomain): coefficients.
        name (str): algebra name.

    Returns:
        Algebra: basis of nonzero paths with the vertex idempotents as Peirce family.
    """
    vertex_set = set(vertices)
    if len(vertex_set) != len(vertices) or not vertices:
        raise InvalidInputError("vertex names must be distinct and non-empty")
    quiver_arrows = [Arrow(*a) for a in arrows]
    for a in quiver_arrows:
        if a.source not in vertex_set or a.target not in vertex_set:
            raise InvalidInputError(f"arrow {a.name} joins unknown vertices")
    names = {a.name for a in quiver_arrows}
    rels = [tuple(r) for r in relations]
    for r in rels:
        if not r or any(x not in names for x in r):
            raise InvalidInputError(f"relation {r} uses unknown arrows")
    by_name = {a.name: a for a in quiver_arrows}

    paths = enumerate_paths(vertices, quiver_arrows, rels)
    index = {(p.vertex, p.arrows): i for i, p in enumerate(paths)}

    def source(p: Path) -> str:
        return by_name[p.arrows[-1]].source if p.arrows else p.vertex

    def target(p: Path) -> str:
        return by_name[p.arrows[0]].target if p.arrows else p.vertex

    n = len(paths)
    mult = domain.zeros((n, n, n))
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if source(p) != target(q):
                continue
            arrows_pq = p.arrows + q.arrows
            if _contains_relation(arrows_pq, rels):
                continue
            key = (by_name[arrows_pq[-1]].source, arrows_pq) if arrows_pq else (p.vertex, ())
            mult[i, j, index[key]] = 1
    unit = domain.zeros(n)
    peirce = []
    for v in vertices:
        e = domain.zeros(n)
        e[index[(v, ())]] = 1
        unit[index[(v, ())]] = 1
        peirce.append(e)
    alg = Algebra(domain, tuple(p.label for p in paths), mult, unit, tuple(peirce), name or "kQ/I")
    verify_algebra(alg)
    logger.info("built %r from %d vertices and %d arrows", alg, len(vertices), len(quiver_arrows))
    return alg


def vertex_idempotent(a: Algebra, vertex: str) -> np.ndarray:
    """The trivial path at ``vertex`` in A-coordinates."""
    label = f"e{vertex}"
    if label not in a.labels:
        raise InvalidInputError(f"no vertex {vertex} in {a!r}")
    return a.basis_element(a.labels.index(label))


def two_vertex_quiver_fixture(domain: CoefficientDomain) -> Algebra:
    """The quiver 1 -> 2 (alpha), 2 -> 1 (beta) modulo alpha*beta.

    This is the regular block of category O for sl2: P(2) = {e2, beta},
    P(1) = {e1, alpha, beta*alpha}. With 2 > 1, Delta(2) = P(2) and
    Delta(1) is the simple module at 1.
    """
    return quiver_algebra(("1", "2"), (("alpha", "1", "2"), ("beta", "2", "1")), (("alpha", "beta"),),
                          domain, "quiver(1<->2, alpha*beta=0)")
