# JSON files for algebras, representations and heredity chains.
#
# Algebra file:
#   {"ring": "f2", "rank": n, "labels": [...], "unit": ["1", "0", ...],
#    "mult": [[i, j, k, "coeff"], ...]}
# Sidecar file (next to the algebra file, "<stem>.sidecar.json"):
#   {"family": ..., "n": ..., "d": ..., "u": "...", "idempotent_e": [...],
#    "peirce": [[...], ...], "chain": {"weights": [...], "idempotents": [...],
#    "partitions": [...]}}
# Scalars are exact strings. Key order and list order are fixed, so two
# writes of the same object are byte-identical.

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import Algebra, Representation, verify_algebra, verify_representation
from .exceptions import InvalidInputError, QHCoversError
from .qh_structure import HeredityChain
from .ring_arith import CoefficientDomain

logger = logging.getLogger(__name__)


def _vector_to_json(dom: CoefficientDomain, vec: np.ndarray) -> list[str]:
    return [dom.format_element(x) for x in np.asarray(vec).reshape(-1)]


def _vector_from_json(dom: CoefficientDomain, entries: Any, size: int, what: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != size:
        raise InvalidInputError(f"{what} must be a list of {size} exact scalars")
    return dom.array([str(x) for x in entries])


def _require(data: Any, key: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise InvalidInputError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise InvalidInputError(f"field {key!r} has the wrong type")
    return value


def algebra_to_json(a: Algebra) -> dict[str, Any]:
    dom = a.domain
    mult = [[i, j, k, dom.format_element(c)] for i, j, k, c in a.quadruples()]
    return {"ring": dom.spec, "rank": a.rank, "labels": list(a.labels),
            "unit": _vector_to_json(dom, a.unit), "mult": mult}


def algebra_from_json(data: dict[str, Any], name: str = "") -> Algebra:
    """Rebuild an Algebra, checking associativity and the unit laws."""
    dom = CoefficientDomain.parse(_require(data, "ring", str))
    n = _require(data, "rank", int)
    labels = _require(data, "labels", list)
    if len(labels) != n:
        raise InvalidInputError(f"{len(labels)} labels for rank {n}")
    unit = _vector_from_json(dom, _require(data, "unit", list), n, "unit")
    quadruples = []
    for entry in _require(data, "mult", list):
        if (not isinstance(entry, list) or len(entry) != 4
                or not all(isinstance(x, int) and 0 <= x < n for x in entry[:3])):
            raise InvalidInputError(f"malformed structure constant {entry!r}")
        quadruples.append((entry[0], entry[1], entry[2], str(entry[3])))
    a = Algebra.from_quadruples(dom, [str(x) for x in labels], quadruples, list(unit), (), name)
    try:
        verify_algebra(a)
    except QHCoversError as exc:
        raise InvalidInputError(f"file does not describe an algebra: {exc}") from exc
    return a


def representation_to_json(m: Representation, algebra_ref: str = "") -> dict[str, Any]:
    dom = m.domain
    action = [[[dom.format_element(x) for x in row] for row in mat] for mat in m.action]
    return {"algebra": algebra_ref or m.algebra.name, "rank": m.rank, "action": action}


def representation_from_json(data: dict[str, Any], algebra: Algebra, name: str = "") -> Representation:
    dom = algebra.domain
    r = _require(data, "rank", int)
    action = _require(data, "action", list)
    if len(action) != algebra.rank:
        raise InvalidInputError(f"{len(action)} action matrices for an algebra of rank {algebra.rank}")
    mats = []
    for mat in action:
        if not isinstance(mat, list) or len(mat) != r or any(not isinstance(row, list) or len(row) != r for row in mat):
            raise InvalidInputError(f"action matrices must be {r} x {r}")
        mats.append(dom.array([[str(x) for x in row] for row in mat]))
    m = Representation(algebra, np.stack(mats) if mats else dom.zeros((0, r, r)), name)
    try:
        verify_representation(m)
    except QHCoversError as exc:
        raise InvalidInputError(f"file does not describe a module: {exc}") from exc
    return m


def chain_to_json(chain: HeredityChain) -> dict[str, Any]:
    dom = chain.algebra.domain
    out: dict[str, Any] = {"weights": list(chain.weights),
                           "idempotents": [_vector_to_json(dom, e) for e in chain.idempotents]}
    if chain.partitions:
        out["partitions"] = [list(p) for p in chain.partitions]
    return out


def chain_from_json(data: dict[str, Any], algebra: Algebra) -> HeredityChain:
    dom = algebra.domain
    weights = _require(data, "weights", list)
    idems = [_vector_from_json(dom, e, algebra.rank, "chain idempotent") for e in _require(data, "idempotents", list)]
    partitions = tuple(tuple(int(x) for x in p) for p in data.get("partitions", []))
    return HeredityChain(algebra, tuple(str(w) for w in weights), tuple(idems), partitions)


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.sidecar.json")


def write_json(path: str | Path, obj: Any) -> None:
    with open(path, "w") as f:
        json.dump(obj, f, indent=1)
        f.write("\n")


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


@dataclass(frozen=True, eq=False)
class AlgebraBundle:
    """An algebra file together with the data of its sidecar."""

    algebra: Algebra
    sidecar: dict[str, Any]
    idempotent: np.ndarray | None
    chain: HeredityChain | None

    @property
    def family(self) -> str:
        return str(self.sidecar.get("family", "custom"))


def bundle_sidecar(family: str, n: int | None, d: int | None, u: str, idempotent: np.ndarray | None,
                   algebra: Algebra, chain: HeredityChain | None) -> dict[str, Any]:
    dom = algebra.domain
    side: dict[str, Any] = {"family": family, "n": n, "d": d, "u": u}
    side["idempotent_e"] = _vector_to_json(dom, idempotent) if idempotent is not None else None
    side["peirce"] = [_vector_to_json(dom, e) for e in algebra.peirce]
    side["chain"] = chain_to_json(chain) if chain is not None else None
    return side


def save_bundle(path: str | Path, algebra: Algebra, sidecar: dict[str, Any]) -> tuple[Path, Path]:
    """Write the algebra file and its sidecar; returns both paths."""
    path = Path(path)
    side = sidecar_path(path)
    write_json(path, algebra_to_json(algebra))
    write_json(side, sidecar)
    logger.info("wrote %s and %s", path, side)
    return path, side


def load_bundle(path: str | Path) -> AlgebraBundle:
    """Read an algebra file and, when present, its sidecar."""
    path = Path(path)
    a = algebra_from_json(read_json(path), path.stem)
    side_file = sidecar_path(path)
    side: dict[str, Any] = read_json(side_file) if side_file.exists() else {}
    dom = a.domain
    if side.get("peirce"):
        family = [_vector_from_json(dom, e, a.rank, "Peirce idempotent") for e in side["peirce"]]
        try:
            a = a.with_peirce(family)
        except QHCoversError as exc:
            raise InvalidInputError(f"sidecar Peirce family is invalid: {exc}") from exc
    e = side.get("idempotent_e")
    idem = _vector_from_json(dom, e, a.rank, "idempotent_e") if e is not None else None
    if idem is not None and not a.is_idempotent(idem):
        raise InvalidInputError("idempotent_e is not an idempotent")
    chain = chain_from_json(side["chain"], a) if side.get("chain") else None
    return AlgebraBundle(a, side, idem, chain)
