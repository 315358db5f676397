"""Affine Deligne-Lusztig varieties of positive Coxeter type.

Elements of the extended affine Weyl group are dicts ``{"w": [...], "mu": [...]}``
with ``w`` a 1-based reduced word and ``mu`` lattice coordinates, so that
``x = w * eps^mu``.
"""

from __future__ import annotations

import json
from os import PathLike
from typing import Any, Mapping

from ._adlv import ComputationError, InvariantViolation, Session
from ._adlv import selftest as _selftest

__all__ = ["Datum", "ComputationError", "InvariantViolation", "selftest"]

Element = Mapping[str, Any]


def _enc(x: Element | str) -> str:
    return x if isinstance(x, str) else json.dumps(dict(x))


class Datum:
    """A root datum with everything built on it."""

    def __init__(self, session: Session):
        self._s = session

    @classmethod
    def load(cls, path: str | PathLike[str], slack: int | None = None) -> "Datum":
        return cls(Session.load(str(path), slack))

    @classmethod
    def from_spec(cls, spec: Mapping[str, Any], slack: int | None = None) -> "Datum":
        return cls(Session.from_spec(json.dumps(dict(spec)), slack))

    @property
    def rank(self) -> int:
        return self._s.rank

    @property
    def weyl_order(self) -> int:
        return self._s.weyl_order

    def spec(self) -> dict:
        return json.loads(self._s.datum())

    def length(self, x: Element) -> int:
        return self._s.length(_enc(x))

    def multiply(self, x: Element, y: Element) -> dict:
        return json.loads(self._s.multiply(_enc(x), _enc(y)))

    def inverse(self, x: Element) -> dict:
        return json.loads(self._s.inverse(_enc(x)))

    def simple_reflection(self, label: int) -> dict:
        """Simple affine reflection; label 0 is the affine node, 1..rank the finite ones."""
        return json.loads(self._s.simple_reflection(label))

    def omega_elements(self, box: int = 1) -> list[dict]:
        return [json.loads(t) for t in self._s.omega_elements(box)]

    def lp(self, x: Element) -> list[list[int]]:
        return self._s.lp(_enc(x))

    def newton(self, x: Element) -> list[str]:
        return json.loads(self._s.newton(_enc(x)))

    def class_of(self, x: Element) -> dict:
        return json.loads(self._s.class_of(_enc(x)))

    def class_polynomials(self, x: Element, seed: int | None = None) -> list[dict]:
        return json.loads(self._s.class_polynomials(_enc(x), seed))

    def tree(self, x: Element) -> dict:
        return json.loads(self._s.tree(_enc(x)))

    def classify(self, x: Element) -> dict:
        return json.loads(self._s.classify(_enc(x)))

    def report(self, x: Element) -> dict:
        return json.loads(self._s.report(_enc(x)))

    def analyze(self, x: Element) -> dict:
        return json.loads(self._s.analyze(_enc(x)))

    def elements(self, max_length: int) -> list[dict]:
        return [json.loads(x) for x in self._s.scan(max_length)]


def selftest(criterion: int = 0, data_dir: str = "") -> list[tuple[int, bool, str]]:
    return _selftest(criterion, data_dir)
