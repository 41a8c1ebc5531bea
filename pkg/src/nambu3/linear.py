"""Finitely supported linear combinations with Scalar coefficients.

Base class for algebra elements, module vectors, derivation expressions, and
generator combinations.  Terms live in a dict keyed by the combination's key
type; zero coefficients are dropped on construction so equality is plain dict
equality.  Addition is only defined between combinations of the same concrete
type, which catches category mixups early.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Tuple

from .scalar import Indeterminate, Scalar, ScalarLike


class LinComb:
    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, coeff in items:
            self._check_key(key)
            c = Scalar.coerce(coeff)
            if key in acc:
                c = acc[key] + c
            if c.is_zero:
                acc.pop(key, None)
            else:
                acc[key] = c
        object.__setattr__(self, "_terms", acc)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # subclass hooks ---------------------------------------------------------

    @staticmethod
    def _check_key(key) -> None:
        pass

    @staticmethod
    def _key_sort(key):
        return key

    @staticmethod
    def _format_key(key) -> str:
        return str(key)

    # construction -----------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def term(cls, key, coeff: ScalarLike = 1):
        return cls([(key, coeff)])

    # inspection --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, key) -> Scalar:
        return self._terms.get(key, Scalar(0))

    def support(self) -> tuple:
        return tuple(sorted(self._terms, key=self._key_sort))

    def items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: self._key_sort(kv[0]))

    # arithmetic ---------------------------------------------------------------

    def _merged(self, other, sign: int):
        acc = dict(self._terms)
        for key, c in other._terms.items():
            tot = acc.get(key, Scalar(0)) + (c if sign > 0 else -c)
            if tot.is_zero:
                acc.pop(key, None)
            else:
                acc[key] = tot
        out = object.__new__(type(self))
        object.__setattr__(out, "_terms", acc)
        return out

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._merged(other, +1)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._merged(other, -1)

    def __neg__(self):
        out = object.__new__(type(self))
        object.__setattr__(out, "_terms", {k: -c for k, c in self._terms.items()})
        return out

    def __mul__(self, factor):
        if not isinstance(factor, (Scalar, Indeterminate, Fraction, int)):
            return NotImplemented
        f = Scalar.coerce(factor)
        if f.is_zero:
            return type(self)()
        acc = {}
        for key, c in self._terms.items():
            fc = c * f
            if not fc.is_zero:
                acc[key] = fc
        out = object.__new__(type(self))
        object.__setattr__(out, "_terms", acc)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    # formatting -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (key, c) in enumerate(self.items()):
            kstr = self._format_key(key)
            if c.is_rational:
                q = c.as_rational
                neg = q < 0
                mag = -q if neg else q
                body = kstr if (mag == 1 and not neg) else f"{mag} {kstr}"
            elif len(c) == 1:
                ((mono, q),) = c._terms.items()
                neg = q < 0
                mag = Scalar._make({mono: -q if neg else q})
                body = f"{mag} {kstr}"
            else:
                neg = False
                body = f"({c}) {kstr}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"
