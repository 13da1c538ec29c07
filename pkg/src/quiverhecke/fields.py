"""Exact coefficient fields: the rationals and prime fields F_p."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Union

from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

FieldSpec = Union[str, int, Domain]


def make_field(spec: FieldSpec = "Q") -> Domain:
    """``"Q"`` for the rationals, ``"F13"`` / ``13`` for a prime field."""
    if isinstance(spec, Domain):
        return spec
    if isinstance(spec, int):
        return _prime_field(spec)
    s = str(spec).strip().upper()
    if s in ("Q", "QQ", "RATIONALS"):
        return QQ
    for prefix in ("F_", "F", "GF(", "GF"):
        if s.startswith(prefix):
            body = s[len(prefix):].rstrip(")")
            if body.isdigit():
                return _prime_field(int(body))
    raise ValueError(f"unknown field {spec!r}; expected 'Q' or 'F<p>'")


def _prime_field(p: int) -> Domain:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return GF(p)


def characteristic(dom: Domain) -> int:
    return dom.characteristic()


def convert(dom: Domain, value: Any):
    """Convert ints, Fractions and strings like "1/3" into ``dom``."""
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return dom.convert(value.numerator)
        return dom.convert(value.numerator) / dom.convert(value.denominator)
    return dom.convert(value)


def to_python(dom: Domain, value) -> Union[int, str]:
    """JSON-friendly form of a field element."""
    if dom.is_FiniteField:
        return int(dom.to_int(value)) % dom.characteristic()
    q = Fraction(int(value.numerator), int(value.denominator))
    return int(q) if q.denominator == 1 else str(q)


def field_name(dom: Domain) -> str:
    return "Q" if dom == QQ else f"F{dom.characteristic()}"
