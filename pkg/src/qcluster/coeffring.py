"""Exact arithmetic in Z[q^(1/2), q^(-1/2)].

A :class:`QLaurent` is a finite map ``half_exponent -> int`` where the key
``k`` stands for ``q^(k/2)``.  Zero coefficients are never stored, so two
elements are equal exactly when their maps are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DivisionByZero, InvalidArgs, NotDivisible

__all__ = [
    "QLaurent",
    "ql_add",
    "ql_mul",
    "ql_exact_div",
    "qint",
    "qbinom",
    "q_half",
    "q_power",
]


class QLaurent:
    """Laurent polynomial in ``q^(1/2)`` with arbitrary-precision coefficients.

    Parameters
    ----------
    terms : mapping or iterable of pairs, optional
        ``{half_exponent: coefficient}``.  Zero coefficients are dropped and
        repeated keys (when an iterable is given) are summed.

    Examples
    --------
    >>> QLaurent({2: 1, 0: -1})          # q - 1
    q - 1
    >>> q_half() * q_half()
    q
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        t: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                if not isinstance(k, int):
                    raise InvalidArgs(f"half-exponent must be an int, got {k!r}")
                t[k] = t.get(k, 0) + int(c)
        self._t = {k: c for k, c in t.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, t: dict[int, int]) -> "QLaurent":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def q(cls, exponent: int | Fraction = 1, coeff: int = 1) -> "QLaurent":
        """``coeff * q^exponent`` for an exponent in ``(1/2)Z``."""
        h = Fraction(exponent) * 2
        if h.denominator != 1:
            raise InvalidArgs(f"q-exponent {exponent} is not a half-integer")
        return cls({int(h): coeff})

    @classmethod
    def const(cls, c: int) -> "QLaurent":
        return cls({0: c})

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        """Copy of the ``{half_exponent: coefficient}`` map."""
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_unit(self) -> bool:
        """True for ``+-q^(k/2)``, the units of the ring."""
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def min_half(self) -> int:
        return min(self._t)

    def max_half(self) -> int:
        return max(self._t)

    def at_one(self) -> int:
        """Specialize ``q^(1/2) -> 1``."""
        return sum(self._t.values())

    def bar(self) -> "QLaurent":
        """The involution ``q^(1/2) -> q^(-1/2)``."""
        return QLaurent._raw({-k: c for k, c in self._t.items()})

    def shift(self, half: int) -> "QLaurent":
        """Multiply by ``q^(half/2)``."""
        if half == 0:
            return self
        return QLaurent._raw({k + half: c for k, c in self._t.items()})

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "QLaurent | None":
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, int):
            return QLaurent.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for k, c in o._t.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return QLaurent._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t: dict[int, int] = {}
        for k1, c1 in self._t.items():
            for k2, c2 in o._t.items():
                k = k1 + k2
                t[k] = t.get(k, 0) + c1 * c2
        return QLaurent._raw({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not a unit")
            (k, c), = self._t.items()
            return QLaurent._raw({k * e: 1 if e % 2 == 0 else c})
        result = QLaurent.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- display ------------------------------------------------------
    def __repr__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for k, c in sorted(self._t.items(), reverse=True):
            mono = _q_symbol(k)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_pairs(self) -> list[list]:
        """Serializable ``[[half_exponent, "coeff"], ...]`` sorted ascending."""
        return [[k, str(c)] for k, c in sorted(self._t.items())]

    @classmethod
    def from_pairs(cls, pairs) -> "QLaurent":
        out: dict[int, int] = {}
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidArgs(f"bad coefficient pair {pair!r}")
            k, c = pair
            if not isinstance(k, int) or isinstance(k, bool):
                raise InvalidArgs(f"half-exponent must be an int, got {k!r}")
            try:
                val = int(c)
            except (TypeError, ValueError) as exc:
                raise InvalidArgs(f"bad coefficient {c!r}") from exc
            if k in out:
                raise InvalidArgs(f"repeated half-exponent {k}")
            out[k] = val
        return cls(out)


def _q_symbol(k: int) -> str:
    if k == 0:
        return "1"
    if k == 2:
        return "q"
    if k % 2 == 0:
        return f"q^{k // 2}"
    return f"q^({k}/2)"


def q_half() -> QLaurent:
    """The deformation parameter ``q^(1/2)``."""
    return QLaurent({1: 1})


def q_power(half: int, coeff: int = 1) -> QLaurent:
    """``coeff * q^(half/2)``."""
    return QLaurent({half: coeff})


def ql_add(a: QLaurent, b: QLaurent) -> QLaurent:
    return a + b


def ql_mul(a: QLaurent, b: QLaurent) -> QLaurent:
    return a * b


def ql_exact_div(a: QLaurent, b: QLaurent) -> QLaurent:
    """Return ``c`` with ``b * c == a``.

    Long division on the top-degree terms; the ring is commutative so side
    does not matter.

    Raises
    ------
    DivisionByZero
        If ``b`` is zero.
    NotDivisible
        If the quotient is not in ``Z[q^(+-1/2)]``.
    """
    if b.is_zero():
        raise DivisionByZero("division by the zero Laurent polynomial")
    if a.is_zero():
        return QLaurent()
    if b.is_monomial():
        (kb, cb), = b._t.items()
        t = {}
        for k, c in a._t.items():
            qt, r = divmod(c, cb)
            if r:
                raise NotDivisible(f"({a}) / ({b}) has non-integer coefficients")
            t[k - kb] = qt
        return QLaurent._raw(t)
    rem = dict(a._t)
    top_b = max(b._t)
    low_b = min(b._t)
    lead_b = b._t[top_b]
    low_a = min(a._t)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        shift = top - top_b
        # every quotient exponent must be >= low(a) - low(b)
        if shift < low_a - low_b:
            raise NotDivisible(f"({a}) is not divisible by ({b})")
        c, r = divmod(rem[top], lead_b)
        if r:
            raise NotDivisible(f"({a}) / ({b}) has non-integer coefficients")
        quot[shift] = c
        for k, cb in b._t.items():
            kk = k + shift
            v = rem.get(kk, 0) - c * cb
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return QLaurent._raw(quot)


def qint(n: int) -> QLaurent:
    """The q-integer ``[n]_q = 1 + q + ... + q^(n-1)``; ``[0]_q = 0``."""
    if n < 0:
        raise InvalidArgs(f"qint needs n >= 0, got {n}")
    return QLaurent._raw({2 * i: 1 for i in range(n)})


def qbinom(n: int, k: int) -> QLaurent:
    """Gaussian binomial ``[n choose k]_q`` as an exact polynomial quotient."""
    if n < 0 or k < 0:
        raise InvalidArgs(f"qbinom needs nonnegative arguments, got ({n}, {k})")
    if k > n:
        raise InvalidArgs(f"qbinom needs k <= n, got ({n}, {k})")
    num = QLaurent.const(1)
    den = QLaurent.const(1)
    for i in range(k):
        num = num * qint(n - i)
        den = den * qint(i + 1)
    return ql_exact_div(num, den)
