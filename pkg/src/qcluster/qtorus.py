"""The based quantum torus ``T(Lambda)``.

Elements are finite sums ``sum_e c_e X^e`` over exponent vectors ``e`` in
``Z^m`` with coefficients in ``Z[q^(+-1/2)]``, multiplied by the twisted rule

    X^e X^f = q^(Lambda(e, f)/2) X^(e+f).

Exponent vectors are plain tuples of ints.  The monomial order used for
leading terms is the lexicographic order on ``Z^m`` (coordinate 1 first); it
is translation invariant, so the leading term of a product is the product of
leading terms.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .coeffring import QLaurent, ql_exact_div
from .errors import InvalidArgs, NotDivisible, ZeroElement

__all__ = [
    "SkewForm",
    "TorusElement",
    "te_monomial",
    "te_mul",
    "normal_order",
    "ordered_monomial",
    "from_ordered",
    "first_monomial",
    "te_exact_div_right",
    "te_specialize_q1",
    "unit_vector",
    "element_to_json",
    "element_from_json",
]

ExpVec = tuple[int, ...]


def unit_vector(m: int, i: int) -> ExpVec:
    """``e_i`` in ``Z^m`` for a 1-based index ``i``."""
    if not 1 <= i <= m:
        raise InvalidArgs(f"index {i} out of range [1, {m}]")
    return tuple(1 if j == i - 1 else 0 for j in range(m))


class SkewForm:
    """Skew-symmetric integer bilinear form, stored as an ``m x m`` matrix."""

    __slots__ = ("matrix", "m", "_hash")

    def __init__(self, matrix):
        arr = np.asarray(matrix)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidArgs("skew form must be a square matrix")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(arr == np.round(arr)):
                raise InvalidArgs("skew form must have integer entries")
        rows = tuple(tuple(int(x) for x in row) for row in arr.tolist())
        m = len(rows)
        for i in range(m):
            for j in range(m):
                if rows[i][j] != -rows[j][i]:
                    raise InvalidArgs(f"matrix is not skew-symmetric at ({i + 1}, {j + 1})")
        self.matrix = rows
        self.m = m
        self._hash = hash(rows)

    def __call__(self, e: Sequence[int], f: Sequence[int]) -> int:
        """``Lambda(e, f) = e^T Lambda f``."""
        total = 0
        for i, ei in enumerate(e):
            if ei:
                row = self.matrix[i]
                total += ei * sum(r * fj for r, fj in zip(row, f) if fj)
        return total

    def left(self, e: Sequence[int]) -> tuple[int, ...]:
        """The row vector ``e^T Lambda``."""
        out = [0] * self.m
        for i, ei in enumerate(e):
            if ei:
                for j, r in enumerate(self.matrix[i]):
                    out[j] += ei * r
        return tuple(out)

    def entry(self, i: int, j: int) -> int:
        """``lambda_ij`` with 1-based indices."""
        return self.matrix[i - 1][j - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.m, self.m)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SkewForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SkewForm({[list(r) for r in self.matrix]})"


class TorusElement:
    """An element of the quantum torus over a fixed :class:`SkewForm`.

    ``terms`` maps exponent tuples to nonzero :class:`QLaurent` coefficients.
    Instances are immutable; arithmetic returns new elements.  Elements over
    different forms refuse to combine.
    """

    __slots__ = ("form", "_terms", "_hash")

    def __init__(self, form: SkewForm, terms: Mapping[ExpVec, QLaurent] | None = None):
        self.form = form
        t: dict[ExpVec, QLaurent] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != form.m:
                    raise InvalidArgs(f"exponent {e} has length {len(e)}, expected {form.m}")
                if isinstance(c, int):
                    c = QLaurent.const(c)
                if c:
                    t[e] = t[e] + c if e in t else c
                    if not t[e]:
                        del t[e]
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, form: SkewForm, terms: dict[ExpVec, QLaurent]) -> "TorusElement":
        obj = cls.__new__(cls)
        obj.form = form
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {})

    @classmethod
    def one(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {(0,) * form.m: QLaurent.const(1)})

    @classmethod
    def generator(cls, form: SkewForm, i: int, power: int = 1) -> "TorusElement":
        """``x_i^power`` with a 1-based index."""
        e = tuple(power if j == i - 1 else 0 for j in range(form.m))
        if not 1 <= i <= form.m:
            raise InvalidArgs(f"generator index {i} out of range [1, {form.m}]")
        return cls._raw(form, {e: QLaurent.const(1)})

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[ExpVec, QLaurent]:
        return dict(self._terms)

    @property
    def m(self) -> int:
        return self.form.m

    def support(self) -> list[ExpVec]:
        return sorted(self._terms)

    def coefficient(self, e: Sequence[int]) -> QLaurent:
        return self._terms.get(tuple(e), QLaurent())

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def lead(self) -> tuple[ExpVec, QLaurent]:
        """Lex-largest term ``(exponent, coefficient)``."""
        if not self._terms:
            raise ZeroElement("the zero element has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def trail(self) -> tuple[ExpVec, QLaurent]:
        """Lex-smallest term."""
        if not self._terms:
            raise ZeroElement("the zero element has no trailing term")
        e = min(self._terms)
        return e, self._terms[e]

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "TorusElement"):
        if self.form is not other.form and self.form != other.form:
            raise InvalidArgs("torus elements live over different skew forms")

    def _coerce(self, other):
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        if isinstance(other, (int, QLaurent)):
            return self.scalar(self.form, other)
        return None

    @staticmethod
    def scalar(form: SkewForm, c) -> "TorusElement":
        if isinstance(c, int):
            c = QLaurent.const(c)
        return TorusElement._raw(form, {(0,) * form.m: c} if c else {})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._terms)
        for e, c in o._terms.items():
            if e in t:
                s = t[e] + c
                if s:
                    t[e] = s
                else:
                    del t[e]
            else:
                t[e] = c
        return TorusElement._raw(self.form, t)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement._raw(self.form, {e: -c for e, c in self._terms.items()})

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

    def scale(self, c: QLaurent | int) -> "TorusElement":
        """Multiply by a central scalar from ``Z[q^(+-1/2)]``."""
        if isinstance(c, int):
            c = QLaurent.const(c)
        if not c:
            return TorusElement.zero(self.form)
        t = {}
        for e, a in self._terms.items():
            p = a * c
            if p:
                t[e] = p
        return TorusElement._raw(self.form, t)

    def shift(self, half: int) -> "TorusElement":
        """Multiply by ``q^(half/2)``."""
        if half == 0:
            return self
        return TorusElement._raw(self.form, {e: c.shift(half) for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return te_mul(self, other)
        if isinstance(other, (int, QLaurent)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, QLaurent)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = TorusElement.one(self.form)
        base = self
        while k:
            if k & 1:
                result = te_mul(result, base)
            k >>= 1
            if k:
                base = te_mul(base, base)
        return result

    def inverse(self) -> "TorusElement":
        """Inverse of a monomial ``c X^e`` with ``c`` a unit."""
        if len(self._terms) != 1:
            raise NotDivisible("only monomials are invertible in the torus")
        (e, c), = self._terms.items()
        if not c.is_unit():
            raise NotDivisible(f"coefficient {c} is not a unit")
        # (c X^e)(c^-1 X^-e) = 1 since Lambda(e, -e) = 0
        return TorusElement._raw(self.form, {tuple(-x for x in e): c ** -1})

    def __eq__(self, other):
        if isinstance(other, TorusElement):
            return self.form == other.form and self._terms == other._terms
        if isinstance(other, (int, QLaurent)):
            return self == TorusElement.scalar(self.form, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.form, frozenset(self._terms.items())))
        return self._hash

    # -- display ------------------------------------------------------
    def ordered_terms(self) -> list[tuple[ExpVec, QLaurent]]:
        """Terms rewritten against the ordered products ``x_1^a_1 ... x_m^a_m``.

        Returns ``(a, c)`` pairs, lex-descending, such that the element equals
        ``sum c * x_1^a_1 ... x_m^a_m``.
        """
        out = []
        for e in sorted(self._terms, reverse=True):
            out.append((e, self._terms[e].shift(-_ordered_half(self.form, e))))
        return out

    def __repr__(self):
        return self.pretty()

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.form.m)]
        parts = []
        for e, c in self.ordered_terms():
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def _ordered_half(form: SkewForm, a: Sequence[int]) -> int:
    """Half-exponent ``h`` with ``x_1^a_1 ... x_m^a_m = q^(h/2) X^a``."""
    h = 0
    mat = form.matrix
    nz = [(i, x) for i, x in enumerate(a) if x]
    for p, (r, ar) in enumerate(nz):
        row = mat[r]
        for s, as_ in nz[p + 1:]:
            h += ar * as_ * row[s]
    return h


def te_monomial(form: SkewForm, e: Sequence[int], c: QLaurent | int = 1) -> TorusElement:
    """The single-term element ``c X^e``."""
    e = tuple(int(x) for x in e)
    if len(e) != form.m:
        raise InvalidArgs(f"exponent {e} has length {len(e)}, expected {form.m}")
    if isinstance(c, int):
        c = QLaurent.const(c)
    return TorusElement._raw(form, {e: c} if c else {})


def te_mul(u: TorusElement, v: TorusElement) -> TorusElement:
    """Twisted product ``u * v``."""
    u._check(v)
    form = u.form
    if not u._terms or not v._terms:
        return TorusElement.zero(form)
    acc: dict[ExpVec, dict[int, int]] = {}
    v_items = [(f, b._t) for f, b in v._terms.items()]
    for e, a in u._terms.items():
        w = form.left(e)
        at = a._t
        for f, bt in v_items:
            h = 0
            for wj, fj in zip(w, f):
                if fj:
                    h += wj * fj
            g = tuple([x + y for x, y in zip(e, f)])
            slot = acc.get(g)
            if slot is None:
                slot = acc[g] = {}
            for k1, c1 in at.items():
                base = k1 + h
                for k2, c2 in bt.items():
                    kk = base + k2
                    slot[kk] = slot.get(kk, 0) + c1 * c2
    out = {}
    for g, slot in acc.items():
        t = {k: c for k, c in slot.items() if c}
        if t:
            out[g] = QLaurent._raw(t)
    return TorusElement._raw(form, out)


def product(factors: Iterable[TorusElement], form: SkewForm | None = None) -> TorusElement:
    """Left-to-right product of torus elements (identity if empty)."""
    result = None
    for f in factors:
        result = f if result is None else te_mul(result, f)
    if result is None:
        if form is None:
            raise InvalidArgs("empty product needs a form")
        return TorusElement.one(form)
    return result


def normal_order(form: SkewForm, word: Iterable[tuple[int, int]]) -> TorusElement:
    """Evaluate the ordered product ``x_{i_1}^{c_1} ... x_{i_r}^{c_r}``.

    Indices are 1-based.  The result is a single monomial ``q^(h/2) X^a``.
    """
    m = form.m
    expo = [0] * m
    half = 0
    for i, c in word:
        if not 1 <= i <= m:
            raise InvalidArgs(f"generator index {i} out of range [1, {m}]")
        if c == 0:
            continue
        # X^E X^(c e_i) = q^(Lambda(E, c e_i)/2) X^(E + c e_i)
        half += c * sum(expo[r] * form.matrix[r][i - 1] for r in range(m) if expo[r])
        expo[i - 1] += c
    return TorusElement._raw(form, {tuple(expo): QLaurent({half: 1})})


def ordered_monomial(form: SkewForm, a: Sequence[int]) -> TorusElement:
    """``x_1^a_1 x_2^a_2 ... x_m^a_m`` as a torus element."""
    a = tuple(int(x) for x in a)
    if len(a) != form.m:
        raise InvalidArgs(f"exponent {a} has length {len(a)}, expected {form.m}")
    return TorusElement._raw(form, {a: QLaurent({_ordered_half(form, a): 1})})


def from_ordered(form: SkewForm, terms: Iterable[tuple[QLaurent | int, Sequence[int]]]) -> TorusElement:
    """Build ``sum c * x_1^a_1 ... x_m^a_m`` from ``(c, a)`` pairs."""
    out = TorusElement.zero(form)
    for c, a in terms:
        out = out + ordered_monomial(form, a).scale(c)
    return out


def first_monomial(
    u: TorusElement, priority_len: int | None = None, ordered: bool = False
) -> tuple[ExpVec, QLaurent]:
    """Leading ``(exponent, coefficient)`` of ``u``.

    Coordinates ``1..priority_len`` are compared first and the remaining
    (frozen) coordinates break ties; since the priority block is a prefix this
    is plain lex order on ``Z^m``.  ``priority_len`` is validated only.

    The coefficient is taken against ``X^e`` by default, or against the
    ordered product ``x_1^e_1 ... x_m^e_m`` when ``ordered`` is true.
    """
    if priority_len is not None and not 0 <= priority_len <= u.form.m:
        raise InvalidArgs(f"priority length {priority_len} out of range for m={u.form.m}")
    e, c = u.lead()
    if ordered:
        c = c.shift(-_ordered_half(u.form, e))
    return e, c


def default_div_cap(u: TorusElement, v: TorusElement) -> int:
    return 10 * max(len(u), 1) * (1 + len(v))


def te_exact_div_right(u: TorusElement, v: TorusElement, step_cap: int | None = None) -> TorusElement:
    """Return ``w`` with ``w * v == u``.

    Peels lex-leading terms: the leading term of ``w * v`` is the product of
    the leading terms, so each step fixes one term of ``w``.  Fails with
    :class:`NotDivisible` on a non-exact coefficient step, when the peeled
    exponent drops below the bound forced by the trailing terms, or after
    ``step_cap`` steps.
    """
    u._check(v)
    form = u.form
    if v.is_zero():
        raise ZeroElement("division by the zero torus element")
    if u.is_zero():
        return TorusElement.zero(form)
    cap = default_div_cap(u, v) if step_cap is None else step_cap
    lv, cv = v.lead()
    tv, _ = v.trail()
    tu, _ = u.trail()
    floor = tuple(a - b for a, b in zip(tu, tv))
    rem = u
    quot: dict[ExpVec, QLaurent] = {}
    steps = 0
    while rem._terms:
        if steps >= cap:
            raise NotDivisible(f"exact division did not terminate within {cap} steps")
        steps += 1
        lr, cr = rem.lead()
        a = tuple(x - y for x, y in zip(lr, lv))
        if a < floor:
            raise NotDivisible("right division leaves a nonzero remainder")
        twist = form(a, lv)
        try:
            c = ql_exact_div(cr, cv.shift(twist))
        except NotDivisible as exc:
            raise NotDivisible(f"right division: coefficient step failed ({exc})") from None
        quot[a] = c
        rem = rem - te_mul(TorusElement._raw(form, {a: c}), v)
    return TorusElement._raw(form, quot)


def te_specialize_q1(u: TorusElement) -> dict[ExpVec, int]:
    """Commutative Laurent polynomial obtained by ``q^(1/2) -> 1``."""
    out: dict[ExpVec, int] = {}
    for e, c in u._terms.items():
        v = c.at_one()
        if v:
            out[e] = v
    return out


def element_to_json(u: TorusElement) -> dict:
    """``{"m": m, "terms": [{"exp": [...], "coeff": [[h, "c"], ...]}, ...]}``."""
    return {
        "m": u.form.m,
        "terms": [{"exp": list(e), "coeff": c.to_pairs()} for e, c in sorted(u._terms.items())],
    }


def element_from_json(doc: Mapping, form: SkewForm) -> TorusElement:
    try:
        m = doc["m"]
        raw_terms = doc["terms"]
    except (KeyError, TypeError) as exc:
        raise InvalidArgs(f"element document missing field: {exc}") from exc
    if m != form.m:
        raise InvalidArgs(f"element has m={m} but the form has m={form.m}")
    terms: dict[ExpVec, QLaurent] = {}
    for t in raw_terms:
        try:
            e = tuple(t["exp"])
            c = QLaurent.from_pairs(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise InvalidArgs(f"bad term {t!r}") from exc
        if len(e) != m or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise InvalidArgs(f"bad exponent {e!r}")
        if e in terms:
            raise InvalidArgs(f"repeated exponent {e}")
        if c:
            terms[e] = c
    return TorusElement._raw(form, terms)
