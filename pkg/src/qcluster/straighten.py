"""Straightening relations and expansion in monomial bases.

Two bases of the quantum cluster algebra are handled by one greedy engine:

* the projective standard monomials ``x^<a> = x_1^<a_1> ... x_n^<a_n>``,
  where ``x_i^<a_i>`` is ``x_i^a_i`` for ``a_i >= 0`` and
  ``(x_i^(n))^(-a_i)`` otherwise;
* the standard monomials, built the same way from the one-step mutations
  ``x'_i`` instead of ``x_i^(n)``.

Coefficients live in ``ZP``, the Laurent ring of the frozen variables over
``Z[q^(+-1/2)]``, and always multiply basis monomials from the left.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .coeffring import QLaurent, ql_exact_div
from .errors import (
    AccumulationMismatch,
    InvalidArgs,
    NotDivisible,
    NotInSpan,
    ShapeMismatch,
    SupportViolation,
)
from .projective import ProjectiveFamily, exchange_monomial
from .qseed import QuantumSeed, is_acyclic, mutate_seed
from .qtorus import TorusElement, element_from_json, element_to_json

__all__ = [
    "DEFAULT_STEP_CAP",
    "MonomialBasis",
    "PSMExpansion",
    "StraighteningCertificate",
    "projective_basis",
    "standard_basis",
    "psm_evaluate",
    "comm_same_index",
    "straighten_general",
    "straighten_power",
    "to_projective_standard",
    "to_standard_monomials",
    "expand",
    "check_support",
    "random_word",
]

DEFAULT_STEP_CAP = 10**5

PSMVector = tuple[int, ...]


def _step_cap(step_cap: int | None) -> int:
    if step_cap is not None:
        return step_cap
    env = os.environ.get("QCL_STEP_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidArgs(f"QCL_STEP_CAP must be an integer, got {env!r}") from None
    return DEFAULT_STEP_CAP


class MonomialBasis:
    """Ordered monomials in ``x_i`` (for ``a_i >= 0``) and ``y_i`` (for ``a_i < 0``).

    Leading exponents are additive under multiplication, so the leading
    exponent of a basis monomial is ``sum_i |a_i| * lead(x_i or y_i)``.
    Inverting that map is a linear solve per sign pattern; the inverses are
    computed once here.
    """

    def __init__(self, form, n: int, negatives: Sequence[TorusElement], kind: str):
        if len(negatives) != n:
            raise InvalidArgs(f"need {n} negative generators, got {len(negatives)}")
        self.form = form
        self.n = n
        self.m = form.m
        self.kind = kind
        self.positives = tuple(TorusElement.generator(form, i) for i in range(1, n + 1))
        self.negatives = tuple(negatives)
        self._pos_lead = [u.lead() for u in self.positives]
        self._neg_lead = [u.lead() for u in self.negatives]
        self._powers: dict[tuple[int, int], TorusElement] = {}
        self._cache: dict[PSMVector, TorusElement] = {}
        self._inverses = []
        for signs in itertools.product((1, -1), repeat=n):
            cols = [
                (self._pos_lead if s > 0 else self._neg_lead)[i][0][:n] for i, s in enumerate(signs)
            ]
            M = sympy.Matrix(n, n, lambda r, c: cols[c][r])
            if M.det() == 0:
                continue
            inv = M.inv()
            self._inverses.append(
                (signs, [[Fraction(int(x.p), int(x.q)) for x in inv.row(r)] for r in range(n)])
            )

    def generator(self, i: int, sign: int) -> TorusElement:
        return self.positives[i - 1] if sign > 0 else self.negatives[i - 1]

    def _power(self, i: int, p: int) -> TorusElement:
        key = (i, p)
        hit = self._powers.get(key)
        if hit is None:
            base = self.positives[i] if p > 0 else self.negatives[i]
            hit = base ** abs(p)
            self._powers[key] = hit
        return hit

    def evaluate(self, a: Sequence[int]) -> TorusElement:
        a = tuple(int(x) for x in a)
        if len(a) != self.n:
            raise InvalidArgs(f"basis vector has length {len(a)}, expected {self.n}")
        hit = self._cache.get(a)
        if hit is None:
            hit = TorusElement.one(self.form)
            for i, ai in enumerate(a):
                if ai:
                    hit = hit * self._power(i, ai)
            self._cache[a] = hit
        return hit

    def lead(self, a: Sequence[int]) -> tuple[tuple[int, ...], QLaurent]:
        """Leading exponent and coefficient of the basis monomial ``a``."""
        exp = (0,) * self.m
        coef = QLaurent.const(1)
        half = 0
        for i, ai in enumerate(a):
            if ai:
                e, c = (self._pos_lead if ai > 0 else self._neg_lead)[i]
                p = abs(ai)
                pe = tuple(p * x for x in e)
                half += self.form(exp, pe)
                exp = tuple(x + y for x, y in zip(exp, pe))
                coef = coef * c**p
        return exp, coef.shift(half)

    def solve(self, target: Sequence[int]) -> PSMVector | None:
        """The basis vector whose leading exponent agrees with ``target`` on 1..n."""
        n = self.n
        for signs, inv in self._inverses:
            c = [sum(inv[r][s] * target[s] for s in range(n)) for r in range(n)]
            if all(x.denominator == 1 and x >= 0 for x in c):
                return tuple(signs[i] * int(c[i]) for i in range(n))
        return None


def projective_basis(fam: ProjectiveFamily) -> MonomialBasis:
    basis = getattr(fam, "_psm_basis", None)
    if basis is None:
        basis = MonomialBasis(fam.form, fam.n, fam.proj_vars, "psm")
        object.__setattr__(fam, "_psm_basis", basis)
    return basis


def standard_basis(seed: QuantumSeed, step_cap: int | None = None) -> MonomialBasis:
    """Basis built from the one-step mutations ``x'_i`` of ``seed``."""
    if not is_acyclic(seed.pair.B):
        raise InvalidArgs("the standard monomial basis needs an acyclic exchange matrix")
    neg = [mutate_seed(seed, i, step_cap=step_cap).var(i) for i in range(1, seed.n + 1)]
    return MonomialBasis(seed.ambient, seed.n, neg, "standard")


def psm_evaluate(fam: ProjectiveFamily, a: Sequence[int]) -> TorusElement:
    """The projective standard monomial ``x^<a>`` as a torus element."""
    return projective_basis(fam).evaluate(a)


@dataclass
class PSMExpansion:
    """``sum_a coeffs[a] * x^<a>`` with ``ZP`` coefficients on the left."""

    basis: MonomialBasis
    coeffs: dict[PSMVector, TorusElement] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.basis.n

    def support(self) -> list[PSMVector]:
        return sorted(self.coeffs)

    def evaluate(self) -> TorusElement:
        out = TorusElement.zero(self.basis.form)
        for a in sorted(self.coeffs):
            out = out + self.coeffs[a] * self.basis.evaluate(a)
        return out

    def __eq__(self, other):
        if isinstance(other, PSMExpansion):
            return self.coeffs == other.coeffs and self.basis is other.basis
        return NotImplemented

    def __sub__(self, other: "PSMExpansion") -> "PSMExpansion":
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            v = out.get(a, TorusElement.zero(self.basis.form)) - c
            if v.is_zero():
                out.pop(a, None)
            else:
                out[a] = v
        return PSMExpansion(self.basis, out)

    def scale(self, c) -> "PSMExpansion":
        return PSMExpansion(
            self.basis, {a: v.scale(c) for a, v in self.coeffs.items() if not v.scale(c).is_zero()}
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"a": list(a), "coeff": element_to_json(self.coeffs[a])} for a in sorted(self.coeffs)],
        }

    @classmethod
    def from_json(cls, doc: Mapping, basis: MonomialBasis) -> "PSMExpansion":
        try:
            n, terms = doc["n"], doc["terms"]
        except (KeyError, TypeError) as exc:
            raise InvalidArgs(f"expansion document missing field: {exc}") from exc
        if n != basis.n:
            raise InvalidArgs(f"expansion has n={n}, basis has n={basis.n}")
        coeffs = {}
        for t in terms:
            a = tuple(t["a"])
            if len(a) != n:
                raise InvalidArgs(f"bad basis vector {a!r}")
            c = element_from_json(t["coeff"], basis.form)
            _check_zp(c, n)
            if not c.is_zero():
                coeffs[a] = c
        return cls(basis, coeffs)

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for a in sorted(self.coeffs, reverse=True):
            parts.append(f"({self.coeffs[a].pretty()})*<{','.join(map(str, a))}>")
        return " + ".join(parts)


def _check_zp(c: TorusElement, n: int) -> None:
    for e in c.terms:
        if any(e[:n]):
            raise InvalidArgs("ZP coefficients must not involve mutable variables")


def _default_degree_cap(u: TorusElement) -> int:
    widest = max((sum(abs(x) for x in e) for e in u.terms), default=0)
    return 2 * widest + 2


def expand(
    basis: MonomialBasis,
    u: TorusElement,
    step_cap: int | None = None,
    degree_cap: int | None = None,
) -> PSMExpansion:
    """Greedy leading-term reduction of ``u`` in ``basis``.

    Each step reads the leading term ``c X^t`` of the remainder, finds the
    basis vector ``a`` whose leading exponent agrees with ``t`` on the
    mutable coordinates, and subtracts ``(k X^f) * x^<a>`` where ``f`` is the
    frozen difference and ``k`` the matching scalar.

    For ``u`` outside the span the loop runs forever with ever larger ``a``,
    and every step costs more than the last.  Besides ``step_cap`` the
    reduction therefore stops once ``|a|_1`` exceeds ``degree_cap``, which
    defaults to twice the largest total degree of a term of ``u``, plus 2.
    """
    if u.form != basis.form:
        raise InvalidArgs("element and basis use different skew forms")
    cap = _step_cap(step_cap)
    dcap = _default_degree_cap(u) if degree_cap is None else degree_cap
    n, form = basis.n, basis.form
    coeffs: dict[PSMVector, TorusElement] = {}
    rem = u
    steps = 0
    while not rem.is_zero():
        if steps >= cap:
            raise NotInSpan(f"reduction did not finish within {cap} steps")
        steps += 1
        t, ct = rem.lead()
        a = basis.solve(t)
        if a is None:
            raise NotInSpan(f"no basis monomial has leading exponent {t[:n]} on the mutable part")
        if sum(abs(x) for x in a) > dcap:
            raise NotInSpan(f"reduction needs the basis vector {a}, beyond the degree bound {dcap}")
        la, ca = basis.lead(a)
        f = tuple(x - y for x, y in zip(t, la))
        if any(f[:n]):
            raise NotInSpan("leading exponents disagree on the mutable part")
        try:
            kappa = ql_exact_div(ct, ca.shift(form(f, la)))
        except NotDivisible:
            raise NotInSpan(f"leading coefficient {ct} is not a ZP multiple of {ca}") from None
        term = TorusElement._raw(form, {f: kappa})
        rem = rem - term * basis.evaluate(a)
        prev = coeffs.get(a)
        new = term if prev is None else prev + term
        if new.is_zero():
            coeffs.pop(a, None)
        else:
            coeffs[a] = new
    return PSMExpansion(basis, coeffs)


def to_projective_standard(
    fam: ProjectiveFamily, u: TorusElement, step_cap: int | None = None, degree_cap: int | None = None
) -> PSMExpansion:
    """Expand ``u`` in the projective standard monomials of ``fam``."""
    return expand(projective_basis(fam), u, step_cap=step_cap, degree_cap=degree_cap)


def to_standard_monomials(
    seed: QuantumSeed,
    u: TorusElement,
    step_cap: int | None = None,
    degree_cap: int | None = None,
    basis: MonomialBasis | None = None,
) -> PSMExpansion:
    """Expand ``u`` in the standard monomials ``x_1^<a_1> ... x_n^<a_n>`` built from ``x'_i``."""
    if basis is None:
        basis = standard_basis(seed, step_cap=step_cap)
    return expand(basis, u, step_cap=step_cap, degree_cap=degree_cap)


@dataclass
class StraighteningCertificate:
    """Record of ``lhs - q^q_twist * rhs = remainder`` and its basis expansion.

    ``allowed_negative`` and ``allowed_positive`` list the indices where the
    expansion may use ``x_i^(n)`` and ``x_i`` respectively.
    """

    j: int
    k: int
    l: int
    q_twist: Fraction
    lhs: TorusElement
    rhs: TorusElement
    remainder: TorusElement
    remainder_expansion: PSMExpansion
    allowed_negative: frozenset[int]
    allowed_positive: frozenset[int]
    g: QLaurent | None = None

    def holds(self) -> bool:
        twist = int(self.q_twist * 2)
        return self.lhs - self.rhs.shift(twist) == self.remainder

    def summary(self) -> str:
        head = f"(j, k, l) = ({self.j}, {self.k}, {self.l}); twist q^{self.q_twist}"
        return f"{head}\nremainder: {self.remainder.pretty()}\nexpansion: {self.remainder_expansion.pretty()}"


def check_support(
    exp: PSMExpansion, negative: Iterable[int], positive: Iterable[int], what: str = "remainder"
) -> None:
    """Raise :class:`SupportViolation` if ``exp`` uses a generator outside the allowed sets."""
    neg, pos = set(negative), set(positive)
    for a in exp.coeffs:
        for i, ai in enumerate(a, start=1):
            if ai < 0 and i not in neg:
                raise SupportViolation(f"{what} uses x_{i}^(n) (vector {a}); allowed {sorted(neg)}")
            if ai > 0 and i not in pos:
                raise SupportViolation(f"{what} uses x_{i} (vector {a}); allowed {sorted(pos)}")


def _check_range(fam: ProjectiveFamily, **idx: int) -> None:
    for name, v in idx.items():
        if not 1 <= v <= fam.n:
            raise InvalidArgs(f"{name}={v} out of range [1, {fam.n}]")


def comm_same_index(
    fam: ProjectiveFamily, k: int, l: int = 1, step_cap: int | None = None
) -> StraighteningCertificate:
    """``(x_k^(n))^l x_k - x_k (x_k^(n))^l`` and its scalar factor ``g``.

    The commutator must equal ``g * S * (x_k^(n))^(l-1)`` with ``S`` the
    exchange monomial of ``k`` and ``g`` a Laurent polynomial in ``q^(1/2)``.
    """
    _check_range(fam, k=k)
    if l < 1:
        raise InvalidArgs(f"l must be positive, got {l}")
    xk, pk = fam.x(k), fam.xproj(k)
    pl = pk**l
    lhs, rhs = pl * xk, xk * pl
    rem = lhs - rhs
    shape = exchange_monomial(fam, k) * pk ** (l - 1)
    g = _scalar(rem, shape)
    if g is None:
        raise ShapeMismatch(f"commutator for k={k}, l={l} is not a scalar multiple of the expected monomial")
    negative = range(1, k + 1) if l > 1 else range(1, k)
    positive = range(k + 1, fam.n + 1)
    expansion = to_projective_standard(fam, rem, step_cap=step_cap)
    check_support(expansion, negative, positive)
    return StraighteningCertificate(
        k, k, l, Fraction(0), lhs, rhs, rem, expansion, frozenset(negative), frozenset(positive), g
    )


def _scalar(u: TorusElement, v: TorusElement) -> QLaurent | None:
    if u.is_zero():
        return QLaurent()
    if v.is_zero():
        return None
    eu, cu = u.lead()
    ev, cv = v.lead()
    if eu != ev:
        return None
    try:
        c = ql_exact_div(cu, cv)
    except NotDivisible:
        return None
    return c if v.scale(c) == u else None


def straighten_general(fam: ProjectiveFamily, j: int, k: int, step_cap: int | None = None) -> StraighteningCertificate:
    """``f = x_j^(n) x_k - q^(-lambda_jk) x_k x_j^(n)`` for ``k < j``.

    The expansion of ``f`` may use ``x_i^(n)`` only for ``i <= j-1`` and
    ``x_i`` only for ``i >= k+1``.
    """
    return straighten_power(fam, j, k, 1, step_cap=step_cap)


def straighten_power(
    fam: ProjectiveFamily, j: int, k: int, l: int, step_cap: int | None = None
) -> StraighteningCertificate:
    """``g = x_j^(n) x_k^l - q^(-l lambda_jk) x_k^l x_j^(n)`` for ``k < j``.

    ``g`` is computed directly and again as
    ``sum_{t=1}^{l} q^(-(t-1) lambda_jk) x_k^(t-1) f x_k^(l-t)``; the two
    must agree.  Allowed support: ``x_i^(n)`` for ``i <= j-1`` and ``x_i``
    for ``i >= k`` (``i >= k+1`` when ``l = 1``).
    """
    _check_range(fam, j=j, k=k)
    if not k < j:
        raise InvalidArgs(f"need k < j, got j={j}, k={k}")
    if l < 1:
        raise InvalidArgs(f"l must be positive, got {l}")
    lam = fam.lam(j, k)
    xk, pj = fam.x(k), fam.xproj(j)
    xkl = xk**l
    lhs, rhs = pj * xkl, xkl * pj
    rem = lhs - rhs.shift(-2 * l * lam)
    if l > 1:
        f = pj * xk - (xk * pj).shift(-2 * lam)
        acc = TorusElement.zero(fam.form)
        for t in range(1, l + 1):
            acc = acc + (xk ** (t - 1) * f * xk ** (l - t)).shift(-2 * (t - 1) * lam)
        if acc != rem:
            raise AccumulationMismatch(f"accumulated sum differs from the direct remainder at (j, k, l) = ({j}, {k}, {l})")
    negative = range(1, j)
    positive = range(k + 1 if l == 1 else k, fam.n + 1)
    expansion = to_projective_standard(fam, rem, step_cap=step_cap)
    check_support(expansion, negative, positive)
    return StraighteningCertificate(
        j, k, l, Fraction(-l * lam), lhs, rhs, rem, expansion, frozenset(negative), frozenset(positive)
    )


def random_word(rng, fam: ProjectiveFamily, max_factors: int = 5) -> TorusElement:
    """Random product of ``x_i``, ``x_i^(n)`` and frozen monomials (for tests and demos)."""
    n, m = fam.n, fam.m
    out = TorusElement.one(fam.form)
    for _ in range(int(rng.integers(1, max_factors + 1))):
        kind = int(rng.integers(0, 3))
        if kind == 0:
            out = out * fam.x(int(rng.integers(1, n + 1)))
        elif kind == 1:
            out = out * fam.xproj(int(rng.integers(1, n + 1)))
        else:
            e = [0] * m
            e[int(rng.integers(n, m))] = int(rng.choice([-1, 1]))
            out = out * TorusElement._raw(fam.form, {tuple(e): QLaurent.const(1)})
    return out
