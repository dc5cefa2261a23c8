"""Quantum projective cluster variables.

For an acyclic exchange matrix in admissible order (``b_ij >= 0`` whenever
``i > j``) each vertex ``i`` is a sink at the moment it is mutated in the
sequence ``mu_1``, ``mu_2 mu_1``, ..., ``mu_n ... mu_1``.  The seeds of that
chain are collected in a :class:`ProjectiveFamily`; the final seed carries
the projective variables ``x_k^(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeffring import QLaurent, ql_exact_div
from .errors import (
    InvalidArgs,
    InvariantViolation,
    MismatchWithDirectComputation,
    NotASingleTerm,
    NotAcyclic,
    NotAdmissible,
    NotDivisible,
    NotPrincipal,
)
from .qseed import (
    QuantumSeed,
    frame_monomial,
    initial_seed,
    is_acyclic,
    is_admissible,
    mutate_seed,
)
from .qtorus import TorusElement, te_exact_div_right, te_monomial

__all__ = [
    "ProjectiveFamily",
    "ClosedFormReport",
    "compute_family",
    "closed_form_check",
    "first_term_closed_form",
    "exchange_relation",
    "exchange_monomial",
    "lower_bound_generators",
    "one_step_closed_form",
    "check_principal",
    "ordered_product",
    "family_from_matrices",
]


def ordered_product(factors: Sequence[tuple[TorusElement, int]], form) -> TorusElement:
    """Left-to-right product of ``u**p`` over the given pairs (``p >= 0``)."""
    out = TorusElement.one(form)
    for u, p in factors:
        if p < 0:
            raise InvalidArgs("ordered_product takes nonnegative powers only")
        if p:
            out = out * u**p
    return out


def check_principal(seed: QuantumSeed) -> None:
    """Raise :class:`NotPrincipal` unless ``Btilde = [B; I]`` with ``m = 2n``."""
    n, m = seed.n, seed.m
    if m != 2 * n:
        raise NotPrincipal(f"principal coefficients need m = 2n, got m={m}, n={n}")
    for r in range(n):
        for c in range(n):
            if seed.btilde[n + r][c] != (1 if r == c else 0):
                raise NotPrincipal(f"frozen block differs from the identity at ({n + r + 1}, {c + 1})")


@dataclass(frozen=True)
class ProjectiveFamily:
    """The chain ``Sigma^(0), ..., Sigma^(n)`` of sink mutations.

    ``seeds[i]`` is ``mu_i ... mu_1(Sigma)``; ``proj_vars[k-1]`` is ``x_k^(n)``.
    """

    seeds: tuple[QuantumSeed, ...]
    proj_vars: tuple[TorusElement, ...]
    order: tuple[int, ...]

    @property
    def initial(self) -> QuantumSeed:
        return self.seeds[0]

    @property
    def n(self) -> int:
        return self.initial.n

    @property
    def m(self) -> int:
        return self.initial.m

    @property
    def form(self):
        return self.initial.ambient

    def b(self, i: int, j: int) -> int:
        """Initial exchange-matrix entry ``b_ij`` (1-based)."""
        return self.initial.btilde[i - 1][j - 1]

    def lam(self, i: int, j: int) -> int:
        """Initial skew-form entry ``lambda_ij`` (1-based)."""
        return self.initial.form.matrix[i - 1][j - 1]

    def x(self, i: int) -> TorusElement:
        """Initial variable ``x_i``."""
        return self.initial.vars[i - 1]

    def xproj(self, i: int) -> TorusElement:
        """Projective variable ``x_i^(n)``."""
        return self.proj_vars[i - 1]

    def var(self, i: int, step: int) -> TorusElement:
        """``x_i^(step)``, the ``i``-th variable of ``Sigma^(step)``."""
        return self.seeds[step].vars[i - 1]


def compute_family(seed: QuantumSeed, step_cap: int | None = None) -> ProjectiveFamily:
    """Mutate at ``1, 2, ..., n`` in turn and check the family invariants.

    The seed must have principal coefficients and an acyclic ``B`` already in
    admissible order; use :func:`qcluster.qseed.admissible_order` together
    with :func:`qcluster.qseed.permute_seed` otherwise.
    """
    check_principal(seed)
    if not is_acyclic(seed.pair.B):
        raise NotAcyclic("exchange matrix has an oriented cycle")
    if not is_admissible(seed.pair.B):
        raise NotAdmissible("B is acyclic but not in admissible order (b_ij >= 0 for i > j fails)")
    if any(seed.vars[i] != TorusElement.generator(seed.ambient, i + 1) for i in range(seed.m)):
        raise InvalidArgs("compute_family starts from an initial seed")
    n = seed.n
    seeds = [seed]
    for k in range(1, n + 1):
        seeds.append(mutate_seed(seeds[-1], k, step_cap=step_cap))
    fam = ProjectiveFamily(tuple(seeds), seeds[-1].vars[:n], tuple(range(1, n + 1)))
    _check_invariants(fam)
    return fam


def _check_invariants(fam: ProjectiveFamily) -> None:
    n, m = fam.n, fam.m
    for i in range(1, n + 1):
        xi = fam.var(i, i)
        for j in range(i, n + 1):
            if fam.var(i, j) != xi:
                raise InvariantViolation(f"x_{i}^({i}) differs from x_{i}^({j})")
    for i in range(n + 1, m + 1):
        for s in fam.seeds:
            if s.var(i) != fam.x(i):
                raise InvariantViolation(f"frozen variable x_{i} changed along the chain")
    if fam.seeds[-1].pair.B != fam.initial.pair.B:
        raise InvariantViolation("B^(n) differs from B")


@dataclass
class ClosedFormReport:
    ok: bool
    checked: int
    mismatches: list[tuple[int, str, tuple[int, int], int, int]] = field(default_factory=list)

    @property
    def first_mismatch(self):
        return self.mismatches[0] if self.mismatches else None

    def __str__(self) -> str:
        if self.ok:
            return f"closed forms: ok ({self.checked} matrices)"
        i, name, (r, c), want, got = self.mismatches[0]
        return f"closed forms: mismatch at step {i}, {name}[{r},{c}]: expected {want}, got {got}"


def _same_side(a: int, b: int, i: int) -> bool:
    return (a <= i) == (b <= i)


def closed_form_check(fam: ProjectiveFamily) -> ClosedFormReport:
    """Compare each ``Btilde^(i)``, ``Lambda^(i)`` with the sign-flip pattern.

    An entry keeps its initial value when both indices lie in ``[1, i]`` or
    both in ``[i+1, .]`` and changes sign otherwise; in the frozen block the
    diagonal entry of column ``c`` is ``-1`` for ``c <= i`` and ``+1`` after.
    """
    n, m = fam.n, fam.m
    b0 = fam.initial.btilde
    l0 = fam.initial.form.matrix
    report = ClosedFormReport(True, 0)
    for i, s in enumerate(fam.seeds):
        for r in range(1, m + 1):
            for c in range(1, n + 1):
                if r <= n:
                    want = b0[r - 1][c - 1] * (1 if _same_side(r, c, i) else -1)
                else:
                    want = 0 if r - n != c else (-1 if c <= i else 1)
                got = s.btilde[r - 1][c - 1]
                if got != want:
                    report.mismatches.append((i, "Btilde", (r, c), want, got))
        for r in range(1, m + 1):
            for c in range(1, m + 1):
                want = l0[r - 1][c - 1] * (1 if _same_side(r, c, i) else -1)
                got = s.form.matrix[r - 1][c - 1]
                if got != want:
                    report.mismatches.append((i, "Lambda", (r, c), want, got))
        report.checked += 2
    report.ok = not report.mismatches
    return report


def first_term_closed_form(fam: ProjectiveFamily, k: int) -> TorusElement:
    """Closed form of ``(X^(k-1))^(-e_k + [b_k^(k-1)]_+)`` in initial data.

    Evaluates

        q^(h/2) * prod_{j<k} (x_j^(k-1))^(-b_jk) * x_k^(-1) * (X^(k-1))^(sum_{j>k} b_jk e_j + e_{n+k})

    with ``h = -sum_{t<j<k} b_tk b_jk lam_tj + sum_{j<k} b_jk lam_jk
    + sum_{k<j<=n} b_jk lam_kj + lam_{k,n+k}`` and checks it against the
    frame monomial of ``Sigma^(k-1)``.
    """
    n = fam.n
    if not 1 <= k <= n:
        raise InvalidArgs(f"k={k} out of range [1, {n}]")
    b, lam = fam.b, fam.lam
    half = lam(k, n + k)
    half += sum(b(j, k) * lam(j, k) for j in range(1, k))
    half += sum(b(j, k) * lam(k, j) for j in range(k + 1, n + 1))
    half -= sum(b(t, k) * b(j, k) * lam(t, j) for j in range(1, k) for t in range(1, j))

    prev = fam.seeds[k - 1]
    left = ordered_product([(prev.var(j), -b(j, k)) for j in range(1, k)], fam.form)
    left = te_exact_div_right(left, prev.var(k))
    tail = [0] * fam.m
    for j in range(k + 1, n + 1):
        tail[j - 1] = b(j, k)
    tail[n + k - 1] = 1
    rhs = (left * frame_monomial(prev, tail)).shift(half)

    col = prev.pair.column(k)
    u = [max(x, 0) for x in col]
    u[k - 1] -= 1
    direct = frame_monomial(prev, u)
    if rhs != direct:
        raise MismatchWithDirectComputation(
            f"closed form for the first exchange term at k={k} disagrees with the frame monomial"
        )
    return rhs


def exchange_monomial(fam: ProjectiveFamily, k: int) -> TorusElement:
    """``prod_{j in [k+1, 2n]} x_j^(b_jk) * prod_{j<k} (x_j^(n))^(-b_jk)``, left to right."""
    n = fam.n
    factors = [(fam.x(j), fam.b(j, k)) for j in range(k + 1, 2 * n + 1)]
    factors += [(fam.xproj(j), -fam.b(j, k)) for j in range(1, k)]
    return ordered_product(factors, fam.form)


def _scalar_ratio(u: TorusElement, v: TorusElement) -> QLaurent | None:
    """``c`` with ``u == c * v`` for a scalar ``c``, or ``None``."""
    if u.is_zero() or v.is_zero():
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


def exchange_relation(fam: ProjectiveFamily, k: int) -> tuple[Fraction, TorusElement]:
    """Return ``(bullet_k, S)`` with ``x_k x_k^(n) = q^bullet_k S + 1``.

    ``S`` is :func:`exchange_monomial`.  Also checks the mirrored identity
    ``x_k^(n) x_k = q^(d_k/2) (X^(k-1))^(b_k^(k-1)) + 1``.
    """
    n = fam.n
    if not 1 <= k <= n:
        raise InvalidArgs(f"k={k} out of range [1, {n}]")
    xk, pk = fam.x(k), fam.xproj(k)
    one = TorusElement.one(fam.form)
    rest = xk * pk - one
    S = exchange_monomial(fam, k)
    c = _scalar_ratio(rest, S)
    if c is None or not c.is_unit() or c.at_one() != 1:
        raise NotASingleTerm(f"x_{k} x_{k}^(n) - 1 is not a q-power times the exchange monomial")
    (half, _), = c.items()

    prev = fam.seeds[k - 1]
    col = prev.pair.column(k)
    if min(col) < 0:
        raise InvariantViolation(f"column b_{k}^({k - 1}) has a negative entry")
    dk = fam.initial.D[k - 1]
    mirrored = frame_monomial(prev, col).shift(dk) + one
    if pk * xk != mirrored:
        raise NotASingleTerm(f"x_{k}^(n) x_{k} differs from q^(d_{k}/2) X^(b_{k}) + 1")
    return Fraction(half, 2), S


def lower_bound_generators(fam: ProjectiveFamily) -> list[TorusElement]:
    """``[x_1, x_1^(n), ..., x_n, x_n^(n)]``."""
    out = []
    for i in range(1, fam.n + 1):
        out += [fam.x(i), fam.xproj(i)]
    return out


def one_step_closed_form(seed: QuantumSeed, i: int) -> TorusElement:
    """Two-term formula for ``mu_i`` of an initial admissible principal seed.

    Both terms are written in the initial variables; the first is a single
    Laurent monomial and the second ends in ``x_i^(-1)``.
    """
    n = seed.n
    if not 1 <= i <= n:
        raise InvalidArgs(f"i={i} out of range [1, {n}]")
    b = lambda r, c: seed.btilde[r - 1][c - 1]  # noqa: E731
    lam = lambda r, c: seed.form.matrix[r - 1][c - 1]  # noqa: E731
    form = seed.ambient
    xi_inv = TorusElement.generator(form, i, -1)

    h1 = lam(i, n + i) + sum(b(j, i) * lam(i, j) for j in range(i + 1, n + 1))
    v = [0] * seed.m
    for j in range(i + 1, n + 1):
        v[j - 1] = b(j, i)
    v[n + i - 1] = 1
    first = (xi_inv * te_monomial(form, v)).shift(h1)

    h2 = -sum(b(t, i) * b(j, i) * lam(t, j) for j in range(1, i) for t in range(1, j))
    h2 -= sum(b(t, i) * lam(t, i) for t in range(1, i))
    gens = [(TorusElement.generator(form, j), -b(j, i)) for j in range(1, i)]
    second = (ordered_product(gens, form) * xi_inv).shift(h2)
    return first + second


def family_from_matrices(btilde, lam, step_cap: int | None = None) -> ProjectiveFamily:
    """Convenience: build the initial seed and its projective family."""
    return compute_family(initial_seed(btilde, lam), step_cap=step_cap)
