"""Compatible pairs, quantum seeds and mutation.

Matrices are 1-indexed in the mathematical sense but stored as ordinary
0-indexed row tuples; every public function that takes a direction ``k``
expects it 1-based.

Mutated cluster variables are kept as elements of the *initial* quantum
torus, so every identity between cluster variables can be checked by
literal equality of torus elements.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coeffring import QLaurent
from .errors import (
    Incompatible,
    InvalidArgs,
    NotAcyclic,
    NotDivisible,
    NotSkewSymmetrizable,
)
from .qtorus import SkewForm, TorusElement, te_exact_div_right, te_mul

__all__ = [
    "CompatiblePair",
    "QuantumSeed",
    "check_compatible",
    "mutate_matrixB",
    "mutate_lambda",
    "mutate_seed",
    "mutate_sequence",
    "frame_monomial",
    "is_acyclic",
    "is_admissible",
    "admissible_order",
    "permute_seed",
    "principal_pair",
    "initial_seed",
    "random_skew_matrix",
    "random_acyclic_matrix",
]

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(a, name: str) -> Matrix:
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise InvalidArgs(f"{name} must be a 2-d integer matrix")
    rows = tuple(tuple(int(x) for x in row) for row in arr.tolist())
    if arr.size and not np.all(np.asarray(rows) == arr):
        raise InvalidArgs(f"{name} must have integer entries")
    return rows


def _columns(btilde: Matrix) -> list[tuple[int, ...]]:
    return [tuple(row[j] for row in btilde) for j in range(len(btilde[0]))]


def check_compatible(btilde, form) -> tuple[int, ...]:
    """Return the skew-symmetrizer ``D`` of a compatible pair.

    Checks that ``Btilde^T Lambda = [D | 0]`` with every ``d_j > 0`` and that
    ``D B`` is skew-symmetric.

    Raises
    ------
    Incompatible
        With ``.entry = (j, i)`` (1-based) pointing at the first offending
        entry of ``Btilde^T Lambda``.
    """
    b = np.array(_as_matrix(btilde, "Btilde"), dtype=object)
    lam = form.as_array().astype(object) if isinstance(form, SkewForm) else np.array(
        _as_matrix(form, "Lambda"), dtype=object
    )
    m, n = b.shape
    if lam.shape != (m, m):
        raise InvalidArgs(f"Lambda has shape {lam.shape}, expected ({m}, {m})")
    if n > m or n == 0:
        raise InvalidArgs(f"need 1 <= n <= m, got n={n}, m={m}")
    prod = b.T.dot(lam)
    d = []
    for j in range(n):
        for i in range(m):
            v = int(prod[j, i])
            if i == j:
                if v <= 0:
                    raise Incompatible(
                        f"Lambda(b_{j + 1}, e_{i + 1}) = {v} is not a positive diagonal entry",
                        (j + 1, i + 1),
                    )
                d.append(v)
            elif v != 0:
                raise Incompatible(
                    f"Lambda(b_{j + 1}, e_{i + 1}) = {v}, expected 0", (j + 1, i + 1)
                )
    principal = b[:n, :]
    db = np.diag(np.array(d, dtype=object)).dot(principal)
    if not np.array_equal(db.T, -db):
        raise Incompatible("D B is not skew-symmetric")
    return tuple(d)


@dataclass(frozen=True)
class CompatiblePair:
    """Exchange matrix ``Btilde`` (m x n) with a compatible skew form."""

    btilde: Matrix
    form: SkewForm
    D: tuple[int, ...]

    @classmethod
    def build(cls, btilde, form) -> "CompatiblePair":
        btilde = _as_matrix(btilde, "Btilde")
        if not isinstance(form, SkewForm):
            form = SkewForm(form)
        return cls(btilde, form, check_compatible(btilde, form))

    @property
    def m(self) -> int:
        return len(self.btilde)

    @property
    def n(self) -> int:
        return len(self.btilde[0])

    @property
    def B(self) -> Matrix:
        """The principal ``n x n`` part."""
        return self.btilde[: self.n]

    def b(self, i: int, j: int) -> int:
        return self.btilde[i - 1][j - 1]

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(row[k - 1] for row in self.btilde)

    def btilde_array(self) -> np.ndarray:
        return np.array(self.btilde, dtype=np.int64)


def mutate_matrixB(btilde, k: int) -> Matrix:
    """Matrix mutation in direction ``k`` (1-based, ``k <= n``)."""
    b = _as_matrix(btilde, "Btilde")
    m, n = len(b), len(b[0])
    if not 1 <= k <= n:
        raise InvalidArgs(f"mutation direction {k} out of range [1, {n}]")
    c = k - 1
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == c or j == c:
                row.append(-b[i][j])
            else:
                bik, bkj = b[i][c], b[c][j]
                row.append(b[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def mutate_lambda(form: SkewForm, btilde, k: int) -> SkewForm:
    """Mutate the skew form in direction ``k`` using the column ``b_k``."""
    b = _as_matrix(btilde, "Btilde")
    m, n = len(b), len(b[0])
    if not 1 <= k <= n:
        raise InvalidArgs(f"mutation direction {k} out of range [1, {n}]")
    if form.m != m:
        raise InvalidArgs(f"form has size {form.m}, Btilde has {m} rows")
    c = k - 1
    lam = [list(r) for r in form.matrix]
    pos = [max(b[t][c], 0) for t in range(m)]
    new_row = []
    for j in range(m):
        if j == c:
            new_row.append(0)
        else:
            new_row.append(-lam[c][j] + sum(pos[t] * lam[t][j] for t in range(m) if pos[t]))
    for j in range(m):
        lam[c][j] = new_row[j]
        lam[j][c] = -new_row[j]
    return SkewForm(lam)


@dataclass(frozen=True)
class QuantumSeed:
    """A quantum seed whose variables live in the initial (ambient) torus.

    ``pair`` holds the current exchange matrix and skew form; ``ambient`` is
    the skew form of the initial seed and never changes under mutation.
    """

    pair: CompatiblePair
    ambient: SkewForm
    vars: tuple[TorusElement, ...]

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def m(self) -> int:
        return self.pair.m

    @property
    def form(self) -> SkewForm:
        return self.pair.form

    @property
    def btilde(self) -> Matrix:
        return self.pair.btilde

    @property
    def D(self) -> tuple[int, ...]:
        return self.pair.D

    def var(self, i: int) -> TorusElement:
        """Current variable ``x_i`` (1-based)."""
        return self.vars[i - 1]


def initial_seed(btilde, form) -> QuantumSeed:
    """Seed whose variables are the torus generators ``x_i = X^{e_i}``."""
    pair = CompatiblePair.build(btilde, form)
    gens = tuple(TorusElement.generator(pair.form, i) for i in range(1, pair.m + 1))
    return QuantumSeed(pair, pair.form, gens)


def frame_monomial(seed: QuantumSeed, a: Sequence[int]) -> TorusElement:
    """``X^a`` in the seed's own toric frame, as an ambient torus element.

    The current variables quasi-commute through the current form, so
    ``X^a = q^((1/2) sum_{l<k} a_k a_l lambda_kl) x_1^a_1 ... x_m^a_m``.
    Negative exponents need the variable to be a monomial.
    """
    if len(a) != seed.m:
        raise InvalidArgs(f"exponent has length {len(a)}, expected {seed.m}")
    lam = seed.form.matrix
    half = 0
    for l in range(seed.m):
        if a[l]:
            for k in range(l + 1, seed.m):
                if a[k]:
                    half += a[k] * a[l] * lam[k][l]
    result = TorusElement.one(seed.ambient)
    for i, ai in enumerate(a):
        if ai:
            v = seed.vars[i]
            if ai < 0:
                try:
                    v = v.inverse()
                except NotDivisible as exc:
                    raise InvalidArgs(
                        f"negative power of the non-monomial variable x_{i + 1}"
                    ) from exc
            result = te_mul(result, v ** abs(ai))
    return result.scale(QLaurent({half: 1}))


def mutate_seed(seed: QuantumSeed, k: int, step_cap: int | None = None) -> QuantumSeed:
    """Mutate ``seed`` in direction ``k``.

    The new variable solves ``x'_k x_k = R`` with

        R = q^(Lambda(b+, e_k)/2) X^(b+) + q^(Lambda(b-, e_k)/2) X^(b-),

    ``b+ = [b_k]_+`` and ``b- = [-b_k]_+`` read in the current frame.  Both
    exponent vectors are nonnegative, so only a right division by the old
    ``x_k`` is needed.
    """
    n, m = seed.n, seed.m
    if not 1 <= k <= n:
        raise InvalidArgs(f"mutation direction {k} out of range [1, {n}]")
    col = seed.pair.column(k)
    plus = tuple(max(x, 0) for x in col)
    minus = tuple(max(-x, 0) for x in col)
    lam = seed.form.matrix
    h_plus = sum(plus[t] * lam[t][k - 1] for t in range(m))
    h_minus = sum(minus[t] * lam[t][k - 1] for t in range(m))
    rhs = frame_monomial(seed, plus).shift(h_plus) + frame_monomial(seed, minus).shift(h_minus)
    new_var = te_exact_div_right(rhs, seed.vars[k - 1], step_cap=step_cap)

    new_b = mutate_matrixB(seed.btilde, k)
    new_form = mutate_lambda(seed.form, seed.btilde, k)
    new_pair = CompatiblePair.build(new_b, new_form)
    if new_pair.D != seed.D:
        raise Incompatible(f"mutation changed D from {seed.D} to {new_pair.D}")
    new_vars = seed.vars[: k - 1] + (new_var,) + seed.vars[k:]
    return QuantumSeed(new_pair, seed.ambient, new_vars)


def mutate_sequence(seed: QuantumSeed, ks: Sequence[int], step_cap: int | None = None) -> QuantumSeed:
    for k in ks:
        seed = mutate_seed(seed, k, step_cap=step_cap)
    return seed


def _principal_block(B) -> Matrix:
    b = _as_matrix(B, "B")
    if len(b) < len(b[0]) if b else True:
        raise InvalidArgs("B must have at least n rows")
    n = len(b[0])
    return b[:n]


def _digraph(B: Matrix) -> dict[int, set[int]]:
    n = len(B)
    # predecessor map for graphlib: edge i -> j when b_ij > 0
    preds: dict[int, set[int]] = {j: set() for j in range(n)}
    for i in range(n):
        for j in range(n):
            if B[i][j] > 0:
                preds[j].add(i)
    return preds


def is_acyclic(B) -> bool:
    """True when the quiver with arrows ``i -> j`` for ``b_ij > 0`` has no oriented cycle."""
    b = _principal_block(B)
    if len(b) != len(b[0]):
        raise InvalidArgs("B must be square")
    try:
        tuple(graphlib.TopologicalSorter(_digraph(b)).static_order())
    except graphlib.CycleError:
        return False
    return True


def is_admissible(B) -> bool:
    """True when ``b_ij >= 0`` for all ``i > j``."""
    b = _principal_block(B)
    n = len(b)
    return all(b[i][j] >= 0 for i in range(n) for j in range(i))


def admissible_order(B) -> tuple[int, ...]:
    """Permutation ``sigma`` (1-based) making the reordered ``B`` admissible.

    Position ``p`` of the new order holds the old index ``sigma[p]``.  The
    new index 1 is a sink; among the available sinks the smallest old index
    is taken first.
    """
    b = _principal_block(B)
    n = len(b)
    remaining = list(range(n))
    order = []
    while remaining:
        for v in remaining:
            if all(b[v][w] <= 0 for w in remaining):
                order.append(v)
                remaining.remove(v)
                break
        else:
            raise NotAcyclic("exchange matrix has an oriented cycle")
    return tuple(v + 1 for v in order)


def permute_seed(seed: QuantumSeed, sigma: Sequence[int]) -> QuantumSeed:
    """Relabel an initial principal-coefficient seed by ``sigma``.

    Mutable index ``p`` becomes old index ``sigma[p]`` and frozen index
    ``n + p`` follows it as ``n + sigma[p]``, which keeps the ``[B; I]`` shape.
    Only seeds still at their initial variables can be relabelled.
    """
    n, m = seed.n, seed.m
    if sorted(sigma) != list(range(1, n + 1)):
        raise InvalidArgs(f"{sigma} is not a permutation of 1..{n}")
    if any(seed.vars[i] != TorusElement.generator(seed.ambient, i + 1) for i in range(m)) or (
        seed.ambient != seed.form
    ):
        raise InvalidArgs("only initial seeds can be relabelled")
    if m != 2 * n:
        full = list(sigma) + list(range(n + 1, m + 1))
    else:
        full = list(sigma) + [n + s for s in sigma]
    rows = [seed.btilde[p - 1] for p in full]
    bt = tuple(tuple(row[s - 1] for s in sigma) for row in rows)
    lam = tuple(tuple(seed.form.matrix[p - 1][r - 1] for r in full) for p in full)
    return initial_seed(bt, lam)


def principal_pair(B, D) -> CompatiblePair:
    """Principal coefficients ``[B; I]`` with ``Lambda = [[0, -D], [D, B^T D]]``."""
    b = _as_matrix(B, "B")
    n = len(b)
    if any(len(r) != n for r in b):
        raise InvalidArgs("B must be square")
    d = [int(x) for x in (np.diag(D) if np.ndim(D) == 2 else D)]
    if len(d) != n:
        raise InvalidArgs(f"D has length {len(d)}, expected {n}")
    if any(x <= 0 for x in d):
        raise NotSkewSymmetrizable("D must have positive diagonal entries")
    for i in range(n):
        for j in range(n):
            if d[i] * b[i][j] != -d[j] * b[j][i]:
                raise NotSkewSymmetrizable(f"D B is not skew-symmetric at ({i + 1}, {j + 1})")
    btilde = b + tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    lam = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        lam[i][n + i] = -d[i]
        lam[n + i][i] = d[i]
        for j in range(n):
            # (B^T D)_ij = b_ji d_j
            lam[n + i][n + j] = b[j][i] * d[j]
    pair = CompatiblePair.build(btilde, lam)
    if pair.D != tuple(d):
        raise Incompatible(f"principal pair produced D={pair.D}, expected {tuple(d)}")
    return pair


def random_skew_matrix(rng: np.random.Generator, n: int, bound: int = 2) -> Matrix:
    """Random skew-symmetric ``n x n`` integer matrix with entries in ``[-bound, bound]``."""
    b = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            v = int(rng.integers(-bound, bound + 1))
            b[i, j], b[j, i] = v, -v
    return _as_matrix(b, "B")


def random_acyclic_matrix(rng: np.random.Generator, n: int, bound: int = 2) -> Matrix:
    """Random skew-symmetric matrix already in admissible order (``b_ij >= 0`` for ``i > j``)."""
    b = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i):
            v = int(rng.integers(0, bound + 1))
            b[i, j], b[j, i] = v, -v
    return _as_matrix(b, "B")
