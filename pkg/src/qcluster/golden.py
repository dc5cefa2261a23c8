"""Built-in rank-3 regression example.

The seed below has ``B`` with ``b_21 = b_31 = 1`` and ``b_32 = 2``,
principal coefficients and a non-canonical compatible ``Lambda``.  Every
identity in :func:`run_suite` is an exact equality of torus elements;
products such as ``x1^-1 * (x1^(1))^2 * x2^-1`` are evaluated left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .coeffring import QLaurent
from .errors import QClusterError
from .projective import compute_family
from .qseed import initial_seed, mutate_seed
from .qtorus import TorusElement
from .straighten import to_standard_monomials

__all__ = ["BTILDE", "LAMBDA", "GoldenResult", "run_suite", "example_seed"]

BTILDE = (
    (0, -1, -1),
    (1, 0, -2),
    (1, 2, 0),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
)

LAMBDA = (
    (0, -1, -1, 1, 2, -2),
    (1, 0, 0, 0, 0, 1),
    (1, 0, 0, 0, 1, 0),
    (-1, 0, 0, 0, -1, -1),
    (-2, 0, -1, 1, 0, -2),
    (2, -1, 0, 1, 2, 0),
)

BTILDE_1 = ((0, 1, 1), (-1, 0, -2), (-1, 2, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1))
LAMBDA_1 = (
    (0, 1, 1, -1, -2, 2),
    (-1, 0, 0, 0, 0, 1),
    (-1, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, -1, -1),
    (2, 0, -1, 1, 0, -2),
    (-2, -1, 0, 1, 2, 0),
)
BTILDE_2 = ((0, -1, 1), (1, 0, 2), (-1, -2, 0), (-1, 0, 0), (0, -1, 0), (0, 0, 1))
LAMBDA_2 = (
    (0, -1, 1, -1, -2, 2),
    (1, 0, 0, 0, 0, -1),
    (-1, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, -1, -1),
    (2, 0, -1, 1, 0, -2),
    (-2, 1, 0, 1, 2, 0),
)


def example_seed(btilde=BTILDE, lam=LAMBDA):
    return initial_seed(btilde, lam)


def Q(*terms: tuple[int, int]) -> QLaurent:
    """``Q((h, c), ...)`` is ``sum c * q^(h/2)``."""
    return QLaurent(list(terms))


@dataclass
class GoldenResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


class _Words:
    """Left-to-right products of named elements."""

    def __init__(self, form, named: dict[str, TorusElement]):
        self.form = form
        self.named = named

    def __call__(self, coeff: QLaurent | int, *factors: tuple[str, int]) -> TorusElement:
        out = TorusElement.one(self.form)
        for name, p in factors:
            u = self.named[name]
            out = out * (u**p if p >= 0 else u.inverse() ** (-p))
        return out.scale(coeff)


def _checks(btilde, lam) -> list[tuple[str, Callable[[], bool | tuple[bool, str]]]]:
    seed = example_seed(btilde, lam)
    form = seed.ambient
    state: dict = {}

    def fam():
        if "fam" not in state:
            state["fam"] = compute_family(seed)
        return state["fam"]

    def one_step(i):
        key = f"x'{i}"
        if key not in state:
            state[key] = mutate_seed(seed, i).var(i)
        return state[key]

    def words():
        if "w" not in state:
            f = fam()
            named = {f"x{i}": TorusElement.generator(form, i) for i in range(1, 7)}
            named.update({f"p{i}": f.xproj(i) for i in range(1, 4)})
            named.update({f"x'{i}": one_step(i) for i in range(1, 4)})
            state["w"] = _Words(form, named)
        return state["w"]

    def eq(lhs: TorusElement, rhs: TorusElement):
        if lhs == rhs:
            return True
        return False, f"difference {(lhs - rhs).pretty()}"

    def mat(got, want):
        if tuple(tuple(r) for r in got) == want:
            return True
        return False, f"got {got}"

    def commutator(a: str, b: str, twist_half: int, rhs):
        w = words()
        A, Bv = w(1, (a, 1)), w(1, (b, 1))
        return eq(A * Bv - (Bv * A).shift(twist_half), rhs)

    def x3_3():
        w = words()
        rhs = (
            w(Q((-2, 1)), ("x1", -1), ("p1", 2), ("x2", -1), ("x3", 4), ("x4", 1), ("x5", 2), ("x6", 1))
            + w(Q((1, 1), (3, 1)), ("x1", -1), ("p1", 1), ("x2", -1), ("x3", 2), ("x4", 1), ("x5", 1), ("x6", 1))
            + w(Q((2, 1)), ("x1", -1), ("x2", -1), ("x4", 1), ("x6", 1))
            + w(Q((3, 1)), ("x1", -1), ("p1", 2), ("x2", -2), ("x3", 3), ("x5", 2), ("x6", 1))
            + w(Q((4, 1), (6, 1)), ("x1", -1), ("p1", 1), ("x2", -2), ("x3", 1), ("x5", 1), ("x6", 1))
            + w(Q((3, 1)), ("x1", -1), ("x2", -2), ("x3", -1), ("x6", 1))
            + w(1, ("x3", -1))
        )
        short = w(Q((3, 1)), ("p1", 1), ("p2", 2), ("x3", -1), ("x6", 1)) + w(1, ("x3", -1))
        got = fam().xproj(3)
        if got != short:
            return False, "differs from the two-term form"
        return eq(got, rhs)

    def expansion_x2():
        w = words()
        lhs = w(1, ("x1", 1)) * fam().var(2, 2)
        rhs = w(Q((-2, 1)), ("x3", 3), ("x4", 1), ("x5", 1)) + w(Q((1, 1)), ("x'2", 1))
        ok = eq(lhs, rhs)
        if ok is not True:
            return ok
        exp = to_standard_monomials(seed, lhs)
        if exp.evaluate() != lhs or sorted(exp.coeffs) != [(0, -1, 0), (0, 0, 3)]:
            return False, f"standard expansion {exp.pretty()}"
        return True

    def expansion_x3():
        w = words()
        lhs = w(1, ("x1", 1), ("x2", 2)) * fam().xproj(3)
        rhs = (
            w(Q((-14, 1)), ("p1", 2), ("x2", 1), ("x3", 4), ("x4", 1), ("x5", 2), ("x6", 1))
            + w(Q((-7, 1), (-5, 1)), ("p1", 1), ("x2", 1), ("x3", 2), ("x4", 1), ("x5", 1), ("x6", 1))
            + w(Q((-2, 1)), ("x2", 1), ("x4", 1), ("x6", 1))
            + w(Q((-9, 1)), ("p1", 2), ("x3", 3), ("x5", 2), ("x6", 1))
            + w(Q((-4, 1), (-2, 1)), ("p1", 1), ("x3", 1), ("x5", 1), ("x6", 1))
            + w(Q((-1, 1)), ("x'3", 1))
        )
        return eq(lhs, rhs)

    w = lambda: words()  # noqa: E731
    checks: list[tuple[str, Callable]] = [
        ("compatibility D = diag(1,1,1)", lambda: (seed.D == (1, 1, 1)) or (False, f"D = {seed.D}")),
        ("x'1", lambda: eq(one_step(1), w()(Q((-1, 1)), ("x1", -1), ("x2", 1), ("x3", 1), ("x4", 1)) + w()(1, ("x1", -1)))),
        ("x'2", lambda: eq(one_step(2), w()(Q((-2, 1)), ("x2", -1), ("x3", 2), ("x5", 1)) + w()(Q((-1, 1)), ("x1", 1), ("x2", -1)))),
        ("x'3", lambda: eq(one_step(3), w()(1, ("x3", -1), ("x6", 1)) + w()(Q((1, 1)), ("x1", 1), ("x2", 2), ("x3", -1)))),
        ("Btilde^(1)", lambda: mat(fam().seeds[1].btilde, BTILDE_1)),
        ("Lambda^(1)", lambda: mat(fam().seeds[1].form.matrix, LAMBDA_1)),
        ("Btilde^(2)", lambda: mat(fam().seeds[2].btilde, BTILDE_2)),
        ("Lambda^(2)", lambda: mat(fam().seeds[2].form.matrix, LAMBDA_2)),
        ("D preserved along mu_1, mu_2, mu_3", lambda: all(s.D == seed.D for s in fam().seeds) or (False, "D changed")),
        ("x1^(1) = x'1", lambda: eq(fam().var(1, 1), one_step(1))),
        (
            "x2^(2)",
            lambda: eq(
                fam().var(2, 2),
                w()(Q((-2, 1)), ("x1", -1), ("x3", 3), ("x4", 1), ("x5", 1))
                + w()(Q((-1, 1)), ("x1", -1), ("x2", -1), ("x3", 2), ("x5", 1))
                + w()(1, ("x2", -1)),
            ),
        ),
        ("x3^(3)", x3_3),
        ("[x1^(3), x1]", lambda: commutator("p1", "x1", 0, w()(Q((-1, -1), (1, 1)), ("x2", 1), ("x3", 1), ("x4", 1)))),
        ("[x2^(3), x2]", lambda: commutator("p2", "x2", 0, w()(Q((-1, 1), (-3, -1)), ("p1", 1), ("x3", 2), ("x5", 1)))),
        ("[x3^(3), x3]", lambda: commutator("p3", "x3", 0, w()(Q((3, 1), (1, -1)), ("p1", 1), ("p2", 2), ("x6", 1)))),
        ("x2^(3) x1 - q^-1 x1 x2^(3)", lambda: commutator("p2", "x1", -2, w()(Q((-2, 1), (-4, -1)), ("x3", 3), ("x4", 1), ("x5", 1)))),
        ("x3^(3) x2 - x2 x3^(3)", lambda: commutator("p3", "x2", 0, w()(Q((4, 1), (0, -1)), ("p1", 2), ("p2", 1), ("x3", 1), ("x5", 1), ("x6", 1)))),
        (
            "x3^(3) x1 - q^-1 x1 x3^(3)",
            lambda: commutator(
                "p3",
                "x1",
                -2,
                w()(Q((5, 1), (-1, -1)), ("p1", 1), ("p2", 1), ("x3", 2), ("x4", 1), ("x5", 1), ("x6", 1))
                + w()(Q((2, 1), (0, -1)), ("p2", 1), ("x4", 1), ("x6", 1)),
            ),
        ),
        ("x1 x2^(2) expansion", expansion_x2),
        ("x1 x2^2 x3^(3) expansion", expansion_x3),
    ]
    return checks


def run_suite(btilde=BTILDE, lam=LAMBDA, stop_at_first: bool = False) -> list[GoldenResult]:
    """Evaluate every regression identity; errors count as failures."""
    try:
        checks = _checks(btilde, lam)
    except QClusterError as exc:
        return [GoldenResult("seed", False, f"{type(exc).__name__}: {exc}")]
    out = []
    for name, fn in checks:
        try:
            res = fn()
        except QClusterError as exc:
            res = (False, f"{type(exc).__name__}: {exc}")
        ok, detail = (res, "") if isinstance(res, bool) else res
        out.append(GoldenResult(name, ok, detail))
        if stop_at_first and not ok:
            break
    return out
