"""Class groups of binary quadratic forms of fundamental discriminant.

This is the ground-truth side of the package: it knows nothing about genus
theory or Redei matrices and computes the full group structure of the form
class group (the narrow class group) by explicit composition.

Positive definite classes are identified by their unique reduced form.
Indefinite classes are identified by the smallest form of their cycle of
reduced forms, so no fundamental-unit sized integer is ever formed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod

from . import kernels
from .arithmetic import factorize
from .config import settings
from .errors import (
    BadInput,
    DegenerateForm,
    DiscriminantMismatch,
    NotFundamental,
    OracleRangeExceeded,
)


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def inverse(self) -> QuadForm:
        return QuadForm(self.a, -self.b, self.c)

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Finite abelian group as invariant factors d_1 | d_2 | ... | d_k."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        f = self.invariant_factors
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise BadInput(f"not an invariant factor chain: {f}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def rank(self, k: int) -> int:
        return rk2k(self, k)


def rk2k(g: AbelianGroupStructure, k: int) -> int:
    """The 2^k-rank: number of invariant factors divisible by 2^k."""
    if k < 1:
        raise BadInput("k must be >= 1")
    m = 1 << k
    return sum(1 for d in g.invariant_factors if d % m == 0)


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for _, e in factorize(abs(D)))
    if D % 4 == 0:
        m = D // 4
        if m % 4 in (2, 3):
            return all(e == 1 for _, e in factorize(abs(m)))
    return False


def _check_form(f: QuadForm) -> int:
    D = f.discriminant
    if D == 0 or (D > 0 and isqrt(D) ** 2 == D):
        raise DegenerateForm(f"discriminant {D} is a square")
    if D < 0 and f.a <= 0:
        raise BadInput("only positive definite forms are supported for D < 0")
    return D


def reduce(f: QuadForm) -> QuadForm:
    """Reduced form properly equivalent to f (for D > 0: one of its cycle)."""
    D = _check_form(f)
    if D < 0:
        return QuadForm(*kernels.reduce_definite(f.a, f.b, f.c))
    return QuadForm(*kernels.reduce_indefinite(f.a, f.b, f.c, D, isqrt(D)))


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Reduced representative of the product of the classes of f and g."""
    D = _check_form(f)
    if g.discriminant != D:
        raise DiscriminantMismatch(f"{D} != {g.discriminant}")
    _check_form(g)
    return reduce(QuadForm(*kernels.compose(f.a, f.b, f.c, g.a, g.b, g.c)))


def principal_form(D: int) -> QuadForm:
    b = D & 1
    return QuadForm(1, b, (b - D) // 4)


def smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if j == t:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
    return diag


def _invariant_factors(relations: list[list[int]], ngens: int) -> tuple[int, ...]:
    if ngens == 0:
        return ()
    rows = [r + [0] * (ngens - len(r)) for r in relations]
    diag = smith_diagonal(rows)
    if len(diag) < ngens:
        raise ArithmeticError("relation lattice is not of full rank")
    return tuple(sorted(d for d in diag if d > 1))


class FormClassGroup:
    """Explicit form class group of a fundamental discriminant D.

    Classes are represented by canonical reduced forms (plain tuples). After
    construction ``dlog`` maps every class to its exponent vector over the
    chosen generators and ``relations`` holds a full-rank relation lattice.
    """

    def __init__(self, D: int):
        if not is_fundamental(D):
            raise NotFundamental(f"{D} is not a fundamental discriminant")
        self.D = D
        if D < 0:
            self.classes = sorted(kernels.definite_reduced_forms(D))
            self._rep = None
        else:
            self._s = isqrt(D)
            forms, labels = kernels.indefinite_cycles(D)
            self._rep = {f: forms[l] for f, l in zip(forms, labels)}
            self.classes = sorted(set(self._rep.values()))
        self.identity = self.canon(tuple(principal_form(D)))
        self._build()

    def canon(self, f) -> tuple[int, int, int]:
        if self._rep is None:
            return kernels.reduce_definite(*f)
        return self._rep[kernels.reduce_indefinite(*f, self.D, self._s)]

    def mul(self, f, g):
        return self.canon(kernels.compose(*f, *g))

    def _build(self):
        mul = self.mul
        H = {self.identity: ()}
        gens: list = []
        relations: list[list[int]] = []
        for g in self.classes:
            if g in H:
                continue
            x, k = g, 1
            while x not in H:
                x = mul(x, g)
                k += 1
            relations.append([-e for e in H[x]] + [k])
            gens.append(g)
            old = list(H.items())
            H = {h: v + (0,) for h, v in old}
            y = g
            for i in range(1, k):
                for h, v in old:
                    H[mul(h, y)] = v + (i,)
                y = mul(y, g)
        self.generators = gens
        self.relations = relations
        self.dlog = H

    @property
    def order(self) -> int:
        return len(self.classes)

    def structure(self) -> AbelianGroupStructure:
        return AbelianGroupStructure(_invariant_factors(self.relations, len(self.generators)))

    def sign_flip_class(self):
        """Class of (-1, b0, (D - b0^2)/4): trivial iff a unit of norm -1 exists."""
        if self.D < 0:
            raise BadInput("sign-flip class only exists for D > 0")
        b0 = self.D & 1
        return self.canon((-1, b0, (self.D - b0 * b0) // 4))

    def ordinary_structure(self) -> AbelianGroupStructure:
        if self.D < 0:
            return self.structure()
        ngens = len(self.generators)
        extra = list(self.dlog[self.sign_flip_class()])
        return AbelianGroupStructure(_invariant_factors(self.relations + [extra], ngens))


@lru_cache(maxsize=None)
def _summary(D: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    G = FormClassGroup(D)
    return G.structure().invariant_factors, G.ordinary_structure().invariant_factors


class FormClassOracle:
    """Bounded front end to the class group computations (results cached by D)."""

    def __init__(self, bound: int | None = None):
        self.bound = settings.oracle_bound if bound is None else bound

    def _check(self, D: int):
        if abs(D) > self.bound:
            raise OracleRangeExceeded(f"|{D}| exceeds oracle bound {self.bound}")
        if not is_fundamental(D):
            raise NotFundamental(f"{D} is not a fundamental discriminant")

    def covers(self, D: int) -> bool:
        return abs(D) <= self.bound

    def narrow_class_group(self, D: int) -> AbelianGroupStructure:
        self._check(D)
        return AbelianGroupStructure(_summary(D)[0])

    def ordinary_class_group(self, D: int) -> AbelianGroupStructure:
        self._check(D)
        return AbelianGroupStructure(_summary(D)[1])

    def class_number(self, D: int) -> int:
        return self.ordinary_class_group(D).order

    def narrow_class_number(self, D: int) -> int:
        return self.narrow_class_group(D).order


def narrow_class_group(D: int) -> AbelianGroupStructure:
    return FormClassOracle().narrow_class_group(D)


def ordinary_class_group(D: int) -> AbelianGroupStructure:
    if D < 0:
        raise BadInput("ordinary_class_group expects D > 0")
    return FormClassOracle().ordinary_class_group(D)


def class_number(D: int) -> int:
    return FormClassOracle().class_number(D)
