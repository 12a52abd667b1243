"""
Exact arithmetic in the Picard group L = L(2,2,n).

L is generated by x1, x2, x3 subject to 2*x1 = 2*x2 = n*x3 = c. Every element
has a unique normal form l1*x1 + l2*x2 + l3*x3 + l*c with l1, l2 in {0, 1} and
0 <= l3 < n, and that normal form is what PicardElement stores.
"""

from dataclasses import dataclass
from math import lcm
from typing import Dict, Optional, Tuple

from errors import ContextMismatch, DomainViolation


@dataclass(frozen=True, order=True)
class PicardElement:
    """l1*x1 + l2*x2 + l3*x3 + l*c in normal form for weight n"""

    n: int
    l1: int
    l2: int
    l3: int
    l: int

    def __add__(self, other: "PicardElement") -> "PicardElement":
        _same_weight(self, other)
        return _normal_form(
            self.n, self.l1 + other.l1, self.l2 + other.l2, self.l3 + other.l3, self.l + other.l
        )

    def __neg__(self) -> "PicardElement":
        return _normal_form(self.n, -self.l1, -self.l2, -self.l3, -self.l)

    def __sub__(self, other: "PicardElement") -> "PicardElement":
        return self + (-other)

    def __mul__(self, k: int) -> "PicardElement":
        return _normal_form(self.n, k * self.l1, k * self.l2, k * self.l3, k * self.l)

    __rmul__ = __mul__

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.l1, self.l2, self.l3, self.l)

    def to_json(self) -> Dict[str, int]:
        return {"x1": self.l1, "x2": self.l2, "x3": self.l3, "c": self.l}

    def __str__(self) -> str:
        return f"{self.l1},{self.l2},{self.l3},{self.l}"


@dataclass(frozen=True, order=True)
class PicardBarElement:
    """r*x1 + m*x3 in the quotient L / Z(x1 - x2)"""

    n: int
    r: int
    m: int

    def __add__(self, other: "PicardBarElement") -> "PicardBarElement":
        if self.n != other.n:
            raise ContextMismatch(f"weights {self.n} and {other.n} differ")
        r, m = self.r + other.r, self.m + other.m
        if r >= 2:
            r, m = r - 2, m + self.n
        return PicardBarElement(self.n, r, m)

    def __neg__(self) -> "PicardBarElement":
        if self.r == 0:
            return PicardBarElement(self.n, 0, -self.m)
        # -x1 = x1 - c
        return PicardBarElement(self.n, 1, -self.m - self.n)

    def lift(self) -> PicardElement:
        return _normal_form(self.n, self.r, 0, self.m, 0)

    def to_json(self) -> Dict[str, int]:
        return {"x1": self.r, "x3": self.m}


@dataclass(frozen=True)
class ModelContext:
    """Weight n together with the fixed base line bundle L0 = O(base)"""

    n: int
    base: PicardElement

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainViolation(f"weight n must be at least 2, got {self.n}")
        if self.base.n != self.n:
            raise ContextMismatch(
                f"base line bundle lives in weight {self.base.n}, context has {self.n}"
            )

    @classmethod
    def create(cls, n: int, base: Optional[Tuple[int, int, int, int]] = None) -> "ModelContext":
        if n < 2:
            raise DomainViolation(f"weight n must be at least 2, got {n}")
        coords = base if base is not None else (0, 0, 1, 0)
        return cls(n, _normal_form(n, *coords))

    def element(self, a1: int = 0, a2: int = 0, a3: int = 0, a: int = 0) -> PicardElement:
        return _normal_form(self.n, a1, a2, a3, a)

    @property
    def zero(self) -> PicardElement:
        return self.element()

    @property
    def x1(self) -> PicardElement:
        return self.element(1, 0, 0, 0)

    @property
    def x2(self) -> PicardElement:
        return self.element(0, 1, 0, 0)

    @property
    def x3(self) -> PicardElement:
        return self.element(0, 0, 1, 0)

    @property
    def c(self) -> PicardElement:
        return self.element(0, 0, 0, 1)

    @property
    def star(self) -> PicardElement:
        """x1 - x2, the twist exchanging L and L*"""
        return self.element(1, -1, 0, 0)

    @property
    def omega(self) -> PicardElement:
        return omega_of(self.n)

    @property
    def delta_dom(self) -> PicardElement:
        return self.element(0, 0, self.n - 2, 0)

    @property
    def is_duality_compatible(self) -> bool:
        """2*base equals 2*x3 up to x1 - x2; needed for the segment-level duality"""
        diff = 2 * self.base - 2 * self.x3
        return diff in (self.zero, self.star)


def _same_weight(x: PicardElement, y: PicardElement) -> None:
    if x.n != y.n:
        raise ContextMismatch(f"weights {x.n} and {y.n} differ")


def _normal_form(n: int, a1: int, a2: int, a3: int, a: int) -> PicardElement:
    q1, r1 = divmod(a1, 2)
    q2, r2 = divmod(a2, 2)
    q3, r3 = divmod(a3, n)
    return PicardElement(n, r1, r2, r3, a + q1 + q2 + q3)


def omega_of(n: int) -> PicardElement:
    """c - x1 - x2 - x3"""
    return _normal_form(n, -1, -1, -1, 1)


def normalize(a1: int, a2: int, a3: int, a: int, ctx: ModelContext) -> PicardElement:
    """Normal form of a1*x1 + a2*x2 + a3*x3 + a*c"""
    return _normal_form(ctx.n, a1, a2, a3, a)


def special_elements(ctx: ModelContext) -> Tuple[PicardElement, PicardElement, PicardElement]:
    """(omega, c, dominant element) in normal form"""
    return ctx.omega, ctx.c, ctx.delta_dom


def is_effective(x: PicardElement) -> bool:
    return x.l >= 0


def dim_R(x: PicardElement) -> int:
    """Dimension of the graded piece R_x of k[x1,x2,x3]/(x1^2 + x2^2 + x3^n)"""
    return x.l + 1 if x.l >= 0 else 0


def dim_R_bruteforce(x: PicardElement) -> int:
    """
    Count monomials x1^a x2^b x3^e of degree x with e < n.

    R is free over k[x1, x2] on 1, x3, ..., x3^(n-1), so these monomials form a
    basis of R_x. Independent of the closed formula in dim_R.
    """
    bound = 2 * x.l + 2
    count = 0
    for e in range(x.n):
        for a in range(bound + 1):
            for b in range(bound + 1):
                if _normal_form(x.n, a, b, e, 0) == x:
                    count += 1
    return count


def degree_unit(n: int) -> int:
    """lcm(2, n), the degree of c"""
    return lcm(2, n)


def delta_degree(x: PicardElement) -> int:
    p = lcm(2, x.n)
    return (x.l1 + x.l2) * (p // 2) + x.l3 * (p // x.n) + x.l * p


def alt_coords(x: PicardElement) -> Tuple[int, int, int]:
    """Unique (e1, e2, m) with x = e1*(x1 - x2) + e2*x2 + m*x3"""
    e1 = x.l1
    e2 = (x.l2 - x.l1) % 2
    m = x.l3 + x.n * (x.l + (x.l1 + x.l2 - e2) // 2)
    return e1, e2, m


def from_alt_coords(e1: int, e2: int, m: int, ctx: ModelContext) -> PicardElement:
    return _normal_form(ctx.n, e1, e2 - e1, m, 0)


def project_bar(x: PicardElement) -> PicardBarElement:
    _, e2, m = alt_coords(x)
    return PicardBarElement(x.n, e2, m)


def star_split(x: PicardElement) -> Tuple[int, int, int]:
    """Unique (eps, r, m) with x = eps*(x1 - x2) + r*x1 + m*x3"""
    e1, e2, m = alt_coords(x)
    # x2 = x1 + (x1 - x2) since 2*(x1 - x2) = 0
    return (e1 + e2) % 2, e2, m
