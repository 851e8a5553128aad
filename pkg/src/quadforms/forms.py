"""Binary quadratic forms ax^2 + 2bxy + cy^2 and unimodular substitutions.

The middle coefficient is stored halved: (a, b, c) means ax^2 + 2bxy + cy^2,
and the determinant is b^2 - ac (so x^2 + y^2 has determinant -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .numtheory import DomainError, ext_gcd

__all__ = [
    "QuadraticForm",
    "UnimodularMap",
    "Representation",
    "transform",
    "is_contiguous",
    "representation_value",
    "form_from_representation",
    "product_representation",
]


@dataclass(frozen=True, order=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for v in (self.a, self.b, self.c):
            if not isinstance(v, int):
                raise DomainError(f"coefficients must be ints, got {v!r}")
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise DomainError("the zero form is excluded")

    @property
    def determinant(self) -> int:
        return self.b * self.b - self.a * self.c

    @property
    def content(self) -> int:
        """gcd of the full coefficients a, 2b, c."""
        return gcd(gcd(self.a, 2 * self.b), self.c)

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + 2 * self.b * x * y + self.c * y * y

    def opposite(self) -> "QuadraticForm":
        return QuadraticForm(self.a, -self.b, self.c)

    def negated(self) -> "QuadraticForm":
        return QuadraticForm(-self.a, -self.b, -self.c)

    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @classmethod
    def parse(cls, text: str) -> "QuadraticForm":
        """Parse 'a,b,c' (halved middle coefficient)."""
        parts = text.split(",")
        if len(parts) != 3:
            raise DomainError(f"expected 'a,b,c', got {text!r}")
        try:
            a, b, c = (int(p.strip()) for p in parts)
        except ValueError as exc:
            raise DomainError(f"non-integer coefficient in {text!r}") from exc
        return cls(a, b, c)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class UnimodularMap:
    """x = alpha*x' + beta*y', y = gamma*x' + delta*y'.

    Determinant +-1 makes it an equivalence; transform() accepts any integer
    map, callers that need equivalence check is_proper / is_improper.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int

    @property
    def determinant(self) -> int:
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def is_proper(self) -> bool:
        return self.determinant == 1

    @property
    def is_improper(self) -> bool:
        return self.determinant == -1

    @classmethod
    def identity(cls) -> "UnimodularMap":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(
            self.alpha * other.alpha + self.beta * other.gamma,
            self.alpha * other.beta + self.beta * other.delta,
            self.gamma * other.alpha + self.delta * other.gamma,
            self.gamma * other.beta + self.delta * other.delta,
        )


def transform(f: QuadraticForm, t: UnimodularMap) -> QuadraticForm:
    """The form f composed with the substitution t."""
    a, b, c = f.a, f.b, f.c
    al, be, ga, de = t.alpha, t.beta, t.gamma, t.delta
    a2 = a * al * al + 2 * b * al * ga + c * ga * ga
    b2 = a * al * be + b * (al * de + be * ga) + c * ga * de
    c2 = a * be * be + 2 * b * be * de + c * de * de
    return QuadraticForm(a2, b2, c2)


def is_contiguous(f1: QuadraticForm, f2: QuadraticForm) -> bool:
    """f2 follows f1: same determinant, c1 = a2, and b1 + b2 ≡ 0 (mod c1)."""
    if f1.determinant != f2.determinant:
        return False
    if f1.c != f2.a:
        return False
    if f1.c == 0:
        return f2.b == -f1.b
    return (f1.b + f2.b) % f1.c == 0


@dataclass(frozen=True)
class Representation:
    """M = form(m, n) with gcd(m, n) = 1 and the belonging value of the pair.

    theta = mu(bm + cn) - nu(am + bn) for any mu*m + nu*n = 1, taken mod |M|;
    it satisfies theta^2 ≡ det(form) (mod M) and does not depend on the
    Bezout pair chosen.
    """

    form: QuadraticForm
    m: int
    n: int
    value: int
    theta: int
    mu: int
    nu: int


def representation_value(f: QuadraticForm, m: int, n: int) -> Representation:
    g, mu, nu = ext_gcd(m, n)
    if g != 1:
        raise DomainError(f"({m},{n}) is not a coprime pair")
    value = f.value(m, n)
    if value == 0:
        raise DomainError("representations of zero have no belonging value")
    theta = mu * (f.b * m + f.c * n) - nu * (f.a * m + f.b * n)
    return Representation(f, m, n, value, theta % abs(value), mu, nu)


def form_from_representation(r: Representation) -> QuadraticForm:
    """(M, theta, (theta^2 - D)/M): represented value as a leading coefficient.

    The result has the same determinant as r.form and is properly equivalent
    to it.
    """
    d = r.form.determinant
    if (r.theta * r.theta - d) % r.value != 0:
        raise DomainError("belonging value does not match the determinant")
    return QuadraticForm(r.value, r.theta, (r.theta * r.theta - d) // r.value)


def product_representation(
    f: QuadraticForm, pair1: tuple[int, int], pair2: tuple[int, int]
) -> tuple[int, int]:
    """(p, q) with f(g,h) * f(g1,h1) = p^2 - D*q^2.

    p = a*g*g1 + b*(g*h1 + h*g1) + c*h*h1 and q = g*h1 - h*g1: the product of
    two values of f is represented by the principal form of determinant D.
    """
    g, h = pair1
    g1, h1 = pair2
    p = f.a * g * g1 + f.b * (g * h1 + h * g1) + f.c * h * h1
    q = g * h1 - h * g1
    return p, q
