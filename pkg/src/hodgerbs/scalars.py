"""Exact arithmetic in the number field generated by i and sqrt(2).

Every scalar in this library lives in Q(i, sqrt2): complex structures on
real Hodge bases introduce i, Cayley transforms introduce sqrt2, and no
other irrationality ever appears.  An element is stored as four rationals
(coordinates on the basis 1, i, sqrt2, i*sqrt2), so equality, inversion,
and the sign of a real element are all decided exactly, with no floats
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]
ScalarLike = Union["Scalar", int, str, Fraction]


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class Scalar:
    """An element a + b*i + c*sqrt2 + d*i*sqrt2 with rational a, b, c, d."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(
        self,
        a: RationalLike = 0,
        b: RationalLike = 0,
        c: RationalLike = 0,
        d: RationalLike = 0,
    ) -> None:
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))
        object.__setattr__(self, "d", _frac(d))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def coerce(x: ScalarLike) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(_frac(x))

    @staticmethod
    def _co(x: object) -> "Scalar | None":
        # Operand coercion for the operator protocol: None means "not ours",
        # letting the other operand's reflected method run.
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, str, Fraction)) and not isinstance(x, bool):
            return Scalar(_frac(x))
        return None

    # -- ring structure ---------------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._co(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._co(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._co(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # i^2 = -1 and sqrt2^2 = 2, multiplied out on the 4-dim basis.
        return Scalar(
            a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2),
            a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """Complex conjugation (i -> -i, fixing sqrt2)."""
        return Scalar(self.a, -self.b, self.c, -self.d)

    def _flip_sqrt2(self) -> "Scalar":
        # The other Galois generator: sqrt2 -> -sqrt2, fixing i.
        return Scalar(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "Scalar":
        """Multiplicative inverse via the Galois norm down to Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        u = self * self.conjugate()  # real: b = d = 0
        v = u._flip_sqrt2()
        norm = u * v  # rational: b = c = d = 0
        return self.conjugate() * v * Scalar(1 / norm.a)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._co(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.b or self.d)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def real(self) -> "Scalar":
        return Scalar(self.a, 0, self.c, 0)

    def imag(self) -> "Scalar":
        return Scalar(self.b, 0, self.d, 0)

    def sign(self) -> int:
        """Sign of a real element a + c*sqrt2, decided exactly."""
        if not self.is_real():
            raise ValueError(f"sign undefined for non-real {self}")
        a, c = self.a, self.c
        if a == 0 and c == 0:
            return 0
        if a >= 0 and c >= 0:
            return 1
        if a <= 0 and c <= 0:
            return -1
        # Mixed signs: compare a^2 against 2 c^2.  Equality would force
        # sqrt2 rational, so it cannot occur for a nonzero element.
        if a * a == 2 * c * c:
            raise AssertionError("sqrt2 cannot be rational")
        if a > 0:
            return 1 if a * a > 2 * c * c else -1
        return -1 if a * a > 2 * c * c else 1

    def __lt__(self, other: ScalarLike) -> bool:
        return (self - Scalar.coerce(other)).sign() < 0

    def __le__(self, other: ScalarLike) -> bool:
        return (self - Scalar.coerce(other)).sign() <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return (self - Scalar.coerce(other)).sign() > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return (self - Scalar.coerce(other)).sign() >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Scalar, int, str, Fraction)):
            o = Scalar.coerce(other)
            return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for coeff, unit in (
            (self.a, ""),
            (self.b, "i"),
            (self.c, "sqrt2"),
            (self.d, "i*sqrt2"),
        ):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else ("+" if parts else "")
            mag = abs(coeff)
            if unit and mag == 1:
                parts.append(f"{sign}{unit}")
            elif unit:
                parts.append(f"{sign}{mag}*{unit}")
            else:
                parts.append(f"{sign}{mag}")
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1)
HALF = Scalar(Fraction(1, 2))


def scalar_to_obj(x: Scalar) -> object:
    """Canonical JSON value: a fraction string when rational, else the
    four coordinates as fraction strings keyed by basis element."""
    if x.is_rational():
        return str(x.a)
    return {
        "re": str(x.a),
        "im": str(x.b),
        "re_sqrt2": str(x.c),
        "im_sqrt2": str(x.d),
    }


def scalar_from_obj(obj: object) -> Scalar:
    """Inverse of scalar_to_obj; also accepts plain ints for convenience."""
    if isinstance(obj, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(obj, (int, str)):
        return Scalar(_frac(obj))
    if isinstance(obj, dict):
        extra = set(obj) - {"re", "im", "re_sqrt2", "im_sqrt2"}
        if extra:
            raise ValueError(f"unknown scalar coordinate keys: {sorted(extra)}")
        return Scalar(
            _frac(obj.get("re", 0)),
            _frac(obj.get("im", 0)),
            _frac(obj.get("re_sqrt2", 0)),
            _frac(obj.get("im_sqrt2", 0)),
        )
    raise TypeError(f"cannot interpret {obj!r} as a scalar")
