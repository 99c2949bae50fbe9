"""Exact coefficient rings.

A ring object mediates all coefficient arithmetic for Term supports.  The
default is the rationals; integers and prime fields are available behind
the same interface.  Elements are stored normalized so that equality of
values implies equality of representations:

* Rationals: Python int when the value is integral, fractions.Fraction in
  lowest terms otherwise.  Mixed int/Fraction arithmetic stays exact.
* Integers: Python int.
* IntegersMod(p): int in range(p).

Rings with ``native=True`` guarantee that +, * and ``== 0`` on raw stored
values agree with ring arithmetic, which lets the term kernel skip method
dispatch on the hot path.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotAUnit


def _normalize_rational(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return value
    return value


class Ring:
    """Interface shared by all coefficient rings."""

    name = "ring"
    native = False

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero()

    def eq(self, a, b):
        return a == b

    def is_unit(self, a):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def coerce(self, value):
        """Normalize an int/Fraction/str into a stored element."""
        raise NotImplementedError

    def format(self, a) -> str:
        """Canonical text form; must be re-parseable by coerce."""
        return str(a)

    def __repr__(self):
        return self.name


class RationalField(Ring):
    name = "QQ"
    native = True

    def add(self, a, b):
        return _normalize_rational(a + b)

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return _normalize_rational(a * b)

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def invert(self, a):
        if a == 0:
            raise NotAUnit("0 is not invertible")
        return _normalize_rational(Fraction(1, 1) / a)

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return _normalize_rational(value)
        if isinstance(value, str):
            return _normalize_rational(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def format(self, a) -> str:
        return str(a)


class IntegerRing(Ring):
    name = "ZZ"
    native = True

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def invert(self, a):
        if a not in (1, -1):
            raise NotAUnit(f"{a} is not a unit in ZZ")
        return a

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        if isinstance(value, str):
            frac = Fraction(value)
            if frac.denominator != 1:
                raise ValueError(f"{value!r} is not an integer")
            return int(frac)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")


class IntegersMod(Ring):
    """Prime field Z/p.  Elements are ints in range(p)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("modulus must be at least 2")
        self.p = p
        self.name = f"Z/{p}"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        from math import gcd

        return gcd(a, self.p) == 1

    def invert(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit mod {self.p}")
        return pow(a, -1, self.p)

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.mul(value.numerator % self.p, self.invert(value.denominator % self.p))
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.p == self.p

    def __hash__(self):
        return hash(("IntegersMod", self.p))


QQ = RationalField()
ZZ = IntegerRing()
