"""Exact coefficient rings.

Every computation in this package is exact: F2 and Fp use modular ints,
Q uses arbitrary-precision rationals, Z uses Python's big ints.  No
floating point anywhere.

Ring elements are plain Python objects (int or Fraction); a Ring instance
supplies the arithmetic.  Rings are stateless singletons, safe to share
across processes.
"""

from __future__ import annotations

from fractions import Fraction


class NotAField(Exception):
    """Raised when a field-only operation is asked to run over Z."""


class Ring:
    """Base class; concrete rings override the arithmetic hooks."""

    tag = "?"
    is_field = False
    characteristic = 0

    zero = 0
    one = 1

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, k: int):
        """Image of the integer k under the unique map Z -> R."""
        raise NotImplementedError

    def __repr__(self):
        return f"Ring({self.tag})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


class _F2(Ring):
    tag = "f2"
    is_field = True
    characteristic = 2

    def add(self, a, b):
        return (a + b) & 1

    sub = add

    def mul(self, a, b):
        return a & b

    def neg(self, a):
        return a

    def is_unit(self, a):
        return a == 1

    def inv(self, a):
        if a != 1:
            raise ZeroDivisionError("0 is not invertible in F2")
        return 1

    def from_int(self, k):
        return k & 1


class _Fp(Ring):
    is_field = True

    def __init__(self, p: int):
        if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"fp ring needs an odd prime, got {p}")
        self.p = p
        self.tag = f"fp:{p}"
        self.characteristic = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, k):
        return k % self.p


class _Q(Ring):
    """Rationals.  Elements are ints where possible, Fractions otherwise."""

    tag = "q"
    is_field = True

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 1 or a == -1:
            return a
        return Fraction(1, 1) / a

    def from_int(self, k):
        return k


class _Z(Ring):
    tag = "z"
    is_field = False

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a == 1 or a == -1

    def inv(self, a):
        if a == 1 or a == -1:
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def from_int(self, k):
        return k


F2 = _F2()
QQ = _Q()
ZZ = _Z()

_FP_CACHE: dict[int, _Fp] = {}


def GF(p: int) -> Ring:
    """The prime field with p elements (p = 2 gives F2)."""
    if p == 2:
        return F2
    if p not in _FP_CACHE:
        _FP_CACHE[p] = _Fp(p)
    return _FP_CACHE[p]


def ring_from_spec(spec: str) -> Ring:
    """Parse a ring name as used by the CLI: f2, fp:<p>, q, z."""
    s = spec.strip().lower()
    if s == "f2":
        return F2
    if s == "q":
        return QQ
    if s == "z":
        return ZZ
    if s.startswith("fp:"):
        return GF(int(s[3:]))
    raise ValueError(f"unknown ring spec {spec!r} (want f2, fp:<p>, q or z)")
