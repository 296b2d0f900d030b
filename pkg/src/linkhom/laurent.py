"""Two-variable integer Laurent polynomials.

The variable q carries the quantum grading and t marks the homological
grading, so a Poincare polynomial lives here as well as a plain Jones
polynomial (t-degree zero everywhere).  Exponents may be negative;
coefficients are ints.
"""

from __future__ import annotations


class LaurentPoly:
    """Immutable Laurent polynomial in q and t with integer coefficients.

    Internally a map (q_exponent, t_exponent) -> nonzero int.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for key, v in coeffs.items():
                if v:
                    clean[key] = clean.get(key, 0) + v
                    if not clean[key]:
                        del clean[key]
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def monomial(cls, coeff: int = 1, q: int = 0, t: int = 0) -> "LaurentPoly":
        return cls({(q, t): coeff})

    @classmethod
    def from_q_coeffs(cls, pairs) -> "LaurentPoly":
        """Build a one-variable polynomial from (q_exponent, coeff) pairs."""
        return cls({(qe, 0): c for qe, c in pairs})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: v * other for k, v in self.coeffs.items()})
        out = {}
        for (q1, t1), c1 in self.coeffs.items():
            for (q2, t2), c2 in other.coeffs.items():
                key = (q1 + q2, t1 + t2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, dq: int = 0, dt: int = 0) -> "LaurentPoly":
        """Multiply by the monomial q^dq * t^dt."""
        return LaurentPoly({(q + dq, t + dt): c for (q, t), c in self.coeffs.items()})

    def substitute_t(self, t_value: int) -> "LaurentPoly":
        """Collapse the t-grading by evaluating t at +1 or -1."""
        if t_value not in (1, -1):
            raise ValueError("only unit evaluations keep Laurent exponents exact")
        out = {}
        for (q, t), c in self.coeffs.items():
            out[(q, 0)] = out.get((q, 0), 0) + c * _int_pow(t_value, t)
        return LaurentPoly(out)

    def q_degrees(self):
        return sorted({q for (q, _t) in self.coeffs})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        out = LaurentPoly.monomial(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (q, t) in sorted(self.coeffs, key=lambda k: (k[1], k[0])):
            c = self.coeffs[(q, t)]
            body = ""
            if q:
                body += "q" if q == 1 else f"q^{q}"
            if t:
                body += ("*" if body else "") + ("t" if t == 1 else f"t^{t}")
            if not body:
                term = str(c)
            elif c == 1:
                term = body
            elif c == -1:
                term = "-" + body
            else:
                term = f"{c}*{body}"
            parts.append(term)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def _int_pow(base: int, exp: int):
    """base**exp for possibly negative exp when base is +-1."""
    if exp >= 0:
        return base**exp
    if base in (1, -1):
        return base ** (-exp % 2) if base == -1 else 1
    raise ValueError("negative exponent of a non-unit")


def laurent_eval_skein(p: LaurentPoly) -> LaurentPoly:
    """Substitute q := -t^(1/2).

    Half-integer t-exponents are represented on a doubled lattice: the
    returned polynomial's t-exponent field holds 2 * (true exponent), so
    q + q^-1 maps to -(t^(1/2) + t^(-1/2)) stored as exponents +1, -1.
    Any t-content of the input is carried along on the same doubled
    lattice.
    """
    out = {}
    for (q, t), c in p.coeffs.items():
        sign = -1 if q & 1 else 1
        key = (0, q + 2 * t)
        out[key] = out.get(key, 0) + sign * c
    return LaurentPoly(out)
