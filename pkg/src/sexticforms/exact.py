"""Exact scalar and sparse multivariate polynomial arithmetic.

Scalars are arbitrary-precision rationals (gmpy2.mpq when available, with a
fractions.Fraction fallback) together with Gaussian rationals a + b*i.  A
Gaussian rational whose imaginary part is zero is always demoted to a plain
rational, so the purely real fast path never pays for complex bookkeeping.

Polynomials are stored sparsely as a map from exponent vectors to nonzero
rational coefficients.  The variable universe is an explicit ordered tuple of
names; exponent vectors are tuples of machine ints aligned with it.
"""

from __future__ import annotations

from functools import reduce
from math import comb, factorial

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

QQ0 = Rational(0)
QQ1 = Rational(1)


def rat(num, den=1):
    """Exact rational num/den."""
    return Rational(num, den)


def parse_rational(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Rational(int(num), int(den))
    return Rational(int(text))


def format_rational(q):
    """Canonical 'p' or 'p/q' string (q > 0, reduced)."""
    return str(q)


def falling(n, k):
    """n(n-1)...(n-k+1) with falling(n, 0) = 1."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


class GaussianRational:
    """Gaussian rational with a genuinely nonzero imaginary part.

    Construct through :func:`gaussian`, which returns a plain rational when
    the imaginary part vanishes; arithmetic results are demoted the same way.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Rational(re)
        self.im = Rational(im)

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, complex):
            return complex(self) == other
        # other real: equal only if our imaginary part were zero, which the
        # gaussian() normalization rules out.
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re + other.re, self.im + other.im)
        return gaussian(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return gaussian(self.re * other, self.im * other)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        return gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return gaussian(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return float(self.re) + 1j * float(self.im)


def gaussian(re, im=0):
    """Gaussian rational re + im*i, demoted to a rational when im == 0."""
    if not im:
        return Rational(re)
    return GaussianRational(re, im)


I_UNIT = gaussian(0, 1)


def gauss_parts(x):
    """(re, im) of a rational or GaussianRational."""
    if isinstance(x, GaussianRational):
        return x.re, x.im
    return Rational(x), QQ0


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


class MultiPoly:
    """Sparse exact polynomial over an ordered variable universe.

    terms maps exponent tuples (one int per variable, all >= 0) to nonzero
    rational coefficients.  Instances are treated as immutable; operations
    return fresh polynomials.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for exps, coef in (terms or {}).items():
            if len(exps) != n:
                raise ValueError(f"exponent arity {len(exps)} != {n} variables")
            if coef:
                clean[tuple(exps)] = Rational(coef)
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def const(cls, vars, value):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): Rational(value)})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls(vars, {tuple(exps): QQ1})

    @classmethod
    def monomial(cls, vars, coef, **powers):
        vars = tuple(vars)
        exps = [0] * len(vars)
        for name, e in powers.items():
            exps[vars.index(name)] = e
        return cls(vars, {tuple(exps): Rational(coef)})

    # -- queries ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if not self.terms:
            return other == 0
        exps, coef = next(iter(self.terms.items()))
        return len(self.terms) == 1 and not any(exps) and coef == other

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, names):
        """Max total exponent over the given variable names."""
        idx = [self.vars.index(v) for v in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=0)

    def min_degree_in(self, name):
        i = self.vars.index(name)
        return min((e[i] for e in self.terms), default=None)

    def homogeneous_degree_in(self, names):
        """Common total exponent in the given variables, or None if mixed."""
        idx = [self.vars.index(v) for v in names]
        degs = {sum(e[i] for i in idx) for e in self.terms}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def coefficient(self, **powers):
        exps = [0] * len(self.vars)
        for name, e in powers.items():
            exps[self.vars.index(name)] = e
        return self.terms.get(tuple(exps), QQ0)

    def evaluate(self, values):
        """Plug exact rational values in for every variable."""
        out = QQ0
        vals = [Rational(values[v]) for v in self.vars]
        for exps, coef in self.terms.items():
            t = coef
            for v, e in zip(vals, exps):
                if e:
                    t *= v ** e
            out += t
        return out

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("variable universe mismatch")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            c = terms.get(exps, QQ0) + coef
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        out = MultiPoly.__new__(MultiPoly)
        out.vars, out.terms = self.vars, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        acc = {}
        get = acc.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                eo = tuple(map(sum, zip(e1, e2)))
                c = get(eo)
                acc[eo] = c1 * c2 if c is None else c + c1 * c2
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: c for e, c in acc.items() if c}
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar):
        scalar = Rational(scalar)
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {} if not scalar else {e: c * scalar for e, c in self.terms.items()}
        return out

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- calculus and substitution -------------------------------------

    def diff(self, name, order=1):
        """Iterated exact partial derivative."""
        i = self.vars.index(name)
        terms = self.terms
        for _ in range(order):
            nxt = {}
            for exps, coef in terms.items():
                e = exps[i]
                if e:
                    lowered = exps[:i] + (e - 1,) + exps[i + 1:]
                    c = nxt.get(lowered, QQ0) + coef * e
                    if c:
                        nxt[lowered] = c
                    else:
                        nxt.pop(lowered, None)
            terms = nxt
        out = MultiPoly.__new__(MultiPoly)
        out.vars, out.terms = self.vars, terms
        return out

    def subs(self, assignment):
        """Compose with the given variable -> MultiPoly assignment.

        Every value must share one target universe; variables of self without
        an assignment are mapped to themselves and must exist in the target.
        Evaluated by a Horner-style recursion over the substituted variables
        so shared monomial prefixes are multiplied once.
        """
        if not self.terms:
            tgt = next(iter(assignment.values())).vars if assignment else self.vars
            return MultiPoly.zero(tgt)
        target = None
        for val in assignment.values():
            if target is None:
                target = val.vars
            elif val.vars != target:
                raise ValueError("assignment values live in different universes")
        if target is None:
            target = self.vars
        images = []
        for v in self.vars:
            if v in assignment:
                images.append(assignment[v])
            else:
                images.append(MultiPoly.variable(target, v))
        one = MultiPoly.const(target, 1)

        def rec(items, i):
            # items: list of (exps, coef) sharing exponents below index i
            if i == len(self.vars):
                return MultiPoly.const(target, sum(c for _, c in items))
            groups = {}
            for exps, coef in items:
                groups.setdefault(exps[i], []).append((exps, coef))
            img = images[i]
            out = None
            prev_e = None
            # Horner over descending exponent of variable i
            for e in sorted(groups, reverse=True):
                part = rec(groups[e], i + 1)
                if out is None:
                    out = part
                else:
                    for _ in range(prev_e - e):
                        out = out * img
                    out = out + part
                prev_e = e
            for _ in range(prev_e):
                out = out * img
            return out

        return rec(list(self.terms.items()), 0)

    # -- serialization --------------------------------------------------

    def dumps(self):
        """Canonical text form: terms sorted by exponent vector."""
        lines = ["multipoly v1", "vars " + " ".join(self.vars)]
        for exps in sorted(self.terms):
            coef = self.terms[exps]
            lines.append(f"term {format_rational(coef)} " + " ".join(map(str, exps)))
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "multipoly v1":
            raise ValueError("bad multipoly header")
        if not lines[1].startswith("vars "):
            raise ValueError("missing vars line")
        vars = tuple(lines[1].split()[1:])
        terms = {}
        for ln in lines[2:]:
            if ln == "end":
                break
            _, coef, *exps = ln.split()
            terms[tuple(map(int, exps))] = parse_rational(coef)
        return cls(vars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.vars, exps) if e
            )
            c = self.terms[exps]
            bits.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(bits)


def poly_arith(p, q, op):
    """add/sub/mul dispatch used by the CLI layer."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def prod(polys, one=None):
    return reduce(lambda a, b: a * b, polys, one) if one is not None else reduce(lambda a, b: a * b, polys)


__all__ = [
    "Rational", "rat", "parse_rational", "format_rational", "falling",
    "GaussianRational", "gaussian", "gauss_parts", "conj", "I_UNIT",
    "MultiPoly", "poly_arith", "prod", "comb", "factorial",
]
