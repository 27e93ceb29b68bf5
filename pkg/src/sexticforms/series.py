"""Sparse triple-graded Laurent series kernel for degree-2 Fourier expansions.

A series is a finite collection of monomials X^(p4/4) Y^(q4/4) u^(u2/2) with
exact coefficients, stored as

    terms: {packed (p4, q4): (lo, coeffs)}

where the packed key is (p4 << 20) | q4 and (lo, coeffs) is a dense unit-step
coefficient list over u2 = lo .. lo + len(coeffs) - 1.  Coefficients are
rationals (gmpy2.mpq) or GaussianRational.

Truncation: trunc = T means the stored coefficients are complete (exact) for
every monomial with p4 + q4 <= T.  Sums carry min(T1, T2); products carry
min(T1 + ord2, T2 + ord1), where ord is the smallest stored total degree (or
T + 1 for a series with no stored terms, a safe lower bound on the true
order).  This is exactly the set of product coefficients all of whose
contributing splits lie in certified ranges, so completeness claims never
overstate what is known.
"""

from __future__ import annotations

from bisect import bisect_right

from .exact import Rational, QQ0, QQ1, gaussian, gauss_parts, format_rational, parse_rational

KEY_SHIFT = 20
KEY_MASK = (1 << KEY_SHIFT) - 1


def pack(p4, q4):
    return (p4 << KEY_SHIFT) | q4


def unpack(k):
    return k >> KEY_SHIFT, k & KEY_MASK


def key_degree(k):
    return (k >> KEY_SHIFT) + (k & KEY_MASK)


def _normalize_upoly(lo, coeffs):
    a, b = 0, len(coeffs)
    while a < b and not coeffs[a]:
        a += 1
    while b > a and not coeffs[b - 1]:
        b -= 1
    if a == b:
        return None
    return (lo + a, coeffs[a:b])


class FourierSeries:
    __slots__ = ("terms", "trunc", "_items")

    def __init__(self, terms, trunc):
        self.terms = terms
        self.trunc = trunc
        self._items = None

    # -- basics ---------------------------------------------------------

    @classmethod
    def zero(cls, trunc):
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc):
        return cls({pack(0, 0): (0, [QQ1])}, trunc)

    @classmethod
    def from_coeffs(cls, entries, trunc):
        """entries: iterable of (p4, q4, u2, coeff); coefficients are summed."""
        acc = {}
        for p4, q4, u2, c in entries:
            acc.setdefault(pack(p4, q4), {}).setdefault(u2, []).append(c)
        terms = {}
        for k, d in acc.items():
            lo = min(d)
            hi = max(d)
            coeffs = [QQ0] * (hi - lo + 1)
            for u2, cs in d.items():
                tot = cs[0]
                for c in cs[1:]:
                    tot = tot + c
                coeffs[u2 - lo] = tot
            up = _normalize_upoly(lo, coeffs)
            if up is not None:
                terms[k] = up
        return cls(terms, trunc)

    def __bool__(self):
        return bool(self.terms)

    def ord(self):
        """Smallest stored total degree, or None when no terms are stored."""
        if not self.terms:
            return None
        return min(key_degree(k) for k in self.terms)

    def ord_bound(self):
        """Safe lower bound for the true leading total degree."""
        o = self.ord()
        return self.trunc + 1 if o is None else o

    def sorted_items(self):
        """[(deg, key, lo, nz)] sorted by total degree; nz = [(idx, coeff)]."""
        if self._items is None:
            items = []
            for k, (lo, coeffs) in self.terms.items():
                nz = [(i, c) for i, c in enumerate(coeffs) if c]
                items.append((key_degree(k), k, lo, nz))
            items.sort(key=lambda it: (it[0], it[1]))
            self._items = items
        return self._items

    def coefficient(self, p4, q4, u2):
        up = self.terms.get(pack(p4, q4))
        if up is None:
            return QQ0
        lo, coeffs = up
        if not (lo <= u2 < lo + len(coeffs)):
            return QQ0
        return coeffs[u2 - lo]

    def upoly(self, p4, q4):
        """{u2: coeff} at one (X, Y) monomial."""
        up = self.terms.get(pack(p4, q4))
        if up is None:
            return {}
        lo, coeffs = up
        return {lo + i: c for i, c in enumerate(coeffs) if c}

    def support(self):
        return sorted(unpack(k) for k in self.terms)

    def leading_keys(self):
        """All stored keys of minimal total degree."""
        o = self.ord()
        if o is None:
            return []
        return sorted(k for k in self.terms if key_degree(k) == o)

    def truncated(self, trunc):
        """Drop terms beyond the given (smaller) completeness bound."""
        if trunc >= self.trunc:
            if trunc > self.trunc:
                raise ValueError("cannot extend truncation without recomputation")
            return self
        terms = {k: v for k, v in self.terms.items() if key_degree(k) <= trunc}
        return FourierSeries(terms, trunc)

    def __repr__(self):
        o = self.ord()
        return f"FourierSeries({len(self.terms)} keys, ord={o}, trunc={self.trunc})"

    # -- linear operations -----------------------------------------------

    def scale(self, scalar):
        if not scalar:
            return FourierSeries({}, self.trunc)
        terms = {}
        for k, (lo, coeffs) in self.terms.items():
            terms[k] = (lo, [c * scalar for c in coeffs])
        return FourierSeries(terms, self.trunc)

    def __neg__(self):
        return self.scale(-1)

    def add(self, other, scalar=1):
        trunc = min(self.trunc, other.trunc)
        terms = {k: v for k, v in self.terms.items() if key_degree(k) <= trunc}
        for k, (lo2, c2) in other.terms.items():
            if key_degree(k) > trunc:
                continue
            cur = terms.get(k)
            if cur is None:
                up = _normalize_upoly(lo2, [c * scalar for c in c2]) if scalar != 1 \
                    else _normalize_upoly(lo2, list(c2))
                if up is not None:
                    terms[k] = up
                continue
            lo1, c1 = cur
            lo = min(lo1, lo2)
            hi = max(lo1 + len(c1), lo2 + len(c2))
            coeffs = [QQ0] * (hi - lo)
            for i, c in enumerate(c1):
                coeffs[lo1 - lo + i] = c
            for i, c in enumerate(c2):
                j = lo2 - lo + i
                coeffs[j] = coeffs[j] + c * scalar
            up = _normalize_upoly(lo, coeffs)
            if up is None:
                del terms[k]
            else:
                terms[k] = up
        return FourierSeries(terms, trunc)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other, -1)

    # -- multiplication ----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def pow(self, n):
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return FourierSeries.one(self.trunc)
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else series_mul(out, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        return out

    __pow__ = pow

    # -- structure queries -------------------------------------------------

    def assert_integral(self):
        """Exponent integrality: X, Y exponents integral, u exponents integral."""
        for k, (lo, coeffs) in self.terms.items():
            p4, q4 = unpack(k)
            if p4 % 4 or q4 % 4:
                raise AssertionError(f"fractional X/Y exponent at ({p4},{q4})")
            for i, c in enumerate(coeffs):
                if c and (lo + i) % 2:
                    raise AssertionError(f"fractional u exponent at ({p4},{q4},{lo+i})")

    def u_symmetry_sign(self):
        """Global sign s with coeff(p,q,-u2) = s*coeff(p,q,u2), or None."""
        sign = None
        for lo, coeffs in self.terms.values():
            n = len(coeffs)
            for i, c in enumerate(coeffs):
                u2 = lo + i
                m = -u2 - lo
                cm = coeffs[m] if 0 <= m < n else QQ0
                if not c and not cm:
                    continue
                if c == cm:
                    s = 1
                elif c == -cm:
                    s = -1
                else:
                    return None
                if u2 == 0:
                    continue
                if sign is None:
                    sign = s
                elif sign != s:
                    return None
        return sign

    def swap_xy(self):
        """The series with X and Y exchanged (tau1 <-> tau2)."""
        terms = {}
        for k, v in self.terms.items():
            p4, q4 = unpack(k)
            terms[pack(q4, p4)] = v
        return FourierSeries(terms, self.trunc)

    def h1_order(self):
        """Minimal multiplicity of u = 1 across the coefficient Laurent polys.

        Computed in the variable s = u^(1/2) (exponent u2), which has the
        same vanishing order at s = 1 as the polynomial in u.
        """
        if not self.terms:
            raise ValueError("h1_order of a series with no stored terms")
        best = None
        for lo, coeffs in self.terms.values():
            m = _u1_multiplicity(coeffs)
            if best is None or m < best:
                best = m
                if best == 0:
                    break
        return best

    def restrict_h4(self):
        """Evaluate u = i exactly; {(p4, q4): rational-or-Gaussian} result.

        Requires integer u-exponents (even u2), so u^(u2/2) = i^(u2/2).
        """
        out = {}
        for k, (lo, coeffs) in self.terms.items():
            re = QQ0
            im = QQ0
            for idx, c in enumerate(coeffs):
                if not c:
                    continue
                u2 = lo + idx
                if u2 % 2:
                    raise ValueError("restriction needs integer u-exponents")
                r, m = gauss_parts(c)
                e = (u2 // 2) % 4
                if e == 0:
                    re, im = re + r, im + m
                elif e == 1:
                    re, im = re - m, im + r
                elif e == 2:
                    re, im = re - r, im - m
                else:
                    re, im = re + m, im - r
            v = gaussian(re, im)
            if v:
                out[unpack(k)] = v
        return out

    # -- serialization ------------------------------------------------------

    def dump_lines(self):
        """Exact 'p4 q4 u2 re im' lines, keys sorted by (degree, p4, u2)."""
        lines = []
        for k in sorted(self.terms, key=lambda k: (key_degree(k), k)):
            p4, q4 = unpack(k)
            lo, coeffs = self.terms[k]
            for i, c in enumerate(coeffs):
                if not c:
                    continue
                re, im = gauss_parts(c)
                lines.append(f"{p4} {q4} {lo + i} {format_rational(re)} {format_rational(im)}")
        return lines

    @classmethod
    def parse_lines(cls, lines, trunc):
        entries = []
        for lineno, ln in enumerate(lines, 1):
            parts = ln.split()
            if len(parts) != 5:
                raise ValueError(f"malformed coefficient line {lineno}: {ln!r}")
            try:
                p4, q4, u2 = int(parts[0]), int(parts[1]), int(parts[2])
                re, im = parse_rational(parts[3]), parse_rational(parts[4])
            except ValueError as exc:
                raise ValueError(f"malformed coefficient line {lineno}: {ln!r}") from exc
            entries.append((p4, q4, u2, gaussian(re, im)))
        return cls.from_coeffs(entries, trunc)


def _u1_multiplicity(coeffs):
    """Vanishing order at 1 of the polynomial with the given coefficients."""
    work = list(coeffs)
    mult = 0
    while True:
        total = QQ0
        for c in work:
            total = total + c
        if total:
            return mult
        # synthetic division by (s - 1): new[i] = sum_{j > i} old[j]
        n = len(work)
        if n <= 1:
            # zero polynomial only arises from an all-zero row, which the
            # normalized storage rules out
            return mult
        acc = QQ0
        new = [QQ0] * (n - 1)
        for i in range(n - 1, 0, -1):
            acc = acc + work[i]
            new[i - 1] = acc
        work = new
        mult += 1


def mul_trunc(s, t):
    return min(s.trunc + t.ord_bound(), t.trunc + s.ord_bound())


def mul_into(acc, s, t, scalar=1, tmax=None):
    """acc[key][u2] += scalar * (s*t) coefficients, through degree tmax."""
    if not s.terms or not t.terms or not scalar:
        return
    si = s.sorted_items()
    ti = t.sorted_items()
    if len(si) > len(ti):
        si, ti = ti, si
    tdegs = [it[0] for it in ti]
    tmin = tdegs[0]
    for deg1, k1, lo1, nz1 in si:
        rem = tmax - deg1
        if rem < tmin:
            break
        hi = bisect_right(tdegs, rem)
        if scalar != 1:
            nz1 = [(i, c * scalar) for i, c in nz1]
        for idx in range(hi):
            _, k2, lo2, nz2 = ti[idx]
            ko = k1 + k2
            tgt = acc.get(ko)
            if tgt is None:
                tgt = acc[ko] = {}
            base = lo1 + lo2
            get = tgt.get
            for i1, a in nz1:
                off = base + i1
                for i2, b in nz2:
                    u = off + i2
                    v = get(u)
                    tgt[u] = a * b if v is None else v + a * b


def finish_acc(acc, trunc):
    """Convert a {key: {u2: coeff}} accumulator into a FourierSeries."""
    terms = {}
    for k, d in acc.items():
        if key_degree(k) > trunc:
            continue
        nz = {u: c for u, c in d.items() if c}
        if not nz:
            continue
        lo = min(nz)
        hi = max(nz)
        coeffs = [QQ0] * (hi - lo + 1)
        for u, c in nz.items():
            coeffs[u - lo] = c
        terms[k] = (lo, coeffs)
    return FourierSeries(terms, trunc)


def series_mul(s, t, scalar=1):
    tout = mul_trunc(s, t)
    acc = {}
    mul_into(acc, s, t, scalar, tout)
    return finish_acc(acc, tout)


def series_linear(parts, trunc=None):
    """Exact sum of (scalar, series) pairs."""
    out = None
    for scalar, ser in parts:
        out = ser.scale(scalar) if out is None else out.add(ser, scalar)
    if trunc is not None and out is not None:
        out = out.truncated(min(trunc, out.trunc))
    return out


class NonDivisibleError(ArithmeticError):
    """A graded division failed; carries the offending (p4, q4) monomial."""

    def __init__(self, p4, q4, detail=""):
        self.p4, self.q4 = p4, q4
        super().__init__(f"series not divisible at X^{p4}/4 Y^{q4}/4 {detail}".replace("/4", "/4 "))


def _upoly_divexact(lo_r, cr, lo_d, cd):
    """Exact Laurent division cr / cd in the u2 variable; None if inexact."""
    nr, nd = len(cr), len(cd)
    if nr < nd:
        return None
    lead = cd[-1]
    work = list(cr)
    q = [QQ0] * (nr - nd + 1)
    for i in range(nr - nd, -1, -1):
        c = work[i + nd - 1]
        if not c:
            continue
        f = c / lead
        q[i] = f
        for j in range(nd):
            work[i + j] = work[i + j] - f * cd[j]
    if any(work[:nd - 1] if nd > 1 else []):
        return None
    if any(work[nd - 1:] ):
        return None
    return (lo_r - lo_d, q)


def series_divexact(s, d):
    """Exact graded quotient s / d, solved total degree by total degree.

    d must have a unique stored key of minimal total degree whose u-Laurent
    coefficient divides exactly at every step (for chi5 that structure is the
    (1,1) coefficient u - 1/u).  Raises NonDivisibleError identifying the
    first bad monomial.
    """
    lead = d.leading_keys()
    if len(lead) != 1:
        raise ValueError("divisor needs a unique leading (X, Y) monomial")
    L = lead[0]
    dlo, dco = d.terms[L]
    orddeg = key_degree(L)
    if not s.terms:
        return FourierSeries({}, s.trunc - orddeg)
    ords = s.ord()
    tq = min(s.trunc, d.trunc + ords) - orddeg
    rem = {k: (lo, list(c)) for k, (lo, c) in s.terms.items()}
    ditems = [(key_degree(k), k, lo, [(i, c) for i, c in enumerate(c) if c])
              for k, (lo, c) in d.terms.items() if k != L]
    qterms = {}
    pl, ql = unpack(L)
    # Subtractions only feed keys of strictly larger total degree (the
    # divisor's non-leading keys exceed orddeg), so level-by-level processing
    # sees every remainder contribution exactly once.
    for level in range(ords, tq + orddeg + 1):
        for rk in sorted(k for k in rem if key_degree(k) == level):
            _div_step(rem, qterms, rk, dlo, dco, ditems, pl, ql, tq + orddeg)
    out = {}
    for k, (lo, coeffs) in qterms.items():
        up = _normalize_upoly(lo, coeffs)
        if up is not None:
            out[k] = up
    return FourierSeries(out, tq)


def _div_step(rem, qterms, rk, dlo, dco, ditems, pl, ql, degcap):
    cur = rem.get(rk)
    if cur is None:
        return
    up = _normalize_upoly(*cur)
    if up is None:
        del rem[rk]
        return
    p4, q4 = unpack(rk)
    if p4 < pl or q4 < ql:
        raise NonDivisibleError(p4, q4, "(below the divisor's leading monomial)")
    qk = pack(p4 - pl, q4 - ql)
    quo = _upoly_divexact(up[0], up[1], dlo, dco)
    if quo is None:
        raise NonDivisibleError(p4, q4, "(u-polynomial remainder)")
    qterms[qk] = quo
    del rem[rk]
    # subtract quo * (d minus its leading term) from the remainder
    qlo, qco = quo
    qnz = [(i, c) for i, c in enumerate(qco) if c]
    if not qnz:
        return
    for _, dk, lo2, nz2 in ditems:
        ko = qk + dk
        if key_degree(ko) > degcap:
            continue
        base = qlo + lo2
        lo_needed = base + qnz[0][0]
        hi_needed = base + qnz[-1][0] + nz2[-1][0]
        cur = rem.get(ko)
        if cur is None:
            tlo = lo_needed
            tco = [QQ0] * (hi_needed - lo_needed + 1)
            rem[ko] = (tlo, tco)
        else:
            tlo, tco = cur
            if lo_needed < tlo or hi_needed >= tlo + len(tco):
                nlo = min(tlo, lo_needed)
                nhi = max(tlo + len(tco) - 1, hi_needed)
                nco = [QQ0] * (nhi - nlo + 1)
                for i, c in enumerate(tco):
                    nco[tlo - nlo + i] = c
                tlo, tco = nlo, nco
                rem[ko] = (tlo, tco)
        for i1, a in qnz:
            off = base + i1 - tlo
            for i2, b in nz2:
                tco[off + i2] = tco[off + i2] - a * b

def _upoly_divmod(lo_r, cr, lo_d, cd):
    """Laurent division with remainder discarded: the synthetic quotient."""
    nr, nd = len(cr), len(cd)
    if nr < nd:
        return None
    lead = cd[-1]
    work = list(cr)
    q = [QQ0] * (nr - nd + 1)
    for i in range(nr - nd, -1, -1):
        c = work[i + nd - 1]
        if not c:
            continue
        f = c / lead
        q[i] = f
        for j in range(nd):
            work[i + j] = work[i + j] - f * cd[j]
    return _normalize_upoly(lo_r - lo_d, q)


def series_div_remainder(s, d, schedule=None):
    """(q, r) with s = q*d + r, q the graded synthetic quotient.

    Unlike series_divexact this never raises: mass that cannot be divided
    (keys below the divisor's leading monomial, or u-polynomial remainders)
    is left for r = s - q*d, computed exactly.  With a fixed schedule
    (ord, tq) both q and r are linear in s, so remainders of separately
    divided series combine linearly; callers dividing several series whose
    sum is the object of interest must pass one common schedule.
    """
    lead = d.leading_keys()
    if len(lead) != 1:
        raise ValueError("divisor needs a unique leading (X, Y) monomial")
    L = lead[0]
    dlo, dco = d.terms[L]
    orddeg = key_degree(L)
    if not s.terms:
        t = schedule[1] if schedule else s.trunc - orddeg
        return FourierSeries({}, t), FourierSeries({}, min(s.trunc, t + orddeg))
    if schedule is not None:
        ords, tq = schedule
    else:
        ords = s.ord()
        tq = min(s.trunc, d.trunc + ords) - orddeg
    rem = {k: (lo, list(c)) for k, (lo, c) in s.terms.items()}
    ditems = [(key_degree(k), k, lo, [(i, c) for i, c in enumerate(c) if c])
              for k, (lo, c) in d.terms.items() if k != L]
    qterms = {}
    pl, ql = unpack(L)
    for level in range(ords, tq + orddeg + 1):
        for rk in sorted(k for k in rem if key_degree(k) == level):
            cur = rem.get(rk)
            if cur is None:
                continue
            up = _normalize_upoly(*cur)
            if up is None:
                del rem[rk]
                continue
            p4, q4 = unpack(rk)
            if p4 < pl or q4 < ql:
                continue
            quo = _upoly_divmod(up[0], up[1], dlo, dco)
            if quo is None:
                continue
            qk = pack(p4 - pl, q4 - ql)
            qterms[qk] = quo
            del rem[rk]
            # subtract quo * d fully (leading included) from the running mass;
            # any u-poly remainder at rk reappears via r = s - q*d below
            rem[rk] = (0, [])
            qlo, qco = quo
            qnz = [(i, c) for i, c in enumerate(qco) if c]
            for _, dk, lo2, nz2 in ditems:
                ko = qk + dk
                if key_degree(ko) > tq + orddeg:
                    continue
                base = qlo + lo2
                lo_needed = base + qnz[0][0]
                hi_needed = base + qnz[-1][0] + nz2[-1][0]
                cur2 = rem.get(ko)
                if cur2 is None or not cur2[1]:
                    tlo = lo_needed
                    tco = [QQ0] * (hi_needed - lo_needed + 1)
                    rem[ko] = (tlo, tco)
                else:
                    tlo, tco = cur2
                    if lo_needed < tlo or hi_needed >= tlo + len(tco):
                        nlo = min(tlo, lo_needed)
                        nhi = max(tlo + len(tco) - 1, hi_needed)
                        nco = [QQ0] * (nhi - nlo + 1)
                        for i, c in enumerate(tco):
                            nco[tlo - nlo + i] = c
                        tlo, tco = nlo, nco
                        rem[ko] = (tlo, tco)
                for i1, a in qnz:
                    off = base + i1 - tlo
                    for i2, b in nz2:
                        tco[off + i2] = tco[off + i2] - a * b
    qout = {}
    for k, (lo, coeffs) in qterms.items():
        up = _normalize_upoly(lo, coeffs)
        if up is not None:
            qout[k] = up
    q = FourierSeries(qout, tq)
    r = s.add(series_mul(q, d), -1)
    rtrunc = min(r.trunc, tq + orddeg)
    r = FourierSeries({k: v for k, v in r.terms.items()
                       if key_degree(k) <= rtrunc}, rtrunc)
    return q, r


def series_equal_report(lhs, rhs):
    """(depth, first_mismatch): compare through the common certified range."""
    depth = min(lhs.trunc, rhs.trunc)
    keys = {k for k in lhs.terms if key_degree(k) <= depth}
    keys |= {k for k in rhs.terms if key_degree(k) <= depth}
    for k in sorted(keys, key=lambda k: (key_degree(k), k)):
        a = lhs.terms.get(k)
        b = rhs.terms.get(k)
        da = dict(enumerate(a[1], a[0])) if a else {}
        db = dict(enumerate(b[1], b[0])) if b else {}
        for u2 in sorted(set(da) | set(db)):
            ca = da.get(u2, QQ0)
            cb = db.get(u2, QQ0)
            if ca != cb:
                p4, q4 = unpack(k)
                return depth, (p4, q4, u2, ca, cb)
    return depth, None


__all__ = [
    "FourierSeries", "pack", "unpack", "key_degree", "mul_trunc", "mul_into",
    "finish_acc", "series_mul", "series_linear", "series_divexact",
    "series_equal_report", "NonDivisibleError",
]
