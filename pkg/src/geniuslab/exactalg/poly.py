"""Sparse multivariate (Laurent) polynomials over the rationals.

A :class:`Ring` fixes an ordered tuple of variable names and the subset of
them allowed to carry negative exponents. Monomials are packed into a single
Python integer (one signed 16-bit digit per variable) so that monomial
multiplication is integer addition; this keeps the inner loops of series
arithmetic cheap.

Canonical text form sorts terms by graded lexicographic order (total degree
descending, then exponents compared in ring-variable order), e.g.
``1/2*d1^2 + d2``.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from gmpy2 import mpq

from .rational import Q, Rational, fmt, is_scalar

_W = 16
_BASE = 1 << _W
_HALF = 1 << (_W - 1)
_MASK = _BASE - 1


class ExponentError(ValueError):
    """Negative exponent on a variable that is not Laurent-flagged."""


class RingMismatch(ValueError):
    pass


class Ring:
    """Polynomial ring context: ordered variable names plus Laurent flags."""

    __slots__ = ("names", "laurent", "_index", "_unit", "_gens")

    def __init__(self, names: Iterable[str], laurent: Iterable[str] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        laurent = frozenset(laurent)
        unknown = laurent - set(names)
        if unknown:
            raise ValueError(f"laurent flags for unknown variables {sorted(unknown)}")
        self.names = names
        self.laurent = laurent
        self._index = {n: i for i, n in enumerate(names)}
        self._unit = tuple(1 << (_W * i) for i in range(len(names)))
        self._gens = tuple(MultiPoly(self, {u: mpq(1)}) for u in self._unit)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.laurent == other.laurent
        )

    def __hash__(self):
        return hash((self.names, self.laurent))

    def __repr__(self):
        lau = f", laurent={sorted(self.laurent)}" if self.laurent else ""
        return f"Ring({list(self.names)}{lau})"

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def gens(self) -> tuple["MultiPoly", ...]:
        return self._gens

    def __getitem__(self, name: str) -> "MultiPoly":
        try:
            return self._gens[self._index[name]]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self!r}") from None

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return MultiPoly(self, {0: mpq(1)})

    def const(self, c) -> "MultiPoly":
        c = Q(c)
        return MultiPoly(self, {0: c} if c else {})

    def coerce(self, value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            if value.ring != self:
                raise RingMismatch(f"{value.ring!r} is not {self!r}")
            return value
        return self.const(value)

    def pack(self, exps) -> int:
        """Pack an exponent dict ``{name: e}`` or a full exponent tuple."""
        if isinstance(exps, Mapping):
            items = [(self._index[n], e) for n, e in exps.items()]
        else:
            exps = tuple(exps)
            if len(exps) != len(self.names):
                raise ValueError(f"expected {len(self.names)} exponents, got {len(exps)}")
            items = list(enumerate(exps))
        key = 0
        for i, e in items:
            e = int(e)
            if e < 0 and self.names[i] not in self.laurent:
                raise ExponentError(
                    f"negative exponent {e} on non-laurent variable {self.names[i]}"
                )
            if not -_HALF <= e < _HALF:
                raise OverflowError(f"exponent {e} out of range")
            key += e * self._unit[i]
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in self.names:
            d = key & _MASK
            if d >= _HALF:
                d -= _BASE
            out.append(d)
            key = (key - d) >> _W
        if key:
            raise OverflowError("exponent overflow in packed monomial")
        return tuple(out)

    def monomial(self, exps, coeff=1) -> "MultiPoly":
        c = Q(coeff)
        return MultiPoly(self, {self.pack(exps): c} if c else {})

    def from_terms(self, terms: Iterable) -> "MultiPoly":
        """Build from ``(exponents, coeff)`` pairs; duplicate monomials add up."""
        out: dict[int, Rational] = {}
        for exps, c in terms:
            k = self.pack(exps)
            out[k] = out.get(k, 0) + Q(c)
        return MultiPoly(self, {k: v for k, v in out.items() if v})

    def parse(self, text: str) -> "MultiPoly":
        """Inverse of ``str(poly)`` for the canonical serialization."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return self.zero()
        if s[0] not in "+-":
            s = "+" + s
        terms = []
        for chunk in re.split(r"(?<!\^)(?=[+-])", s):
            if not chunk:
                continue
            sign, body = chunk[0], chunk[1:]
            coeff = Q(1)
            exps: dict[str, int] = {}
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Q(factor)
                    continue
                name, _, e = factor.partition("^")
                if name not in self._index:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                exps[name] = exps.get(name, 0) + (int(e) if e else 1)
            terms.append((exps, -coeff if sign == "-" else coeff))
        return self.from_terms(terms)


class MultiPoly:
    """Immutable sparse polynomial in a :class:`Ring`."""

    __slots__ = ("ring", "_t")

    def __init__(self, ring: Ring, terms: dict):
        # ``terms`` maps packed monomial -> nonzero mpq; callers guarantee this.
        self.ring = ring
        self._t = terms

    # -- inspection -------------------------------------------------------

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant(self) -> Rational:
        return self._t.get(0, mpq(0))

    def raw(self) -> dict:
        """Packed-monomial view; read only."""
        return self._t

    def terms(self) -> list[tuple[tuple[int, ...], Rational]]:
        """``(exponents, coeff)`` pairs in canonical (graded lex, descending) order."""
        un = self.ring.unpack
        items = [(un(k), c) for k, c in self._t.items()]
        items.sort(key=lambda it: (-sum(it[0]), tuple(-e for e in it[0])))
        return items

    def coeff(self, monomial) -> Rational:
        """Coefficient of an exact monomial (dict, exponent tuple or monomial poly)."""
        if isinstance(monomial, MultiPoly):
            if len(monomial._t) != 1:
                raise ValueError("expected a single monomial")
            (key,) = monomial._t
        else:
            key = self.ring.pack(monomial)
        return self._t.get(key, mpq(0))

    def degree(self, name: str) -> int:
        """Largest exponent of ``name`` (-inf for the zero polynomial)."""
        i = self.ring.index(name)
        if not self._t:
            return float("-inf")
        un = self.ring.unpack
        return max(un(k)[i] for k in self._t)

    def min_degree(self, name: str) -> int:
        i = self.ring.index(name)
        un = self.ring.unpack
        return min(un(k)[i] for k in self._t) if self._t else 0

    def total_degree(self) -> int:
        if not self._t:
            return float("-inf")
        return max(sum(self.ring.unpack(k)) for k in self._t)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.ring.index(n) for n in names]
        if not self._t:
            return float("-inf")
        un = self.ring.unpack
        return max(sum(un(k)[i] for i in idx) for k in self._t)

    def variables(self) -> tuple[str, ...]:
        used = set()
        un = self.ring.unpack
        for k in self._t:
            used.update(i for i, e in enumerate(un(k)) if e)
        return tuple(self.ring.names[i] for i in sorted(used))

    def collect(self, name: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_e coeff_e * name^e``; returns ``{e: coeff_e}``."""
        i = self.ring.index(name)
        unit = self.ring._unit[i]
        un = self.ring.unpack
        out: dict[int, dict] = {}
        for k, c in self._t.items():
            e = un(k)[i]
            out.setdefault(e, {})[k - e * unit] = c
        return {e: MultiPoly(self.ring, t) for e, t in sorted(out.items())}

    def coeff_in(self, name: str, e: int) -> "MultiPoly":
        return self.collect(name).get(e, self.ring.zero())

    # -- arithmetic -------------------------------------------------------

    def _other(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if is_scalar(other):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return MultiPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {k: -c for k, c in self._t.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        c = Q(c)
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        return MultiPoly(self.ring, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return self.ring.zero()
        if len(a) == 1:
            ((ka, ca),) = a.items()
            if ka == 0:
                return MultiPoly(self.ring, {k: c * ca for k, c in b.items()})
            return MultiPoly(self.ring, {k + ka: c * ca for k, c in b.items()})
        res: dict[int, Rational] = {}
        get = res.get
        bitems = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bitems:
                k = ka + kb
                v = get(k)
                res[k] = ca * cb if v is None else v + ca * cb
        return MultiPoly(self.ring, {k: v for k, v in res.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            return self.scale(1 / Q(other))
        other = self._other(other)
        if other is NotImplemented:
            return other
        if len(other._t) == 1:
            ((k, c),) = other._t.items()
            return self.mul_monomial(tuple(-e for e in self.ring.unpack(k))).scale(1 / c)
        raise ValueError("division only by scalars or monomials")

    def mul_monomial(self, exps, coeff=1) -> "MultiPoly":
        """Multiply by a monomial; checks the Laurent constraint on the result."""
        key = self._pack_signed(exps)
        c0 = Q(coeff)
        if not c0:
            return self.ring.zero()
        res = MultiPoly(self.ring, {k + key: c * c0 for k, c in self._t.items()})
        res._check_laurent()
        return res

    def _pack_signed(self, exps) -> int:
        r = self.ring
        if isinstance(exps, Mapping):
            items = [(r.index(n), e) for n, e in exps.items()]
        else:
            items = list(enumerate(exps))
        return sum(int(e) * r._unit[i] for i, e in items)

    def _check_laurent(self):
        r = self.ring
        for k in self._t:
            for name, e in zip(r.names, r.unpack(k)):
                if e < 0 and name not in r.laurent:
                    raise ExponentError(
                        f"negative exponent {e} on non-laurent variable {name}"
                    )

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("negative powers only of monomials")
            ((k, c),) = self._t.items()
            inv = MultiPoly(self.ring, {-k: 1 / c})
            inv._check_laurent()
            return inv ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._t == other._t
        if is_scalar(other):
            c = Q(other)
            return self._t == ({0: c} if c else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    # -- substitution -----------------------------------------------------

    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials or scalars for variables (simultaneously)."""
        r = self.ring
        targets = {r.index(n): r.coerce(v) for n, v in mapping.items()}
        if not targets:
            return self
        units = r._unit
        powcache: dict[tuple[int, int], MultiPoly] = {}

        def power(i, e):
            key = (i, e)
            p = powcache.get(key)
            if p is None:
                p = targets[i] ** e
                powcache[key] = p
            return p

        # group terms by the exponents of substituted variables
        groups: dict[tuple, dict] = {}
        for k, c in self._t.items():
            exps = r.unpack(k)
            sub = tuple((i, exps[i]) for i in targets if exps[i])
            rest = k - sum(e * units[i] for i, e in sub)
            groups.setdefault(sub, {})[rest] = c
        out = r.zero()
        for sub, t in groups.items():
            piece = MultiPoly(r, t)
            for i, e in sub:
                piece = piece * power(i, e)
            out = out + piece
        return out

    def evaluate(self, mapping: Mapping[str, object]):
        """Substitute scalars; returns a Rational when no variable remains."""
        res = self.subs(mapping)
        if res.is_constant:
            return res.constant()
        return res

    def change_ring(self, ring: Ring) -> "MultiPoly":
        """Re-express in another ring containing every variable used here."""
        if ring == self.ring:
            return self
        src = self.ring
        pos = [ring.index(n) if n in ring else None for n in src.names]
        out = {}
        for k, c in self._t.items():
            key = 0
            for i, e in enumerate(src.unpack(k)):
                if e:
                    if pos[i] is None:
                        raise RingMismatch(f"{src.names[i]} not in {ring!r}")
                    key += e * ring._unit[pos[i]]
            out[key] = c
        res = MultiPoly(ring, out)
        res._check_laurent()
        return res

    # -- text -------------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        names = self.ring.names
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{fmt(a)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


def poly_arith(a: MultiPoly, b, op: str) -> MultiPoly:
    """Named entry point for ``add``/``sub``/``mul``/``scale``."""
    if op == "add":
        return a + a._other(b)
    if op == "sub":
        return a - a._other(b)
    if op == "mul":
        return a * a._other(b)
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def poly_coeff_extract(p: MultiPoly, monomial) -> Rational:
    return p.coeff(monomial)
