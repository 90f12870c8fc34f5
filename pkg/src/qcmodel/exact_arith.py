"""Exact arithmetic over Q and the univariate rings Q[x], Q[x^-1], Q[x, x^-1].

Rationals are ``fractions.Fraction`` (ints are accepted wherever a rational
is expected).  All three polynomial windows are Euclidean domains, which is
what the Smith normal form and every presented-module operation rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from qcmodel.errors import UnsupportedRing, WindowRequired
from qcmodel.linalg import Mat, complement_coordinates, q

Rational = Fraction

WINDOWS = ("nonneg", "nonpos", "full")


@dataclass(frozen=True)
class RingSpec:
    """Q, or one of the exponent windows of Q[x, x^-1]."""

    kind: str
    var: str | None = None
    window: str | None = None

    def __post_init__(self):
        if self.kind == "field":
            if self.var is not None or self.window is not None:
                raise ValueError("the field has no variable")
        elif self.kind == "laurent":
            if not self.var or self.window not in WINDOWS:
                raise ValueError(f"bad Laurent ring spec {self.var!r}/{self.window!r}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @property
    def is_field(self) -> bool:
        return self.kind == "field"

    def allows(self, e: int) -> bool:
        if self.kind == "field":
            return e == 0
        if self.window == "nonneg":
            return e >= 0
        if self.window == "nonpos":
            return e <= 0
        return True

    def contains_window(self, other: "RingSpec") -> bool:
        """Whether other's exponent set is a subset of self's."""
        if other.is_field:
            return True
        if self.is_field:
            return False
        return self.window == "full" or self.window == other.window

    def __str__(self) -> str:
        if self.is_field:
            return "field"
        name = {"nonneg": "poly", "nonpos": "ipoly", "full": "laurent"}[self.window]
        return f"{name}({self.var})"

    # element helpers
    def zero(self) -> "RingElement":
        return RingElement(self, ())

    def one(self) -> "RingElement":
        return RingElement(self, ((0, 1),))

    def const(self, c) -> "RingElement":
        c = q(c)
        return RingElement(self, ((0, c),) if c else ())

    def monomial(self, e: int, c=1) -> "RingElement":
        c = q(c)
        if not self.allows(e):
            raise ValueError(f"exponent {e} not in {self}")
        return RingElement(self, ((e, c),) if c else ())

    def element(self, terms: dict[int, object]) -> "RingElement":
        return RingElement.from_dict(self, terms)


FIELD = RingSpec("field")


def poly(var: str = "x") -> RingSpec:
    return RingSpec("laurent", var, "nonneg")


def ipoly(var: str = "x") -> RingSpec:
    return RingSpec("laurent", var, "nonpos")


def laurent(var: str = "x") -> RingSpec:
    return RingSpec("laurent", var, "full")


def _window_sum(a: RingSpec, b: RingSpec) -> RingSpec | None:
    """The ring generated by two windows over the same variable."""
    if a.is_field:
        return b
    if b.is_field:
        return a
    if a.var != b.var:
        return None
    if a.window == b.window:
        return a
    return laurent(a.var)


class RingElement:
    """An element of a RingSpec: a finite map exponent -> nonzero rational."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Iterable[tuple[int, object]]):
        clean = []
        for e, c in sorted(terms):
            c = q(c)
            if c:
                if not ring.allows(e):
                    raise ValueError(f"exponent {e} not allowed in {ring}")
                clean.append((e, c))
        self.ring = ring
        self.terms = tuple(clean)
        self._hash = None

    @classmethod
    def from_dict(cls, ring: RingSpec, d: dict[int, object]) -> "RingElement":
        return cls(ring, d.items())

    def as_dict(self) -> dict[int, object]:
        return dict(self.terms)

    def __repr__(self) -> str:
        return f"RingElement({self.ring}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        var = self.ring.var or "x"
        parts = []
        for e, c in self.terms:
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            other = q(other)
            return self.terms == (((0, other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine RingElement with {type(other).__name__}")

    def __add__(self, other) -> "RingElement":
        o = self._coerce(other)
        d = dict(self.terms)
        for e, c in o.terms:
            d[e] = d.get(e, 0) + c
        return RingElement(self.ring, d.items())

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, ((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "RingElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RingElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RingElement":
        o = self._coerce(other)
        if not self.terms or not o.terms:
            return self.ring.zero()
        d: dict[int, object] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return RingElement(self.ring, d.items())

    __rmul__ = __mul__

    # -- Euclidean structure ------------------------------------------------

    @property
    def min_exp(self) -> int:
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        return self.terms[-1][0]

    def norm(self) -> int:
        """Euclidean norm; raises on zero."""
        if not self.terms:
            raise ValueError("norm of zero")
        if self.ring.is_field:
            return 0
        if self.ring.window == "nonneg":
            return self.max_exp
        if self.ring.window == "nonpos":
            return -self.min_exp
        return self.max_exp - self.min_exp

    def is_unit(self) -> bool:
        return bool(self.terms) and self.norm() == 0

    def inverse(self) -> "RingElement":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit in {self.ring}")
        (e, c), = self.terms
        return RingElement(self.ring, ((-e, Fraction(1) / c),))

    def normal_unit(self) -> "RingElement":
        """The unit u making u*self the normal representative of its associate class."""
        if not self.terms:
            return self.ring.one()
        if self.ring.is_field:
            return self.inverse()
        w = self.ring.window
        if w == "nonneg":
            return self.ring.const(Fraction(1) / self.terms[-1][1])
        if w == "nonpos":
            return self.ring.const(Fraction(1) / self.terms[0][1])
        # full window: shift to nonzero constant term, make monic
        e0 = self.min_exp
        return RingElement(self.ring, ((-e0, Fraction(1) / self.terms[-1][1]),))

    def normalized(self) -> "RingElement":
        return self * self.normal_unit()

    def __divmod__(self, other) -> tuple["RingElement", "RingElement"]:
        b = self._coerce(other)
        if not b.terms:
            raise ZeroDivisionError("division by zero")
        R = self.ring
        if not self.terms:
            return R.zero(), R.zero()
        if R.is_field:
            return self * b.inverse(), R.zero()
        if R.window == "nonneg":
            qd, rd = _polydiv(self.as_dict(), b.as_dict())
            return R.element(qd), R.element(rd)
        if R.window == "nonpos":
            a = {-e: c for e, c in self.terms}
            bb = {-e: c for e, c in b.terms}
            qd, rd = _polydiv(a, bb)
            return R.element({-e: c for e, c in qd.items()}), R.element({-e: c for e, c in rd.items()})
        # full window: strip monomial factors, divide as polynomials
        sa, sb = self.min_exp, b.min_exp
        a0 = {e - sa: c for e, c in self.terms}
        b0 = {e - sb: c for e, c in b.terms}
        qd, rd = _polydiv(a0, b0)
        quo = R.element({e + sa - sb: c for e, c in qd.items()})
        rem = R.element({e + sa: c for e, c in rd.items()})
        return quo, rem

    def __floordiv__(self, other) -> "RingElement":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RingElement":
        return divmod(self, other)[1]

    def divides(self, other: "RingElement") -> bool:
        if not self.terms:
            return not other.terms
        return not (other % self).terms

    def exact_div(self, other) -> "RingElement":
        qq, r = divmod(self, other)
        if r.terms:
            raise ArithmeticError(f"{other} does not divide {self}")
        return qq

    def substitute_sign(self, sign: int, target: RingSpec) -> "RingElement":
        return RingElement(target, ((sign * e, c) for e, c in self.terms))


def _polydiv(a: dict[int, object], b: dict[int, object]) -> tuple[dict, dict]:
    """Division with remainder of polynomials given as exponent->coefficient maps."""
    a = {e: c for e, c in a.items() if c}
    db = max(b)
    lb = b[db]
    quo: dict[int, object] = {}
    while a:
        da = max(a)
        if da < db:
            break
        c = q(Fraction(a[da]) / lb)
        shift = da - db
        quo[shift] = c
        for e, cb in b.items():
            k = e + shift
            v = a.get(k, 0) - c * cb
            if v:
                a[k] = q(v)
            else:
                a.pop(k, None)
    return quo, a


def gcd(a: RingElement, b: RingElement) -> RingElement:
    while b:
        a, b = b, a % b
    return a.normalized() if a else a


def quotient_basis_exponents(g: RingElement) -> list[int]:
    """Exponents of a Q-basis of R/(g) for a nonzero g (monomial basis)."""
    R = g.ring
    n = g.norm()
    if R.is_field:
        return []
    if R.window == "nonpos":
        return [-i for i in range(n)]
    return list(range(n))


# -- ring maps ----------------------------------------------------------------

CERTIFICATES = ("identity", "inclusion", "swap", "field-unit")


@dataclass(frozen=True)
class RingMap:
    """A whitelisted localization-type ring homomorphism."""

    source: RingSpec
    target: RingSpec
    certificate: str

    def __post_init__(self):
        s, t, c = self.source, self.target, self.certificate
        if c not in CERTIFICATES:
            raise ValueError(f"unknown certificate {c!r}")
        if c == "identity":
            ok = s == t
        elif c == "field-unit":
            ok = s.is_field and not t.is_field
        elif c == "inclusion":
            ok = (not s.is_field and not t.is_field and s != t and t.contains_window(s))
        else:
            flipped = {"nonneg": "nonpos", "nonpos": "nonneg", "full": "full"}
            ok = (
                not s.is_field
                and not t.is_field
                and t.contains_window(RingSpec("laurent", t.var, flipped[s.window]))
            )
        if not ok:
            raise ValueError(f"certificate {c!r} does not give a ring map {s} -> {t}")

    @classmethod
    def canonical(cls, source: RingSpec, target: RingSpec) -> "RingMap":
        if source == target:
            return cls(source, target, "identity")
        if source.is_field:
            return cls(source, target, "field-unit")
        return cls(source, target, "inclusion")

    @classmethod
    def identity(cls, ring: RingSpec) -> "RingMap":
        return cls(ring, ring, "identity")

    @property
    def sign(self) -> int:
        return -1 if self.certificate == "swap" else 1

    def __call__(self, a: RingElement | int | Fraction) -> RingElement:
        if not isinstance(a, RingElement):
            a = self.source.const(a)
        if a.ring != self.source:
            raise TypeError(f"element of {a.ring} fed to map from {self.source}")
        return a.substitute_sign(self.sign, self.target)

    def after(self, first: "RingMap") -> "RingMap":
        """The composite self o first."""
        if first.target != self.source:
            raise TypeError("ring maps are not composable")
        s, t = first.source, self.target
        if s == t and first.sign * self.sign == 1:
            return RingMap(s, t, "identity")
        if s.is_field:
            return RingMap(s, t, "field-unit")
        if first.sign * self.sign == -1:
            return RingMap(s, t, "swap")
        return RingMap(s, t, "inclusion")

    def apply_matrix(self, m: "RingMatrix") -> "RingMatrix":
        return RingMatrix(self.target, [[self(x) for x in r] for r in m.rows], m.nrows, m.ncols)

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} [{self.certificate}]"


# -- matrices -------------------------------------------------------------------


class RingMatrix:
    """Immutable matrix of RingElements over a single ring."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring: RingSpec, rows: Iterable[Iterable], nrows: int | None = None, ncols: int | None = None):
        data = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, RingElement):
                    if x.ring != ring:
                        raise TypeError(f"entry over {x.ring} in matrix over {ring}")
                    row.append(x)
                else:
                    row.append(ring.const(x))
            data.append(tuple(row))
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError(f"ragged matrix for shape {nrows}x{ncols}")
        self.ring = ring
        self.rows = tuple(data)
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def zeros(cls, ring: RingSpec, m: int, n: int) -> "RingMatrix":
        z = ring.zero()
        return cls(ring, [[z] * n for _ in range(m)], m, n)

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "RingMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, ring: RingSpec, cols: Sequence[Sequence], nrows: int) -> "RingMatrix":
        return cls(ring, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))

    @classmethod
    def from_mat(cls, ring: RingSpec, m: Mat) -> "RingMatrix":
        return cls(ring, [[ring.const(x) for x in r] for r in m.rows], m.nrows, m.ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __repr__(self) -> str:
        return f"RingMatrix({self.ring}, {[[str(x) for x in r] for r in self.rows]})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ring, self.shape, self.rows))

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple[RingElement, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[RingElement, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "RingMatrix":
        return RingMatrix(self.ring, [list(self.col(j)) for j in range(self.ncols)], self.ncols, self.nrows)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ring != other.ring:
            raise TypeError("ring mismatch in product")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.ring.zero()
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                s = z
                for k, a in enumerate(r):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return RingMatrix(self.ring, out, self.nrows, other.ncols)

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in sum")
        return RingMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], *self.shape)

    def __neg__(self) -> "RingMatrix":
        return RingMatrix(self.ring, [[-a for a in r] for r in self.rows], *self.shape)

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def scale(self, c) -> "RingMatrix":
        return RingMatrix(self.ring, [[a * c for a in r] for r in self.rows], *self.shape)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RingMatrix":
        return RingMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def det(self) -> RingElement:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        R = self.ring
        if n == 0:
            return R.one()
        a = [list(r) for r in self.rows]
        sign = 1
        prev = R.one()
        for k in range(n - 1):
            if not a[k][k]:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return R.zero()
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
            prev = a[k][k]
        return a[n - 1][n - 1] * sign


def hstack_rm(ring: RingSpec, mats: Sequence[RingMatrix], nrows: int) -> RingMatrix:
    rows = [[x for m in mats for x in m.rows[i]] for i in range(nrows)]
    return RingMatrix(ring, rows, nrows, sum(m.ncols for m in mats))


def vstack_rm(ring: RingSpec, mats: Sequence[RingMatrix], ncols: int) -> RingMatrix:
    rows = [list(r) for m in mats for r in m.rows]
    return RingMatrix(ring, rows, sum(m.nrows for m in mats), ncols)


def block_diag_rm(ring: RingSpec, mats: Sequence[RingMatrix]) -> RingMatrix:
    n = sum(m.ncols for m in mats)
    z = ring.zero()
    rows = []
    c0 = 0
    for m in mats:
        for r in m.rows:
            rows.append([z] * c0 + list(r) + [z] * (n - c0 - m.ncols))
        c0 += m.ncols
    return RingMatrix(ring, rows, sum(m.nrows for m in mats), n)


def kron_rm(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return RingMatrix(a.ring, rows, a.nrows * b.nrows, a.ncols * b.ncols)


# -- Smith normal form ------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """U @ A @ V == D with D diagonal and d1 | d2 | ...; inverses are kept for reuse."""

    U: RingMatrix
    D: RingMatrix
    V: RingMatrix
    U_inv: RingMatrix
    V_inv: RingMatrix

    @property
    def diagonal(self) -> list[RingElement]:
        return [self.D[i, i] for i in range(min(self.D.nrows, self.D.ncols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _check_euclidean(ring: RingSpec) -> None:
    if not (ring.is_field or (ring.kind == "laurent" and ring.window in WINDOWS)):
        raise UnsupportedRing(f"{ring} is not a supported Euclidean ring")


def snf(A: RingMatrix) -> SNFResult:
    """Smith normal form with minimal-norm pivots, ties broken row-major."""
    R = A.ring
    _check_euclidean(R)
    m, n = A.shape
    a = [list(r) for r in A.rows]
    U = [[R.one() if i == j else R.zero() for j in range(m)] for i in range(m)]
    Ui = [[R.one() if i == j else R.zero() for j in range(m)] for i in range(m)]
    V = [[R.one() if i == j else R.zero() for j in range(n)] for i in range(n)]
    Vi = [[R.one() if i == j else R.zero() for j in range(n)] for i in range(n)]

    def row_add(i: int, k: int, c: RingElement) -> None:
        # row_i += c * row_k
        if not c:
            return
        a[i] = [x + c * y for x, y in zip(a[i], a[k])]
        U[i] = [x + c * y for x, y in zip(U[i], U[k])]
        for r in Ui:
            r[k] = r[k] - r[i] * c

    def row_swap(i: int, k: int) -> None:
        if i == k:
            return
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]
        for r in Ui:
            r[i], r[k] = r[k], r[i]

    def row_scale(i: int, u: RingElement) -> None:
        a[i] = [x * u for x in a[i]]
        U[i] = [x * u for x in U[i]]
        ui = u.inverse()
        for r in Ui:
            r[i] = r[i] * ui

    def col_add(j: int, k: int, c: RingElement) -> None:
        # col_j += c * col_k
        if not c:
            return
        for r in a:
            r[j] = r[j] + c * r[k]
        for r in V:
            r[j] = r[j] + c * r[k]
        Vi[k] = [x - c * y for x, y in zip(Vi[k], Vi[j])]

    def col_swap(j: int, k: int) -> None:
        if j == k:
            return
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x:
                    nx = x.norm()
                    if best is None or nx < best[0]:
                        best = (nx, i, j)
        if best is None:
            break
        _, bi, bj = best
        row_swap(t, bi)
        col_swap(t, bj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    qq, _ = divmod(a[i][t], p)
                    row_add(i, t, -qq)
            for j in range(t + 1, n):
                if a[t][j]:
                    qq, _ = divmod(a[t][j], p)
                    col_add(j, t, -qq)
            # any remainder left in row/column t: move the smallest into the pivot
            cand = None
            for i in range(t + 1, m):
                if a[i][t]:
                    nx = a[i][t].norm()
                    if cand is None or nx < cand[0]:
                        cand = (nx, "r", i)
            for j in range(t + 1, n):
                if a[t][j]:
                    nx = a[t][j].norm()
                    if cand is None or nx < cand[0]:
                        cand = (nx, "c", j)
            if cand is not None:
                if cand[1] == "r":
                    row_swap(t, cand[2])
                else:
                    col_swap(t, cand[2])
                dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] and not p.divides(a[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, R.one())
        u = a[t][t].normal_unit()
        if u != R.one():
            row_scale(t, u)
        t += 1

    return SNFResult(
        RingMatrix(R, U, m, m),
        RingMatrix(R, a, m, n),
        RingMatrix(R, V, n, n),
        RingMatrix(R, Ui, m, m),
        RingMatrix(R, Vi, n, n),
    )


def solve_linear(A: RingMatrix, b: RingMatrix) -> RingMatrix | None:
    """Some x with A @ x == b (b a column or a block of columns), or None."""
    if b.nrows != A.nrows:
        raise ValueError("right-hand side has the wrong number of rows")
    R = A.ring
    if b.ring != R:
        raise TypeError("ring mismatch")
    res = snf(A)
    c = res.U @ b
    m, n = A.shape
    diag = res.diagonal
    y = [[R.zero()] * b.ncols for _ in range(n)]
    for i in range(m):
        d = diag[i] if i < len(diag) else R.zero()
        for j in range(b.ncols):
            ci = c[i, j]
            if d:
                qq, r = divmod(ci, d)
                if r:
                    return None
                y[i][j] = qq
            elif ci:
                return None
    return res.V @ RingMatrix(R, y, n, b.ncols)


def syzygies(A: RingMatrix) -> RingMatrix:
    """Columns form a basis of the free module {v : A @ v == 0}."""
    res = snf(A)
    r = res.rank
    n = A.ncols
    return res.V.submatrix(range(n), range(r, n))


# -- finitely presented modules -----------------------------------------------------


@dataclass(frozen=True)
class FPModule:
    """R^g modulo the column span of a g x r relation matrix, optionally graded."""

    ring: RingSpec
    ngens: int
    relations: RingMatrix
    degrees: tuple[int, ...] | None = None
    rel_degrees: tuple[int | None, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        rel = self.relations
        if rel.ring != self.ring:
            raise TypeError("relation matrix over the wrong ring")
        if rel.nrows != self.ngens:
            raise ValueError(f"relation matrix has {rel.nrows} rows for {self.ngens} generators")
        if self.degrees is not None:
            if len(self.degrees) != self.ngens:
                raise ValueError("one degree per generator required")
            object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
            object.__setattr__(self, "rel_degrees", tuple(_column_degree(rel.col(j), self.degrees) for j in range(rel.ncols)))

    @classmethod
    def free(cls, ring: RingSpec, n: int, degrees: Sequence[int] | None = None) -> "FPModule":
        return cls(ring, n, RingMatrix.zeros(ring, n, 0), tuple(degrees) if degrees is not None else None)

    @classmethod
    def cyclic(cls, ring: RingSpec, d: RingElement, degree: int | None = None) -> "FPModule":
        return cls(ring, 1, RingMatrix(ring, [[d]], 1, 1), (degree,) if degree is not None else None)

    @property
    def graded(self) -> bool:
        return self.degrees is not None or self.ring.is_field

    def grading(self) -> tuple[int, ...]:
        if self.degrees is not None:
            return self.degrees
        if self.ring.is_field:
            return (0,) * self.ngens
        raise WindowRequired("module carries no grading")

    def relation_degrees(self) -> tuple[int | None, ...]:
        if self.degrees is not None:
            return self.rel_degrees
        return tuple(None if all(not x for x in self.relations.col(j)) else 0 for j in range(self.relations.ncols))

    def structure(self) -> tuple[list[RingElement], int]:
        """Non-unit invariant factors and free rank."""
        if self.relations.ncols == 0:
            return [], self.ngens
        res = snf(self.relations)
        diag = res.diagonal
        tors = [d for d in diag if d and not d.is_unit()]
        return tors, self.ngens - res.rank

    def is_zero(self) -> bool:
        tors, free = self.structure()
        return not tors and free == 0

    def is_free(self) -> bool:
        return not self.structure()[0]

    def free_rank(self) -> int:
        return self.structure()[1]

    def contains(self, vecs: RingMatrix) -> bool:
        """Whether every column of vecs lies in the relation span (is zero in M)."""
        if vecs.ncols == 0:
            return True
        if all(not x for r in vecs.rows for x in r):
            return True
        if self.relations.ncols == 0:
            return False
        return solve_linear(self.relations, vecs) is not None

    def pruned(self) -> tuple["FPModule", RingMatrix, RingMatrix]:
        """Isomorphic diagonal presentation with unit factors removed.

        Returns (P, to_new, to_old): to_new maps old generator coordinates to
        P's, to_old maps P's coordinates back.
        """
        R = self.ring
        g = self.ngens
        if self.relations.ncols == 0:
            I = RingMatrix.identity(R, g)
            return FPModule(R, g, RingMatrix.zeros(R, g, 0)), I, I
        res = snf(self.relations)
        diag = res.diagonal + [R.zero()] * (g - len(res.diagonal))
        keep = [i for i in range(g) if not (diag[i] and diag[i].is_unit())]
        k = len(keep)
        rels = [[diag[i] if a == b else R.zero() for b in range(k) if diag[keep[b]]] for a, i in enumerate(keep)]
        ntors = sum(1 for i in keep if diag[i])
        relmat = RingMatrix(R, rels, k, ntors)
        to_new = res.U.submatrix(keep, range(g))
        to_old = res.U_inv.submatrix(range(g), keep)
        return FPModule(R, k, relmat), to_new, to_old

    def __str__(self) -> str:
        return f"FPModule({self.ring}, gens={self.ngens}, rels={self.relations.ncols})"


def _column_degree(col: Sequence[RingElement], degrees: Sequence[int]) -> int | None:
    deg = None
    for k, x in enumerate(col):
        for e, _ in x.terms:
            d = degrees[k] + e
            if deg is None:
                deg = d
            elif deg != d:
                raise ValueError("relation is not homogeneous for the given grading")
    return deg


@dataclass(frozen=True)
class PresentedMap:
    """A module map given by the images of source generators (columns)."""

    source: FPModule
    target: FPModule
    matrix: RingMatrix

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise TypeError("presented maps are between modules over the same ring")
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError("matrix shape does not match the generator counts")

    def is_well_defined(self) -> bool:
        return self.target.contains(self.matrix @ self.source.relations)

    def is_zero(self) -> bool:
        return self.target.contains(self.matrix)

    def is_surjective(self) -> bool:
        return fp_cokernel(self).is_zero()

    def is_injective(self) -> bool:
        return fp_kernel(self)[0].is_zero()

    def is_iso(self) -> bool:
        return self.is_surjective() and self.is_injective()


def base_change(M: FPModule, f: RingMap) -> FPModule:
    """M tensored up along f."""
    if f.source != M.ring:
        raise TypeError(f"ring map starts at {f.source}, module is over {M.ring}")
    degrees = M.degrees
    if degrees is not None and (f.sign != 1 or f.target.is_field):
        degrees = None
    return FPModule(f.target, M.ngens, f.apply_matrix(M.relations), degrees)


def fp_cokernel(phi: PresentedMap) -> FPModule:
    T = phi.target
    rel = hstack_rm(T.ring, [T.relations, phi.matrix], T.ngens)
    degrees = T.degrees
    if degrees is not None:
        try:
            return FPModule(T.ring, T.ngens, rel, degrees)
        except ValueError:
            degrees = None
    return FPModule(T.ring, T.ngens, rel, degrees)


def fp_kernel(phi: PresentedMap) -> tuple[FPModule, RingMatrix]:
    """Kernel presentation and its generators as source-coordinate columns."""
    S, T = phi.source, phi.target
    R = S.ring
    g = S.ngens
    big = hstack_rm(R, [phi.matrix, -T.relations], T.ngens)
    if big.ncols == 0:
        gens = RingMatrix.zeros(R, g, 0)
    else:
        syz = syzygies(big) if T.ngens else RingMatrix.identity(R, big.ncols)
        gens = syz.submatrix(range(g), range(syz.ncols))
    gens = _prune_columns(gens)
    s = gens.ncols
    rel_big = hstack_rm(R, [gens, -S.relations], g)
    if rel_big.ncols == 0 or s == 0:
        rels = RingMatrix.zeros(R, s, 0)
    else:
        syz = syzygies(rel_big) if g else RingMatrix.identity(R, rel_big.ncols)
        rels = syz.submatrix(range(s), range(syz.ncols))
    return FPModule(R, s, rels), gens


def _prune_columns(m: RingMatrix) -> RingMatrix:
    keep = [j for j in range(m.ncols) if any(m.col(j))]
    return m.submatrix(range(m.nrows), keep)


# -- graded pieces and Q-bases of hom spaces ----------------------------------------------


class GradedPiece:
    """The degree-e part of a graded module as a finite Q-vector space.

    ``basis`` lists (generator, exponent) pairs spanning the free part in
    degree e; ``proj`` maps free coordinates onto quotient coordinates and
    ``sect`` is a section of it.
    """

    __slots__ = ("module", "degree", "basis", "index", "proj", "sect", "dim")

    def __init__(self, M: FPModule, e: int):
        R = M.ring
        degs = M.grading()
        self.module = M
        self.degree = e
        self.basis = [(k, e - d) for k, d in enumerate(degs) if R.allows(e - d)]
        self.index = {b: i for i, b in enumerate(self.basis)}
        n = len(self.basis)
        cols = []
        rdegs = M.relation_degrees()
        for j in range(M.relations.ncols):
            dj = rdegs[j]
            if dj is None:
                continue
            t = e - dj
            if not R.allows(t):
                continue
            v = [0] * n
            for k in range(M.ngens):
                for s, c in M.relations[k, j].terms:
                    v[self.index[(k, s + t)]] += c
            cols.append(v)
        W = Mat.from_columns(cols, n)
        comp = complement_coordinates(W)
        self.dim = len(comp)
        self.sect = Mat.from_columns([[1 if i == c else 0 for i in range(n)] for c in comp], n)
        if W.ncols and n:
            from qcmodel.linalg import column_basis, hstack

            Wb = column_basis(W)
            B = hstack([Wb, self.sect])
            inv = B.inverse()
            self.proj = inv.submatrix(range(Wb.ncols, n), range(n))
        else:
            self.proj = Mat.identity(n) if n else Mat.zeros(0, 0)
            self.proj = self.sect.T if n else Mat.zeros(0, 0)

    def vector_to_column(self, v: Sequence) -> list[RingElement]:
        """Free coordinates -> a column of ring elements over the module's ring."""
        R = self.module.ring
        acc: list[dict[int, object]] = [dict() for _ in range(self.module.ngens)]
        for (k, s), c in zip(self.basis, v):
            if c:
                acc[k][s] = acc[k].get(s, 0) + c
        return [R.element(d) for d in acc]

    def column_to_vector(self, col: Sequence[RingElement]) -> list:
        v = [0] * len(self.basis)
        for k, x in enumerate(col):
            for s, c in x.terms:
                idx = self.index.get((k, s))
                if idx is None:
                    raise ValueError("element is not homogeneous of this degree")
                v[idx] += c
        return v


def piece_map(A: RingMatrix, rho: RingMap, src: GradedPiece, tgt: GradedPiece) -> Mat:
    """Matrix of the semilinear map with generator images A on degree pieces.

    A's column k is the image of source generator k in target generators;
    coefficients from the source ring are carried over by rho.
    """
    rows = [[0] * len(src.basis) for _ in range(len(tgt.basis))]
    sign = rho.sign
    for col, (k, s) in enumerate(src.basis):
        shift = sign * s
        for c in range(A.nrows):
            for t, coef in A[c, k].terms:
                idx = tgt.index.get((c, shift + t))
                if idx is None:
                    raise ValueError("map is not homogeneous of degree zero")
                rows[idx][col] += coef
    return Mat(rows, len(tgt.basis), len(src.basis))


def mult_map(a: RingElement, k_src: int, k_tgt: int, src: GradedPiece, tgt: GradedPiece) -> Mat:
    """Multiplication by a ring element from generator k_src's slot into k_tgt's slot."""
    rows = [[0] * len(src.basis) for _ in range(len(tgt.basis))]
    for col, (k, s) in enumerate(src.basis):
        if k != k_src:
            continue
        for t, coef in a.terms:
            idx = tgt.index.get((k_tgt, s + t))
            if idx is None:
                raise ValueError("product leaves the target degree")
            rows[idx][col] += coef
    return Mat(rows, len(tgt.basis), len(src.basis))


def hom_is_finite(M: FPModule, N: FPModule) -> bool:
    if M.ring.is_field:
        return True
    return M.free_rank() == 0 or N.free_rank() == 0


def fp_hom(M: FPModule, N: FPModule, window: tuple[int, int] | None = None) -> list[RingMatrix]:
    """A Q-basis of Hom_R(M, N) as generator-image matrices.

    Finite-dimensional hom spaces are returned in full.  Otherwise a degree
    window is required (and both modules must be graded); the basis then
    consists of homogeneous maps with degree in the window.
    """
    if M.ring != N.ring:
        raise TypeError("modules over different rings")
    _check_euclidean(M.ring)
    if M.ring.is_field:
        return _graded_hom(M, N, 0)
    if hom_is_finite(M, N):
        return _finite_hom(M, N)
    if window is None:
        raise WindowRequired("Hom space is infinite-dimensional over Q; supply a degree window")
    if M.degrees is None or N.degrees is None:
        raise WindowRequired("degree windows need graded presentations")
    out: list[RingMatrix] = []
    for d in range(window[0], window[1] + 1):
        out.extend(_graded_hom(M, N, d))
    return out


def _graded_hom(M: FPModule, N: FPModule, d: int) -> list[RingMatrix]:
    R = M.ring
    degM = M.grading()
    pieces: dict[int, GradedPiece] = {}

    def piece(e: int) -> GradedPiece:
        if e not in pieces:
            pieces[e] = GradedPiece(N, e)
        return pieces[e]

    offsets = []
    nvar = 0
    for a in range(M.ngens):
        offsets.append(nvar)
        nvar += piece(degM[a] + d).dim
    eqs: list[list] = []
    rdegs = M.relation_degrees()
    for j in range(M.relations.ncols):
        dj = rdegs[j]
        if dj is None:
            continue
        tp = piece(dj + d)
        block = [[0] * nvar for _ in range(tp.dim)]
        for a in range(M.ngens):
            rho = M.relations[a, j]
            if not rho:
                continue
            sp = piece(degM[a] + d)
            m = tp.proj @ _mult_within(rho, sp, tp) @ sp.sect
            for r in range(tp.dim):
                for c in range(sp.dim):
                    block[r][offsets[a] + c] += m[r, c]
        eqs.extend(block)
    sol = Mat(eqs, len(eqs), nvar).nullspace() if eqs else Mat.identity(nvar)
    out = []
    for s in range(sol.ncols):
        v = sol.col(s)
        cols = []
        for a in range(M.ngens):
            sp = piece(degM[a] + d)
            y = v[offsets[a] : offsets[a] + sp.dim]
            free = sp.sect @ Mat([[x] for x in y], sp.dim, 1)
            cols.append(sp.vector_to_column(free.col(0)))
        out.append(RingMatrix.from_columns(R, cols, N.ngens))
    return out


def _mult_within(a: RingElement, src: GradedPiece, tgt: GradedPiece) -> Mat:
    rows = [[0] * len(src.basis) for _ in range(len(tgt.basis))]
    for col, (k, s) in enumerate(src.basis):
        for t, coef in a.terms:
            idx = tgt.index.get((k, s + t))
            if idx is None:
                raise ValueError("product leaves the target degree")
            rows[idx][col] += coef
    return Mat(rows, len(tgt.basis), len(src.basis))


def _finite_hom(M: FPModule, N: FPModule) -> list[RingMatrix]:
    R = M.ring
    Mp, toNewM, _ = M.pruned()
    Np, _, toOldN = N.pruned()
    dM = [Mp.relations[i, i] if i < Mp.relations.ncols else R.zero() for i in range(Mp.ngens)]
    dN = [Np.relations[i, i] if i < Np.relations.ncols else R.zero() for i in range(Np.ngens)]
    out = []
    for k in range(Mp.ngens):
        a = dM[k]
        for l in range(Np.ngens):
            b = dN[l]
            if not b:
                if not a:
                    raise WindowRequired("Hom space is infinite-dimensional over Q")
                continue
            if a:
                g = gcd(a, b)
                base = b.exact_div(g)
                exps = quotient_basis_exponents(g)
            else:
                base = R.one()
                exps = quotient_basis_exponents(b)
            for e in exps:
                entry = base * R.monomial(e)
                phi = [[R.zero()] * Mp.ngens for _ in range(Np.ngens)]
                phi[l][k] = entry
                out.append(toOldN @ RingMatrix(R, phi, Np.ngens, Mp.ngens) @ toNewM)
    return out


def element_is_zero(M: FPModule, col: Sequence[RingElement]) -> bool:
    return M.contains(RingMatrix.from_columns(M.ring, [list(col)], M.ngens))
