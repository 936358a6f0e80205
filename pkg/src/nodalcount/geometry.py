"""Exact projective geometry over Q and quadratic extensions Q(sqrt(m)).

Numbers are a + b*sqrt(m) with rational a, b and a fixed squarefree
integer radicand m (possibly negative); pure rationals carry no radicand.
Arithmetic never leaves the field silently: combining incompatible
radicands raises, and square roots either stay in the working field,
adjoin the one allowed radical, or fail loudly.  On top of that sit
points of P^2, conics in the monomial basis (x^2, y^2, z^2, yz, xz, xy),
pencils, degenerate-member factorization and base loci.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .nodal import SigmaConfig
from .permgroup import Permutation, PermGroup, generate_group, parse_permutation

__all__ = [
    "QuadExt",
    "qe",
    "field_sqrt",
    "FieldExtensionError",
    "NotGeneral",
    "IrrationalNodalParameter",
    "ProjPoint",
    "Conic",
    "DoubleLine",
    "parse_conic",
    "conic_to_string",
    "line_to_string",
    "sym2",
    "mat_mul",
    "mat_vec",
    "mat_inverse3",
    "apply_matrix",
    "collinear",
    "pencil_invariant",
    "nodal_members",
    "factor_degenerate",
    "base_locus",
    "pencil_through",
    "induced_sigma",
    "PencilCase",
    "PencilAnalysis",
    "analyze_pencil",
    "d8_representation",
    "d8_invariant_structure",
    "d8_case_suite",
    "klein_representation",
    "klein_counterexample",
]


class FieldExtensionError(ArithmeticError):
    """A computation needs a second independent square root; out of scope."""


class NotGeneral(ValueError):
    """The two conics are not in general position; .reason says why."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class IrrationalNodalParameter(ValueError):
    """The determinant cubic does not split over the rationals."""


def _squarefree_decomposition(n: int):
    """n = s^2 * m with m squarefree (sign kept on m); returns (s, m)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, m = 1, 1
    d = 2
    while d * d <= n:
        exp = 0
        while n % d == 0:
            n //= d
            exp += 1
        s *= d ** (exp // 2)
        if exp % 2:
            m *= d
        d += 1
    m *= n
    return s, sign * m


class QuadExt:
    """An element a + b*sqrt(radicand) of Q or of one quadratic extension."""

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a, b=0, radicand: int | None = None):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            radicand = None
        elif radicand is None:
            raise ValueError("a radical part needs a radicand")
        else:
            if radicand in (0, 1):
                raise ValueError(f"radicand {radicand} is not a valid extension")
            _, squarefree = _squarefree_decomposition(radicand)
            if squarefree != radicand:
                raise ValueError(f"radicand {radicand} is not squarefree")
        self.a = a
        self.b = b
        self.radicand = radicand

    # -- coercion -------------------------------------------------------

    @staticmethod
    def _lift(value) -> "QuadExt | None":
        if isinstance(value, QuadExt):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadExt(value)
        return None

    def _join(self, other: "QuadExt") -> int | None:
        if self.radicand is None:
            return other.radicand
        if other.radicand is None or other.radicand == self.radicand:
            return self.radicand
        raise FieldExtensionError(
            f"cannot mix sqrt({self.radicand}) with sqrt({other.radicand})"
        )

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        m = self._join(other)
        return QuadExt(self.a + other.a, self.b + other.b, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        m = self._join(other)
        radical_sq = 0 if m is None else m
        return QuadExt(
            self.a * other.a + self.b * other.b * radical_sq,
            self.a * other.b + self.b * other.a,
            m,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in the working field")
        if self.radicand is None:
            return QuadExt(1 / self.a)
        norm = self.a * self.a - self.b * self.b * self.radicand
        # Squarefree non-square radicand: the norm of a nonzero element is nonzero.
        return QuadExt(self.a / norm, -self.b / norm, self.radicand)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.radicand)

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.a != other.a or self.b != other.b:
            return False
        return self.b == 0 or self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.radicand))

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            radical = f"sqrt({self.radicand})"
        elif self.b == -1:
            radical = f"-sqrt({self.radicand})"
        else:
            radical = f"{self.b}*sqrt({self.radicand})"
        if self.a == 0:
            return radical
        sign = "+" if not radical.startswith("-") else ""
        return f"{self.a}{sign}{radical}"

    def __repr__(self) -> str:
        return f"QuadExt({self})"


ZERO = QuadExt(0)
ONE = QuadExt(1)


def qe(value) -> QuadExt:
    """Coerce an int/Fraction/QuadExt into the number type."""
    lifted = QuadExt._lift(value)
    if lifted is None:
        raise TypeError(f"cannot interpret {value!r} as a field element")
    return lifted


def field_sqrt(x: QuadExt) -> QuadExt:
    """Exact square root, extending Q by at most one radicand.

    For rational x: a rational square root if one exists, otherwise the
    squarefree radicand is split off and the result lives in Q(sqrt(m)).
    For x already in Q(sqrt(m)): the root is found inside the same field
    or FieldExtensionError is raised (a tower would be needed).
    """
    x = qe(x)
    if x.is_zero():
        return QuadExt(0)
    if x.is_rational():
        q = x.a
        scaled = q.numerator * q.denominator
        s, m = _squarefree_decomposition(scaled)
        root = Fraction(s, q.denominator)
        if m == 1:
            return QuadExt(root)
        return QuadExt(0, root, m)
    # Solve (u + v sqrt(m))^2 = a + b sqrt(m): u^2 + m v^2 = a, 2uv = b.
    m = x.radicand
    disc = x.a * x.a - m * x.b * x.b
    droot = _rational_sqrt(disc)
    if droot is not None:
        for candidate in (x.a + droot, x.a - droot):
            usq = candidate / 2
            u = _rational_sqrt(usq)
            if u is not None and u != 0:
                v = x.b / (2 * u)
                return QuadExt(u, v, m)
    raise FieldExtensionError(
        f"sqrt of {x} is not expressible in Q(sqrt({m}))"
    )


def _rational_sqrt(q: Fraction):
    """Rational square root of q, or None."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    num_s, num_m = _squarefree_decomposition(q.numerator)
    den_s, den_m = _squarefree_decomposition(q.denominator)
    if num_m == 1 and den_m == 1:
        return Fraction(num_s, den_s)
    return None


# ---------------------------------------------------------------------------
# Vectors, matrices, Gaussian elimination
# ---------------------------------------------------------------------------

Vec = tuple
Matrix = tuple


def vec(values) -> Vec:
    return tuple(qe(v) for v in values)


def mat(rows) -> Matrix:
    return tuple(vec(row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(
        tuple(
            sum((A[i][k] * B[k][j] for k in range(len(B))), ZERO)
            for j in range(len(B[0]))
        )
        for i in range(len(A))
    )


def mat_vec(A: Matrix, v: Vec) -> Vec:
    return tuple(sum((A[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(A)))


def scale_vec(c: QuadExt, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def add_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def det3(A: Matrix) -> QuadExt:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def mat_inverse3(A: Matrix) -> Matrix:
    d = det3(A)
    if d.is_zero():
        raise ValueError("matrix is singular")
    cof = [
        [
            A[(i + 1) % 3][(j + 1) % 3] * A[(i + 2) % 3][(j + 2) % 3]
            - A[(i + 1) % 3][(j + 2) % 3] * A[(i + 2) % 3][(j + 1) % 3]
            for i in range(3)
        ]
        for j in range(3)
    ]
    return tuple(tuple(c / d for c in row) for row in cof)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def rref(rows: Sequence[Vec]):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    matrix = [list(row) for row in rows]
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not matrix[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = matrix[r][c].inverse()
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(nrows):
            if i != r and not matrix[i][c].is_zero():
                factor = matrix[i][c]
                matrix[i] = [
                    x - factor * y for x, y in zip(matrix[i], matrix[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in matrix[:r]], pivots


def rank(rows: Sequence[Vec]) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows: Sequence[Vec], width: int):
    """Basis of the right kernel, from the reduced echelon form."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * width
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def span_equal(rows_a: Sequence[Vec], rows_b: Sequence[Vec]) -> bool:
    ra, _ = rref(rows_a)
    rb, _ = rref(rows_b)
    return ra == rb


def in_span(rows: Sequence[Vec], v: Vec) -> bool:
    return rank(list(rows)) == rank(list(rows) + [v])


# ---------------------------------------------------------------------------
# Projective points and conics
# ---------------------------------------------------------------------------


class ProjPoint:
    """A point of P^2, stored in canonical form (first nonzero coordinate 1)."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable) -> None:
        cs = [qe(c) for c in coords]
        if len(cs) != 3:
            raise ValueError("a projective point has three coordinates")
        lead = next((c for c in cs if not c.is_zero()), None)
        if lead is None:
            raise ValueError("(0:0:0) is not a projective point")
        inv = lead.inverse()
        self.coords = tuple(c * inv for c in cs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __repr__(self) -> str:
        return f"ProjPoint({self})"


def apply_matrix(M: Matrix, p: ProjPoint) -> ProjPoint:
    if det3(M).is_zero():
        raise ValueError("projective transformations must be invertible")
    return ProjPoint(mat_vec(M, p.coords))


MONOMIALS = ("X^2", "Y^2", "Z^2", "YZ", "XZ", "XY")


def _monomial_row(p: ProjPoint) -> Vec:
    x, y, z = p.coords
    return (x * x, y * y, z * z, y * z, x * z, x * y)


class Conic:
    """A plane conic as six coefficients over (x^2, y^2, z^2, yz, xz, xy)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable) -> None:
        cs = tuple(qe(c) for c in coeffs)
        if len(cs) != 6:
            raise ValueError("a conic has six coefficients")
        if all(c.is_zero() for c in cs):
            raise ValueError("the zero polynomial is not a conic")
        self.coeffs = cs

    def __call__(self, p: ProjPoint) -> QuadExt:
        return sum(
            (c * m for c, m in zip(self.coeffs, _monomial_row(p))), ZERO
        )

    def sym_matrix(self) -> Matrix:
        """Symmetric matrix; an off-diagonal entry is half the paired coefficient."""
        a, b, c, yz, xz, xy = self.coeffs
        half = Fraction(1, 2)
        return (
            (a, xy * half, xz * half),
            (xy * half, b, yz * half),
            (xz * half, yz * half, c),
        )

    def is_proportional(self, other: "Conic") -> bool:
        return rank([self.coeffs, other.coeffs]) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Conic) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return conic_to_string(self)

    def __repr__(self) -> str:
        return f"Conic({conic_to_string(self)})"


def conic_from_lines(l1: Vec, l2: Vec) -> Conic:
    """The degenerate conic l1 * l2 expanded into monomial coefficients."""
    (a1, b1, c1), (a2, b2, c2) = l1, l2
    return Conic(
        (
            a1 * a2,
            b1 * b2,
            c1 * c2,
            b1 * c2 + c1 * b2,
            a1 * c2 + c1 * a2,
            a1 * b2 + b1 * a2,
        )
    )


def _coeff_str(c: QuadExt) -> str:
    text = str(c)
    if ("+" in text[1:]) or ("-" in text[1:]) or "/" in text or "sqrt" in text:
        return f"({text})"
    return text


def conic_to_string(conic: Conic) -> str:
    parts = []
    for c, name in zip(conic.coeffs, MONOMIALS):
        if c.is_zero():
            continue
        if c == ONE:
            term = name
        elif c == QuadExt(-1):
            term = f"-{name}"
        else:
            term = f"{_coeff_str(c)}*{name}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def line_to_string(line: Vec) -> str:
    parts = []
    for c, name in zip(line, ("X", "Y", "Z")):
        if c.is_zero():
            continue
        if c == ONE:
            term = name
        elif c == QuadExt(-1):
            term = f"-{name}"
        else:
            term = f"{_coeff_str(c)}*{name}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# -- conic literal parser ----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\^|\*|\+|-|\(|\)))")


class _Poly:
    """Degree <= 2 polynomial value used while parsing conic literals."""

    __slots__ = ("const", "lin", "quad")

    def __init__(self, const=ZERO, lin=None, quad=None):
        self.const = const
        self.lin = lin or (ZERO, ZERO, ZERO)
        self.quad = quad or tuple([ZERO] * 6)

    def degree(self) -> int:
        if any(not c.is_zero() for c in self.quad):
            return 2
        if any(not c.is_zero() for c in self.lin):
            return 1
        return 0

    def add(self, other: "_Poly") -> "_Poly":
        return _Poly(
            self.const + other.const,
            add_vec(self.lin, other.lin),
            add_vec(self.quad, other.quad),
        )

    def negate(self) -> "_Poly":
        return _Poly(
            -self.const,
            tuple(-c for c in self.lin),
            tuple(-c for c in self.quad),
        )

    def multiply(self, other: "_Poly") -> "_Poly":
        if self.degree() + other.degree() > 2:
            raise ValueError("conic literals cannot exceed degree 2")
        if self.degree() == 0:
            return _Poly(
                self.const * other.const,
                scale_vec(self.const, other.lin),
                scale_vec(self.const, other.quad),
            )
        if other.degree() == 0:
            return other.multiply(self)
        # two linear factors
        (a1, b1, c1), (a2, b2, c2) = self.lin, other.lin
        quad = (
            a1 * a2,
            b1 * b2,
            c1 * c2,
            b1 * c2 + c1 * b2,
            a1 * c2 + c1 * a2,
            a1 * b2 + b1 * a2,
        )
        return _Poly(ZERO, None, quad)


def parse_conic(text: str, params: Mapping[str, Fraction] | None = None) -> Conic:
    """Parse a conic literal such as "X^2 - Y^2" or "c*(X^2+Y^2) + d*Z^2".

    Symbols X, Y, Z (case sensitive) are the coordinates; juxtaposed
    symbols like "XY" mean a product; every other identifier must be
    supplied through ``params`` as an exact rational.
    """
    params = dict(params or {})
    tokens: list = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize conic literal at {text[pos:]!r}")
            break
        pos = match.end()
        number, name, symbol = match.groups()
        if number is not None:
            tokens.append(("num", Fraction(number)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("sym", symbol))
    tokens.append(("end", None))

    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def advance():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    axes = {"X": 0, "Y": 1, "Z": 2}

    def atom() -> _Poly:
        kind, value = advance()
        if kind == "num":
            return _Poly(const=QuadExt(value))
        if kind == "name":
            if all(ch in axes for ch in value):
                poly = _Poly(const=ONE)
                for ch in value:
                    lin = [ZERO, ZERO, ZERO]
                    lin[axes[ch]] = ONE
                    poly = poly.multiply(_Poly(lin=tuple(lin)))
                return poly
            if value in params:
                return _Poly(const=QuadExt(Fraction(params[value])))
            raise ValueError(f"unknown symbol {value!r} in conic literal")
        if kind == "sym" and value == "(":
            inner = expression()
            kind, value = advance()
            if (kind, value) != ("sym", ")"):
                raise ValueError("unbalanced parenthesis in conic literal")
            return inner
        if kind == "sym" and value == "-":
            return atom().negate()
        raise ValueError("malformed conic literal")

    def power() -> _Poly:
        base = atom()
        while peek() == ("sym", "^"):
            advance()
            kind, value = advance()
            if kind != "num" or value != 2:
                raise ValueError("only squares are allowed in conic literals")
            base = base.multiply(base)
        return base

    def term() -> _Poly:
        value = power()
        while peek() == ("sym", "*"):
            advance()
            value = value.multiply(power())
        return value

    def expression() -> _Poly:
        value = term()
        while peek()[0] == "sym" and peek()[1] in "+-":
            op = advance()[1]
            nxt = term()
            value = value.add(nxt if op == "+" else nxt.negate())
        return value

    poly = expression()
    if peek()[0] != "end":
        raise ValueError("trailing input in conic literal")
    if poly.degree() != 2 or not poly.const.is_zero() or any(
        not c.is_zero() for c in poly.lin
    ):
        raise ValueError("conic literal must be homogeneous of degree 2")
    return Conic(poly.quad)


# ---------------------------------------------------------------------------
# Symmetric square of a 3x3 matrix
# ---------------------------------------------------------------------------


def _product_column(u: Vec, v: Vec) -> Vec:
    """Coefficients of the product of two linear forms in the monomial basis."""
    return (
        u[0] * v[0],
        u[1] * v[1],
        u[2] * v[2],
        u[1] * v[2] + u[2] * v[1],
        u[0] * v[2] + u[2] * v[0],
        u[0] * v[1] + u[1] * v[0],
    )


def sym2(M: Matrix) -> Matrix:
    """The induced 6x6 matrix on the monomial basis (x^2, y^2, z^2, yz, xz, xy).

    Columns are images of basis monomials; the construction makes
    sym2(M @ N) == sym2(M) @ sym2(N) automatic.
    """
    if det3(M).is_zero():
        raise ValueError("sym2 expects an invertible matrix")
    cols = [tuple(M[i][j] for i in range(3)) for j in range(3)]
    pairs = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
    out_cols = [_product_column(cols[i], cols[j]) for i, j in pairs]
    return tuple(
        tuple(out_cols[j][i] for j in range(6)) for i in range(6)
    )


# ---------------------------------------------------------------------------
# Pencils: invariance, degenerate members, base locus
# ---------------------------------------------------------------------------


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return det3((p.coords, q.coords, r.coords)).is_zero()


def pencil_invariant(rep: Mapping[Permutation, Matrix], f: Conic, g: Conic) -> bool:
    """Does the group carry the coefficient span of {f, g} into itself?

    Conic coefficients transform contragrediently to points (a conic q
    vanishing on S turns into one vanishing on M.S), so the span test
    uses sym2 of the inverse transpose of each point matrix.  For matrix
    groups closed under transposition this agrees with using sym2 of the
    matrices themselves.
    """
    span = [f.coeffs, g.coeffs]
    if rank(span) != 2:
        raise ValueError("f and g do not span a pencil")
    for M in rep.values():
        S = sym2(transpose(mat_inverse3(M)))
        for v in span:
            if not in_span(span, mat_vec(S, v)):
                return False
    return True


def _det_cubic(f: Conic, g: Conic):
    """Coefficients [c0..c3] of det(A + x B) for the symmetric matrices of f, g."""
    A = f.sym_matrix()
    B = g.sym_matrix()

    def entry(i, j):
        return (A[i][j], B[i][j])  # linear polynomial a + b x

    def poly_mul(p, q):
        out = [ZERO] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                out[i + j] = out[i + j] + pi * qj
        return out

    def poly_add(p, q, sign=1):
        n = max(len(p), len(q))
        p = list(p) + [ZERO] * (n - len(p))
        q = list(q) + [ZERO] * (n - len(q))
        if sign == 1:
            return [a + b for a, b in zip(p, q)]
        return [a - b for a, b in zip(p, q)]

    total = [ZERO]
    for (i, j, k), sign in (
        ((0, 1, 2), 1),
        ((1, 2, 0), 1),
        ((2, 0, 1), 1),
        ((0, 2, 1), -1),
        ((2, 1, 0), -1),
        ((1, 0, 2), -1),
    ):
        term = poly_mul(poly_mul(list(entry(0, i)), list(entry(1, j))), list(entry(2, k)))
        total = poly_add(total, term, sign)
    total = total + [ZERO] * (4 - len(total))
    return total[:4]


def _rational_roots(coeffs) -> list:
    """All rational roots (with multiplicity stripped) of an integer polynomial.

    Returns (roots_with_multiplicity, leftover_degree): rational roots
    are divided out as often as they occur; leftover_degree > 0 means the
    polynomial keeps a factor without rational roots.
    """
    poly = list(coeffs)
    while poly and poly[-1] == 0:
        poly.pop()
    roots = []
    # strip x = 0 roots
    while poly and poly[0] == 0:
        roots.append(Fraction(0))
        poly.pop(0)
    while len(poly) > 1:
        lead = poly[-1]
        const = poly[0]
        found = None
        for p in _divisors(const.numerator if isinstance(const, Fraction) else const):
            for q in _divisors(lead.numerator if isinstance(lead, Fraction) else lead):
                for sign in (1, -1):
                    candidate = Fraction(sign * p, q)
                    if _poly_eval(poly, candidate) == 0:
                        found = candidate
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        poly = _poly_divide_root(poly, found)
    leftover = len(poly) - 1 if poly else 0
    return roots, leftover


def _divisors(n: int):
    n = abs(int(n))
    if n == 0:
        return [1]
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_eval(poly, x: Fraction):
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_divide_root(poly, root: Fraction):
    """Synthetic division of poly (ascending coefficients) by (x - root)."""
    desc = list(reversed(poly))
    out = [desc[0]]
    for c in desc[1:-1]:
        out.append(c + root * out[-1])
    return list(reversed(out))


def nodal_members(f: Conic, g: Conic) -> list:
    """The degenerate members of the pencil {mu f + lambda g}.

    Solves det(mu A + lambda B) = 0 by the rational root theorem on the
    dehomogenized cubic; returns [(mu, lambda), member] pairs with the
    affine roots in ascending order and [0:1] last.  Raises NotGeneral
    ("common component") if the cubic vanishes identically (every member
    singular) and IrrationalNodalParameter if the cubic does not split
    over Q.
    """
    cubic = _det_cubic(f, g)
    if not all(c.is_rational() for c in cubic):
        raise IrrationalNodalParameter(
            "determinant cubic has coefficients outside Q"
        )
    rational = [c.a for c in cubic]
    if all(c == 0 for c in rational):
        raise NotGeneral("common component")
    denominator = 1
    for c in rational:
        denominator = denominator * c.denominator // _gcd(denominator, c.denominator)
    ints = [int(c * denominator) for c in rational]
    degree = max(i for i, c in enumerate(ints) if c != 0)
    roots, leftover = _rational_roots(ints)
    if leftover > 0:
        raise IrrationalNodalParameter(
            "determinant cubic has an irrational root"
        )
    members = []
    for root in sorted(set(roots)):
        mu, lam = Fraction(1), root
        coeffs = tuple(
            qe(mu) * cf + qe(lam) * cg for cf, cg in zip(f.coeffs, g.coeffs)
        )
        members.append(((mu, lam), Conic(coeffs)))
    if degree < 3:
        members.append(((Fraction(0), Fraction(1)), Conic(g.coeffs)))
    return members


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1


@dataclass(frozen=True)
class DoubleLine:
    """A rank-1 degenerate conic: one line squared."""

    line: Vec


def factor_degenerate(c: Conic):
    """Split a singular conic into two lines (or report a double line).

    Rank 2 conics factor over the working field or one quadratic
    extension of it; the product of the returned lines reproduces the
    conic up to a scalar (checked).  Rank 3 input is rejected.
    """
    M = c.sym_matrix()
    r = rank(list(M))
    if r == 3:
        raise ValueError("conic is not degenerate")
    if r == 1:
        row = next(row for row in M if any(not x.is_zero() for x in row))
        if not conic_from_lines(row, row).is_proportional(c):
            raise ArithmeticError("rank-1 factorization failed")
        return DoubleLine(row)
    # rank 2: restrict to a plane complementary to the singular point
    p = kernel_basis(list(M), 3)[0]
    basis = None
    for i in range(3):
        for j in range(i + 1, 3):
            e_i = tuple(ONE if k == i else ZERO for k in range(3))
            e_j = tuple(ONE if k == j else ZERO for k in range(3))
            if not det3((p, e_i, e_j)).is_zero():
                basis = (e_i, e_j)
                break
        if basis:
            break
    u, v = basis

    def bilinear(w1, w2):
        return sum(
            (w1[i] * M[i][j] * w2[j] for i in range(3) for j in range(3)), ZERO
        )

    alpha = bilinear(u, u)
    beta = 2 * bilinear(u, v)
    gamma = bilinear(v, v)

    def line_through(w1, w2):
        return (
            w1[1] * w2[2] - w1[2] * w2[1],
            w1[2] * w2[0] - w1[0] * w2[2],
            w1[0] * w2[1] - w1[1] * w2[0],
        )

    if alpha.is_zero() and gamma.is_zero():
        points = (u, v)
    elif alpha.is_zero():
        # gamma t^2 + beta s t = t (beta s + gamma t)
        points = (u, add_vec(scale_vec(-gamma, u), scale_vec(beta, v)))
    else:
        disc = beta * beta - 4 * alpha * gamma
        droot = field_sqrt(disc)
        r1 = (-beta + droot) / (2 * alpha)
        r2 = (-beta - droot) / (2 * alpha)
        points = (
            add_vec(scale_vec(r1, u), v),
            add_vec(scale_vec(r2, u), v),
        )
    l1 = line_through(points[0], p)
    l2 = line_through(points[1], p)
    if not conic_from_lines(l1, l2).is_proportional(c):
        raise ArithmeticError("rank-2 factorization failed")
    return (l1, l2)


def _intersect_line_conic(line: Vec, conic: Conic) -> list:
    """The two intersection points, possibly after one radical adjunction."""
    basis = kernel_basis([line], 3)
    u, v = basis
    M = conic.sym_matrix()

    def bilinear(w1, w2):
        return sum(
            (w1[i] * M[i][j] * w2[j] for i in range(3) for j in range(3)), ZERO
        )

    alpha = bilinear(u, u)
    beta = 2 * bilinear(u, v)
    gamma = bilinear(v, v)
    if alpha.is_zero() and beta.is_zero() and gamma.is_zero():
        raise NotGeneral("common component")
    if alpha.is_zero() and beta.is_zero():
        raise NotGeneral("repeated base point")
    if alpha.is_zero():
        pts = (u, add_vec(scale_vec(-gamma, u), scale_vec(beta, v)))
    else:
        disc = beta * beta - 4 * alpha * gamma
        if disc.is_zero():
            raise NotGeneral("repeated base point")
        droot = field_sqrt(disc)
        r1 = (-beta + droot) / (2 * alpha)
        r2 = (-beta - droot) / (2 * alpha)
        pts = (
            add_vec(scale_vec(r1, u), v),
            add_vec(scale_vec(r2, u), v),
        )
    return [ProjPoint(pts[0]), ProjPoint(pts[1])]


def base_locus(f: Conic, g: Conic) -> list:
    """The four base points of a general pencil, exactly.

    Factors one degenerate member into lines and intersects each line
    with a member independent of it.  Raises NotGeneral with reason
    "common component", "repeated base point" or "three collinear" when
    the pencil is not general.
    """
    members = nodal_members(f, g)
    (mu, lam), member = members[0]
    factored = factor_degenerate(member)
    if isinstance(factored, DoubleLine):
        raise NotGeneral("repeated base point")
    other = g if lam == 0 else f
    points = []
    for line in factored:
        points.extend(_intersect_line_conic(line, other))
    if len(set(points)) != 4:
        raise NotGeneral("repeated base point")
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                if collinear(points[i], points[j], points[k]):
                    raise NotGeneral("three collinear")
    for p in points:
        if not f(p).is_zero() or not g(p).is_zero():
            raise ArithmeticError("base point fails to satisfy the pencil exactly")
    return points


def pencil_through(points: Sequence[ProjPoint]) -> tuple:
    """The pencil of conics through four points in general position."""
    if len(points) != 4:
        raise ValueError("a pencil is determined by four base points")
    rows = [_monomial_row(p) for p in points]
    basis = kernel_basis(rows, 6)
    if len(basis) != 2:
        raise NotGeneral("three collinear")
    return Conic(basis[0]), Conic(basis[1])


# ---------------------------------------------------------------------------
# Group actions on P^2 and the counterexample machinery
# ---------------------------------------------------------------------------


def induced_sigma(
    rep: Mapping[Permutation, Matrix], base: Sequence[ProjPoint], G: PermGroup
) -> SigmaConfig:
    """Read off the permutation of the base points induced by each matrix."""
    base = list(base)
    if len(base) != 4:
        raise ValueError("expected a base locus of four points")
    point_action = {}
    for g in G.elements:
        M = rep[g]
        images = []
        for p in base:
            q = apply_matrix(M, p)
            try:
                images.append(base.index(q))
            except ValueError:
                raise ValueError(
                    f"{g} does not preserve the base locus: {p} -> {q}"
                ) from None
        point_action[g] = Permutation(images)
    return SigmaConfig.from_action(G, point_action)


def _hom_from_generators(
    G: PermGroup, images: Mapping[Permutation, Matrix]
) -> dict:
    """Extend generator images to the whole group, checking consistency."""
    identity = G.identity_element()
    table = {identity: identity_matrix(3)}
    for g, M in images.items():
        table[g] = M
    frontier = list(table)
    while frontier:
        fresh = []
        for g in list(table):
            for h in frontier:
                gh = g * h
                M = mat_mul(table[g], table[h])
                if gh in table:
                    if table[gh] != M:
                        raise ValueError(
                            "generator images do not extend to a homomorphism"
                        )
                else:
                    table[gh] = M
                    fresh.append(gh)
        frontier = fresh
    if set(table) != set(G.elements):
        raise ValueError("generator images do not generate the group")
    return table


@dataclass(frozen=True)
class PencilCase:
    """A named invariant pencil: the two spanning conics plus the acting group."""

    label: str
    group: PermGroup
    rep: dict
    f: Conic
    g: Conic


@dataclass(frozen=True)
class PencilAnalysis:
    """Derived data of a general PencilCase."""

    members: tuple  # ((mu, lambda), Conic) triples of degenerate members
    lines: tuple  # per member: the two factor lines
    base: tuple  # four ProjPoints
    sigma: SigmaConfig


def analyze_pencil(case: PencilCase) -> PencilAnalysis:
    """Degenerate members, their lines, the base locus and the induced 4-point G-set.

    Raises NotGeneral / IrrationalNodalParameter for pencils outside the
    general-position regime.
    """
    members = nodal_members(case.f, case.g)
    base = base_locus(case.f, case.g)
    lines = []
    for _, member in members:
        factored = factor_degenerate(member)
        if isinstance(factored, DoubleLine):
            raise NotGeneral("repeated base point")
        lines.append(factored)
    sigma = induced_sigma(case.rep, base, case.group)
    return PencilAnalysis(tuple(members), tuple(lines), tuple(base), sigma)


# -- dihedral group of order 8 on P^2 ---------------------------------------


def _perm4(text: str) -> Permutation:
    return parse_permutation(text, 4)


def d8_representation(a: int, b: int):
    """The order-8 dihedral subgroup of S4 acting on P^2, for signs a, b.

    The four-cycle acts by the rotation-type matrix (90-degree block plus
    the sign a on z) and the transposition (13) by the reflection-type
    diagonal matrix carrying the sign b; these satisfy the dihedral
    relations exactly, and the induced permutations of the base points in
    the general cases below reproduce the published action tables.
    """
    if a not in (1, -1) or b not in (1, -1):
        raise ValueError("signs a and b must be +1 or -1")
    four_cycle = _perm4("(1234)")
    flip = _perm4("(13)")
    G = generate_group([four_cycle, flip], 4)
    rotation = mat([[0, -1, 0], [1, 0, 0], [0, 0, a]])
    reflection = mat([[1, 0, 0], [0, -1, 0], [0, 0, b]])
    rep = _hom_from_generators(G, {four_cycle: rotation, flip: reflection})
    return G, rep


def d8_invariant_structure(a: int, b: int) -> dict:
    """Common invariant subspaces of the induced action on conic space.

    Eigen-kernels of sym2 of the two generator matrices are intersected
    for eigenvalue pairs in {1,-1}^2.  The result, for every sign choice:
    a 2-dimensional common eigenspace spanned by z^2 and x^2+y^2, the
    lines x^2-y^2 and xy, and a residual invariant plane span{yz, xz}
    containing no invariant line.
    """
    G, rep = d8_representation(a, b)
    S_rot = sym2(rep[_perm4("(1234)")])
    S_ref = sym2(rep[_perm4("(13)")])

    def eigen_rows(S, eigenvalue):
        return [
            tuple(S[i][j] - (qe(eigenvalue) if i == j else ZERO) for j in range(6))
            for i in range(6)
        ]

    intersections = {}
    for lam in (1, -1):
        rows_rot = eigen_rows(S_rot, lam)
        for mu in (1, -1):
            rows = rows_rot + eigen_rows(S_ref, mu)
            intersections[(lam, mu)] = kernel_basis(rows, 6)

    def basis_vec(idx):
        return tuple(ONE if i == idx else ZERO for i in range(6))

    z2 = basis_vec(2)
    x2py2 = (ONE, ONE, ZERO, ZERO, ZERO, ZERO)
    x2my2 = (ONE, QuadExt(-1), ZERO, ZERO, ZERO, ZERO)
    xy = basis_vec(5)
    checks = (
        span_equal(intersections[(1, 1)], [z2, x2py2]),
        span_equal(intersections[(-1, 1)], [x2my2]),
        span_equal(intersections[(-1, -1)], [xy]),
        intersections[(1, -1)] == [],
    )
    if not all(checks):
        raise ArithmeticError("invariant subspace structure is not the expected one")
    plane = [basis_vec(3), basis_vec(4)]
    for S in (S_rot, S_ref):
        for v in plane:
            if not in_span(plane, mat_vec(S, v)):
                raise ArithmeticError("span{yz, xz} is not invariant")
    return {
        "lines": {"Z^2": z2, "X^2+Y^2": x2py2, "X^2-Y^2": x2my2, "XY": xy},
        "plane": tuple(plane),
        "eigenspaces": intersections,
    }


def d8_case_suite(a: int, b: int, c: Fraction, d: Fraction) -> list:
    """The nine candidate invariant pencils for the order-8 dihedral action.

    Pencil 8 and 9 take the free parameters c, d (both nonzero); the
    first seven are parameter free.  Every returned pencil is checked to
    be carried into itself by the group.
    """
    c = Fraction(c)
    d = Fraction(d)
    if c == 0 or d == 0:
        raise ValueError("parameters c and d must be nonzero")
    G, rep = d8_representation(a, b)
    d8_invariant_structure(a, b)
    params = {"c": c, "d": d}
    spans = [
        ("YZ", "XZ"),
        ("Z^2", "X^2-Y^2"),
        ("Z^2", "X^2+Y^2"),
        ("Z^2", "XY"),
        ("X^2-Y^2", "X^2+Y^2"),
        ("X^2-Y^2", "XY"),
        ("X^2+Y^2", "XY"),
        ("X^2-Y^2", "c*(X^2+Y^2) + d*Z^2"),
        ("XY", "c*(X^2+Y^2) + d*Z^2"),
    ]
    cases = []
    for index, (first, second) in enumerate(spans, start=1):
        f = parse_conic(first, params)
        g = parse_conic(second, params)
        case = PencilCase(f"case {index}", G, rep, f, g)
        if not pencil_invariant(rep, f, g):
            raise ArithmeticError(f"pencil {index} is unexpectedly not invariant")
        cases.append(case)
    return cases


# -- the Klein four-group inside the standard S4 action ----------------------


def klein_representation():
    """The normal Klein four-group with its exact 3x3 matrices."""
    gens = [_perm4("(12)(34)"), _perm4("(13)(24)")]
    G = generate_group(gens, 4)
    matrices = {
        _perm4("()"): identity_matrix(3),
        _perm4("(12)(34)"): mat([[-1, 1, 0], [0, 1, 0], [0, 1, -1]]),
        _perm4("(13)(24)"): mat([[0, -1, 1], [0, -1, 0], [1, -1, 0]]),
        _perm4("(14)(23)"): mat([[0, 0, -1], [0, -1, 0], [-1, 0, 0]]),
    }
    for g in G.elements:
        for h in G.elements:
            if mat_mul(matrices[g], matrices[h]) != matrices[g * h]:
                raise ArithmeticError("Klein matrices fail to close exactly")
    return G, matrices


def klein_counterexample() -> PencilCase:
    """The invariant pencil through the orbit of [1:2:3] under the Klein group."""
    G, rep = klein_representation()
    seed = ProjPoint((1, 2, 3))
    order = [
        _perm4("()"),
        _perm4("(12)(34)"),
        _perm4("(13)(24)"),
        _perm4("(14)(23)"),
    ]
    base = [apply_matrix(rep[g], seed) for g in order]
    f, g = pencil_through(base)
    case = PencilCase("klein", G, rep, f, g)
    if not pencil_invariant(rep, f, g):
        raise ArithmeticError("the Klein pencil is unexpectedly not invariant")
    return case
