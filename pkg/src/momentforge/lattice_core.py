"""Exact integer and rational linear algebra.

Everything here works over Python ints and ``fractions.Fraction``; there is no
floating point anywhere in this module. Matrices are plain lists of rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

IntMatrix = list[list[int]]
RatVector = tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and strings such as ``"3/4"``, ``"-2"``, ``"0.25"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational; pass an int or a string")


def rat_vector(values) -> RatVector:
    return tuple(as_fraction(v) for v in values)


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def int_matrix(rows) -> IntMatrix:
    out = [[int(x) for x in row] for row in rows]
    if not out or not out[0]:
        raise ValueError("matrix must be nonempty")
    width = len(out[0])
    if any(len(r) != width for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det(M) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction-free)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M) -> int:
    """Rank over the rationals."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return 0
    r = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def solve_square(M, b) -> list[Fraction] | None:
    """Solve M x = b exactly for square M; None if M is singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * p for a, p in zip(A[i], A[c])]
    return [row[n] for row in A]


def inverse(M) -> list[list[Fraction]] | None:
    """Exact inverse of a square rational matrix; None if singular.

    Fraction-free Gauss-Jordan on ``[M | I]`` with gcd-reduced integer rows.
    """
    n = len(M)
    A = []
    for i, row in enumerate(M):
        A.append(_integral(list(row) + [int(i == j) for j in range(n)]))
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        prow = A[c]
        p = prow[c]
        for i in range(n):
            f = A[i][c]
            if i != c and f:
                row = [p * x - f * y for x, y in zip(A[i], prow)]
                g = gcd(*row)
                A[i] = [x // g for x in row] if g > 1 else row
    return [[Fraction(x, A[i][i]) for x in A[i][n:]] for i in range(n)]


def primitive_direction(v) -> tuple[int, ...]:
    """The primitive integer vector on the ray through a nonzero rational vector."""
    v = rat_vector(v)
    lcm = 1
    for q in v:
        lcm = lcm * q.denominator // gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return tuple(x // g for x in ints)


# --------------------------------------------------------------------------
# Smith normal form


class SNFError(AssertionError):
    pass


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    U and V are unimodular, D is diagonal with nonnegative entries forming a
    divisibility chain. The pivot is always the entry of smallest nonzero
    absolute value in the remaining block. The postcondition is re-verified
    before returning.
    """
    M0 = int_matrix(M)
    m, n = len(M0), len(M0[0])
    D = [row[:] for row in M0]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in D:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = D[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // p)
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // p)
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next sweep shrinks the pivot
            add_row(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]

    _check_snf(M0, U, D, V)
    return U, D, V


def _check_snf(M, U, D, V):
    if matmul(matmul(U, M), V) != D:
        raise SNFError("U*M*V != D")
    if abs(det(U)) != 1 or abs(det(V)) != 1:
        raise SNFError("transform not unimodular")
    diag = invariant_factors_of(D)
    for i, row in enumerate(D):
        for j, a in enumerate(row):
            if i != j and a:
                raise SNFError("D not diagonal")
    for a, b in zip(diag, diag[1:]):
        if a < 0 or (a == 0 and b != 0) or (a and b % a):
            raise SNFError("divisibility chain broken")


def invariant_factors_of(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def invariant_factors(M) -> list[int]:
    """Diagonal of the Smith normal form (zeros included)."""
    return invariant_factors_of(smith_normal_form(M)[1])


def kernel_basis(M) -> list[list[int]]:
    """Lattice basis of ``{x in Z^cols : M x = 0}``; empty when trivial."""
    _, D, V = smith_normal_form(M)
    r = sum(1 for d in invariant_factors_of(D) if d)
    n = len(V)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def hermite_rows(M) -> IntMatrix:
    """Row-style Hermite normal form of the row lattice of M (zero rows dropped).

    Used to present lattice bases canonically; pivots are positive and entries
    above a pivot are reduced into ``[0, pivot)``.
    """
    A = [list(r) for r in int_matrix(M)]
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(A[k][c]))
            A[r], A[i] = A[i], A[r]
            done = True
            for k in range(r + 1, m):
                if A[k][c]:
                    q = A[k][c] // A[r][c]
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
                    if A[k][c]:
                        done = False
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for k in range(r):
            q = A[k][c] // A[r][c]
            if q:
                A[k] = [a - q * b for a, b in zip(A[k], A[r])]
        r += 1
    return [row for row in A if any(row)]


# --------------------------------------------------------------------------
# Exact simplex


@dataclass(frozen=True)
class LinearSystem:
    """Constraints over ``dim`` rational variables.

    ``equalities``: ``a.x == b``; ``weak``: ``a.x >= b``; ``strict``: ``a.x > b``.
    Variables listed in ``nonneg`` are additionally constrained ``x_i >= 0``.
    """

    dim: int
    equalities: tuple = ()
    weak: tuple = ()
    strict: tuple = ()
    nonneg: frozenset = frozenset()

    def __post_init__(self):
        for kind in (self.equalities, self.weak, self.strict):
            for a, _ in kind:
                if len(a) != self.dim:
                    raise ValueError("constraint vector has wrong dimension")
        if any(not 0 <= i < self.dim for i in self.nonneg):
            raise ValueError("nonneg index out of range")

    @classmethod
    def build(cls, dim, equalities=(), weak=(), strict=(), nonneg=()):
        def norm(rows):
            return tuple((rat_vector(a), as_fraction(b)) for a, b in rows)

        return cls(dim, norm(equalities), norm(weak), norm(strict), frozenset(nonneg))

    @property
    def homogeneous(self) -> bool:
        return all(b == 0 for kind in (self.equalities, self.weak, self.strict) for _, b in kind)

    def satisfied_by(self, x) -> bool:
        if len(x) != self.dim:
            return False
        if any(x[i] < 0 for i in self.nonneg):
            return False
        return (
            all(dot(a, x) == b for a, b in self.equalities)
            and all(dot(a, x) >= b for a, b in self.weak)
            and all(dot(a, x) > b for a, b in self.strict)
        )


@dataclass(frozen=True)
class LPResult:
    status: str  # "feasible" | "unbounded-margin" | "infeasible"
    witness: RatVector | None = None
    margin: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    """Simplex tableau for ``max c.y  s.t.  A y = b, y >= 0`` with Bland's rule.

    Rows are kept fraction-free: each row is an integer vector (last entry the
    right-hand side) that represents its equation up to a positive factor, and
    is divided by the gcd of its entries after every pivot. The basic variable
    of row ``i`` has value ``rhs_i / row_i[basis_i]``.

    ``basis_hint[i]`` may name a column that is a unit vector in row ``i`` (with
    ``b[i] >= 0``); such rows start basic and need no artificial variable.
    """

    def __init__(self, A, b, c, basis_hint=None):
        self.m = len(A)
        self.n = len(c)
        self.rows = []
        hint = list(basis_hint) if basis_hint is not None else [None] * self.m
        for i, (row, bi) in enumerate(zip(A, b)):
            row = _integral(list(row) + [bi])
            if row[-1] < 0:
                row = [-x for x in row]
                hint[i] = None
            self.rows.append(row)
        for i, col in enumerate(hint):
            if col is not None and not (
                self.rows[i][col] > 0 and all(r[col] == 0 for k, r in enumerate(self.rows) if k != i)
            ):
                hint[i] = None
        self.hint = hint
        self.c = _integral(list(c))

    @staticmethod
    def _eliminate(row, col, prow, p):
        """``p * row - row[col] * prow`` reduced by its gcd (``p > 0``)."""
        f = row[col]
        out = [p * x - f * y for x, y in zip(row, prow)]
        g = gcd(*out)
        return [x // g for x in out] if g > 1 else out

    def _pivot(self, r, col):
        prow = self.rows[r]
        if prow[col] < 0:
            prow = [-x for x in prow]
            self.rows[r] = prow
        p = prow[col]
        for i, row in enumerate(self.rows):
            if i != r and row[col]:
                self.rows[i] = self._eliminate(row, col, prow, p)
        if self.obj[col]:
            self.obj = self._eliminate(self.obj, col, prow, p)
        self.basis[r] = col

    def _run(self, allowed):
        # obj holds (positive multiple of) reduced costs; positive means improving
        while True:
            col = next((j for j in allowed if self.obj[j] > 0), None)
            if col is None:
                return "optimal", None
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    q = self.rows[best]
                    lhs, rhs = row[-1] * q[col], q[-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return "unbounded", col
            self._pivot(best, col)

    def _objective_row(self, cost):
        obj = list(cost) + [0]
        for i, bvar in enumerate(self.basis):
            if obj[bvar]:
                row = self.rows[i]
                obj = self._eliminate(obj, bvar, row, row[bvar])
        return obj

    def _value(self, i):
        row = self.rows[i]
        return Fraction(row[-1], row[self.basis[i]])

    def solve(self):
        n = self.n
        need = [i for i, h in enumerate(self.hint) if h is None]
        n_art = len(need)
        self.basis = list(self.hint)
        for a, i in enumerate(need):
            self.basis[i] = n + a
        for i, row in enumerate(self.rows):
            rhs = row.pop()
            row.extend(int(need[a] == i) for a in range(n_art))
            row.append(rhs)
        if n_art:
            self.obj = self._objective_row([0] * n + [-1] * n_art)
            self._run(range(n + n_art))
            if self.obj[-1] != 0:
                return "infeasible", None, None
            # drive artificials out; drop redundant rows
            for i in reversed(range(len(self.rows))):
                if self.basis[i] >= n:
                    col = next((j for j in range(n) if self.rows[i][j]), None)
                    if col is None:
                        del self.rows[i]
                        del self.basis[i]
                    else:
                        self._pivot(i, col)
            for row in self.rows:
                del row[n : n + n_art]
        self.obj = self._objective_row(self.c)
        status, col = self._run(range(n))
        y = [Fraction(0)] * n
        for i, bvar in enumerate(self.basis):
            y[bvar] = self._value(i)
        if status == "unbounded":
            ray = [Fraction(0)] * n
            ray[col] = Fraction(1)
            for i, bvar in enumerate(self.basis):
                row = self.rows[i]
                ray[bvar] = Fraction(-row[col], row[bvar])
            return "unbounded", y, ray
        return "optimal", y, None


def _integral(values) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    if all(isinstance(x, int) for x in values):
        return list(values)
    q = rat_vector(values)
    lcm = 1
    for x in q:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return [int(x * lcm) for x in q]


def lp_maximize(c, A_eq, b_eq, basis_hint=None):
    """Maximize ``c.y`` over ``{y >= 0 : A_eq y = b_eq}`` exactly.

    Returns ``(status, y, ray)`` where status is ``"optimal"``, ``"unbounded"``
    (``ray`` is an improving recession direction) or ``"infeasible"``.
    """
    return _Tableau(A_eq, b_eq, c, basis_hint).solve()


def _eliminate_free(sys: LinearSystem):
    """Solve equalities for free variables and substitute them away.

    Returns ``(reduced_rows, substitutions)`` or None if the equalities are
    inconsistent. Rows are ``[coeffs..., rhs]`` over all ``dim`` variables;
    eliminated variables have zero coefficients everywhere afterwards.
    """
    eqs = [list(a) + [b] for a, b in sys.equalities]
    weak = [list(a) + [b] for a, b in sys.weak]
    strict = [list(a) + [b] for a, b in sys.strict]
    subs = []  # (j, row) meaning x_j = (row_rhs - sum_{i != j} row_i x_i) / row_j
    kept = []
    for idx in range(len(eqs)):
        row = eqs[idx]
        j = next((i for i in range(sys.dim) if row[i] and i not in sys.nonneg), None)
        if j is None:
            if not any(row[: sys.dim]):
                if row[-1] != 0:
                    return None
                continue
            kept.append(row)
            continue
        piv = row[j]
        subs.append((j, row))
        for group in (eqs[idx + 1 :], kept, weak, strict):
            for other in group:
                f = other[j]
                if f:
                    g = f / piv
                    for i, v in enumerate(row):
                        if v:
                            other[i] -= g * v
    return (kept, weak, strict), subs


def _back_substitute(x, subs):
    x = list(x)
    for j, row in reversed(subs):
        x[j] = (row[-1] - sum(row[i] * x[i] for i in range(len(x)) if i != j and row[i])) / row[j]
    return x


def lp_feasible(sys: LinearSystem) -> LPResult:
    """Find an exact witness for ``sys`` or report infeasibility.

    Strict rows are handled with a margin variable ``t`` subtracted from each
    of them and maximized; feasible iff the optimum is positive. For
    homogeneous systems ``t`` is capped at 1 and the witness rescaled so every
    strict row reaches at least 1 (the ``> 0`` to ``>= 1`` homogenization).
    Equalities are first solved for free variables.
    """
    d = sys.dim
    pre = _eliminate_free(sys)
    if pre is None:
        return LPResult("infeasible")
    (eqs, weak, strict), subs = pre
    eliminated = {j for j, _ in subs}
    active = [i for i in range(d) if i not in eliminated]
    free = [i for i in active if i not in sys.nonneg]
    homogeneous = sys.homogeneous

    # columns: active vars (positive parts), negative parts of free vars,
    # one slack per inequality, then margin t and its cap slack
    col = {i: k for k, i in enumerate(active)}
    col_neg = {i: len(active) + k for k, i in enumerate(free)}
    nx = len(active) + len(free)
    n_ineq = len(weak) + len(strict)
    t_col = nx + n_ineq if strict else None
    cap_col = t_col + 1 if strict and homogeneous else None
    ncols = nx + n_ineq + (1 if strict else 0) + (1 if cap_col is not None else 0)

    def expand(row, sign=1):
        out = [Fraction(0)] * ncols
        for i in active:
            v = row[i]
            if v:
                out[col[i]] = sign * v
                if i in col_neg:
                    out[col_neg[i]] = -sign * v
        return out

    A, b, hint = [], [], []
    for row in eqs:
        A.append(expand(row))
        b.append(row[-1])
        hint.append(None)
    for k, row in enumerate(weak + strict):
        rhs = row[-1]
        is_strict = k >= len(weak)
        # a.x - s (- t) = rhs, written with +s when rhs <= 0 so s can start basic
        sign = -1 if rhs <= 0 else 1
        r = expand(row, sign)
        r[nx + k] = Fraction(-sign)
        if is_strict:
            r[t_col] = Fraction(-sign)
        A.append(r)
        b.append(sign * rhs)
        hint.append(nx + k if sign == -1 else None)
    if cap_col is not None:
        r = [Fraction(0)] * ncols
        r[t_col] = Fraction(1)
        r[cap_col] = Fraction(1)
        A.append(r)
        b.append(Fraction(1))
        hint.append(cap_col)
    cost = [Fraction(0)] * ncols
    if strict:
        cost[t_col] = Fraction(1)

    if not A:
        y = [Fraction(0)] * ncols
        status, ray = "optimal", None
    else:
        status, y, ray = lp_maximize(cost, A, b, hint)
    if status == "infeasible":
        return LPResult("infeasible")
    result_status = "feasible"
    margin = None
    if strict:
        if status == "unbounded":
            theta = max(Fraction(0), (1 - y[t_col]) / ray[t_col])
            y = [yi + theta * ri for yi, ri in zip(y, ray)]
            result_status = "unbounded-margin"
        margin = y[t_col]
        if margin <= 0:
            return LPResult("infeasible", margin=margin)
    x = [Fraction(0)] * d
    for i in active:
        x[i] = y[col[i]] - (y[col_neg[i]] if i in col_neg else 0)
    x = _back_substitute(x, subs)
    if strict and homogeneous:
        x = [xi / margin for xi in x]
    x = tuple(x)
    if not sys.satisfied_by(x):
        raise AssertionError("LP witness failed exact re-substitution")
    return LPResult(result_status, x, margin)


# --------------------------------------------------------------------------
# Cones


@dataclass(frozen=True)
class ConeVerdict:
    member: bool
    certificate: RatVector | None = field(default=None)

    def __bool__(self):
        return self.member


def cone_member(generators, point, mode: str = "closed") -> ConeVerdict:
    """Decide ``point in cone(generators)`` (``mode="closed"``) or membership in
    the relative interior (``mode="relative_interior"``).

    The relative interior of ``cone(g_1..g_m)`` is ``{sum l_i g_i : l_i > 0}``.
    The certificate ``l`` is re-substituted exactly.
    """
    if mode not in ("closed", "relative_interior"):
        raise ValueError(f"unknown mode {mode!r}")
    point = rat_vector(point)
    gens = [rat_vector(g) for g in generators]
    if any(len(g) != len(point) for g in gens):
        raise ValueError("generators and point differ in dimension")
    m = len(gens)
    if m == 0:
        ok = all(p == 0 for p in point)
        return ConeVerdict(ok, () if ok else None)
    if m == len(point):
        # square case: coordinates are unique when the generators are independent
        lam = inverse(transpose(gens))
        if lam is not None:
            lam = tuple(sum(row[j] * point[j] for j in range(m)) for row in lam)
            ok = all(l > 0 for l in lam) if mode != "closed" else all(l >= 0 for l in lam)
            if not ok:
                return ConeVerdict(False)
            assert all(sum(l * g[r] for l, g in zip(lam, gens)) == point[r] for r in range(m))
            return ConeVerdict(True, lam)
    eqs = [([g[r] for g in gens], point[r]) for r in range(len(point))]
    if mode == "closed":
        sys = LinearSystem.build(m, equalities=eqs, nonneg=range(m))
    else:
        strict = [([int(i == j) for j in range(m)], 0) for i in range(m)]
        sys = LinearSystem.build(m, equalities=eqs, strict=strict)
    res = lp_feasible(sys)
    if not res.feasible:
        return ConeVerdict(False)
    lam = res.witness
    assert all(sum(l * g[r] for l, g in zip(lam, gens)) == point[r] for r in range(len(point)))
    assert all(l > 0 for l in lam) if mode != "closed" else all(l >= 0 for l in lam)
    return ConeVerdict(True, lam)


def recession_trivial(A) -> bool:
    """True iff ``{s >= 0 : A s = 0} == {0}``.

    Decided by maximizing ``sum(s)`` subject to ``A s = 0, s >= 0, sum(s) <= 1``.
    """
    A = int_matrix(A)
    n = len(A[0])
    rows = [list(r) + [0] for r in A]
    rows.append([1] * n + [1])  # sum(s) + slack == 1
    status, y, _ = lp_maximize([1] * n + [0], rows, [0] * len(A) + [1])
    assert status == "optimal"
    return sum(y[:n]) == 0


def recession_direction(A) -> RatVector | None:
    """A nonzero ``s >= 0`` with ``A s = 0`` (normalized to ``sum(s) == 1``), or None."""
    A = int_matrix(A)
    n = len(A[0])
    rows = [list(r) + [0] for r in A]
    rows.append([1] * n + [1])
    status, y, _ = lp_maximize([1] * n + [0], rows, [0] * len(A) + [1])
    if sum(y[:n]) == 0:
        return None
    return tuple(y[:n])
