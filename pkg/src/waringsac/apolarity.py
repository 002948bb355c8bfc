"""Catalecticant matrices and the graded pieces of the apolar ideal."""

from __future__ import annotations

from dataclasses import dataclass

from . import qlinalg
from .polyring import Form, Monomial, contract, monomial_index, monomials, substitute
from .qlinalg import Matrix


@dataclass(frozen=True)
class Catalecticant:
    k: int
    matrix: Matrix
    row_monomials: tuple[Monomial, ...]
    col_monomials: tuple[Monomial, ...]

    @property
    def rank(self) -> int:
        return qlinalg.rank(self.matrix)


def _require_nonzero(f: Form) -> None:
    if f.is_zero():
        raise ValueError("zero form")


def catalecticant(f: Form, k: int) -> Catalecticant:
    """Rows: degree-k operators; columns: degree-(d-k) monomials; entry = coefficient
    of the column monomial in the derivative of ``f`` by the row operator."""
    d = f.degree
    if not 1 <= k <= d:
        raise ValueError(f"catalecticant degree {k} outside 1..{d}")
    rows = monomials(f.num_vars, k)
    cols = monomials(f.num_vars, d - k)
    index = monomial_index(f.num_vars, d - k)
    data = []
    for op in rows:
        row = [0] * len(cols)
        for mono, c in contract(op, f).terms.items():
            row[index[mono]] = c
        data.append(row)
    return Catalecticant(k, Matrix.from_rows(data, len(cols)), rows, cols)


def catalecticant_rank(f: Form, k: int) -> int:
    return catalecticant(f, k).rank


def apolar_graded_piece(f: Form, k: int) -> list[Form]:
    """Basis of (f^perp)_k as operator forms of degree k.

    Kernel of the transposed catalecticant: operators whose derivative of f
    vanishes identically.
    """
    cat = catalecticant(f, k)
    basis = qlinalg.kernel_basis(cat.matrix.transpose())
    return [Form(f.num_vars, k, dict(zip(cat.row_monomials, vec))) for vec in basis]


def essential_variable_count(f: Form) -> int:
    _require_nonzero(f)
    if f.degree == 0:
        return 0
    return catalecticant_rank(f, 1)


@dataclass(frozen=True)
class EssentialReduction:
    form: Form            # in N variables z_0 .. z_{N-1}
    matrix: Matrix        # N x n; substitute(form, matrix) == original
    change_of_basis: Matrix  # n x n invertible; its first N rows are `matrix`

    @property
    def count(self) -> int:
        return self.form.num_vars


def essential_reduction(f: Form) -> EssentialReduction:
    """Rewrite ``f`` in its essential variables.

    The linear forms ``z_j`` are the nonzero rows of the rref of the
    transposed degree-1 catalecticant (the span of all first partials'
    supports); completing them with unit vectors at the non-pivot positions
    gives an invertible change of basis ``T`` with ``f(x) = g(T x)``.
    """
    _require_nonzero(f)
    n = f.num_vars
    if f.degree == 0:
        raise ValueError("constant forms have no essential variables")
    cat1 = catalecticant(f, 1).matrix
    r, rank, pivots = qlinalg.rref(cat1.transpose())
    basis_rows = [list(r.row(i)) for i in range(rank)]
    completion = [[int(i == j) for j in range(n)] for i in range(n) if i not in pivots]
    t = Matrix.from_rows(basis_rows + completion, n)
    # f(T^{-1} y) only involves y_0 .. y_{N-1}
    t_inv = _inverse(t)
    g_full = substitute(f, t_inv)
    terms = {}
    for mono, c in g_full.terms.items():
        if any(mono[rank:]):
            raise ArithmeticError("essential reduction left a non-essential variable")
        terms[mono[:rank]] = c
    g = Form(rank, f.degree, terms)
    return EssentialReduction(g, Matrix.from_rows(basis_rows, n), t)


def _inverse(m: Matrix) -> Matrix:
    n = m.rows
    aug = Matrix.from_rows([list(m.row(i)) + [int(i == j) for j in range(n)] for i in range(n)], 2 * n)
    r, rank, _ = qlinalg.rref(aug)
    if rank < n or any(r[i, i] != 1 for i in range(n)):
        raise ValueError("matrix is singular")
    return Matrix.from_rows([list(r.row(i))[n:] for i in range(n)], n)
