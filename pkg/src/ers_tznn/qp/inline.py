"""QP problems written inline as expressions in t."""

from typing import Callable, List, Literal

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ers_tznn.qp.problem import TimeVariantQP

_T = sympy.Symbol("t", real=True)


def _parse(expr: str) -> sympy.Expr:
    try:
        parsed = sympy.sympify(expr, locals={"t": _T})
    except (sympy.SympifyError, TypeError, SyntaxError) as exc:
        raise ValueError(f"cannot parse {expr!r}: {exc}") from exc
    extra = parsed.free_symbols - {_T}
    if extra:
        raise ValueError(f"{expr!r} uses symbols other than t: {sorted(map(str, extra))}")
    return parsed


def _compile(matrix: sympy.Matrix) -> Callable[[float], np.ndarray]:
    fn = sympy.lambdify(_T, matrix, modules="numpy")
    shape = matrix.shape

    def evaluate(t: float) -> np.ndarray:
        return np.asarray(fn(t), dtype=float).reshape(shape)

    return evaluate


class InlineQpSpec(BaseModel):
    """Entries of G, A, c and b as strings such as ``"2 + sin(t)"``.

    Derivatives are obtained symbolically, so inline problems always run with
    analytic M' and u'.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["inline"] = "inline"
    G: List[List[str]]
    A: List[List[str]]
    c: List[str]
    b: List[str]

    @field_validator("G", "A", mode="before")
    @classmethod
    def _stringify_rows(cls, rows):
        return [[str(entry) for entry in row] for row in rows]

    @field_validator("c", "b", mode="before")
    @classmethod
    def _stringify_entries(cls, entries):
        return [str(entry) for entry in entries]

    @model_validator(mode="after")
    def _check_shapes(self) -> "InlineQpSpec":
        n = len(self.G)
        if n == 0 or any(len(row) != n for row in self.G):
            raise ValueError("G must be a non-empty square matrix")
        if any(len(row) != n for row in self.A):
            raise ValueError(f"every row of A must have {n} entries")
        if len(self.c) != n:
            raise ValueError(f"c must have {n} entries")
        if len(self.b) != len(self.A):
            raise ValueError(f"b must have {len(self.A)} entries (one per row of A)")
        for entry in [*sum(self.G, []), *sum(self.A, []), *self.c, *self.b]:
            _parse(entry)
        return self

    def symbolic(self) -> dict[str, sympy.Matrix]:
        n, m = len(self.G), len(self.A)
        return {
            "G": sympy.Matrix(n, n, [_parse(x) for row in self.G for x in row]),
            "A": sympy.Matrix(m, n, [_parse(x) for row in self.A for x in row]),
            "c": sympy.Matrix(n, 1, [_parse(x) for x in self.c]),
            "b": sympy.Matrix(m, 1, [_parse(x) for x in self.b]),
        }

    def to_problem(self, name: str = "inline") -> TimeVariantQP:
        """Compile the expressions and their t-derivatives into a TimeVariantQP."""
        blocks = self.symbolic()
        compiled = {key: _compile(value) for key, value in blocks.items()}
        derived = {f"{key}_dot": _compile(value.diff(_T)) for key, value in blocks.items()}
        return TimeVariantQP(n=len(self.G), m=len(self.A), name=name, **compiled, **derived)
