"""Catalog of attracting laws r(e)."""

from typing import Annotated, Any, Iterable, Mapping, Union

from numpy.typing import ArrayLike
from pydantic import Field, TypeAdapter, ValidationError

from ers_tznn.exceptions import ParameterError
from ers_tznn.laws.base import BaseLaw, LawFamily, sig
from ers_tznn.laws.exponential import (
    FractionalExpLaw,
    PiecewiseExpALaw,
    PiecewiseExpBLaw,
    PiecewiseExpLaw,
    PowerExponentialLaw,
    TwoPhasePeLaw,
)
from ers_tznn.laws.power import DprlAltLaw, DprlLaw, SprlAltLaw, SprlLaw
from ers_tznn.laws.registry import LawRegistry, law_registry

AttractingLaw = Annotated[
    Union[
        SprlLaw,
        SprlAltLaw,
        DprlLaw,
        DprlAltLaw,
        TwoPhasePeLaw,
        PiecewiseExpALaw,
        PiecewiseExpBLaw,
        FractionalExpLaw,
    ],
    Field(discriminator="type"),
]

law_adapter: TypeAdapter[AttractingLaw] = TypeAdapter(AttractingLaw)

for _law_class in (
    SprlLaw,
    SprlAltLaw,
    DprlLaw,
    DprlAltLaw,
    TwoPhasePeLaw,
    PiecewiseExpALaw,
    PiecewiseExpBLaw,
    FractionalExpLaw,
):
    law_registry.register(_law_class)


def parameter_error_from(
    exc: ValidationError, prefix: str = "", extra_tags: Iterable[str] = ()
) -> ParameterError:
    """Turn a pydantic validation error into a ParameterError naming the first bad field."""
    first = exc.errors()[0]
    # Discriminated unions prepend the tag to the location
    tags = {*law_registry.tags(), *extra_tags}
    loc = [str(part) for part in first["loc"] if str(part) not in tags]
    field = ".".join(loc) or "type"
    if prefix:
        field = f"{prefix}.{field}"
    return ParameterError(field, first["msg"])


def parse_law(data: Mapping[str, Any]) -> BaseLaw:
    """Build a validated law from a tagged mapping such as ``{"type": "SPRL", ...}``.

    Raises:
        ParameterError: If the tag is unknown or a parameter is out of range
    """
    try:
        return law_adapter.validate_python(dict(data))
    except ValidationError as exc:
        raise parameter_error_from(exc) from exc


def validate(law: BaseLaw) -> BaseLaw:
    """Re-check every parameter range of a law.

    Laws built normally are validated at construction; this also catches laws
    assembled with ``model_construct`` or loaded from untrusted data.

    Raises:
        ParameterError: Naming the offending field and the violated range
    """
    return parse_law(law.model_dump())


def rectify(law: BaseLaw, e: ArrayLike) -> Any:
    """r(e) for the selected law."""
    return law.rectify(e)


def exponent(law: BaseLaw, e: ArrayLike) -> Any:
    """gamma(e) for a power-exponential law."""
    return law.exponent(e)


__all__ = [
    "AttractingLaw",
    "BaseLaw",
    "DprlAltLaw",
    "DprlLaw",
    "FractionalExpLaw",
    "LawFamily",
    "LawRegistry",
    "PiecewiseExpALaw",
    "PiecewiseExpBLaw",
    "PiecewiseExpLaw",
    "PowerExponentialLaw",
    "SprlAltLaw",
    "SprlLaw",
    "TwoPhasePeLaw",
    "exponent",
    "law_adapter",
    "law_registry",
    "parameter_error_from",
    "parse_law",
    "rectify",
    "sig",
    "validate",
]
