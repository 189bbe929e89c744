"""Lumped disturbances w(t) injected into the error dynamics."""

from typing import Annotated, Literal, Protocol, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class DisturbanceSampler(Protocol):
    """Evaluates w for every error component during one integration run."""

    def at(self, step: int, t: float) -> np.ndarray:
        """w at time ``t`` inside sample step ``step`` (shape (k,))."""
        ...


class _ConstantSampler:
    def __init__(self, value: float, n_components: int):
        self._value = np.full(n_components, value, dtype=float)

    def at(self, step: int, t: float) -> np.ndarray:
        return self._value


class _SinusoidSampler:
    def __init__(self, amplitude: float, omega: float, phase: float, n_components: int):
        self._amplitude = amplitude
        self._omega = omega
        self._phase = phase
        self._ones = np.ones(n_components)

    def at(self, step: int, t: float) -> np.ndarray:
        return self._amplitude * np.sin(self._omega * t + self._phase) * self._ones


class _TableSampler:
    def __init__(self, table: np.ndarray):
        self._table = table

    def at(self, step: int, t: float) -> np.ndarray:
        return self._table[step]


class _DisturbanceBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    @property
    def magnitude(self) -> float:
        """Declared bound on |w(t)|."""
        return 0.0

    @property
    def is_zero(self) -> bool:
        return False

    def sampler(self, n_components: int, n_steps: int) -> DisturbanceSampler:
        raise NotImplementedError


class ZeroDisturbance(_DisturbanceBase):
    """w = 0."""

    type: Literal["Zero"] = "Zero"

    @property
    def is_zero(self) -> bool:
        return True

    def sampler(self, n_components: int, n_steps: int) -> DisturbanceSampler:
        return _ConstantSampler(0.0, n_components)


class ConstantDisturbance(_DisturbanceBase):
    """w = c."""

    type: Literal["Constant"] = "Constant"
    c: float

    @property
    def magnitude(self) -> float:
        return abs(self.c)

    def sampler(self, n_components: int, n_steps: int) -> DisturbanceSampler:
        return _ConstantSampler(self.c, n_components)


class SinusoidDisturbance(_DisturbanceBase):
    """w(t) = amplitude sin(angular_frequency t + phase)."""

    type: Literal["Sinusoid"] = "Sinusoid"
    amplitude: float
    angular_frequency: float = 1.0
    phase: float = 0.0

    @property
    def magnitude(self) -> float:
        return abs(self.amplitude)

    def sampler(self, n_components: int, n_steps: int) -> DisturbanceSampler:
        return _SinusoidSampler(self.amplitude, self.angular_frequency, self.phase, n_components)


class BoundedNoise(_DisturbanceBase):
    """Uniform noise on [-bound, bound], held constant over each step.

    Every error component draws from its own stream spawned from ``seed``, so a
    run is reproducible and components are independent.
    """

    type: Literal["BoundedNoise"] = "BoundedNoise"
    bound: float = Field(gt=0, description="noise bound")
    seed: int = Field(default=0, ge=0, lt=2 ** 64)

    @property
    def magnitude(self) -> float:
        return self.bound

    def table(self, n_components: int, n_steps: int) -> np.ndarray:
        """Noise values for sample steps 0..n_steps, shape (n_steps + 1, n_components)."""
        streams = np.random.SeedSequence(self.seed).spawn(n_components)
        columns = [
            np.random.default_rng(stream).uniform(-self.bound, self.bound, size=n_steps + 1)
            for stream in streams
        ]
        return np.column_stack(columns)

    def sampler(self, n_components: int, n_steps: int) -> DisturbanceSampler:
        return _TableSampler(self.table(n_components, n_steps))


Disturbance = Annotated[
    Union[ZeroDisturbance, ConstantDisturbance, SinusoidDisturbance, BoundedNoise],
    Field(discriminator="type"),
]
