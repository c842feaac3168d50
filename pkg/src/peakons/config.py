"""Tolerance bundle and run configuration.

Every numerical decision threshold in the library is routed through a
Tolerances value so the CLI can override any of them (--tol.<name>).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Tolerances:
    pos: float = 1e-10     # minimal distance between support points
    zero: float = 1e-12    # weight treated as exactly zero
    coef: float = 1e-10    # relative polynomial-coefficient trim / remainder test
    root: float = 1e-12    # root residual bound
    pf: float = 1e-9       # partial-fraction reconstruction bound
    cf: float = 1e-8       # continued-fraction reconstruction bound
    inv: float = 1e-7      # inverse-problem roundtrip bound (relative)
    phi: float = 1e-8      # relative snap-to-zero for eigenfunction values
    ab: float = 1e-9       # alpha/beta zero classification
    trace: float = 1e-8    # trace-formula vs kernel-sum agreement
    cons: float = 1e-6     # two-route norming-constant consistency
    g: float = 1e-8        # feasibility condition (i) zero test

    def with_overrides(self, **kw: float) -> "Tolerances":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


DEFAULT = Tolerances()


@dataclass(frozen=True)
class GridSpec:
    """start:stop:step inclusive grid; step > 0."""

    start: float
    stop: float
    step: float

    def points(self) -> list[float]:
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        out = []
        k = 0
        while True:
            x = self.start + k * self.step
            if x > self.stop + 1e-12 * max(1.0, abs(self.stop)):
                break
            out.append(x)
            k += 1
        if not out:
            raise ValueError("empty grid")
        return out

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec must be start:stop:step, got {text!r}")
        return cls(float(parts[0]), float(parts[1]), float(parts[2]))


@dataclass(frozen=True)
class RunConfig:
    tol: Tolerances = DEFAULT
    x_grid: GridSpec = GridSpec(-10.0, 10.0, 0.5)
    t_grid: GridSpec = GridSpec(0.0, 10.0, 1.0)
    fmt: str = "csv"               # json|csv, evolve series format
    splits: tuple[float, ...] = field(default_factory=tuple)
