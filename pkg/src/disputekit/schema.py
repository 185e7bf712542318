"""Dyadic variable schema.

Seven inputs per dyad-year, in a fixed canonical order that every other
module (scaling, weight groups, CSV columns, control bounds) relies on.
Two of the variables (contiguity, major_power) are coded so that raw 0 is
the peace-favoring end; the rest favor peace at high raw values.
"""

from dataclasses import dataclass

BINARY = "binary"
ORDINAL = "ordinal"
CONTINUOUS = "continuous"

#: the four inputs a policy intervention can plausibly move
CONTROLLABLE_NAMES = ("allies", "capability", "democracy", "dependency")


@dataclass(frozen=True)
class VariableSpec:
    name: str
    kind: str
    domain_min: float
    domain_max: float
    high_favors_peace: bool
    controllable: bool

    def __post_init__(self):
        if self.kind not in (BINARY, ORDINAL, CONTINUOUS):
            raise ValueError(f"{self.name}: unknown kind {self.kind!r}")
        if self.kind == BINARY:
            if (self.domain_min, self.domain_max) != (0.0, 1.0):
                raise ValueError(f"{self.name}: binary domain must be {{0,1}}")
        elif self.domain_min >= self.domain_max:
            raise ValueError(f"{self.name}: domain_min must be < domain_max")

    def contains(self, value: float) -> bool:
        if self.kind == BINARY:
            return value in (0.0, 1.0)
        return self.domain_min <= value <= self.domain_max

    def peace_extreme(self, maximum: bool) -> float:
        """Raw value at the peace-maximum (or peace-minimum) end."""
        if self.high_favors_peace == maximum:
            return self.domain_max
        return self.domain_min


@dataclass(frozen=True)
class VariableSchema:
    variables: tuple[VariableSpec, ...]

    def __post_init__(self):
        if len(self.variables) != 7:
            raise ValueError("schema must list exactly 7 variables")
        names = [v.name for v in self.variables]
        if len(set(names)) != 7:
            raise ValueError("variable names must be unique")
        controllable = tuple(v.name for v in self.variables if v.controllable)
        if sorted(controllable) != sorted(CONTROLLABLE_NAMES):
            raise ValueError(
                f"exactly {CONTROLLABLE_NAMES} must be controllable, got {controllable}"
            )

    def __iter__(self):
        return iter(self.variables)

    def __len__(self):
        return len(self.variables)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def spec(self, name: str) -> VariableSpec:
        return self.variables[self.index(name)]

    @property
    def controllable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables if v.controllable)


def default_schema() -> VariableSchema:
    """The canonical 7-variable dyadic schema, in CSV column order."""
    return VariableSchema((
        VariableSpec("allies", BINARY, 0.0, 1.0, high_favors_peace=True, controllable=True),
        VariableSpec("contiguity", BINARY, 0.0, 1.0, high_favors_peace=False, controllable=False),
        VariableSpec("major_power", BINARY, 0.0, 1.0, high_favors_peace=False, controllable=False),
        VariableSpec("distance", CONTINUOUS, 0.0, 5.0, high_favors_peace=True, controllable=False),
        VariableSpec("capability", CONTINUOUS, 0.0, 6.0, high_favors_peace=True, controllable=True),
        VariableSpec("democracy", ORDINAL, -10.0, 10.0, high_favors_peace=True, controllable=True),
        VariableSpec("dependency", CONTINUOUS, 0.0, 2.0, high_favors_peace=True, controllable=True),
    ))
