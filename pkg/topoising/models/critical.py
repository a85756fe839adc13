"""Critical-point registry entries, transition reports and scan results."""
import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from typing import List, Optional, Tuple

from topoising.exceptions import InvalidArgument


def truncate(value: float, places: int = 3) -> str:
    """Cut a ratio to fixed decimals the way the transition table prints it."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_DOWN))


@dataclass(frozen=True)
class CriticalRegistryEntry:
    lattice: str
    x_c: float
    source: str

    def __post_init__(self):
        if not self.x_c > 0:
            raise InvalidArgument(f"critical value must be positive, got {self.x_c}")

    def to_dict(self):
        return {'lattice': self.lattice, 'x_c': self.x_c, 'source': self.source}


@dataclass(frozen=True)
class ComponentTransition:
    component: int
    label: str
    multiplicity: int
    ratio: float

    def to_dict(self):
        return {'component': self.component, 'label': self.label,
                'multiplicity': self.multiplicity, 'ratio': self.ratio}


@dataclass(frozen=True)
class TransitionReport:
    components: Tuple[ComponentTransition, ...]
    first_transition: float
    full_transition: float

    def to_dict(self):
        return {
            'components': [c.to_dict() for c in self.components],
            'first_transition': self.first_transition,
            'full_transition': self.full_transition,
            'first_display': truncate(self.first_transition),
            'full_display': truncate(self.full_transition),
            'note': 'critical values come from the registry; finite-size scans run on the virtual side only',
        }


@dataclass(frozen=True)
class TableRow:
    code: str
    lattice: str
    mapped_lattice: str
    ratio: float
    first_transition: float
    source: str

    @property
    def display(self) -> str:
        return truncate(self.ratio)

    def to_dict(self):
        return {
            'code': self.code,
            'lattice': self.lattice,
            'mapped_lattice': self.mapped_lattice,
            'K/J': self.display,
            'ratio': self.ratio,
            'first_transition': self.first_transition,
            'source': self.source,
        }


@dataclass(frozen=True)
class ScanPoint:
    ratio: float
    value: float
    flagged: bool = False

    def to_dict(self):
        return {'ratio': self.ratio, 'value': None if math.isnan(self.value) else self.value,
                'flagged': self.flagged}


@dataclass(frozen=True)
class ScanResult:
    observable: str
    variable: str
    sector: str
    points: Tuple[ScanPoint, ...]
    extremum: Optional[float]
    at_boundary: bool = False

    def values(self) -> List[float]:
        return [p.value for p in self.points]

    def ratios(self) -> List[float]:
        return [p.ratio for p in self.points]

    def to_rows(self) -> List[dict]:
        return [{'ratio': p.ratio, self.observable: p.value} for p in self.points]

    def to_dict(self):
        return {
            'observable': self.observable,
            'variable': self.variable,
            'sector': self.sector,
            'points': [p.to_dict() for p in self.points],
            'extremum': self.extremum,
            'at_boundary': self.at_boundary,
            'note': 'virtual-side finite-size estimate',
        }
