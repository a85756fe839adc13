"""
Virtual-spin Ising models
One virtual spin per X-type generator; bonds join the two generators a
real Ising bond anticommutes with. Bonds are kept per displacement on the
covering plane, so the same pair of spins may be joined by more than one
bond on small tori.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx

from topoising.models.lattice import Shift


@dataclass(frozen=True)
class VirtualSpin:
    id: int
    origin: Tuple[str, int]
    cell: Shift
    color: Optional[str] = None

    def to_dict(self):
        data = {'id': self.id, 'origin': {'kind': self.origin[0], 'id': self.origin[1]}}
        if self.color is not None:
            data['color'] = self.color
        return data


@dataclass(frozen=True)
class VirtualBond:
    """Bond p < q; `shift` is q's unwrapped cell minus p's."""
    p: int
    q: int
    multiplicity: int
    shift: Shift = (0, 0)

    def to_dict(self):
        return {'p': self.p, "p'": self.q, 'multiplicity': self.multiplicity, 'shift': list(self.shift)}


@dataclass(frozen=True)
class ComponentLabel:
    label: str
    degrees: Tuple[int, ...]
    triangles: Tuple[int, ...]
    caveat: bool = False
    isomorphic: Optional[bool] = None

    def to_dict(self):
        data = {
            'label': self.label,
            'evidence': {'degrees': sorted(set(self.degrees)), 'triangles': sorted(set(self.triangles))},
            'caveat': self.caveat,
        }
        if self.isomorphic is not None:
            data['isomorphic'] = self.isomorphic
        return data


@dataclass(frozen=True)
class VirtualIsingModel:
    code_id: str
    spins: Tuple[VirtualSpin, ...]
    bonds: Tuple[VirtualBond, ...]
    parity_constraints: Tuple[Tuple[int, ...], ...]
    components: Tuple[Tuple[int, ...], ...]
    labels: Tuple[ComponentLabel, ...] = ()
    num_z_generators: int = 0

    @property
    def num_spins(self) -> int:
        return len(self.spins)

    @property
    def total_multiplicity(self) -> int:
        return sum(b.multiplicity for b in self.bonds)

    def pair_multiplicities(self) -> Dict[Tuple[int, int], int]:
        """Multiplicity summed per spin pair, as it enters the Hamiltonian."""
        pairs: Dict[Tuple[int, int], int] = {}
        for b in self.bonds:
            pairs[(b.p, b.q)] = pairs.get((b.p, b.q), 0) + b.multiplicity
        return pairs

    def bonds_in(self, component: int) -> List[VirtualBond]:
        members = set(self.components[component])
        return [b for b in self.bonds if b.p in members]

    def multiplicities_in(self, component: int) -> List[int]:
        return sorted({b.multiplicity for b in self.bonds_in(component)})

    def graph(self) -> nx.Graph:
        """Simple graph on the virtual spins (multiplicities collapsed)."""
        g = nx.Graph()
        g.add_nodes_from(s.id for s in self.spins)
        g.add_edges_from((b.p, b.q) for b in self.bonds)
        return g

    def to_dict(self):
        components = []
        for idx, comp in enumerate(self.components):
            item = {'spins': list(comp), 'multiplicities': self.multiplicities_in(idx)}
            if idx < len(self.labels):
                label = self.labels[idx].to_dict()
                item['label'] = label.pop('label')
                item.update(label)
            components.append(item)
        return {
            'code': self.code_id,
            'spins': [s.to_dict() for s in self.spins],
            'bonds': [b.to_dict() for b in self.bonds],
            'parity_constraints': [list(c) for c in self.parity_constraints],
            'components': components,
            'offset_generators': self.num_z_generators,
        }

    def __repr__(self):
        return (f'<VirtualIsingModel {self.code_id} spins={self.num_spins} '
                f'bonds={len(self.bonds)} components={len(self.components)}>')


@dataclass(frozen=True)
class DictionaryEntry:
    """One real-spin term and its virtual-spin image."""
    term: str
    origin: Tuple[str, int]
    real_x: Tuple[int, ...]
    real_z: Tuple[int, ...]
    virtual_x: Tuple[int, ...]
    virtual_z: Tuple[int, ...]
    real_coefficient: str
    virtual_coefficient: str
    value: Optional[float] = None

    def to_dict(self):
        data = {
            'term': self.term,
            'origin': {'kind': self.origin[0], 'id': self.origin[1]},
            'real': {'x_support': list(self.real_x), 'z_support': list(self.real_z),
                     'coefficient': self.real_coefficient},
            'virtual': {'x_support': list(self.virtual_x), 'z_support': list(self.virtual_z),
                        'coefficient': self.virtual_coefficient},
        }
        if self.value is not None:
            data['value'] = self.value
        return data

    def to_row(self):
        """Flat view for csv and text tables."""
        return {
            'term': self.term,
            'origin': f'{self.origin[0]} {self.origin[1]}',
            'real_x': ' '.join(map(str, self.real_x)),
            'real_z': ' '.join(map(str, self.real_z)),
            'real_coefficient': self.real_coefficient,
            'virtual_x': ' '.join(map(str, self.virtual_x)),
            'virtual_z': ' '.join(map(str, self.virtual_z)),
            'virtual_coefficient': self.virtual_coefficient,
            'value': self.value,
        }
