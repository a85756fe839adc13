"""
Pauli strings in binary symplectic form.
An operator is sign * X^x Z^z with x and z packed into integers
(bit i is qubit i); X factors are ordered left of Z factors.
"""
from dataclasses import dataclass
from typing import Iterable, List

from topoising.exceptions import InvalidArgument, PauliMismatch
from topoising.utils.gf2 import bits_to_int, int_to_bits, parity


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    sign: int = 1

    def __post_init__(self):
        limit = 1 << self.n
        if self.n < 0 or not (0 <= self.x < limit) or not (0 <= self.z < limit):
            raise InvalidArgument(f"support exceeds {self.n} qubits")
        if self.sign not in (1, -1):
            raise InvalidArgument(f"sign must be +1 or -1, got {self.sign}")

    @property
    def x_sites(self) -> List[int]:
        return int_to_bits(self.x)

    @property
    def z_sites(self) -> List[int]:
        return int_to_bits(self.z)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        # (X^x Z^z)^dagger = (-1)^{|x & z|} X^x Z^z
        return not parity(self.x & self.z)

    def symplectic(self) -> int:
        """Row in the 2n-column symplectic matrix: x block low, z block high."""
        return self.x | (self.z << self.n)

    def __mul__(self, other: 'PauliString') -> 'PauliString':
        return multiply(self, other)

    def label(self) -> str:
        chars = []
        for i in range(self.n):
            xb, zb = self.x >> i & 1, self.z >> i & 1
            chars.append('Y' if xb and zb else 'X' if xb else 'Z' if zb else 'I')
        return ('-' if self.sign < 0 else '+') + ''.join(chars)

    def to_dict(self) -> dict:
        return {
            'x_support': self.x_sites,
            'z_support': self.z_sites,
            'sign': self.sign,
        }

    def __repr__(self):
        return f'<PauliString n={self.n} {self.label() if self.n <= 32 else hex(self.x) + "/" + hex(self.z)}>'


def pauli_from_supports(n: int, x_sites: Iterable[int] = (), z_sites: Iterable[int] = ()) -> PauliString:
    x_sites, z_sites = list(x_sites), list(z_sites)
    for site in x_sites + z_sites:
        if not 0 <= int(site) < n:
            raise InvalidArgument(f"site {site} out of range for {n} qubits")
    return PauliString(n, bits_to_int(x_sites), bits_to_int(z_sites), 1)


def identity(n: int) -> PauliString:
    return PauliString(n)


def _check_same_size(a: PauliString, b: PauliString):
    if a.n != b.n:
        raise PauliMismatch(f"qubit counts differ: {a.n} vs {b.n}")


def commutes(a: PauliString, b: PauliString) -> bool:
    _check_same_size(a, b)
    return not parity((a.x & b.z) ^ (a.z & b.x))


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """
    Product a·b in normal order.

    Moving b's X factors left past a's Z factors gives (-1)^{|a.z & b.x|}.
    """
    _check_same_size(a, b)
    sign = a.sign * b.sign
    if parity(a.z & b.x):
        sign = -sign
    return PauliString(a.n, a.x ^ b.x, a.z ^ b.z, sign)


def product(operators: Iterable[PauliString], n: int) -> PauliString:
    result = identity(n)
    for op in operators:
        result = multiply(result, op)
    return result
