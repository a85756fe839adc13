"""
Workbench Exceptions
Custom exceptions raised by the lattice, code, mapping and spectrum services.
Each carries the process exit code the command line reports for it.
"""


class TopoIsingException(Exception):
    """Base exception for workbench errors."""
    exit_code = 1


class InvalidArgument(TopoIsingException):
    """Exception raised when an input value is out of its allowed range."""
    exit_code = 2


class PauliMismatch(InvalidArgument):
    """Exception raised when operators act on different qubit counts."""
    pass


class InvalidSector(InvalidArgument):
    """Exception raised when sector projectors do not commute with the Hamiltonian."""
    pass


class GridTooCoarse(InvalidArgument):
    """Exception raised when a scan extremum sits on the grid boundary."""
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class NotThreeColorable(TopoIsingException):
    """Exception raised when a wrapped lattice admits no face 3-coloring."""
    exit_code = 3

    def __init__(self, message, kind=None, L1=None, L2=None):
        super().__init__(message)
        self.kind = kind
        self.L1 = L1
        self.L2 = L2


class InvalidColoring(TopoIsingException):
    """Exception raised when a face coloring violates the vertex rule."""
    exit_code = 3


class ColoringRequired(InvalidColoring):
    """Exception raised when a colored construction gets no coloring."""
    pass


class MappingObstruction(TopoIsingException):
    """Exception raised when a bond anticommutes with a number of X generators other than two."""
    exit_code = 3

    def __init__(self, message, bond=None, anticommuting=None):
        super().__init__(message)
        self.bond = bond
        self.anticommuting = anticommuting or []


class LogicalOperatorError(TopoIsingException):
    """Exception raised when a loop operator is not a valid logical."""
    exit_code = 3


class UnsupportedCombination(TopoIsingException):
    """Exception raised for code/lattice combinations without a derivation."""
    exit_code = 4

    def __init__(self, message, pointer=None):
        super().__init__(message)
        self.pointer = pointer


class UnclassifiableComponent(TopoIsingException):
    """Exception raised when a component has no registry lattice."""
    exit_code = 4

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class NonUniformMultiplicity(UnclassifiableComponent):
    """Exception raised when bond multiplicities differ inside a component."""
    pass


class EigensolverNonConvergence(TopoIsingException):
    """Exception raised when the iterative eigensolver does not converge."""
    exit_code = 5

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = list(residuals or [])


class DimensionGuardError(TopoIsingException):
    """Exception raised when a Hilbert space exceeds the configured guard."""
    exit_code = 6

    def __init__(self, message, dimension=None, limit=None):
        super().__init__(message)
        self.dimension = dimension
        self.limit = limit
