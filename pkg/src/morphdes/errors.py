"""Exception types shared across the workbench."""


class MorphdesError(Exception):
    """Base class for all workbench errors."""


class UndefinedWeightsError(MorphdesError):
    """A ranking needs criteria weights that are absent or sum to zero."""


class MissingCompatibilityError(MorphdesError):
    """A compatibility table covers a leaf pair but lacks a specific entry."""


class InfeasibleNodeError(MorphdesError):
    """No combination at a node has all pairwise compatibilities nonzero."""

    def __init__(self, node_id: str):
        super().__init__(f"no feasible combination at node {node_id!r}")
        self.node_id = node_id


class TargetNotFoundError(MorphdesError):
    """An action or query names an id that does not exist in the model."""


class ShapeMismatchError(MorphdesError):
    """Quality vectors differ in priority-level count or arity; incomparable shapes."""


class DesignSpaceCapError(MorphdesError):
    """Exhaustive enumeration would exceed the configured combination cap."""


class ModelfileError(MorphdesError):
    """Model text failed to parse or re-validate; carries positioned diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = tuple(diagnostics)
        head = self.diagnostics[0] if self.diagnostics else "unknown error"
        super().__init__(f"{len(self.diagnostics)} diagnostic(s); first: {head}")
