"""Exception types raised by brouwerlab.

Every structural error carries its witness as attributes so callers (and the
CLI) can report exactly which elements broke which law.
"""

from __future__ import annotations


class BrouwerlabError(Exception):
    """Base class for all library errors."""


class InputError(BrouwerlabError):
    """Malformed user input (bad JSON, bad grammar, unknown names)."""


class CapExceeded(BrouwerlabError):
    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what} needs {needed}, cap is {cap} (raise the cap or pass --allow-large)")
        self.what = what
        self.needed = needed
        self.cap = cap


class NotReflexive(InputError):
    def __init__(self, i: int):
        super().__init__(f"relation is not reflexive at element {i}")
        self.i = i


class NotTransitive(InputError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"relation is not transitive: {i}<={j} and {j}<={k} but not {i}<={k}")
        self.i, self.j, self.k = i, j, k


class NotAntisymmetric(InputError):
    def __init__(self, i: int, j: int):
        super().__init__(f"relation is not antisymmetric: {i}<={j} and {j}<={i} with {i}!={j}")
        self.i, self.j = i, j


class NoLub(BrouwerlabError):
    def __init__(self, a: int, b: int):
        super().__init__(f"elements {a},{b} have no least upper bound")
        self.a, self.b = a, b


class NoBottom(BrouwerlabError):
    def __init__(self):
        super().__init__("poset has no least element")


class NoLeastResidual(BrouwerlabError):
    def __init__(self, a: int, b: int):
        super().__init__(f"no least c with {b} <= {a} v c exists")
        self.a, self.b = a, b


class UnknownName(InputError):
    def __init__(self, name: str):
        super().__init__(f"unknown canned name {name!r}")
        self.name = name


class HostMismatch(BrouwerlabError):
    def __init__(self):
        super().__init__("operands live over different host posets")


class BottomTop(BrouwerlabError):
    def __init__(self):
        super().__init__("interval at the bottom element is not allowed (algebra would be trivial)")


class PreconditionFailed(BrouwerlabError):
    pass


class PreconditionViolated(PreconditionFailed):
    pass


class NotAUslHom(BrouwerlabError):
    def __init__(self, x: int, y: int):
        super().__init__(f"map is not a join-semilattice homomorphism at pair ({x},{y})")
        self.x, self.y = x, y


class UnassignedAtom(BrouwerlabError):
    def __init__(self, index: int):
        super().__init__(f"atom p{index + 1} has no assigned value")
        self.index = index


class FormulaSyntaxError(InputError):
    def __init__(self, position: int, expected: str):
        super().__init__(f"syntax error at position {position}: expected {expected}")
        self.position = position
        self.expected = expected


class NotDownwardClosed(InputError):
    def __init__(self, member: int, below: int):
        super().__init__(f"set is not downward closed: contains {member} but not {below} <= {member}")
        self.member, self.below = member, below


class NotAPMorphism(BrouwerlabError):
    pass


class NotOnto(BrouwerlabError):
    pass
