"""Exception hierarchy shared by every latkit module."""


class LatkitError(Exception):
    """Base class for all library errors."""


class LatticeFormatError(LatkitError, ValueError):
    """Malformed lattice description (unknown label, duplicate label, bad file)."""


class CycleError(LatticeFormatError):
    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"order relation has a cycle through {x!r} and {y!r}")


class NonCoverEdge(LatticeFormatError):
    def __init__(self, lower, upper, via):
        self.pair = (lower, upper)
        self.via = via
        super().__init__(
            f"declared cover {lower!r} < {upper!r} is implied transitively via {via!r}")


class NotALattice(LatkitError, ValueError):
    def __init__(self, x, y, missing):
        self.pair = (x, y)
        self.missing = missing
        super().__init__(f"elements {x!r} and {y!r} have no {missing}")


class NotJoinIrreducible(LatkitError, ValueError):
    def __init__(self, p):
        self.element = p
        super().__init__(f"{p!r} is not join-irreducible")


class NotACover(LatkitError, ValueError):
    def __init__(self, p, members):
        self.element = p
        self.members = members
        super().__init__(f"{p!r} is not below the join of {{{', '.join(map(str, members))}}}")


class SizeGuard(LatkitError, RuntimeError):
    """Raised when a brute-force routine would exceed its configured budget."""


class ParseError(LatkitError, ValueError):
    def __init__(self, message, position, token_index):
        self.position = position
        self.token_index = token_index
        super().__init__(f"{message} at token {token_index} (offset {position})")


class UnboundVariable(LatkitError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"variable {self.name!r} has no value"


class NotDistributive(LatkitError, ValueError):
    pass


class NotBoolean(LatkitError, ValueError):
    pass


class NoComplementaryPair(LatkitError, ValueError):
    pass


class UnknownPredicate(LatkitError, ValueError):
    pass
