"""Error types. Every domain error derives from DPosetError so the CLI can map it to exit code 2."""


class DPosetError(Exception):
    pass


class CycleError(DPosetError):
    pass


class UnknownLabel(DPosetError):
    pass


class UnknownGenerator(DPosetError):
    pass


class NotCompatible(DPosetError):
    pass


class SingularMatrix(DPosetError):
    pass


class TooLarge(DPosetError):
    pass


class MissingRep(DPosetError):
    pass


class InconsistentVH(DPosetError):
    pass


class OriginNotInterior(DPosetError):
    pass


class NotLatticePolytope(DPosetError):
    pass


class Degenerate(DPosetError):
    pass


class NotAntiBlocking(DPosetError):
    pass


class NotFullDimensional(DPosetError):
    pass


class NotDualIntegral(DPosetError):
    pass


class NegativeCoordinate(DPosetError):
    pass


class UnknownFilterVariable(DPosetError):
    pass


class NonTerminating(DPosetError):
    pass
