"""Exact toolkit for boundary dynamics of hyperbolic-plane and tree
isometries, constructive ping-pong freeness certificates, and finite-group
Frattini computations."""

from .backends import GeometryBackend, MobiusBackend, TreeBackend, backend_from_id
from .circle import CircularInterval, RegionRP1
from .errors import (
    BudgetExceeded,
    EqualEnds,
    GroupTooLarge,
    HypfreeError,
    NotIndependent,
    NotLoxodromic,
    ParseError,
    PrefixTooShallow,
    SearchExhausted,
)
from .freeprod import Cylinder, End, FreeProduct, RegionEnds, Syllable, Word
from .mobius import HalfPlanePoint, IsometryClass, MobiusMap, classify, fixed_points
from .pingpong import (
    PingPongCertificate,
    PingPongInput,
    construct,
    demo_main0,
    freeness_oracle,
    parse_certificate,
    sample_limit_set,
    serialize_certificate,
    verify,
)
from .surd import ProjectivePoint, QuadraticSurd, Rational, surd_compare

__all__ = [
    "GeometryBackend",
    "MobiusBackend",
    "TreeBackend",
    "backend_from_id",
    "CircularInterval",
    "RegionRP1",
    "Cylinder",
    "End",
    "FreeProduct",
    "RegionEnds",
    "Syllable",
    "Word",
    "HalfPlanePoint",
    "IsometryClass",
    "MobiusMap",
    "classify",
    "fixed_points",
    "PingPongCertificate",
    "PingPongInput",
    "construct",
    "demo_main0",
    "freeness_oracle",
    "parse_certificate",
    "sample_limit_set",
    "serialize_certificate",
    "verify",
    "ProjectivePoint",
    "QuadraticSurd",
    "Rational",
    "surd_compare",
    "HypfreeError",
    "NotLoxodromic",
    "NotIndependent",
    "PrefixTooShallow",
    "EqualEnds",
    "SearchExhausted",
    "GroupTooLarge",
    "BudgetExceeded",
    "ParseError",
]
