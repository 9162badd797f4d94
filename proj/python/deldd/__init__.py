"""Decision diagrams with five elimination rules and a symbolic DEL model checker."""

from ._core import (
    DelddError,
    InvalidInstanceError,
    InvalidSceneError,
    Manager,
    Node,
    ParseError,
    ResourceError,
    Structure,
    backends,
    check_model,
    measure,
    sap_solutions,
)

__all__ = [
    "DelddError",
    "InvalidInstanceError",
    "InvalidSceneError",
    "Manager",
    "Node",
    "ParseError",
    "ResourceError",
    "Structure",
    "backends",
    "check_model",
    "measure",
    "sap_solutions",
]
