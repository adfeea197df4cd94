"""Exact rank-2 Kac-Moody groups over finite-field towers, with their twin trees."""

from .gf import FieldElt, FieldTower, shared_tower, tower_create, unit_of_order_avoiding
from .kmgroup import GroupElt, KMGroup, TorusElt, UPlusWord, center_order
from .probe import ProofTranscript, proof_replay, saturate
from .rootsys import ALPHA, BETA, GCM2, GCMError, Root, WeylElt, tau_root
from .twintree import Ball, Chamber, TwinTree, covolume_limit, covolume_partial

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "BETA", "Ball", "Chamber", "FieldElt", "FieldTower", "GCM2", "GCMError",
    "GroupElt", "KMGroup", "ProofTranscript", "Root", "TorusElt", "TwinTree", "UPlusWord",
    "WeylElt", "center_order", "covolume_limit", "covolume_partial", "proof_replay",
    "saturate", "shared_tower", "tau_root", "tower_create", "unit_of_order_avoiding",
]
