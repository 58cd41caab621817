"""Braid monodromy and Galois groups of parametric polynomials from their supports."""
from .braid import BraidWord, equals
from .galois import Prediction, Report, certify_trinomial, predict, verify
from .numeric import LoopSpec, TrackedBraid, TrackingError, monodromy_group, railway_graph, roots, track
from .permgroup import Perm, PermGroup, WreathGround, ind_sigma, wreath_order, wreath_subgroup_generators
from .reducible import (ReduciblePair, kernel_bruteforce, normalize_pair, numeric_check_reducible,
                        pair_invariants, predicted_galois_reducible, predicted_galois_twolines)
from .support import SupportInvariants, SupportSet, invariants, monomial_specialization, normalize, smith_normal_form
from .trinomial import TrinomialModel, bifurcation_set, fiber_data, predicted_monodromy, to_type1

__all__ = [
    "BraidWord", "equals", "Prediction", "Report", "certify_trinomial", "predict", "verify",
    "LoopSpec", "TrackedBraid", "TrackingError", "monodromy_group", "railway_graph", "roots", "track",
    "Perm", "PermGroup", "WreathGround", "ind_sigma", "wreath_order", "wreath_subgroup_generators",
    "ReduciblePair", "kernel_bruteforce", "normalize_pair", "numeric_check_reducible", "pair_invariants",
    "predicted_galois_reducible", "predicted_galois_twolines",
    "SupportInvariants", "SupportSet", "invariants", "monomial_specialization", "normalize", "smith_normal_form",
    "TrinomialModel", "bifurcation_set", "fiber_data", "predicted_monodromy", "to_type1",
]
