"""Sparse-graph algorithms behind first-order model checking on nowhere dense classes.

Augmentations, weak colouring orders, neighbourhood covers, the splitter game,
distance independent sets and a small logic layer, each paired with an
independent brute-force check.
"""

from .augmentation import AugmentationResult, aug, check_neighbourhood_witness, tight_one_aug, verify_aug
from .covers import Cover, build_cover, verify_cover
from .errors import (
    BudgetExceeded,
    DenseInputError,
    DomainError,
    GraphFormatError,
    InputError,
    NowhereDenseError,
    OracleGuardError,
    PropertyViolation,
)
from .graph import ColoredGraph, DiGraph, Graph, bfs_distances, lex_product_colored
from .indepset import brute_dis, brute_rainbow_dis, dis, rainbow_dis
from .io import parse_colors, parse_edge_list, read_graph, serialize_edge_list
from .splitter import GameState, play_game, replay, splitter_move, splitter_wins_exhaustive
from .wcol import VertexOrder, brute_wcol, order_from_aug, wcol_of_order, wreach_set

__version__ = "0.1.0"

__all__ = [
    "AugmentationResult", "aug", "check_neighbourhood_witness", "tight_one_aug", "verify_aug",
    "Cover", "build_cover", "verify_cover",
    "BudgetExceeded", "DenseInputError", "DomainError", "GraphFormatError", "InputError",
    "NowhereDenseError", "OracleGuardError", "PropertyViolation",
    "ColoredGraph", "DiGraph", "Graph", "bfs_distances", "lex_product_colored",
    "brute_dis", "brute_rainbow_dis", "dis", "rainbow_dis",
    "parse_colors", "parse_edge_list", "read_graph", "serialize_edge_list",
    "GameState", "play_game", "replay", "splitter_move", "splitter_wins_exhaustive",
    "VertexOrder", "brute_wcol", "order_from_aug", "wcol_of_order", "wreach_set",
]
