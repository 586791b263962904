"""Polychromatic colorings of hypercube faces: constructions, exact
verification, proof certificates and upper bounds."""
from .bounds import asymptotic_ratio, lattice_bound_check, p_bas
from .certificate import crux_certificate
from .colorings import (CruxParams, LinearColoring, basic_coloring, crux_coloring, decode,
                        encode, face_color, load, main_coloring, make_linear,
                        product_coloring, save, trivial_coloring)
from .groups import Group
from .kernel import BACKEND
from .search import search_best_linear
from .verifier import (BudgetExceeded, Verdict, verify_cube_oracle, verify_reduced,
                       verify_sampled)

__version__ = "0.1.0"
