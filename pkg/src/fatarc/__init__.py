"""Arc schemes along fat points, with exact Groebner and point-counting backends."""
__version__ = "0.1.0"

from .config import Limits, get_limits, limits, set_limits
from .errors import *  # noqa: F401,F403
from .polycore import GF, QQ, PolyRing, Polynomial, PrimeField, RationalField, grevlex, lex, poly_parse
from .ideals import (GroebnerBasis, Ideal, eliminate, groebner_basis, ideal_combine, ideal_intersect,
                     ideal_membership, krull_dim, length, normal_form, radical_membership, standard_monomials)
from .fatpoints import FatPoint, Germ, fp_length, fp_product, jet, line_point, make_fat_point, plane_jet
from .arcs import ArcDim, ArcScheme, arc_dim, arc_motif, arc_scheme, deformed_arc_scheme, image_closure
from .motifs import ConstructibleMotif, closed, cone, empty, whole
from .classes import (L, ClassExpr, Fingerprint, LValue, class_arith, fp_fingerprint, inclusion_exclusion,
                      point_count_fat, point_count_scheme)
from .frobchar import bracket_power, frobenius_adjunction_counts, frobenius_transform, relative_frobenius_map
from .series import (SeriesReport, auto_igusa, hilbert_kunz_series, hilbert_series, igusa_series,
                     milnor_series)
from .motint import StepFunction, char_function, constant, integrate, integrate_local, step_combine
