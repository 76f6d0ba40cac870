from .config import settings, load_env
from .errors import ToricKOError, ValidationError, SpecSyntaxError, CollapseNotEstablishedError
from .combinatorics import SimplicialComplex, validate_complex, f_vector, h_vector
from .charfun import CharMatrixZ, CharMatrixF2, validate_integral, reduce_mod2
from .face_ring import GradedAlgebraF2, CohomologyClass, build_face_ring, multiply, poincare_pairing
from .steenrod import Sq2Operator, sq2_operator, sq2_homology, is_spin
from .a1_decomp import A1Decomposition, decompose, verify
from .ext_charts import BigradedChart, ext_s0, ext_m, assemble_e2
from .ko_groups import GradedAbelianGroup, ko_homology, ko_to_KO, KO_cohomology
from .problem import ProblemSpec, parse_spec, render_spec
from .pipeline import Report, run_pipeline

__version__ = "0.1.0"
