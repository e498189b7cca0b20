from .consistency import (RigidityVerdict, SpechtProbe, equivalence_implication, functor_is_equivalence,
                          gendo_symmetric_halving, hn_domdim_bound, rigidity_check, specht_uniqueness_probe,
                          surviving_weights, truncation_consistency)
from .cover import CoverSpec, CoverVerdict, RQF3Verdict, double_centralizer_check, require_rqf3, rqf3_check
from .dimensions import (KINDS, Dimension, DimensionReport, domdim_algebra, domdim_brute, domdim_module, domdim_of,
                         global_dimension, hn_dim_proj, hn_dim_standard, inf_domdim_standards, minimum,
                         qschur_domdim_formula, schur_domdim_formula, tensor_space_dimensions)
