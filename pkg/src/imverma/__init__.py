"""Exact computations in the negative half of quantum affine sl(2).

Modules: ``qcoeff`` (scalars in v = q^(1/2) and c = gamma^(1/2)), ``pbw``
(straightening), ``kashiwara`` (Omega operators), ``shapovalov`` (the
bilinear form), ``verma`` (reduced imaginary Verma modules), ``crystal``
(crystal basis) and ``sweeps`` (verification suites).
"""

from .crystal import CrystalNode, crystal_omega, crystal_xminus, reduce_mod_q
from .kashiwara import omega_phi, omega_psi, verify_relation
from .pbw import Element, WeightWindow, multiply, straighten
from .qcoeff import Scalar, g_coeff, g_coeff_dual, q_int, q_power, valuation
from .shapovalov import gram, pair
from .verma import HighestWeight, ModuleVector, act_xminus, act_xplus, find_singular_vectors

__version__ = "0.1.0"
