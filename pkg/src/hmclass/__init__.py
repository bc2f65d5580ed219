"""Exact-arithmetic characteristic classes of projective hyperplane
arrangements: Hirzebruch classes, virtual classes, spectrum bookkeeping,
and the Milnor-class correction supported on the singular locus, with
independent computation paths cross-validating each other."""

from .coeffs import PolyY, Rational, RatFuncY, SeriesA, rat, rat_str
from .rings import BlownPlaneRing, ProjRing, RingElement
from .genera import (ChernData, class_from_roots, hirzebruch_series,
                     lambda_y, lambda_y_virtual, verify_identity_qr)
from .arrangement import (Arrangement, ArrangementError, Edge, Stratum,
                          build, chi_y, chi_y_pn, chi_y_stratum,
                          complement_chi, edges, is_dense, localize,
                          milnor_fiber_chi, sigma_strata, x_strata)
from .spectra import (Spectrum, SpectrumError, SpectrumValidationError,
                      sp_monomial, sp_ordinary, sp_shift, sp_user_load,
                      sp_validate)
from .ambient import (GradedClass, specialize, ty_class_pn, virtual_genus,
                      virtual_pushed)
from .strata import (LabelSchema, SigmaChowVector, StratumModel,
                     build_labels, chow_dims, compactify, deligne_class,
                     homology_weight_dims, log_chern, push_to_sigma)
from .milnor import (ConventionSet, DEFAULT_CONVENTIONS, MilnorReport,
                     assemble, calibrate, chern_milnor, degree0_check,
                     td_1py)

__version__ = "0.1.0"
