"""ergolab: a finite-horizon laboratory for ergodic averages.

Simulation and measurement of Birkhoff averages, irregular (historic)
orbits, Lambda_N escaper probes, sub-additive cocycle exponents, and
cylinder-exact entropy estimators over a small catalog of dynamical
systems. Every reported quantity carries its horizon; nothing here claims
a limit.
"""

from .baire import (CriterionVerdict, CylinderCell, IntervalCell, LambdaQuery,
                    LambdaReport, criterion_check, cylinder_cover,
                    dyadic_cover, e_set_membership, escaper_probe,
                    lambda_membership, replay_escaper)
from .birkhoff import (AverageTrace, DenseTail, Dyadic, Explicit, TailBounds,
                       birkhoff_average, empirical_signature, oscillation,
                       psi_series, tail_bounds, trace)
from .cocycles import (AdditiveFromObservable, CocycleLogNorm, ConstantDiag,
                       FirstIntegralReport, InverseTranspose, LyapunovGap,
                       NegLogBallMeasure, RotationMatrix, Schrodinger,
                       SymbolDiag, first_integral_deviation, lyapunov_gap,
                       m_phi_estimate, spectral_norm, subadditive_value)
from .config import ExperimentConfig, parse_config, render
from .entropy import (BernoulliMeasure, EntropyTrace, MarkovMeasure,
                      WeakGibbsReport, brin_katok_trace, weak_gibbs_check,
                      weak_gibbs_ratio)
from .errors import (ConfigError, DomainError, DomainEscapeError,
                     ErgolabError, HorizonError, ReportIOError, SamplerError)
from .irregular import build_irregular_word
from .observables import (Observable, constant, coordinate0, cos_circle,
                          fiber_height, piecewise_linear, symbol_table)
from .points import (BlockSchedule, EuclideanPoint, PrefixWord, SymbolicWord,
                     circle_point, cylinder_point, symbolic_distance,
                     torus_point)
from .samplers import (DenseSampler, GridJitter, PreimageTree, StableTail,
                       make_dense_sample)
from .systems import (Doubling, FullShift, Rotation, SkewProduct, Viana,
                      iterate)

__version__ = "0.1.0"
