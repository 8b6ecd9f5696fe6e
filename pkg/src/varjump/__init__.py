"""Variation, lambda-jump and square-function operators with numerical checks
of their Hardy-space inequalities on periodic grids."""

__version__ = "0.1.0"

from .errors import (AtomConstructionError, ConfigError, DomainError, GeometryError,
                     OracleRefusal, TailSpillError, VarJumpError)
from .seqvar import (RealSequence, lambda_jump_count, lambda_jump_oracle, rho_variation,
                     rho_variation_oracle, square_sum)
from .kernels import (KernelSpec, ScaleSet, hypothesis_constant, kernel_fourier, kernel_value,
                      lacunary_scales, make_kernel)
from .fields import (Grid, SampledField, ScaleFamilyField, convolution_family, convolve,
                     jump_field, lp_quasinorm, make_grid, maximal_field, square_field,
                     variation_field)
from .hardy import (Atom, AtomicCombination, CubeRegion, hp_quasinorm, make_atom, synthesize,
                    validate_atom)
from .report import CheckReport
