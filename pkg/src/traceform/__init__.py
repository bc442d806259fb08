"""Dynkin indices and trace forms of representations of split simple groups."""
from .classify import (
    classify,
    nondegenerate_exists,
    table1_render,
    trace_zero_all,
    trace_zero_single,
    twisted_classify,
    very_good_excluded_primes,
)
from .dynkin import (
    group_index,
    irrep_data,
    irrep_dimension,
    irrep_index,
    orbit_index_closed,
    orbit_index_enum,
    tensor_index,
    weight_multiplicities,
)
from .errors import CapExceeded, Inconclusive, InvalidInput, OrbitTooLarge, TraceformError
from .lattice import (
    GroupSpec,
    adjoint,
    compute_E,
    compute_Eq,
    named_group,
    parse_group_spec,
    resolve_lattices,
    simply_connected,
)
from .rootsys import RootSystem, Weight, build_root_system, dual_coxeter_number

__version__ = "0.1.0"
