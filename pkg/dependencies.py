from functools import lru_cache

from class_table import BoundClassTable, bind
from config import Settings, get_settings
from health_check import HealthMonitor
from liealg import AdjointBasis, TitsGroup
from rootsys import RootSystem, StructureConstantTable, build_e6, structure_constants
from weyl import WeylGroup

# By using lru_cache, we ensure that each of these functions is executed only once,
# creating a single instance of each table (singleton pattern).

@lru_cache()
def get_settings_dep() -> Settings:
    """Dependency to get the run settings."""
    return get_settings()

@lru_cache()
def get_root_system_dep() -> RootSystem:
    """Dependency to get the E6 root system."""
    return build_e6()

@lru_cache()
def get_structure_constants_dep() -> StructureConstantTable:
    """Dependency to get the structure constants."""
    return structure_constants(get_root_system_dep())

@lru_cache()
def get_adjoint_basis_dep() -> AdjointBasis:
    """Dependency to get the adjoint representation."""
    return AdjointBasis(get_root_system_dep(), get_structure_constants_dep())

@lru_cache()
def get_tits_group_dep() -> TitsGroup:
    """Dependency to get the n_r generators and eta signs."""
    return TitsGroup(get_adjoint_basis_dep())

@lru_cache()
def get_weyl_group_dep() -> WeylGroup:
    """Dependency to get the enumerated Weyl group."""
    return WeylGroup(get_root_system_dep(), get_tits_group_dep(), max_cosets=get_settings_dep().MAX_COSETS)

@lru_cache()
def get_class_table_dep() -> BoundClassTable:
    """Dependency to get the class table bound to the Weyl group."""
    return bind(get_weyl_group_dep())

@lru_cache()
def get_health_monitor_dep() -> HealthMonitor:
    """Dependency to get the HealthMonitor."""
    return HealthMonitor()


def warm_up() -> None:
    """Build every table before worker threads start."""
    get_class_table_dep().rows
    get_weyl_group_dep().conjugacy_labels()
