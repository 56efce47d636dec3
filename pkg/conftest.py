import pytest

# No application imports at module level


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the 10^4-case property sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: randomized sweeps over every class; enabled by --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def test_settings():
    """
    Settings for the test session: small caps, a single worker, no timings.
    """
    # moved import inside fixture
    from config import Settings

    return Settings(
        Q_VALUES=[2, 3],
        CLASSES=[1, 7, 24],
        MODES=["sc"],
        MAX_FIELD_SIZE=2**32,
        MAX_ENUMERATION=10**6,
        WORKERS=1,
        LOG_LEVEL="DEBUG",
    )


@pytest.fixture(scope="session")
def root_system():
    from dependencies import get_root_system_dep
    return get_root_system_dep()


@pytest.fixture(scope="session")
def structure_constants():
    from dependencies import get_structure_constants_dep
    return get_structure_constants_dep()


@pytest.fixture(scope="session")
def adjoint_basis():
    from dependencies import get_adjoint_basis_dep
    return get_adjoint_basis_dep()


@pytest.fixture(scope="session")
def tits():
    from dependencies import get_tits_group_dep
    return get_tits_group_dep()


@pytest.fixture(scope="session")
def weyl_group():
    """The enumerated W(E6); building it takes a few seconds, so it is shared."""
    from dependencies import get_weyl_group_dep
    return get_weyl_group_dep()


@pytest.fixture(scope="session")
def class_table(weyl_group):
    from dependencies import get_class_table_dep
    return get_class_table_dep()


@pytest.fixture(scope="session")
def f9():
    """F_9 = F_3^2."""
    from ff import build_field
    return build_field(3, 1, 2)


@pytest.fixture(scope="session")
def f16():
    from ff import build_field
    return build_field(2, 2, 2)
