import pytest

from ctxgeom.scenarios import (
    BELL_OPTIMAL_ANGLES,
    ENTROPIC_OPTIMAL_ANGLES,
    ChshConfig,
    build_chsh,
    build_ncycle,
)


@pytest.fixture(scope="session")
def kcbs():
    return build_ncycle(5)


@pytest.fixture(scope="session")
def chsh_bell():
    return build_chsh(ChshConfig(*BELL_OPTIMAL_ANGLES))


@pytest.fixture(scope="session")
def chsh_entropic():
    return build_chsh(ChshConfig(*ENTROPIC_OPTIMAL_ANGLES))
