import random

import pytest
from hypothesis import settings

from ydlie.brlie import GradedAlgebra
from ydlie.models import graded_end
from ydlie.ydspace import Bicharacter, FiniteAbelianGroup, GradedModule

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")


def c3_chi(L=6):
    """chi(a, b) = w^(ab), w a primitive cube root, inside Q(z_L)."""
    return Bicharacter(FiniteAbelianGroup((3,)), L, {(0, 0): L // 3})


def c3_module(dims=(1, 1, 1), L=6):
    return GradedModule.from_dims(c3_chi(L), list(dims))


def trivial_module(dim, L=2):
    chi = Bicharacter.trivial(FiniteAbelianGroup((1,)), L)
    return GradedModule.from_dims(chi, [dim])


def odd_line(L=2):
    """One vector of degree 1 in C2 with chi(1, 1) = -1."""
    chi = Bicharacter(FiniteAbelianGroup((2,)), L, {(0, 0): L // 2})
    return GradedModule(chi, [(1,)], ["x"])


def grassmann_line(L=2):
    """k[x]/(x^2) with x odd."""
    chi = Bicharacter(FiniteAbelianGroup((2,)), L, {(0, 0): L // 2})
    M = GradedModule(chi, [(0,), (1,)], ["1", "x"])
    return GradedAlgebra(M, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, {0: 1})


def random_bicharacter(group, L, rng):
    """Any assignment of z_L powers whose orders divide the generator orders."""
    table = {}
    for a, na in enumerate(group.orders):
        for b, nb in enumerate(group.orders):
            ok = [k for k in range(L) if (k * na) % L == 0 and (k * nb) % L == 0]
            table[(a, b)] = rng.choice(ok)
    return Bicharacter(group, L, table)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def c3_end():
    return graded_end(c3_module())


@pytest.fixture(scope="session")
def gl2():
    return graded_end(trivial_module(2))


# acceptance criteria register their outcome here; the summary prints one line each
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
