import os
import tempfile

# Keep the settings store out of the user's config directory.
os.environ["POISSON_FORGE_HOME"] = tempfile.mkdtemp(prefix="poisson-forge-")

import pytest

from poissonforge.liebialg.LieAlgebra import LieAlgebra


@pytest.fixture
def ax_b() -> LieAlgebra:
    return LieAlgebra.from_table("ax+b", ["X", "Y"], {("X", "Y"): {"X": 1}})


@pytest.fixture
def sl2() -> LieAlgebra:
    return LieAlgebra.from_table(
        "sl2",
        ["H", "X", "Y"],
        {("H", "X"): {"X": 2}, ("H", "Y"): {"Y": -2}, ("X", "Y"): {"H": 1}},
    )


@pytest.fixture
def su2() -> LieAlgebra:
    return LieAlgebra.from_table(
        "su2",
        ["e1", "e2", "e3"],
        {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e2": 1}},
    )


@pytest.fixture
def plane() -> LieAlgebra:
    return LieAlgebra.from_table("r2", ["xi", "eta"], {("xi", "eta"): {"eta": 1}})


@pytest.fixture
def sl2_fhe() -> LieAlgebra:
    return LieAlgebra.from_table(
        "sl2",
        ["F", "H", "E"],
        {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}},
    )


@pytest.fixture
def usl2(sl2_fhe):
    from poissonforge.ncalg.semiclassical import enveloping_algebra

    return enveloping_algebra(sl2_fhe, order=3)


@pytest.fixture
def quantum_plane():
    from poissonforge.ncalg.Presentation import Presentation

    return Presentation(
        "qplane", ("a", "b"), {("b", "a"): {("a", "b"): "exp(hbar)"}}, invertible={"a"}, order=4
    )


@pytest.fixture
def uh_sl2():
    from tests.helpers import build_uh_sl2

    return build_uh_sl2()
