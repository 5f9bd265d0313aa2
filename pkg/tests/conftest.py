import pytest

from gradalg.catalog import catalog_group, klein_sign_cocycle


@pytest.fixture(scope="session")
def klein():
    return catalog_group("C2xC2")


@pytest.fixture(scope="session")
def sign_cocycle(klein):
    # order-2 class on the Klein group: the one nontrivial twist
    return klein_sign_cocycle(klein.full_subgroup())


@pytest.fixture(scope="session")
def c4():
    return catalog_group("C4")


@pytest.fixture(scope="session")
def s3():
    return catalog_group("S3")


@pytest.fixture(scope="session")
def q8():
    return catalog_group("Q8")
