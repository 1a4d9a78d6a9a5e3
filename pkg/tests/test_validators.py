import pytest

from homlab.typing import Any, NamedTuple, Optional
from homlab.validators import validate_check_id, validate_jobs, validate_max_n, validate_nu, validate_vertex_count
from tests.helpers import parametrize_helper


class MaxNParams(NamedTuple):
    max_n: Any
    cap: Optional[int]
    errors: Optional[str]


@pytest.mark.parametrize(
    **parametrize_helper({
        "within default cap": MaxNParams(max_n=7, cap=None, errors=None),
        "within given cap": MaxNParams(max_n=2, cap=2, errors=None),
        "above default cap": MaxNParams(
            max_n=8,
            cap=None,
            errors="Requesting digraphs with 8 vertices exceeds the cap of 7.",
        ),
        "above given cap": MaxNParams(
            max_n=3,
            cap=2,
            errors="Requesting digraphs with 3 vertices exceeds the cap of 2.",
        ),
        "zero": MaxNParams(max_n=0, cap=None, errors="Argument 'max_n' must be a positive integer."),
        "bool": MaxNParams(max_n=True, cap=None, errors="Argument 'max_n' must be a positive integer."),
        "string": MaxNParams(max_n="3", cap=None, errors="Argument 'max_n' must be a positive integer."),
    }),
)
def test_validate_max_n(max_n, cap, errors):
    if errors:
        with pytest.raises(ValueError, match=errors):
            validate_max_n(max_n, cap=cap)
    else:
        assert validate_max_n(max_n, cap=cap) == max_n


def test_validate_max_n__cap_from_settings(settings):
    settings.HOMLAB = {"MAX_CATALOG_N": 9}
    assert validate_max_n(9) == 9


@pytest.mark.parametrize("nu", [0, 1, 5])
def test_validate_nu(nu):
    assert validate_nu(nu) == nu


@pytest.mark.parametrize("nu", [-1, 1.5, False, None])
def test_validate_nu__invalid(nu):
    with pytest.raises(ValueError, match="Argument 'nu' must be a non-negative integer."):
        validate_nu(nu)


@pytest.mark.parametrize("jobs", [None, 0, 4])
def test_validate_jobs(jobs):
    assert validate_jobs(jobs) == jobs


def test_validate_jobs__negative():
    with pytest.raises(ValueError, match="Argument 'jobs' must be a non-negative integer."):
        validate_jobs(-2)


def test_validate_vertex_count():
    assert validate_vertex_count(1) == 1
    with pytest.raises(ValueError, match="at least one vertex, got 0"):
        validate_vertex_count(0)


def test_validate_check_id():
    assert validate_check_id("prop1", {"prop1", "thm5"}) == "prop1"
    with pytest.raises(ValueError, match="Unknown check 'prop2'. Choices: prop1, thm5."):
        validate_check_id("prop2", {"thm5", "prop1"})
