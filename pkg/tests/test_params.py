import pytest

from qwhittaker.exactnum import exact
from qwhittaker.params import ParamSet, ParameterError, preset, preset_names


def test_presets_derived_symbols():
    p1 = preset("P1")
    assert p1.t0 == exact("1/2") == p1.sqrt_q
    p2 = preset("P2")
    assert p2.t0 == exact("1/2") and p2.sqrt_q == exact("1/3")
    assert preset_names() == ["D", "DE", "P1", "P2", "R"]


def test_toda_parameters():
    p = preset("D", t=0)
    assert p.toda_t == (exact("1/3"), exact("-1/3"), exact("1/2"), exact("-1/2"))
    de = preset("DE")
    assert de.t0_sq == 1 and de.toda_t == (1, -1, exact("1/2"), exact("-1/2"))


def test_tau():
    p = preset("P1")
    assert p.tau_hat(2) == exact("1/2") and p.tau_hat(1) == exact("1/6")
    assert p.tau_sq(1) == exact("1/9") * exact("1/4")


@pytest.mark.parametrize("kwargs,needle", [
    (dict(n=2, q="5/4", t="1/3", that=("1/2",) * 4), "q must lie"),
    (dict(n=2, q="1/4", t="0", that=("1/2",) * 4), "generic-t mode needs t"),
    (dict(n=2, q="1/4", t="1/3", that=("1/2",) * 3), "four boundary"),
    (dict(n=2, q="1/4", t="1/3", that=("-1/2", "1/2", "1/2", "-1/2")), "that_0 > 0"),
    (dict(n=2, q="1/4", t="1/3", that=("1/2", "1/2", "1/2", "-1/2")), "positivity"),
    (dict(n=2, q="1/4", t="1/3", that=("1", "1/2", "1/2", "1/2")), "parameter domain"),
    (dict(n=0, q="1/4", t="1/3", that=("1/2",) * 4), "rank"),
])
def test_parameter_errors_name_the_constraint(kwargs, needle):
    with pytest.raises(ParameterError, match=needle):
        ParamSet(**{k: (tuple(exact(x) for x in v) if k == "that" else (exact(v) if k in "qt" else v))
                    for k, v in kwargs.items()})


def test_square_root_rule():
    p = ParamSet(2, exact("1/2"), 0, tuple(exact(x) for x in ("1/2", "1/2", "1/2", "1/3"))
                 , "t-zero")
    with pytest.raises(ParameterError, match="rational square"):
        p.sqrt_q
    with pytest.raises(ParameterError, match="rational square"):
        p.t0


def test_mode_switches_and_json():
    p = preset("P1")
    assert p.at_t(0).mode == "t-zero"
    assert preset("R").mode == "that0-zero"
    assert p.at_t(0).with_that((0, exact("1/2"), exact("1/2"), exact("1/2"))).mode == "that0-zero"
    with pytest.raises(ParameterError, match="needs t = 0"):
        p.with_that((0, exact("1/2"), exact("1/2"), exact("1/2")))
    assert ParamSet.from_json(p.to_json()) == p
    assert p.to_json()["that"] == ["1/2"] * 4


def test_unknown_preset():
    with pytest.raises(ParameterError, match="unknown preset"):
        preset("P9")
