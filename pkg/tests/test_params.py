import dataclasses

import pytest

from brauercalc.coeff import GR_I, gr, lp_int, lp_parse, lp_str
from brauercalc.params import (
    FAMILIES,
    PRESETS,
    CategoryParams,
    ParamError,
    check_consistency,
    classify,
    family_instantiate,
    legal_unit_choices,
    params_from_json,
    preset,
    wenzl_feasibility,
)


def test_presets_are_consistent():
    for name in PRESETS:
        p = preset(name)
        assert check_consistency(p) == []


def test_preset_fingerprints_stable_and_distinct():
    fps = {name: preset(name).fingerprint() for name in PRESETS}
    assert len(set(fps.values())) == len(PRESETS)
    assert preset("bwm").fingerprint() == fps["bwm"]


def test_all_families_symbolically_consistent():
    count = 0
    for fam in FAMILIES:
        for eps in (1, -1):
            choices = legal_unit_choices(fam, eps)
            assert choices, "family %s admits no units for epsilon=%d" % (fam, eps)
            for e, ep in choices:
                p = family_instantiate(fam, eps, e, {}, e_prime=ep)
                assert check_consistency(p) == [], (fam, eps, str(e), str(ep))
                count += 1
    assert count == 100


def test_illegal_unit_choices_rejected():
    # the tangle-style family needs e^2 = epsilon
    with pytest.raises(ParamError):
        family_instantiate("Cbb_l_s", 1, GR_I, {})
    # the signed-pair families need e^2 = -epsilon
    with pytest.raises(ParamError):
        family_instantiate("Cb0_bl_s", 1, gr(1), {})
    with pytest.raises(ParamError):
        family_instantiate("Cb0_l_0", 1, GR_I, {})  # e_prime required


def test_mutation_detection_bwm():
    p = preset("bwm")
    dependent = [
        "lam_p", "sig_p", "delta", "rho", "a", "c", "d", "d_p",
        "f", "f_p", "D", "D_p", "E", "E_p", "F", "F_p",
    ]
    for name in dependent:
        corrupted = dataclasses.replace(p, **{name: getattr(p, name) + lp_int(1)})
        assert check_consistency(corrupted) != [], "corruption of %s undetected" % name


def test_bwm_preset_values():
    p = preset("bwm")
    assert p.rho == lp_parse("v^-1")
    assert p.c == lp_parse("-v*z")
    assert p.a == lp_int(1)
    assert p.delta == lp_parse("v^-1*z^-1 - v*z^-1 + 1")
    assert p.f == p.f_p == lp_parse("z")
    assert p.lam == p.lam_p == lp_parse("v")


def test_periplectic_q_preset_values():
    p = preset("periplectic_q")
    assert p.epsilon == -1
    assert p.lam == lp_parse("q")
    assert p.lam_p == lp_parse("-q^-1")
    assert p.rho == lp_parse("-q")
    assert p.a == lp_int(1)
    assert p.d_p == lp_parse("-q + q^-1")
    assert p.D_p == lp_parse("1 - q^2")
    assert p.E_p == lp_parse("q - q^-1")
    assert p.sig_p == lp_int(-1)
    assert p.f == lp_parse("q - q^-1") and p.f_p.is_zero()


def test_periplectic_is_q_one_specialization():
    pq = preset("periplectic_q")
    pp = preset("periplectic")
    sub = {"q": lp_int(1)}
    for name in (
        "lam", "lam_p", "sig", "sig_p", "delta", "rho", "a", "b", "c",
        "d", "d_p", "f", "f_p", "D", "D_p", "E", "E_p", "F", "F_p",
    ):
        assert getattr(pq, name).substitute(sub) == getattr(pp, name), name
    assert pq.epsilon == pp.epsilon
    assert pq.e == pp.e and pq.e_prime == pp.e_prime


def test_classify_presets():
    assert classify(preset("bwm")) == ["Cbb_l_s"]
    assert "C00_l_s" in classify(preset("brauer"))
    assert classify(preset("periplectic_q")) == ["Cb0_bl_s"]
    assert classify(preset("periplectic_q_op")) == ["C0b_bl_s"]
    assert "C00_ml_s" in classify(preset("periplectic"))


def test_params_json_round_trip():
    for name in PRESETS:
        p = preset(name)
        assert params_from_json(p.to_json()) == p


def test_wenzl_feasibility_infeasible_with_witness():
    report = wenzl_feasibility()
    assert report.status == "Infeasible"
    assert report.witnesses
    for _, witness in report.witnesses:
        w = lp_parse(witness)
        assert not w.is_zero()
        assert w == lp_parse("q*r + 1")
