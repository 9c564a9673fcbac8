import pytest

from twisted_rings.cocycles import anticommuting_pair_cocycle
from twisted_rings.d8_case import (
    D8CaseStudy,
    build_d8_psi,
    d8_case_study,
    d8_extension,
)
from twisted_rings.extensions import apply_psi
from twisted_rings.rings import is_unit


def _item(study: D8CaseStudy, name: str):
    for item in study.items:
        if item.name == name:
            return item
    raise AssertionError(f"missing item {name!r}")


def test_extension_shape():
    for n in (0, 1):
        ext = d8_extension(n)
        assert ext.is_central
        assert ext.total.order == 8 << n
        assert ext.quotient_group.order == 4 << n
        assert ext.sub_group.order == 2


def test_target_twist_is_the_canonical_one():
    for n in (0, 1, 2):
        psi = build_d8_psi(n)
        assert psi.target.cocycle.table == anticommuting_pair_cocycle(n).table


def test_generator_images():
    # a -> -u_gh under this section (a = 1 * mu(gh) * a^2-part), b -> u_g
    psi = build_d8_psi(0)
    src, tgt = psi.source, psi.target
    assert apply_psi(psi, src.basis(4)) == tgt.basis(1)  # b -> u_g
    assert apply_psi(psi, src.basis(5)) == tgt.basis(2)  # ab -> u_h
    assert apply_psi(psi, src.basis(3)) == tgt.basis(3)  # a^3 -> u_gh
    assert apply_psi(psi, src.basis(1)) == -tgt.basis(3)  # a -> -u_gh
    assert apply_psi(psi, src.basis(2)) == -tgt.one()  # a^2 -> -1


def test_study_runs_clean_at_small_levels():
    for n in (0, 1):
        study = d8_case_study(n)
        assert study.ok
        assert _item(study, "psi(b1) = v^2").status == "verified"
        assert _item(study, "psi(b2) = w^2").status == "verified"
        published = _item(study, "psi(b3) = w v^-1 (published form)")
        assert published.status == "refuted"
        assert published.expected_discrepancy
        corrected = _item(
            study, "psi(b3) = -v w^-1 and psi(a^2 b3^-1) = w v^-1 (corrected)"
        )
        assert corrected.status == "verified"


def test_torsion_kernel_item():
    study = d8_case_study(1)
    item = _item(study, "torsion kernel units")
    assert item.status == "verified"
    assert item.computed == ["-u[a2]", "1"]


def test_cokernel_counts():
    study0 = d8_case_study(0)
    assert _item(study0, "cokernel size at n = 0").computed == 2
    lower0 = _item(study0, "cokernel classes from small unipotents")
    assert lower0.status == "lower-bound"
    assert lower0.computed["certified_nontrivial"] == 1

    study1 = d8_case_study(1)
    lower1 = _item(study1, "cokernel classes from small unipotents")
    assert lower1.status == "lower-bound"
    assert lower1.computed["certified_nontrivial"] == 3
    assert lower1.computed["pairwise_ratios_certified"]
    assert _item(study1, "class count factorization").status == "verified"


def test_kernel_embedding_of_b3_identity():
    # the corrected identity chain: psi(b3) is the inverse of psi(b3)^-1
    psi = build_d8_psi(0)
    src, tgt = psi.source, psi.target
    one = src.one()
    b = src.basis(4)
    ab = src.basis(5)
    b3 = one - (one + ab) * b * (one - ab)
    image = apply_psi(psi, b3)
    assert image * apply_psi(psi, 2 * one - b3) == tgt.one()
    assert is_unit(image) is not None


def test_level_cap():
    with pytest.raises(ValueError):
        d8_extension(5)
