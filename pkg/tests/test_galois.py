import pytest

from galdescent.errors import NotARoot, NotClosed, NotFiniteBase, RankDeficient
from galdescent.extension import finite_field, make_extension
from galdescent.fields import QQ
from galdescent.galois import (
    GaloisGroup,
    check_fixed_field,
    cyclotomic_group,
    dedekind_check,
    frobenius_group,
    verify_automorphism,
)
from galdescent.unipoly import UniPoly


def qi_field():
    return make_extension(QQ, UniPoly.from_ints(QQ, [1, 0, 1]), irreducible=True)


class TestFrobenius:
    def test_gf9(self):
        F9 = finite_field(3, 2)
        group = frobenius_group(F9)
        assert group.order == 2
        t = F9.generator
        # t^3 = t * t^2 = -t = 2t
        assert group.elements[1].image == t * 2
        assert group.elements[1](t) == t * 2

    def test_gf8_order_3(self):
        F8 = finite_field(2, 3)
        group = frobenius_group(F8)
        assert group.order == 3
        # cyclic structure: frob o frob = frob2
        assert group.compose(1, 1) == 2
        assert group.compose(1, 2) == 0

    def test_prime_field_trivial(self):
        F5 = finite_field(5, 1)
        group = frobenius_group(F5)
        assert group.order == 1

    def test_rejects_rational_base(self):
        with pytest.raises(NotFiniteBase):
            frobenius_group(qi_field())


class TestCyclotomic:
    def test_m4_is_conjugation(self):
        ext, group = cyclotomic_group(4)
        assert ext.degree == 2
        assert group.order == 2
        i = ext.generator
        assert group.elements[1](i) == -i

    def test_m5_cyclic_order_4(self):
        ext, group = cyclotomic_group(5)
        assert group.order == 4
        # x -> x^2 generates: check its powers hit everything
        g = group.element_named("s2")
        seen = {group.identity_index}
        k = g
        for _ in range(4):
            seen.add(k)
            k = group.compose(k, g)
        assert len(seen) == 4

    def test_m8_klein_four(self):
        ext, group = cyclotomic_group(8)
        assert group.order == 4
        for i in range(4):
            assert group.compose(i, i) == group.identity_index


class TestVerifyAutomorphism:
    def test_conjugation_valid(self):
        Qi = qi_field()
        auto = verify_automorphism(Qi, -Qi.generator, "conj")
        assert auto(Qi.generator) == -Qi.generator

    def test_not_a_root(self):
        Qi = qi_field()
        with pytest.raises(NotARoot):
            verify_automorphism(Qi, Qi.one)

    def test_frobenius_image_gf9(self):
        F9 = finite_field(3, 2)
        auto = verify_automorphism(F9, F9.generator * 2, "frob")
        assert auto(F9.generator) == F9.generator * 2


class TestUserGroups:
    def test_closure_required(self):
        ext, group = cyclotomic_group(5)
        with pytest.raises(NotClosed):
            GaloisGroup.close_and_verify(
                ext, [group.elements[0], group.elements[1]], require_full=True)

    def test_explicit_sqrt2_group(self):
        K = make_extension(QQ, UniPoly.from_ints(QQ, [-2, 0, 1]), irreducible=True)
        ident = verify_automorphism(K, K.generator, "id")
        conj = verify_automorphism(K, -K.generator, "conj")
        group = GaloisGroup.close_and_verify(K, [ident, conj])
        assert group.order == 2


class TestFixedField:
    def test_qi_full_group(self):
        ext, group = cyclotomic_group(4)
        basis = check_fixed_field(group)
        assert len(basis) == 1
        assert basis[0] == ext.one or basis[0] * basis[0].inverse() == ext.one

    def test_trivial_subgroup(self):
        ext, group = cyclotomic_group(4)
        sub = group.subgroup([group.identity_index])
        assert len(check_fixed_field(sub)) == 2

    def test_gf81_order2_subgroup(self):
        F81 = finite_field(3, 4)
        group = frobenius_group(F81)
        sub = group.subgroup([2])  # generated by frob^2
        assert sub.order == 2
        basis = check_fixed_field(sub)
        assert len(basis) == 2
        # the fixed elements form the subfield GF(9): all satisfy a^9 = a
        for b in basis:
            assert b ** 9 == b

    def test_fundamental_theorem_spot_check(self):
        F64 = finite_field(2, 6)
        group = frobenius_group(F64)
        for gen, expected_order in ((1, 6), (2, 3), (3, 2)):
            sub = group.subgroup([gen])
            assert sub.order == expected_order
            assert len(check_fixed_field(sub)) * sub.order == 6


class TestDedekind:
    def test_qi(self):
        ext, group = cyclotomic_group(4)
        result = dedekind_check(group)
        assert result.rank == 4

    def test_gf9(self):
        group = frobenius_group(finite_field(3, 2))
        assert dedekind_check(group).rank == 4

    def test_trivial_extension(self):
        group = frobenius_group(finite_field(3, 1))
        assert dedekind_check(group).rank == 1

    def test_subgroup_rejected(self):
        group = frobenius_group(finite_field(3, 4))
        with pytest.raises(RankDeficient):
            dedekind_check(group.subgroup([2]))

    def test_degrees_up_to_six(self):
        for p in (2, 3, 5):
            for n in range(2, 7):
                group = frobenius_group(finite_field(p, n))
                assert dedekind_check(group).rank == n * n
        for m in (3, 4, 5, 7, 8, 9):
            _, group = cyclotomic_group(m)
            n = group.ext.degree
            assert dedekind_check(group).rank == n * n
