import pytest

from galdescent.errors import (
    DivisionByZero,
    NotIrreducible,
    NotMonic,
    NotSquarefree,
)
from galdescent.fields import GF, QQ
from galdescent.extension import ASSERTED, UNASSERTED, VERIFIED, finite_field, make_extension
from galdescent.unipoly import UniPoly, cyclotomic, default_modulus, is_irreducible_mod_p


F3 = GF(3)


def poly(field, ints):
    return UniPoly.from_ints(field, ints)


class TestMakeExtension:
    def test_gf9_from_t2_plus_1(self):
        # t^2 + 1 has no root mod 3: trial of t in {0,1,2}
        for t in range(3):
            assert (t * t + 1) % 3 != 0
        F9 = make_extension(F3, poly(F3, [1, 0, 1]))
        assert F9.degree == 2
        assert F9.order == 9
        assert F9.irreducibility == VERIFIED

    def test_gaussian_field(self):
        Qi = make_extension(QQ, poly(QQ, [1, 0, 1]), irreducible=True)
        assert Qi.degree == 2
        assert Qi.irreducibility == ASSERTED

    def test_squarefree_but_reducible_over_q(self):
        K = make_extension(QQ, poly(QQ, [-1, 0, 1]), irreducible=False)
        assert K.irreducibility == UNASSERTED

    def test_reducible_over_f5(self):
        with pytest.raises(NotIrreducible):
            make_extension(GF(5), poly(GF(5), [-1, 0, 1]))

    def test_not_squarefree(self):
        with pytest.raises(NotSquarefree):
            make_extension(QQ, poly(QQ, [0, 0, 1]))

    def test_not_monic(self):
        with pytest.raises(NotMonic):
            make_extension(QQ, poly(QQ, [1, 0, 2]))


class TestArithmetic:
    def test_invert_one(self):
        Qi = make_extension(QQ, poly(QQ, [1, 0, 1]), irreducible=True)
        assert Qi.one.inverse() == Qi.one

    def test_invert_i(self):
        Qi = make_extension(QQ, poly(QQ, [1, 0, 1]), irreducible=True)
        i = Qi.generator
        assert i.inverse() == -i
        assert i * i.inverse() == Qi.one

    def test_invert_t_in_gf9(self):
        F9 = finite_field(3, 2)
        t = F9.generator
        # t * 2t = 2 t^2 = 2 * (-1) = 1 mod 3
        assert t.inverse() == t * 2
        assert t * t.inverse() == F9.one

    def test_invert_zero_raises(self):
        F9 = finite_field(3, 2)
        with pytest.raises(DivisionByZero):
            F9.zero.inverse()

    def test_zero_divisor_in_unasserted_ring(self):
        K = make_extension(QQ, poly(QQ, [-1, 0, 1]), irreducible=False)
        t = K.generator
        with pytest.raises(DivisionByZero):
            (t - 1).inverse()

    def test_invert_is_involution(self):
        F9 = finite_field(3, 2)
        for a in F9.elements():
            if a:
                assert a.inverse().inverse() == a

    def test_exhaustive_inverse_oracle_gf9(self):
        F9 = finite_field(3, 2)
        for a in F9.elements():
            if a:
                assert a * a.inverse() == F9.one

    def test_frobenius_power(self):
        F8 = finite_field(2, 3)
        for a in F8.elements():
            assert a ** 8 == a


class TestDefaultModulus:
    def test_gf9_default_is_t2_plus_1(self):
        assert default_modulus(3, 2) == poly(F3, [1, 0, 1])

    def test_gf8_default_is_t3_t_1(self):
        F2 = GF(2)
        assert default_modulus(2, 3) == poly(F2, [1, 1, 0, 1])

    def test_irreducibility_exhaustive_degree_le_4(self):
        # Oracle: trial division by all lower-degree monic polynomials;
        # make_extension must accept exactly the irreducible ones.
        for p in (2, 3):
            field = GF(p)
            monics = {1: [], 2: [], 3: [], 4: []}
            for deg in (1, 2, 3, 4):
                for code in range(p ** deg):
                    coeffs, rest = [], code
                    for _ in range(deg):
                        coeffs.append(rest % p)
                        rest //= p
                    monics[deg].append(poly(field, coeffs + [1]))
            for deg in (2, 3, 4):
                for f in monics[deg]:
                    has_factor = any(
                        (f % g).is_zero
                        for low in range(1, deg)
                        for g in monics[low]
                    )
                    assert is_irreducible_mod_p(f) == (not has_factor), f.format()
                    if has_factor:
                        with pytest.raises(NotIrreducible):
                            make_extension(field, f)
                    else:
                        assert make_extension(field, f).degree == deg


class TestCyclotomic:
    def test_phi4(self):
        assert cyclotomic(4) == poly(QQ, [1, 0, 1])

    def test_phi5(self):
        assert cyclotomic(5) == poly(QQ, [1, 1, 1, 1, 1])

    def test_phi8(self):
        assert cyclotomic(8) == poly(QQ, [1, 0, 0, 0, 1])

    def test_phi9(self):
        assert cyclotomic(9) == poly(QQ, [1, 0, 0, 1, 0, 0, 1])
