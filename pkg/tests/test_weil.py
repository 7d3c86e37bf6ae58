import pytest

from galdescent.affine import AffineAlgebra
from galdescent.enumeration import count_affine_points
from galdescent.errors import NotSeparable
from galdescent.extension import finite_field
from galdescent.fields import GF, QQ
from galdescent.flat import FiniteAlgebra
from galdescent.galois import cyclotomic_group, frobenius_group
from galdescent.groebner import Ideal, ideal_equal
from galdescent.multipoly import MultiPolynomial
from galdescent.weil import (
    SeparableExtensionData,
    conjugate_product_check,
    etale_splitting,
    verify_universal_points,
    weil_restrict,
)


def gm(field):
    x, y = MultiPolynomial.ring_vars(field, ("x", "y"))
    return AffineAlgebra(field, ("x", "y"), Ideal(field, ("x", "y"), [x * y - 1]))


def line(field):
    return AffineAlgebra(field, ("x",))


def ff_data(p, n):
    K = finite_field(p, n)
    return K, SeparableExtensionData.discover(K, K, frobenius_group(K))


class TestWeilRestrict:
    def test_line_over_f4(self):
        K, data = ff_data(2, 2)
        result = weil_restrict(line(K), data)
        assert result.restricted.variables == ("x_0", "x_1")
        assert not result.restricted.relations.generators
        assert count_affine_points([], GF(2), 2) == 4

    def test_gm_over_f4_point_identity(self):
        K, data = ff_data(2, 2)
        result = weil_restrict(gm(K), data)
        assert len(result.restricted.relations.generators) == 2
        restricted_count = count_affine_points(
            list(result.restricted.relations.generators), GF(2), 4)
        source_count = count_affine_points(
            list(gm(K).relations.generators), K, 2)
        assert restricted_count == source_count == 3

    def test_sqrt_i_hand_expansion(self):
        Qi, group = cyclotomic_group(4)
        data = SeparableExtensionData.discover(Qi, Qi, group)
        (x,) = MultiPolynomial.ring_vars(Qi, ("x",))
        i = MultiPolynomial.constant(Qi, ("x",), Qi.generator)
        V = AffineAlgebra(Qi, ("x",), Ideal(Qi, ("x",), [x * x - i]))
        result = weil_restrict(V, data)
        names = result.restricted.variables
        Y0, Y1 = MultiPolynomial.ring_vars(QQ, names)
        # (Y0 + i Y1)^2 - i = (Y0^2 - Y1^2) + (2 Y0 Y1 - 1) i
        expected = Ideal(QQ, names, [Y0 * Y0 - Y1 * Y1, 2 * Y0 * Y1 - 1])
        assert ideal_equal(result.restricted.relations, expected)

    def test_dimension_bookkeeping(self):
        K, data = ff_data(3, 2)
        x, y = MultiPolynomial.ring_vars(K, ("x", "y"))
        t = MultiPolynomial.constant(K, ("x", "y"), K.generator)
        V = AffineAlgebra(K, ("x", "y"), Ideal(
            K, ("x", "y"), [x * x + y - t, x * y - 1]))
        result = weil_restrict(V, data)
        assert len(result.restricted.variables) == 2 * 2
        # before reduction each relation contributes exactly d components
        assert len(result.raw_components) == 2 * 2
        assert len(result.restricted.relations.generators) == 4


class TestPointIdentities:
    CASES = ((2, 2), (3, 2), (2, 3), (5, 2))

    def curve(self, K):
        x, y = MultiPolynomial.ring_vars(K, ("x", "y"))
        return AffineAlgebra(K, ("x", "y"),
                             Ideal(K, ("x", "y"), [y * y - x ** 3 - 1]))

    def test_restriction_point_identity(self):
        for q, d in self.CASES:
            K = finite_field(q, d)
            data = SeparableExtensionData.discover(K, K, frobenius_group(K))
            for V in (line(K), gm(K), self.curve(K)):
                result = weil_restrict(V, data)
                restricted_count = count_affine_points(
                    list(result.restricted.relations.generators),
                    GF(q), len(result.restricted.variables))
                source_count = count_affine_points(
                    list(V.relations.generators), K, len(V.variables))
                assert restricted_count == source_count

    def test_conjugate_product_counts(self):
        for q, d in self.CASES:
            K = finite_field(q, d)
            data = SeparableExtensionData.discover(K, K, frobenius_group(K))
            for V in (line(K), gm(K), self.curve(K)):
                result = weil_restrict(V, data)
                report = conjugate_product_check(result, budget=5_000_000)
                counts = report.conjugate_counts
                assert len(set(counts)) == 1  # conjugates have equal counts
                assert report.restricted_count == counts[0] ** d

    def test_product_scheme_functoriality(self):
        # restriction of a product has the product of the point counts
        K = finite_field(2, 2)
        data = SeparableExtensionData.discover(K, K, frobenius_group(K))
        x, y, u, v = MultiPolynomial.ring_vars(K, ("x", "y", "u", "v"))
        product = AffineAlgebra(
            K, ("x", "y", "u", "v"),
            Ideal(K, ("x", "y", "u", "v"), [x * y - 1, u ** 2 - v]))
        factor1 = gm(K)
        u2, v2 = MultiPolynomial.ring_vars(K, ("u", "v"))
        factor2 = AffineAlgebra(K, ("u", "v"),
                                Ideal(K, ("u", "v"), [u2 ** 2 - v2]))
        r_prod = weil_restrict(product, data)
        r1 = weil_restrict(factor1, data)
        r2 = weil_restrict(factor2, data)

        def count(result):
            return count_affine_points(
                list(result.restricted.relations.generators), GF(2),
                len(result.restricted.variables))

        assert count(r_prod) == count(r1) * count(r2)


class TestUniversalProperty:
    def test_gm_f4_over_f2(self):
        K, data = ff_data(2, 2)
        result = weil_restrict(gm(K), data)
        base_algebra = FiniteAlgebra.base(GF(2))
        report = verify_universal_points(result, base_algebra)
        assert report.mode == "exhaustive"
        assert report.restricted_count == report.source_count == 3

    def test_gm_f4_valued_in_f4(self):
        K, data = ff_data(2, 2)
        result = weil_restrict(gm(K), data)
        test_algebra = FiniteAlgebra.from_extension(K)
        report = verify_universal_points(result, test_algebra)
        # Gm(F4 x F4) has 3 * 3 = 9 points
        assert report.restricted_count == report.source_count == 9

    def test_gm_f4_valued_in_product(self):
        K, data = ff_data(2, 2)
        result = weil_restrict(gm(K), data)
        base = FiniteAlgebra.base(GF(2))
        product = FiniteAlgebra.product([base, base])
        report = verify_universal_points(result, product)
        # points valued in F2 x F2 are pairs of F2-points: 3 * 3
        assert report.restricted_count == report.source_count == 9

    def test_empty_scheme(self):
        K, data = ff_data(2, 2)
        one = MultiPolynomial.constant(K, ("x",), 1)
        V = AffineAlgebra(K, ("x",), Ideal(K, ("x",), [one]))
        result = weil_restrict(V, data)
        report = verify_universal_points(result, FiniteAlgebra.base(GF(2)))
        assert report.restricted_count == report.source_count == 0

    def test_rational_samples(self):
        Qi, group = cyclotomic_group(4)
        data = SeparableExtensionData.discover(Qi, Qi, group)
        result = weil_restrict(gm(Qi), data)
        base_algebra = FiniteAlgebra.base(QQ)
        # x = 1 + 0i, y = 1 + 0i is a point; x = 2, y = 1 is not
        good = ((QQ.one,), (QQ.zero,), (QQ.one,), (QQ.zero,))
        bad = ((QQ.from_int(2),), (QQ.zero,), (QQ.one,), (QQ.zero,))
        report = verify_universal_points(result, base_algebra,
                                         samples=[good, bad])
        assert report.mode == "sampled"
        assert report.samples_checked == 2


class TestEtaleSplitting:
    def test_qi_two_idempotents(self):
        Qi, group = cyclotomic_group(4)
        data = SeparableExtensionData.discover(Qi, Qi, group)
        idempotents = etale_splitting(data)
        assert len(idempotents) == 2

    def test_f4_two_idempotents(self):
        K, data = ff_data(2, 2)
        idempotents = etale_splitting(data)
        assert len(idempotents) == 2

    def test_degree_one_single_idempotent(self):
        K, data = ff_data(3, 1)
        (e,) = etale_splitting(data)
        # the unique idempotent is 1
        T = FiniteAlgebra.tensor(FiniteAlgebra.from_extension(K),
                                 FiniteAlgebra.from_extension(K))
        assert e == T.unit

    def test_cyclotomic_degree_four(self):
        ext, group = cyclotomic_group(5)
        data = SeparableExtensionData.discover(ext, ext, group)
        idempotents = etale_splitting(data)
        assert len(idempotents) == 4


class TestNormCompat:
    def test_restriction_contains_norm_torus(self):
        # points of the restricted Gm with norm 1 number q + 1
        for q in (3, 5):
            K = finite_field(q, 2)
            data = SeparableExtensionData.discover(K, K, frobenius_group(K))
            result = weil_restrict(gm(K), data)
            base = GF(q)
            names = result.restricted.variables
            gens = list(result.restricted.relations.generators)
            # norm of x = x_0 + t x_1: x * frob(x); expand via the
            # substitution and keep the component along 1
            frob = frobenius_group(K).elements[1]
            x_sub = result.substitution["x"]
            norm_poly = x_sub * x_sub.map_coeffs(frob)
            buckets = {}
            for exps, coeff in norm_poly.terms.items():
                for j, c in enumerate(K.coords(coeff)):
                    if c:
                        buckets.setdefault(j, {})[exps] = c
            assert sorted(buckets) == [0]  # the norm is rational
            norm_component = MultiPolynomial(base, names, buckets[0])
            one = MultiPolynomial.constant(base, names, 1)
            count = count_affine_points(gens + [norm_component - one],
                                        base, len(names))
            assert count == q + 1

    def test_not_separable_rejected(self):
        # a squarefree modulus is required by construction; fabricate the
        # failure through duplicate embeddings instead
        K = finite_field(2, 2)
        group = frobenius_group(K)
        from galdescent.affine import Embedding

        e = Embedding(K, K, K.generator, "e0")
        with pytest.raises(NotSeparable):
            SeparableExtensionData(K, K, [e, e])
