import math

import pytest

from sifbm import (
    ChainPoint,
    EMPTY,
    OrientedArc,
    Rectangle,
    TooManySubtracted,
    chain,
    circle_oriented,
    increment_covariance,
    increment_expand,
    premeasure_psi,
    rectangles,
)
from raster_oracle import raster_measure_2d


class TestExpand:
    def test_no_subtraction(self, rect2):
        u = Rectangle((1.0, 1.0))
        c = increment_expand(rect2, u)
        assert c.expansion == ((1, u),)

    def test_single_subtraction(self, rect2):
        u, v = Rectangle((2.0, 2.0)), Rectangle((1.0, 3.0))
        c = increment_expand(rect2, u, [v])
        assert c.expansion == ((1, u), (-1, Rectangle((1.0, 2.0))))

    def test_two_subtractions_bitmask_order(self, rect2):
        u = Rectangle((2.0, 2.0))
        v1 = Rectangle((1.0, 3.0))
        v2 = Rectangle((3.0, 1.0))
        c = increment_expand(rect2, u, [v1, v2])
        assert c.expansion == (
            (1, u),
            (-1, Rectangle((1.0, 2.0))),
            (-1, Rectangle((2.0, 1.0))),
            (1, Rectangle((1.0, 1.0))),
        )

    def test_cap(self, rect2):
        vs = [Rectangle((1.0, 1.0))] * 21
        with pytest.raises(TooManySubtracted):
            increment_expand(rect2, Rectangle((2.0, 2.0)), vs)

    def test_kind_checked(self, rect2):
        from sifbm import KindMismatch

        with pytest.raises(KindMismatch):
            increment_expand(rect2, ChainPoint(1.0))


class TestPremeasure:
    def test_inclusion_exclusion_is_exact_measure(self, rect2):
        # lattice-snapped corners keep the raster count exact
        base = Rectangle((2.0, 2.0))
        subs = [Rectangle((1.0, 2.5)), Rectangle((2.5, 0.5))]
        c = increment_expand(rect2, base, subs)
        got = premeasure_psi(rect2, c, rect2.measure)
        want = raster_measure_2d((2.0, 2.0), [(1.0, 2.5), (2.5, 0.5)])
        assert got == pytest.approx(want, abs=1e-12)
        # direct check: 4 - (area of union restricted to base)
        assert got == pytest.approx(4.0 - (1.0 * 2.0 + 2.0 * 0.5 - 1.0 * 0.5),
                                    rel=1e-15)

    def test_three_subtracted_raster(self, rect2):
        base = Rectangle((2.5, 2.0))
        subs = [(0.5, 2.0), (1.5, 1.0), (2.0, 0.5)]
        c = increment_expand(rect2, base, [Rectangle(s) for s in subs])
        got = premeasure_psi(rect2, c, rect2.measure)
        want = raster_measure_2d((2.5, 2.0), subs)
        assert got == pytest.approx(want, abs=1e-12)

    def test_nonnegative_on_random_instances(self, rng):
        # m(U \ union) >= 0 whatever the configuration
        coll = rectangles(2)
        for _ in range(50):
            base = Rectangle(tuple(rng.integers(0, 8, size=2) * 0.25))
            subs = [Rectangle(tuple(rng.integers(0, 8, size=2) * 0.25))
                    for _ in range(rng.integers(0, 4))]
            c = increment_expand(coll, base, subs)
            assert premeasure_psi(coll, c, coll.measure) >= -1e-12

    def test_base_fn_errors_propagate(self, rect2):
        c = increment_expand(rect2, Rectangle((1.0, 1.0)))

        def boom(u):
            raise ZeroDivisionError("probe")

        with pytest.raises(ZeroDivisionError):
            premeasure_psi(rect2, c, boom)

    def test_empty_terms_allowed(self, rect2):
        c = increment_expand(rect2, EMPTY, [Rectangle((1.0, 1.0))])
        assert premeasure_psi(rect2, c, rect2.measure) == 0.0


class TestIncrementCovariance:
    def test_nested_chain_closed_form(self):
        # V inside U inside W on a chain: increments U\V and W\V overlap,
        # and the kernel gives the fBm increment covariance in the
        # measures a = m(U\V), b = m(W\V):
        #   E = (a^{2H} + b^{2H} - (b - a)^{2H}) / 2
        coll = chain()
        h = 0.3
        v, u, w = ChainPoint(1.0), ChainPoint(2.5), ChainPoint(4.0)
        cu = increment_expand(coll, u, [v])
        cw = increment_expand(coll, w, [v])
        got = increment_covariance(coll, h, cu, cw)
        a, b = 1.5, 3.0
        want = 0.5 * (a ** 0.6 + b ** 0.6 - (b - a) ** 0.6)
        assert got == pytest.approx(want, rel=1e-13)

    def test_disjoint_fbm_increments_negative_for_small_h(self):
        coll = chain()
        h = 0.3
        c1 = increment_expand(coll, ChainPoint(1.0), [ChainPoint(0.0)])
        c2 = increment_expand(coll, ChainPoint(2.0), [ChainPoint(1.0)])
        got = increment_covariance(coll, h, c1, c2)
        want = 0.5 * (2.0 ** 0.6 - 2.0)
        assert got == pytest.approx(want, rel=1e-13)
        assert got < 0.0

    def test_variance_equals_gram_quadratic_form(self, rect2):
        # Var(dX_C) must match the quadratic form of the expansion
        # coefficients against the plain Gram matrix of the terms
        from sifbm import gram

        h = 0.45
        base = Rectangle((2.0, 2.0))
        subs = [Rectangle((1.0, 3.0)), Rectangle((3.0, 1.0))]
        c = increment_expand(rect2, base, subs)
        var = increment_covariance(rect2, h, c, c)
        coeffs = [coeff for coeff, _ in c.expansion]
        terms = [t for _, t in c.expansion]
        g = gram(rect2, h, terms).entries
        want = sum(coeffs[i] * coeffs[j] * g[i, j]
                   for i in range(len(coeffs)) for j in range(len(coeffs)))
        assert var == pytest.approx(want, rel=1e-12)
        assert var >= -1e-12

    def test_degenerate_modification_has_zero_variance(self):
        # on a totally ordered collection, X_U + X_V - X_{U n V} - X_{U u V}
        # vanishes; encode it as dX on U\(V) minus dX on (UuV)\(V)
        for coll, pts in [
            (chain(), [ChainPoint(1.0), ChainPoint(3.0)]),
            (circle_oriented(), [OrientedArc(1.0), OrientedArc(2.0)]),
        ]:
            u, v = pts
            # U u V is the larger of the two on a totally ordered family
            union = v if coll.contains(u, v) else u
            cu = increment_expand(coll, u, [v])
            cw = increment_expand(coll, union, [v])
            for h in (0.2, 0.5, 0.8):
                var = (increment_covariance(coll, h, cu, cu)
                       + increment_covariance(coll, h, cw, cw)
                       - 2.0 * increment_covariance(coll, h, cu, cw))
                assert abs(var) < 1e-12

    def test_additivity_of_disjoint_pieces(self):
        # dX on W\V equals dX on U\V plus dX on W\U when V <= U <= W;
        # covariances against any fixed increment must add up
        coll = chain()
        h = 0.35
        v, u, w = ChainPoint(0.5), ChainPoint(1.5), ChainPoint(3.5)
        probe = increment_expand(coll, ChainPoint(2.0), [ChainPoint(1.0)])
        whole = increment_expand(coll, w, [v])
        left = increment_expand(coll, u, [v])
        right = increment_expand(coll, w, [u])
        got = increment_covariance(coll, h, whole, probe)
        parts = (increment_covariance(coll, h, left, probe)
                 + increment_covariance(coll, h, right, probe))
        assert got == pytest.approx(parts, rel=1e-12, abs=1e-14)

    def test_psi_recovers_measure_power(self, rect2):
        # applying u -> m(u)^{2H} through the expansion of a difference
        # of nested squares reproduces the variance of the increment on
        # a chain, which is m(C)^{2H}
        h = 0.4
        coll = chain()
        c = increment_expand(coll, ChainPoint(3.0), [ChainPoint(1.0)])
        var = increment_covariance(coll, h, c, c)
        assert var == pytest.approx(2.0 ** 0.8, rel=1e-13)
