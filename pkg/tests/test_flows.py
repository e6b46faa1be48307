import math

import numpy as np
import pytest

from sifbm import (
    EMPTY,
    ChainPoint,
    ElementaryFlow,
    KindMismatch,
    NotIncreasing,
    OrientedArc,
    OutOfDomain,
    OutOfRange,
    Rectangle,
    UnsupportedCollection,
    chain,
    circle_oriented,
    circle_shortest,
    fbm_gram,
    flow_through,
    project_points,
    projected_gram,
    rectangles,
    theta,
    theta_inverse,
)

TAU = 2.0 * math.pi


def square_flow():
    # unit square growing to the 2x2 square: clock runs t -> (1+t)^2
    return ElementaryFlow(rectangles(2), (
        (0.0, Rectangle((1.0, 1.0))),
        (1.0, Rectangle((2.0, 2.0))),
    ))


class TestConstruction:
    def test_interpolation_tags(self):
        assert square_flow().interpolation == "corner-linear"
        fl = ElementaryFlow(circle_oriented(), ((0.0, OrientedArc(1.0)),))
        assert fl.interpolation == "angle-linear"
        fl = ElementaryFlow(chain(), ((0.0, ChainPoint(1.0)),))
        assert fl.interpolation == "parameter-linear"

    def test_shortest_arcs_rejected(self):
        with pytest.raises(UnsupportedCollection):
            ElementaryFlow(circle_shortest(), ())

    def test_times_strictly_increasing(self):
        with pytest.raises(NotIncreasing):
            ElementaryFlow(rectangles(2), (
                (0.0, Rectangle((1.0, 1.0))),
                (0.0, Rectangle((2.0, 2.0))),
            ))

    def test_sets_weakly_increasing(self):
        with pytest.raises(NotIncreasing):
            ElementaryFlow(rectangles(2), (
                (0.0, Rectangle((2.0, 1.0))),
                (1.0, Rectangle((1.0, 2.0))),
            ))

    def test_equal_sets_allowed_as_knots(self):
        u = Rectangle((1.0, 1.0))
        fl = ElementaryFlow(rectangles(2), ((0.0, u), (1.0, u)))
        assert fl.at(0.5) == u

    def test_finite_times(self):
        with pytest.raises(OutOfDomain):
            ElementaryFlow(chain(), ((float("inf"), ChainPoint(1.0)),))

    def test_needs_a_knot(self):
        with pytest.raises(NotIncreasing):
            ElementaryFlow(chain(), ())


class TestAt:
    def test_knots_returned_exactly(self):
        fl = square_flow()
        assert fl.at(0.0) == Rectangle((1.0, 1.0))
        assert fl.at(1.0) == Rectangle((2.0, 2.0))

    def test_corner_lerp(self):
        fl = square_flow()
        assert fl.at(0.5) == Rectangle((1.5, 1.5))

    def test_domain_enforced(self):
        fl = square_flow()
        with pytest.raises(OutOfDomain):
            fl.at(-0.001)
        with pytest.raises(OutOfDomain):
            fl.at(1.001)

    def test_empty_start_uses_zero_set(self):
        fl = ElementaryFlow(rectangles(2), (
            (0.0, EMPTY),
            (1.0, Rectangle((2.0, 2.0))),
        ))
        assert fl.at(0.5) == Rectangle((1.0, 1.0))
        assert fl.at(0.0) == EMPTY

    def test_oriented_full_turn(self):
        fl = ElementaryFlow(circle_oriented(), (
            (0.0, OrientedArc(0.0)),
            (1.0, OrientedArc(TAU)),
        ))
        assert fl.at(0.25).angle == pytest.approx(TAU / 4, rel=1e-15)
        assert fl.at(1.0).angle == TAU


class TestClock:
    def test_theta_values(self):
        fl = square_flow()
        assert theta(fl, 0.0) == 1.0
        assert theta(fl, 1.0) == 4.0
        assert theta(fl, 0.5) == pytest.approx(2.25, rel=1e-15)

    def test_theta_inverse_round_trip(self):
        fl = square_flow()
        for s in (1.0, 1.3, 2.25, 3.9, 4.0):
            t = theta_inverse(fl, s)
            assert abs(theta(fl, t) - s) <= 1e-12 * max(1.0, abs(s))

    def test_left_endpoint_exact(self):
        fl = square_flow()
        assert theta_inverse(fl, 1.0) == 0.0

    def test_inf_convention_on_flat_segment(self):
        # clock is flat on [1, 2]; the inf of {theta >= 4} is t = 1
        fl = ElementaryFlow(rectangles(2), (
            (0.0, Rectangle((1.0, 1.0))),
            (1.0, Rectangle((2.0, 2.0))),
            (2.0, Rectangle((2.0, 2.0))),
            (3.0, Rectangle((4.0, 2.0))),
        ))
        t = theta_inverse(fl, 4.0)
        assert t == pytest.approx(1.0, abs=1e-12)
        assert t <= 1.0 + 1e-12
        assert theta(fl, t) >= 4.0 - 1e-12

    def test_empty_start_clock_range(self):
        fl = ElementaryFlow(rectangles(2), (
            (0.0, EMPTY),
            (2.0, Rectangle((2.0, 2.0))),
        ))
        assert theta(fl, 0.0) == 0.0
        t = theta_inverse(fl, 1.0)
        assert abs(theta(fl, t) - 1.0) <= 1e-12

    def test_out_of_range(self):
        fl = square_flow()
        with pytest.raises(OutOfRange):
            theta_inverse(fl, 0.5)
        with pytest.raises(OutOfRange):
            theta_inverse(fl, 4.5)

    def test_slack_clamps_endpoints(self):
        fl = square_flow()
        assert theta_inverse(fl, 1.0 - 1e-13) == 0.0
        t = theta_inverse(fl, 4.0 + 1e-13)
        assert theta(fl, t) <= 4.0


class TestFlowThrough:
    def test_integer_times(self, four_rectangles):
        pts = [Rectangle((1.0, 1.0)), Rectangle((2.0, 2.0)),
               Rectangle((3.0, 3.0))]
        fl = flow_through(rectangles(2), pts)
        assert [t for t, _ in fl.knots] == [0.0, 1.0, 2.0]
        assert fl.at(1.0) == pts[1]

    def test_rejects_non_chain(self):
        with pytest.raises(NotIncreasing):
            flow_through(rectangles(2), [Rectangle((2.0, 1.0)),
                                         Rectangle((1.0, 2.0))])

    def test_rejects_repeats(self):
        u = ChainPoint(1.0)
        with pytest.raises(NotIncreasing):
            flow_through(chain(), [u, u])


class TestProjection:
    def test_measures_match_grid(self):
        fl = square_flow()
        grid = [1.0, 1.5, 2.0, 3.0, 4.0]
        pts = project_points(fl, grid)
        coll = rectangles(2)
        for s, u in zip(grid, pts):
            assert coll.measure(u) == pytest.approx(s, rel=1e-12)
        # projected sets form a chain
        for u, v in zip(pts, pts[1:]):
            assert coll.contains(u, v)

    def test_grid_must_increase(self):
        fl = square_flow()
        with pytest.raises(OutOfRange):
            project_points(fl, [2.0, 1.5])
        with pytest.raises(OutOfRange):
            project_points(fl, [])

    def test_projected_gram_is_fbm(self):
        fl = square_flow()
        grid = [1.0, 1.7, 2.4, 3.1, 3.8]
        for h in (0.25, 0.5, 0.8):
            g = projected_gram(rectangles(2), h, fl, grid)
            ref = fbm_gram(h, grid)
            assert np.max(np.abs(g.entries - ref.entries)) < 1e-11

    def test_projected_gram_oriented(self):
        fl = ElementaryFlow(circle_oriented(), (
            (0.0, OrientedArc(0.5)),
            (1.0, OrientedArc(5.0)),
        ))
        grid = [0.5, 1.0, 2.0, 4.0]
        g = projected_gram(circle_oriented(), 0.4, fl, grid)
        ref = fbm_gram(0.4, grid)
        assert np.max(np.abs(g.entries - ref.entries)) < 1e-11

    def test_kind_mismatch(self):
        fl = square_flow()
        with pytest.raises(KindMismatch):
            projected_gram(chain(), 0.5, fl, [1.0, 2.0])

    def test_chain_map_flow(self):
        coll = chain("square")
        fl = flow_through(coll, [ChainPoint(1.0), ChainPoint(2.0),
                                 ChainPoint(3.0)])
        # clock values are the squared parameters
        assert theta(fl, 1.0) == 4.0
        grid = [1.0, 2.5, 6.0, 9.0]
        pts = project_points(fl, grid)
        for s, u in zip(grid, pts):
            assert coll.measure(u) == pytest.approx(s, rel=1e-12)
