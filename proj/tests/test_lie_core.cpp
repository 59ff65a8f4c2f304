#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace equistrata;
using namespace equistrata::fixtures;

TEST_CASE("root datum construction") {
    RootDatum cube = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    CHECK(cube.ambient_dim() == 6);
    CHECK(cube.cartan_dim() == 3);
    CHECK(cube.positive_roots().size() == 3);
    CHECK(cube.dim_g() == 9);

    RootDatum su2 = make_datum({"SU(2)"});
    CHECK(su2.ambient_dim() == 2);
    CHECK(su2.cartan_dim() == 1);
    CHECK(su2.positive_roots().size() == 1);
    CHECK(su2.dim_g() == 3);

    RootDatum su6 = make_datum({"SU(6)"});
    CHECK(su6.cartan_dim() == 5);
    CHECK(su6.positive_roots().size() == 15);
    CHECK(su6.dim_g() == 35);

    RootDatum mixed = make_datum({"SU(3)", "T^2"});
    CHECK(mixed.ambient_dim() == 5);
    CHECK(mixed.cartan_dim() == 4);
    CHECK(mixed.positive_roots().size() == 3);

    CHECK_THROWS_AS(make_datum({"SU(0)"}), ConfigError);
    CHECK_THROWS_AS(make_datum({"SU(1)"}), ConfigError);
    CHECK_THROWS_AS(make_datum({"T^0"}), ConfigError);
    CHECK_THROWS_AS(make_datum({}), ConfigError);
}

TEST_CASE("integrality per block") {
    RootDatum su2 = make_datum({"SU(2)"});
    CHECK(su2.is_integral({Rational(1, 2), Rational(-1, 2)}));
    CHECK_FALSE(su2.is_integral({Rational(1, 3), Rational(-1, 3)}));

    RootDatum su4 = make_datum({"SU(4)"});
    QVec half{Rational(1, 2), Rational(1, 2), Rational(-1, 2), Rational(-1, 2)};
    CHECK(su4.is_integral(half));

    RootDatum torus = make_datum({"T^2"});
    CHECK(torus.is_integral({1, -3}));
    CHECK_FALSE(torus.is_integral({Rational(1, 2), 0}));
}

TEST_CASE("weyl orbits") {
    RootDatum su2 = make_datum({"SU(2)"});
    auto orbit = su2.weyl_orbit(dual(su2, {1}));
    CHECK(orbit.size() == 2);
    CHECK(orbit.count(dual(su2, {-1})) == 1);

    CHECK(su2.weyl_orbit(QVec{0, 0}).size() == 1);

    RootDatum su4 = make_datum({"SU(4)"});
    QVec half{Rational(1, 2), Rational(1, 2), Rational(-1, 2), Rational(-1, 2)};
    auto orbit4 = su4.weyl_orbit(half);
    CHECK(orbit4.size() == 6);
    // brute-force closure under all (not only simple) root reflections
    std::set<QVec> oracle{half};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const QVec& p : std::set<QVec>(oracle))
            for (const QVec& rho : su4.positive_roots())
                if (oracle.insert(su4.reflect(p, rho)).second) grew = true;
    }
    CHECK(orbit4 == oracle);
}

TEST_CASE("orbit contains exactly one dominant element") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    RootDatum datum = make_datum({"SU(3)", "SU(2)"});
    for (int it = 0; it < 20; ++it) {
        QVec coords(datum.cartan_dim());
        for (auto& c : coords) c = d(rng);
        QVec w = dual(datum, coords);
        auto orbit = datum.weyl_orbit(w);
        int dominant = 0;
        for (const QVec& p : orbit) {
            if (datum.is_dominant(p)) ++dominant;
            CHECK(orbit.count(datum.reflect(p, datum.positive_root(0))) == 1);
        }
        CHECK(dominant == 1);
        CHECK(orbit.count(datum.dominant_representative(w)) == 1);
    }
}

TEST_CASE("reflections preserve the invariant inner product") {
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> d(-4, 4);
    RootDatum datum = make_datum({"SU(4)", "T^1"});
    for (int it = 0; it < 30; ++it) {
        QVec p(datum.ambient_dim()), q(datum.ambient_dim());
        for (auto& x : p) x = d(rng);
        for (auto& x : q) x = d(rng);
        for (const QVec& rho : datum.positive_roots())
            CHECK(datum.inner(datum.reflect(p, rho), datum.reflect(q, rho)) ==
                  datum.inner(p, q));
    }
}

TEST_CASE("walls containing a point") {
    RootDatum cube = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    // mu = (c, 0, 0) in the dual basis lies on the walls of (0,2,0), (0,0,2)
    QVec mu = dual(cube, {5, 0, 0});
    WallIntersection w = cube.walls_containing(mu);
    CHECK(w.vanishing_roots.size() == 2);
    for (int r : w.vanishing_roots) {
        QVec coords = dual_coords(cube, cube.positive_root(r));
        CHECK((coords == QVec{0, 2, 0} || coords == QVec{0, 0, 2}));
    }
    CHECK(cube.centralizer_dim(mu) == 7);

    // generic point: no walls
    QVec generic = dual(cube, {1, 2, 5});
    CHECK(cube.walls_containing(generic).vanishing_roots.empty());
    CHECK(cube.centralizer_dim(generic) == cube.cartan_dim());

    // p = 0 lies on every wall
    CHECK(cube.walls_containing(QVec(6, 0)).vanishing_roots.size() == 3);

    RootDatum su6 = make_datum({"SU(6)"});
    QVec nu{Rational(1, 3), Rational(-1, 3), Rational(1, 3),
            Rational(-1, 3), Rational(1, 3), Rational(-1, 3)};
    WallIntersection wn = su6.walls_containing(nu);
    CHECK(wn.vanishing_roots.size() == 6);
    CHECK(su6.centralizer_dim(nu) == 17);
}

TEST_CASE("wall interior of a chamber is empty") {
    RootDatum su4 = make_datum({"SU(4)"});
    QVec interior = dual(su4, {1, 1, 1});
    CHECK(su4.walls_containing(interior).vanishing_roots.empty());
}

TEST_CASE("minimal orthogonal wall intersection: pyramid") {
    RootDatum su4 = make_datum({"SU(4)"});
    CoordFrame frame = pyramid_frame(su4);
    QVec a = frame.weight_from_coords({2, 0, 2});
    QVec b = frame.weight_from_coords({-1, 0, 2});
    AffineSpan span = AffineSpan::of_points({a, b});
    WallIntersection w = minimal_orthogonal_wall_intersection(su4, {span});
    REQUIRE(w.subspace.rows() == 1);
    // the line through nu, whose H',H2,H3' coordinates are (0,0,1)
    QVec nu = frame.weight_from_coords({0, 0, 1});
    CHECK(in_row_space(w.subspace, nu));
    CHECK(w.vanishing_roots.size() == 3);

    OrthoMeet m = orthogonal_intersection(su4, w, span);
    CHECK(m.orthogonal);
    CHECK(m.meets);
    REQUIRE(m.point.has_value());
    CHECK(frame.weight_to_coords(*m.point) == QVec{0, 0, 2});  // the point 2 nu
}

TEST_CASE("minimal orthogonal wall intersection: trivial and SU(6)") {
    // a torus group: the only wall intersection is t* itself
    RootDatum torus = make_datum({"T^2"});
    AffineSpan full(QVec{0, 0}, QMat::identity(2));
    WallIntersection w = minimal_orthogonal_wall_intersection(torus, {full});
    CHECK(w.subspace.rows() == 2);
    CHECK(w.vanishing_roots.empty());

    RootDatum su6 = make_datum({"SU(6)"});
    QVec alpha{1, -1, 0, 0, 0, 0}, beta{0, 0, 1, -1, 0, 0}, gamma{0, 0, 0, 0, 1, -1};
    AffineSpan span = AffineSpan::of_points({alpha, beta, gamma});
    WallIntersection wn = minimal_orthogonal_wall_intersection(su6, {span});
    REQUIRE(wn.subspace.rows() == 1);
    QVec nu{Rational(1, 3), Rational(-1, 3), Rational(1, 3),
            Rational(-1, 3), Rational(1, 3), Rational(-1, 3)};
    CHECK(in_row_space(wn.subspace, nu));
}

TEST_CASE("orthogonal intersection examples") {
    RootDatum cube = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    // full t* meets any span
    WallIntersection full = cube.full_cartan_wall();
    QVec a = dual(cube, {1, 1, -1}), b = dual(cube, {1, -1, 1});
    OrthoMeet m = orthogonal_intersection(cube, full, AffineSpan::of_points({a, b}));
    CHECK(m.orthogonal);
    CHECK(m.meets);

    // the line <(1,0,0)> meets the span of {(1,1,-1),(1,-1,1)} in (1,0,0)
    WallIntersection line = cube.walls_containing(dual(cube, {1, 0, 0}));
    OrthoMeet m2 = orthogonal_intersection(cube, line, AffineSpan::of_points({a, b}));
    CHECK(m2.orthogonal);
    REQUIRE(m2.point.has_value());
    CHECK(dual_coords(cube, *m2.point) == QVec{1, 0, 0});
}

TEST_CASE("orthogonal wall intersections are closed under intersection") {
    RootDatum su4 = make_datum({"SU(4)"});
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int it = 0; it < 10; ++it) {
        QVec p(4), q(4);
        for (auto& x : p) x = d(rng);
        for (auto& x : q) x = d(rng);
        Rational sp = 0, sq = 0;
        for (auto& x : p) sp += x;
        for (auto& x : q) sq += x;
        for (auto& x : p) x -= sp / 4;
        for (auto& x : q) x -= sq / 4;
        if (is_zero(QVec(q))) continue;
        QMat dir(0, 4);
        dir.append_row(q);
        AffineSpan span(p, dir);
        std::vector<const WallIntersection*> qualifying;
        for (const auto& wall : su4.wall_lattice()) {
            OrthoMeet m = orthogonal_intersection(su4, wall, span);
            if (m.orthogonal && m.meets) qualifying.push_back(&wall);
        }
        for (const auto* w1 : qualifying)
            for (const auto* w2 : qualifying) {
                std::vector<int> roots = w1->vanishing_roots;
                roots.insert(roots.end(), w2->vanishing_roots.begin(),
                             w2->vanishing_roots.end());
                WallIntersection meet = su4.wall_from_roots(roots);
                OrthoMeet m = orthogonal_intersection(su4, meet, span);
                CHECK(m.orthogonal);
                CHECK(m.meets);
            }
        // the minimal one is contained in every qualifying wall
        WallIntersection minimal = minimal_orthogonal_wall_intersection(su4, {span});
        for (const auto* w : qualifying)
            for (size_t r = 0; r < minimal.subspace.rows(); ++r)
                CHECK(in_row_space(w->subspace, minimal.subspace.row(r)));
    }
}

TEST_CASE("wall lattice sizes") {
    RootDatum cube = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    CHECK(cube.wall_lattice().size() == 8);  // independent walls: all subsets
    RootDatum su3 = make_datum({"SU(3)"});
    // t*, three lines, origin
    CHECK(su3.wall_lattice().size() == 5);
}

TEST_CASE("coordinate frames round-trip") {
    RootDatum su4 = make_datum({"SU(4)"});
    CoordFrame dual_frame(su4, false);
    CoordFrame ambient_frame(su4, true);
    CoordFrame custom = pyramid_frame(su4);
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 20; ++it) {
        QVec coords{d(rng), d(rng), d(rng)};
        QVec w = dual_frame.weight_from_coords(coords);
        CHECK(dual_frame.weight_to_coords(w) == coords);
        CHECK(ambient_frame.weight_from_coords(ambient_frame.weight_to_coords(w)) == w);
        CHECK(custom.weight_from_coords(custom.weight_to_coords(w)) == w);
        QVec h = custom.torus_from_coords(coords);
        CHECK(custom.torus_to_coords(h) == coords);
    }
    // the pyramid highest weight: (2,0,0) standard dual = (2,0,2) in the custom frame
    QVec lambda = dual_frame.weight_from_coords({2, 0, 0});
    CHECK(custom.weight_to_coords(lambda) == QVec{2, 0, 2});
}
