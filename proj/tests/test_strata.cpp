#include <doctest.h>

#include "equistrata/classifier.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace equistrata;
using namespace equistrata::fixtures;

namespace {

struct Setup {
    RootDatum datum;
    RepSpec rep;
    Realizations reals;
    std::vector<KernelCandidate> candidates;

    Setup(const std::vector<std::string>& names, const QVec& lambda, size_t max_size = 4)
        : datum(parse_group_factors(names)),
          rep(make_rep_spec(datum, {{lambda, Rational(1)}})) {
        RealizationCache cache;
        reals.push_back(cache.get(datum, lambda, 512));
        candidates = enumerate_kernel_candidates(rep, datum, max_size);
    }

    const KernelCandidate& candidate(std::vector<QVec> weights) const {
        auto canon = canonical_orbit_representative(datum, {{0, std::move(weights)}});
        for (const auto& c : candidates)
            if (c.parts == canon) return c;
        throw std::runtime_error("candidate not enumerated");
    }
};

}  // namespace

TEST_CASE("momentum of a weighted set") {
    RootDatum cube = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    QVec a = dual(cube, {1, 1, -1}), b = dual(cube, {1, -1, 1});
    Rational s(3, 7);
    QVec mu = momentum_of({a, b}, {s, s});
    CHECK(dual_coords(cube, mu) == QVec{2 * s, 0, 0});
    CHECK(is_zero(momentum_of({a, b}, {0, 0})));

    RootDatum su4 = make_datum({"SU(4)"});
    QVec alpha{Rational(1, 2), Rational(1, 2), Rational(-1, 2), Rational(-1, 2)};
    CHECK(is_zero(momentum_of({alpha, Rational(-1) * alpha},
                              {Rational(1, 2), Rational(1, 2)})));
}

TEST_CASE("torus isotropy bases") {
    RootDatum cube = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    QMat tx = torus_isotropy(cube, {dual(cube, {1, 1, -1}), dual(cube, {1, -1, 1})});
    REQUIRE(tx.rows() == 1);
    CoordFrame frame(cube, false);
    CHECK(frame.torus_to_coords(tx.row(0)) == QVec{0, 1, 1});

    RootDatum su2 = make_datum({"SU(2)"});
    CHECK(torus_isotropy(su2, {dual(su2, {1})}).rows() == 0);

    RootDatum su6 = make_datum({"SU(6)"});
    QMat t6 = torus_isotropy(
        su6, {{1, -1, 0, 0, 0, 0}, {0, 0, 1, -1, 0, 0}, {0, 0, 0, 0, 1, -1}});
    REQUIRE(t6.rows() == 2);
    for (size_t r = 0; r < t6.rows(); ++r) {
        const QVec v = t6.row(r);
        CHECK(v[0] == v[1]);
        CHECK(v[2] == v[3]);
        CHECK(v[4] == v[5]);
    }
}

TEST_CASE("cube: loci, isotropy, stratum dimensions") {
    RootDatum cube0 = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    Setup s({"SU(2)", "SU(2)", "SU(2)"}, dual(cube0, {1, 1, 1}));
    const auto& cand = s.candidate({dual(s.datum, {1, 1, -1}), dual(s.datum, {1, -1, 1})});
    auto loci = enumerate_momentum_loci(s.datum, cand);
    REQUIRE(loci.size() == 2);
    CHECK(loci[0].generic);
    CHECK_FALSE(loci[1].generic);

    // generic: g_x = t_x, one-dimensional; stratum 9 - 1 + 2 = 10
    IsotropyAlgebra gen = isotropy_algebra_at(s.reals, s.datum, cand, loci[0]);
    verify_kernel_exact(s.reals, gen);
    CHECK(gen.total_dim == 1);
    CHECK(gen.root_support.empty());
    auto gen_dims = stratum_dimension(s.datum, gen);
    CHECK(gen_dims.stratum_dim == 10);
    CHECK(gen_dims.generator_space_dim == 2);

    // equal magnitudes: su(2), stratum 9 - 3 + 1 = 7
    const auto& special = loci[1];
    CHECK(special.magnitudes == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(dual_coords(s.datum, special.mu) == QVec{1, 0, 0});
    IsotropyAlgebra spec = isotropy_algebra_at(s.reals, s.datum, cand, special);
    verify_kernel_exact(s.reals, spec);
    CHECK(spec.total_dim == 3);
    CHECK(spec.rank() == 1);
    CHECK(spec.root_support.size() == 2);
    for (const auto& [r, d] : spec.root_support) CHECK(d == 1);
    auto spec_dims = stratum_dimension(s.datum, spec);
    CHECK(spec_dims.stratum_dim == 7);
    CHECK(spec_dims.generator_space_dim == 1);
    CHECK(classify(restricted_roots(spec, s.datum)).name == "su(2)");

    // monotonicity and momentum consistency
    CHECK(spec.total_dim >= gen.total_dim);
    for (const auto& locus : loci) {
        CHECK(in_row_space(locus.wall.subspace, locus.mu));
        auto walls = s.datum.walls_containing(locus.mu);
        CHECK(walls.vanishing_roots == locus.wall.vanishing_roots);
    }
}

TEST_CASE("cube: generator lies in (t')^L at the special locus") {
    RootDatum cube0 = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    Setup s({"SU(2)", "SU(2)", "SU(2)"}, dual(cube0, {1, 1, 1}));
    const auto& cand = s.candidate({dual(s.datum, {1, 1, -1}), dual(s.datum, {1, -1, 1})});
    auto search = oracles::exact_kernel_generator(s.rep, s.datum, cand);
    REQUIRE(search.xi.has_value());
    auto loci = enumerate_momentum_loci(s.datum, cand);
    IsotropyAlgebra spec = isotropy_algebra_at(s.reals, s.datum, cand, loci[1]);

    // project the generator onto t' along t_x: the canonical representative
    QMat tx = spec.torus_part;
    QVec xi = *search.xi;
    QMat gram(tx.rows(), tx.rows());
    std::vector<Rational> rhs(tx.rows());
    for (size_t i = 0; i < tx.rows(); ++i) {
        for (size_t j = 0; j < tx.rows(); ++j) gram(i, j) = dot(tx.row(i), tx.row(j));
        rhs[i] = dot(tx.row(i), xi);
    }
    auto coef = solve(gram, rhs);
    REQUIRE(coef.has_value());
    for (size_t i = 0; i < tx.rows(); ++i) xi = xi - (*coef)[i] * tx.row(i);

    std::vector<QVec> tx_rows;
    for (size_t r = 0; r < tx.rows(); ++r) tx_rows.push_back(tx.row(r));
    QMat t_prime = s.datum.kernel_in_cartan(tx_rows);
    CHECK(in_row_space(t_prime, xi));
    for (const auto& [r, d] : spec.root_support)
        CHECK(dot(s.datum.positive_root(r), xi) == 0);
    CHECK(CoordFrame(s.datum, false).torus_to_coords(xi) == QVec{1, 0, 0});
}

TEST_CASE("pyramid: special magnitudes, su(2), strata 13 and 16") {
    RootDatum su4 = make_datum({"SU(4)"});
    Setup s({"SU(4)"}, dual(su4, {2, 0, 0}), 2);
    CoordFrame frame = pyramid_frame(s.datum);
    QVec top = frame.weight_from_coords({2, 0, 2});
    QVec low = frame.weight_from_coords({-1, 0, 2});
    const auto& cand = s.candidate({top, low});
    auto loci = enumerate_momentum_loci(s.datum, cand);
    REQUIRE(loci.size() == 2);
    CHECK(loci[0].generic);

    IsotropyAlgebra gen = isotropy_algebra_at(s.reals, s.datum, cand, loci[0]);
    verify_kernel_exact(s.reals, gen);
    CHECK(gen.total_dim == 1);
    auto gen_dims = stratum_dimension(s.datum, gen);
    CHECK(gen_dims.stratum_dim == 16);
    CHECK(gen_dims.generator_space_dim == 2);

    const auto& special = loci[1];
    auto flat = cand.flattened();
    for (size_t i = 0; i < flat.size(); ++i) {
        QVec coords = frame.weight_to_coords(flat[i].second);
        if (coords == QVec{2, 0, 2}) CHECK(special.magnitudes[i] == Rational(1, 3));
        if (coords == QVec{-1, 0, 2}) CHECK(special.magnitudes[i] == Rational(2, 3));
    }
    IsotropyAlgebra spec = isotropy_algebra_at(s.reals, s.datum, cand, special);
    verify_kernel_exact(s.reals, spec);
    CHECK(spec.total_dim == 3);
    CHECK(classify(restricted_roots(spec, s.datum)).name == "su(2)");
    auto spec_dims = stratum_dimension(s.datum, spec);
    CHECK(spec_dims.stratum_dim == 13);
    CHECK(spec_dims.generator_space_dim == 1);
}

TEST_CASE("pyramid pure state: root support saturates g_mu") {
    RootDatum su4 = make_datum({"SU(4)"});
    CoordFrame frame = pyramid_frame(su4);
    QVec top = frame.weight_from_coords({2, 0, 2});
    WeightSystem ws = weight_multiplicities(su4, dual(su4, {2, 0, 0}));

    IsotropyAlgebra alg = pure_state_isotropy(su4, ws, top);
    CHECK(su4.centralizer_dim(top) == 9);  // g_mu of U(3) type
    CHECK(alg.root_support.size() == su4.walls_containing(top).vanishing_roots.size());
    for (const auto& [r, d] : alg.root_support) CHECK(d == 2);
    // the point stabilizer itself: ker(alpha) plus all six root directions
    CHECK(alg.total_dim == 8);
    CHECK(classify(restricted_roots(alg, su4)).name == "su(3)");

    RootDatum su2 = make_datum({"SU(2)"});
    WeightSystem trivial = weight_multiplicities(su2, QVec{0, 0});
    IsotropyAlgebra full = pure_state_isotropy(su2, trivial, QVec{0, 0});
    CHECK(full.total_dim == su2.dim_g());

    WeightSystem def = weight_multiplicities(su2, dual(su2, {1}));
    IsotropyAlgebra zero = pure_state_isotropy(su2, def, dual(su2, {1}));
    CHECK(zero.total_dim == 0);
    CHECK(zero.root_support.empty());

    CHECK_THROWS_AS(pure_state_isotropy(su2, def, dual(su2, {2})), ConfigError);
}

TEST_CASE("antipodal SU(4): unequal and zero-momentum loci") {
    QVec a{Rational(1, 2), Rational(1, 2), Rational(-1, 2), Rational(-1, 2)};
    Setup s({"SU(4)"}, a, 2);
    const auto& cand = s.candidate({a, Rational(-1) * a});
    auto loci = enumerate_momentum_loci(s.datum, cand);
    REQUIRE(loci.size() == 2);

    IsotropyAlgebra gen = isotropy_algebra_at(s.reals, s.datum, cand, loci[0]);
    verify_kernel_exact(s.reals, gen);
    CHECK(gen.total_dim == 6);
    CHECK(gen.rank() == 2);
    CHECK(classify(restricted_roots(gen, s.datum)).name == "su(2)⊕su(2)");

    const auto& zero = loci[1];
    CHECK(is_zero(zero.mu));
    CHECK(zero.magnitudes == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    IsotropyAlgebra so5 = isotropy_algebra_at(s.reals, s.datum, cand, zero);
    verify_kernel_exact(s.reals, so5);
    CHECK(so5.total_dim == 10);
    CHECK(so5.rank() == 2);
    RestrictedRootSystem rrs = restricted_roots(so5, s.datum);
    CHECK(rrs.roots.size() == 8);
    CHECK(classify(rrs).name == "so(5)");
}

TEST_CASE("SU(5) embedding: stratum dimensions 20 and 15") {
    QVec lambda{Rational(3, 5), Rational(3, 5), Rational(-2, 5), Rational(-2, 5),
                Rational(-2, 5)};
    Setup s({"SU(5)"}, lambda, 2);
    QVec beta{Rational(-2, 5), Rational(-2, 5), Rational(3, 5), Rational(3, 5),
              Rational(-2, 5)};
    const auto& cand = s.candidate({lambda, beta});
    CHECK(cand.full);
    CHECK(cand.linear_independent);
    auto loci = enumerate_momentum_loci(s.datum, cand);
    REQUIRE(loci.size() == 2);

    IsotropyAlgebra gen = isotropy_algebra_at(s.reals, s.datum, cand, loci[0]);
    CHECK(gen.total_dim == 6);
    CHECK(classify(restricted_roots(gen, s.datum)).name == "su(2)⊕su(2)");
    CHECK(stratum_dimension(s.datum, gen).stratum_dim == 20);

    IsotropyAlgebra spec = isotropy_algebra_at(s.reals, s.datum, cand, loci[1]);
    verify_kernel_exact(s.reals, spec);
    CHECK(spec.total_dim == 10);
    CHECK(classify(restricted_roots(spec, s.datum)).name == "so(5)");
    CHECK(stratum_dimension(s.datum, spec).stratum_dim == 15);
}

TEST_CASE("combined SU(6) adjoint: locus classes and strata 36/33/29") {
    RootDatum su6 = make_datum({"SU(6)"});
    Setup s({"SU(6)"}, dual(su6, {1, 0, 0, 0, 1}), 3);
    QVec alpha{1, -1, 0, 0, 0, 0}, beta{0, 0, 1, -1, 0, 0}, gamma{0, 0, 0, 0, 1, -1};
    const auto& cand = s.candidate({alpha, beta, gamma});
    CHECK(cand.full);
    CHECK(cand.x_dim == 2);

    auto loci = enumerate_momentum_loci(s.datum, cand);
    REQUIRE(loci.size() == 5);  // generic + three pair-equal + all-equal
    CHECK(loci[0].generic);

    int pair_equal = 0, all_equal = 0;
    for (const auto& locus : loci) {
        IsotropyAlgebra alg = isotropy_algebra_at(s.reals, s.datum, cand, locus);
        verify_kernel_exact(s.reals, alg);
        auto dims = stratum_dimension(s.datum, alg);
        Classification cls = classify(restricted_roots(alg, s.datum));
        if (locus.generic) {
            CHECK(alg.total_dim == 2);
            CHECK(cls.name == "ℝ^2");
            CHECK(dims.stratum_dim == 36);
            CHECK(dims.generator_space_dim == 3);
        } else if (locus.partition.size() == 2) {
            ++pair_equal;
            CHECK(alg.total_dim == 4);
            CHECK(cls.name == "su(2)⊕ℝ");
            CHECK(dims.stratum_dim == 33);
            CHECK(dims.generator_space_dim == 2);
        } else {
            ++all_equal;
            CHECK(alg.total_dim == 8);
            CHECK(alg.rank() == 2);
            CHECK(cls.name == "su(3)");
            // one free magnitude parameter on this locus: the stratum is the
            // G-orbit of a one-parameter family, 1 + 35 - 8 = 28
            CHECK(dims.stratum_dim == 28);
            CHECK(dims.generator_space_dim == 1);
            CHECK(locus.magnitudes == std::vector<Rational>(3, Rational(1, 3)));
        }
        // the generator space has one basis vector per partition block
        CHECK(dims.generator_space_dim == (int)locus.partition.size());
        CHECK(alg.total_dim >= 2);
    }
    CHECK(pair_equal == 3);
    CHECK(all_equal == 1);
}

TEST_CASE("multi-component kernels: solver spans both modules") {
    // SU(2) x SU(4); one part in the defining representation of the first
    // factor, one in the adjoint of the second
    RootDatum datum = make_datum({"SU(2)", "SU(4)"});
    QVec lam1 = dual(datum, {1, 0, 0, 0});
    QVec lam2 = dual(datum, {0, 1, 0, 1});
    RepSpec rep = make_rep_spec(datum, {{lam1, Rational(1)}, {lam2, Rational(2)}});
    RealizationCache cache;
    Realizations reals{cache.get(datum, lam1, 512), cache.get(datum, lam2, 512)};

    QVec w1 = lam1;                      // (1 | 0,0,0,0) sign weight
    QVec w2 = dual(datum, {0, 2, -1, 0});  // (0 | e1 - e2), a root of the su(4) factor
    auto cands = enumerate_kernel_candidates(rep, datum, 2);
    const KernelCandidate* cand = nullptr;
    auto canon = canonical_orbit_representative(datum, {{0, {w1}}, {1, {w2}}});
    for (const auto& c : cands)
        if (c.parts == canon) cand = &c;
    REQUIRE(cand != nullptr);
    CHECK(cand->full);
    CHECK(cand->x_dim == 2);

    auto loci = enumerate_momentum_loci(datum, *cand);
    REQUIRE(!loci.empty());
    CHECK(loci[0].generic);
    IsotropyAlgebra alg = isotropy_algebra_at(reals, datum, *cand, loci[0]);
    verify_kernel_exact(reals, alg);
    // the su(4) root orthogonal to both weights survives in full
    CHECK(alg.total_dim == alg.rank() + 2);
    CHECK(alg.root_support.size() == 1);
    CHECK(float_oracle_kernel_dim(reals, datum, *cand, loci[0]) == alg.total_dim);
    Classification cls = classify(restricted_roots(alg, datum));
    CHECK(cls.named);
    CHECK(cls.name.rfind("su(2)", 0) == 0);

    // the full pipeline isolates the same candidate
    auto search = oracles::exact_kernel_generator(rep, datum, *cand);
    CHECK((search.xi.has_value() || search.resonant));
}

TEST_CASE("float oracle agrees on fixture loci") {
    RootDatum cube0 = make_datum({"SU(2)", "SU(2)", "SU(2)"});
    std::vector<Setup> setups;
    setups.emplace_back(std::vector<std::string>{"SU(2)", "SU(2)", "SU(2)"},
                        dual(cube0, {1, 1, 1}), 2);
    setups.emplace_back(
        std::vector<std::string>{"SU(4)"},
        QVec{Rational(1, 2), Rational(1, 2), Rational(-1, 2), Rational(-1, 2)}, 2);
    for (const auto& s : setups)
        for (const auto& cand : s.candidates)
            for (const auto& locus : enumerate_momentum_loci(s.datum, cand)) {
                IsotropyAlgebra alg = isotropy_algebra_at(s.reals, s.datum, cand, locus);
                CHECK(float_oracle_kernel_dim(s.reals, s.datum, cand, locus) ==
                      alg.total_dim);
            }
}
