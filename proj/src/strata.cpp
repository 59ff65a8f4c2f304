#include "equistrata/strata.hpp"

#include <Eigen/Dense>
#include <functional>
#include <Eigen/SVD>
#include <algorithm>
#include <set>

namespace equistrata {

QVec momentum_of(const std::vector<QVec>& weights, const std::vector<Rational>& magnitudes) {
    QVec mu(weights.at(0).size(), 0);
    for (size_t i = 0; i < weights.size(); ++i) mu = mu + magnitudes[i] * weights[i];
    return mu;
}

QMat torus_isotropy(const RootDatum& datum, const std::vector<QVec>& weights) {
    if (weights.empty()) throw ConfigError("torus_isotropy needs a nonempty weight set");
    return datum.kernel_in_cartan(weights);
}

namespace {

std::vector<std::vector<std::vector<size_t>>> set_partitions(size_t n) {
    std::vector<std::vector<std::vector<size_t>>> out;
    std::vector<std::vector<size_t>> current;
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == n) {
            out.push_back(current);
            return;
        }
        // index loop: recursion appends to and shrinks `current`
        size_t blocks = current.size();
        for (size_t b = 0; b < blocks; ++b) {
            current[b].push_back(k);
            rec(k + 1);
            current[b].pop_back();
        }
        current.push_back({k});
        rec(k + 1);
        current.pop_back();
    };
    rec(0);
    return out;
}

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

struct LocusSketch {
    std::vector<std::vector<size_t>> partition;
    std::vector<Rational> ratios;  // within-block barycentric coordinates
    std::vector<QVec> block_points;
};

}  // namespace

std::vector<MomentumLocus> enumerate_momentum_loci(const RootDatum& datum,
                                                   const KernelCandidate& cand) {
    auto flat = cand.flattened();
    std::vector<QVec> weights;
    for (const auto& [comp, w] : flat) weights.push_back(w);
    const size_t n = weights.size();

    std::set<std::pair<std::vector<std::vector<size_t>>, std::vector<Rational>>> seen;
    std::vector<LocusSketch> sketches;

    for (const auto& partition : set_partitions(n)) {
        for (const auto& wall : datum.wall_lattice()) {
            std::vector<Rational> ratios(n, 0);
            std::vector<QVec> points;
            bool ok = true;
            for (const auto& block : partition) {
                std::vector<QVec> pts;
                for (size_t i : block) pts.push_back(weights[i]);
                AffineSpan span = AffineSpan::of_points(pts);
                OrthoMeet m = orthogonal_intersection(datum, wall, span);
                if (!m.orthogonal || !m.meets || !m.point) {
                    ok = false;
                    break;
                }
                // barycentric coordinates of the intersection point
                QMat sys(datum.ambient_dim() + 1, block.size());
                std::vector<Rational> rhs(datum.ambient_dim() + 1);
                for (int r = 0; r < datum.ambient_dim(); ++r) {
                    for (size_t c = 0; c < block.size(); ++c) sys(r, c) = pts[c][r];
                    rhs[r] = (*m.point)[r];
                }
                for (size_t c = 0; c < block.size(); ++c) sys(datum.ambient_dim(), c) = 1;
                rhs[datum.ambient_dim()] = 1;
                auto bary = solve(sys, rhs);
                if (!bary) throw InternalCheckError("barycentric solve failed");
                for (const Rational& b : *bary)
                    if (b <= 0) ok = false;
                if (!ok) break;
                for (size_t c = 0; c < block.size(); ++c) ratios[block[c]] = (*bary)[c];
                points.push_back(*m.point);
            }
            if (!ok) continue;
            if (!seen.insert({partition, ratios}).second) continue;
            sketches.push_back({partition, ratios, points});
        }
    }

    // Representative magnitudes: distinct prime scales per block, redrawn until
    // the momentum hits exactly the walls forced by the block points.
    std::vector<MomentumLocus> loci;
    for (const auto& sk : sketches) {
        std::vector<int> forced;
        for (size_t r = 0; r < datum.positive_roots().size(); ++r) {
            bool vanish = true;
            for (const QVec& p : sk.block_points)
                if (dot(datum.positive_root(r), p) != 0) vanish = false;
            if (vanish) forced.push_back((int)r);
        }
        WallIntersection expected = datum.wall_from_roots(forced);

        MomentumLocus locus;
        locus.partition = sk.partition;
        locus.wall = expected;
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            std::vector<Rational> mags(n);
            for (size_t b = 0; b < sk.partition.size(); ++b) {
                Rational scale = kPrimes[(attempt + b) % 16] * (1 + (int)((attempt + b) / 16));
                for (size_t i : sk.partition[b]) mags[i] = sk.ratios[i] * scale;
            }
            QVec mu = momentum_of(weights, mags);
            if (!(datum.walls_containing(mu) == expected)) continue;
            Rational total = 0;
            for (const Rational& m : mags) total += m;
            for (Rational& m : mags) m = m / total;
            locus.magnitudes = std::move(mags);
            locus.mu = momentum_of(weights, locus.magnitudes);
            placed = true;
        }
        if (!placed) throw InternalCheckError("could not place generic magnitudes on a locus");
        loci.push_back(std::move(locus));
    }

    // Generic locus: all singleton blocks and no walls beyond those forced by
    // the whole weight set.
    std::vector<int> span_forced;
    for (size_t r = 0; r < datum.positive_roots().size(); ++r) {
        bool vanish = true;
        for (const QVec& w : weights)
            if (dot(datum.positive_root(r), w) != 0) vanish = false;
        if (vanish) span_forced.push_back((int)r);
    }
    WallIntersection generic_wall = datum.wall_from_roots(span_forced);
    for (auto& locus : loci)
        locus.generic = locus.partition.size() == n && locus.wall == generic_wall;

    std::sort(loci.begin(), loci.end(), [](const MomentumLocus& a, const MomentumLocus& b) {
        if (a.generic != b.generic) return a.generic;
        if (a.partition.size() != b.partition.size())
            return a.partition.size() > b.partition.size();
        if (a.partition != b.partition) return a.partition < b.partition;
        return a.wall < b.wall;
    });
    return loci;
}

namespace {

// Columns (X_rho - Y_rho) x or (X_rho + Y_rho) x for the roots of one
// restriction class, stacked over components. Entries stay in the real
// subfield; the imaginary unit is carried by the basis element itself.
Mat<AlgebraicNumber> class_system(const Realizations& reals, const IsotropyAlgebra& alg,
                                  const std::vector<int>& roots, bool plus) {
    size_t total_rows = 0;
    std::vector<size_t> offsets;
    for (const auto& r : reals) {
        offsets.push_back(total_rows);
        total_rows += r->dim();
    }
    Mat<AlgebraicNumber> sys(total_rows, roots.size());
    for (size_t c = 0; c < roots.size(); ++c) {
        for (const auto& xe : alg.x) {
            const ModuleRealization& m = *reals[xe.component];
            const QMat& X = m.root_vector(roots[c]);
            const QMat& Y = m.lowering_root_vector(roots[c]);
            for (size_t row = 0; row < m.dim(); ++row) {
                Rational v = X(row, xe.position);
                Rational w = Y(row, xe.position);
                Rational entry = plus ? Rational(v + w) : Rational(v - w);
                if (entry == 0) continue;
                size_t grow = offsets[xe.component] + row;
                sys(grow, c) += AlgebraicNumber(entry) * xe.coeff;
            }
        }
    }
    return sys;
}

}  // namespace

IsotropyAlgebra isotropy_algebra_at(const Realizations& reals, const RootDatum& datum,
                                    const KernelCandidate& cand, const MomentumLocus& locus) {
    auto flat = cand.flattened();
    std::vector<QVec> weights;
    for (const auto& [comp, w] : flat) weights.push_back(w);

    IsotropyAlgebra alg;
    alg.torus_part = torus_isotropy(datum, weights);

    // x = sum t_alpha v_alpha with t_alpha = sqrt(r_alpha / gram norm)
    std::vector<Rational> radicands;
    std::vector<size_t> positions(flat.size());
    for (size_t i = 0; i < flat.size(); ++i) {
        const auto& [comp, w] = flat[i];
        const auto& block = reals[comp]->block_positions(w);
        if (block.size() != 1)
            throw ConfigError("weight " + qvec_to_string(w) +
                              " has multiplicity > 1 inside S; unsupported");
        positions[i] = block[0];
        radicands.push_back(locus.magnitudes[i] / reals[comp]->gram_norm(block[0]));
    }
    alg.radicals = RadicalBasis::build(radicands);
    for (size_t i = 0; i < flat.size(); ++i)
        alg.x.push_back({flat[i].first, positions[i],
                         AlgebraicNumber::sqrt_of(alg.radicals, radicands[i])});

    alg.g_mu_roots = datum.walls_containing(locus.mu).vanishing_roots;

    // No root of g_mu may connect two weights of S inside one component; the
    // torus block and the root blocks then decouple exactly.
    for (int r : alg.g_mu_roots)
        for (size_t i = 0; i < flat.size(); ++i)
            for (size_t j = 0; j < flat.size(); ++j) {
                if (flat[i].first != flat[j].first) continue;
                if (flat[i].second + datum.positive_root(r) == flat[j].second)
                    throw InternalCheckError("weights of S are neighbors under g_mu");
            }

    // Group roots of g_mu by +- restriction to t_x.
    auto restriction = [&](int root_id) {
        QVec c(alg.torus_part.rows());
        for (size_t j = 0; j < alg.torus_part.rows(); ++j)
            c[j] = dot(datum.positive_root(root_id), alg.torus_part.row(j));
        return c;
    };
    auto canonical = [](QVec c) {
        for (const auto& x : c) {
            if (x > 0) return c;
            if (x < 0) return Rational(-1) * c;
        }
        return c;
    };
    std::map<QVec, std::vector<int>> classes;
    for (int r : alg.g_mu_roots) classes[canonical(restriction(r))].push_back(r);

    for (const auto& [key, roots] : classes) {
        RootClassSolution sol;
        sol.roots = roots;
        sol.restriction = restriction(roots[0]);
        for (bool plus : {false, true}) {
            Mat<AlgebraicNumber> sys = class_system(reals, alg, roots, plus);
            Mat<AlgebraicNumber> kernel = nullspace(std::move(sys));
            for (size_t k = 0; k < kernel.rows(); ++k) {
                std::map<int, std::pair<AlgebraicNumber, AlgebraicNumber>> elem;
                for (size_t c = 0; c < roots.size(); ++c) {
                    if (kernel(k, c).is_zero()) continue;
                    if (plus)
                        elem[roots[c]] = {AlgebraicNumber(), kernel(k, c)};
                    else
                        elem[roots[c]] = {kernel(k, c), AlgebraicNumber()};
                }
                sol.elements.push_back(std::move(elem));
                ++sol.kernel_dim;
            }
        }
        if (sol.kernel_dim == 0) continue;
        if (sol.kernel_dim % (int)roots.size() != 0)
            throw InternalCheckError("class kernel dimension not divisible across its roots");
        for (int r : roots) alg.root_support[r] = sol.kernel_dim / (int)roots.size();
        alg.classes.push_back(std::move(sol));
    }

    alg.total_dim = (int)alg.torus_part.rows();
    for (const auto& c : alg.classes) alg.total_dim += c.kernel_dim;
    return alg;
}

IsotropyAlgebra pure_state_isotropy(const RootDatum& datum, const WeightSystem& weights,
                                    const QVec& alpha) {
    if (weights.multiplicity(alpha) == 0)
        throw ConfigError("weight " + qvec_to_string(alpha) + " is not a weight of the component");
    IsotropyAlgebra alg;
    alg.torus_part = datum.kernel_in_cartan({alpha});
    alg.g_mu_roots = datum.walls_containing(alpha).vanishing_roots;
    alg.radicals = RadicalBasis::build({});

    auto restriction = [&](int root_id) {
        QVec c(alg.torus_part.rows());
        for (size_t j = 0; j < alg.torus_part.rows(); ++j)
            c[j] = dot(datum.positive_root(root_id), alg.torus_part.row(j));
        return c;
    };

    for (int r : alg.g_mu_roots) {
        const QVec& rho = datum.positive_root(r);
        bool up = weights.multiplicity(alpha + rho) > 0;
        bool down = weights.multiplicity(alpha - rho) > 0;
        if (up != down)
            throw InternalCheckError("weight string through a g_mu root is one-sided");
        if (up) continue;
        RootClassSolution sol;
        sol.roots = {r};
        sol.restriction = restriction(r);
        sol.kernel_dim = 2;
        sol.elements.push_back({{r, {AlgebraicNumber(1), AlgebraicNumber()}}});
        sol.elements.push_back({{r, {AlgebraicNumber(), AlgebraicNumber(1)}}});
        alg.root_support[r] = 2;
        alg.classes.push_back(std::move(sol));
    }
    alg.total_dim = (int)alg.torus_part.rows();
    for (const auto& c : alg.classes) alg.total_dim += c.kernel_dim;
    return alg;
}

StratumDims stratum_dimension(const RootDatum& datum, const IsotropyAlgebra& algebra) {
    // t' = orthogonal complement of t_x inside t
    std::vector<QVec> tx_rows;
    for (size_t i = 0; i < algebra.torus_part.rows(); ++i)
        tx_rows.push_back(algebra.torus_part.row(i));
    QMat t_prime = datum.kernel_in_cartan(tx_rows);

    std::vector<QVec> support_roots;
    for (const auto& [r, d] : algebra.root_support)
        if (d > 0) support_roots.push_back(datum.positive_root(r));
    QMat t_l = datum.kernel_in_cartan(support_roots);

    QMat meet = intersect_row_spaces(t_prime, t_l);
    int gen_dim = (int)meet.rows();
    return {datum.dim_g() - algebra.total_dim + gen_dim, gen_dim};
}

void verify_kernel_exact(const Realizations& reals, const IsotropyAlgebra& algebra) {
    const AlgebraicNumber i_unit = AlgebraicNumber::i_unit();
    size_t total_rows = 0;
    std::vector<size_t> offsets;
    for (const auto& r : reals) {
        offsets.push_back(total_rows);
        total_rows += r->dim();
    }
    for (const auto& cls : algebra.classes) {
        for (const auto& elem : cls.elements) {
            std::vector<AlgebraicNumber> out(total_rows);
            for (const auto& [root_id, ab] : elem) {
                const auto& [a, b] = ab;
                for (const auto& xe : algebra.x) {
                    const ModuleRealization& m = *reals[xe.component];
                    const QMat& X = m.root_vector(root_id);
                    const QMat& Y = m.lowering_root_vector(root_id);
                    for (size_t row = 0; row < m.dim(); ++row) {
                        Rational xv = X(row, xe.position), yv = Y(row, xe.position);
                        if (xv == 0 && yv == 0) continue;
                        // a (X - Y) + b i (X + Y)
                        AlgebraicNumber coef =
                            a * AlgebraicNumber(xv - yv) + b * i_unit * AlgebraicNumber(xv + yv);
                        out[offsets[xe.component] + row] += coef * xe.coeff;
                    }
                }
            }
            for (const auto& v : out)
                if (!v.is_zero())
                    throw InternalCheckError("solved isotropy element does not annihilate x");
        }
    }
    // torus part: every basis row must pair to zero with every weight of x
    for (size_t i = 0; i < algebra.torus_part.rows(); ++i)
        for (const auto& xe : algebra.x) {
            const QVec& w = reals[xe.component]->basis_weight(xe.position);
            if (dot(w, algebra.torus_part.row(i)) != 0)
                throw InternalCheckError("torus part does not annihilate x");
        }
}

int float_oracle_kernel_dim(const Realizations& reals, const RootDatum& datum,
                            const KernelCandidate& cand, const MomentumLocus& locus) {
    auto flat = cand.flattened();
    size_t total_rows = 0;
    std::vector<size_t> offsets;
    for (const auto& r : reals) {
        offsets.push_back(total_rows);
        total_rows += r->dim();
    }
    std::vector<int> roots = datum.walls_containing(locus.mu).vanishing_roots;
    size_t n_cols = 2 * roots.size() + datum.cartan_subspace().rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * total_rows, n_cols);

    std::vector<double> t(flat.size());
    std::vector<size_t> pos(flat.size());
    for (size_t i = 0; i < flat.size(); ++i) {
        pos[i] = reals[flat[i].first]->block_positions(flat[i].second)[0];
        double r = locus.magnitudes[i].convert_to<double>();
        double g = reals[flat[i].first]->gram_norm(pos[i]).convert_to<double>();
        t[i] = std::sqrt(r / g);
    }
    for (size_t c = 0; c < roots.size(); ++c) {
        const int rid = roots[c];
        for (size_t i = 0; i < flat.size(); ++i) {
            const ModuleRealization& mod = *reals[flat[i].first];
            const QMat& X = mod.root_vector(rid);
            const QMat& Y = mod.lowering_root_vector(rid);
            for (size_t row = 0; row < mod.dim(); ++row) {
                double xv = X(row, pos[i]).convert_to<double>();
                double yv = Y(row, pos[i]).convert_to<double>();
                size_t grow = offsets[flat[i].first] + row;
                // column 2c: a(X - Y), real; column 2c+1: b i(X + Y), imaginary
                m(grow, 2 * c) += (xv - yv) * t[i];
                m(total_rows + grow, 2 * c + 1) += (xv + yv) * t[i];
            }
        }
    }
    const QMat& cs = datum.cartan_subspace();
    for (size_t j = 0; j < cs.rows(); ++j) {
        for (size_t i = 0; i < flat.size(); ++i) {
            double a = dot(flat[i].second, cs.row(j)).convert_to<double>();
            size_t grow = offsets[flat[i].first] + pos[i];
            // i h acts by i <alpha, h> on the weight line (2 pi dropped)
            m(total_rows + grow, 2 * roots.size() + j) += a * t[i];
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    double tol = 1e-9 * std::max(1.0, svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
    int r = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) > tol) ++r;
    return (int)n_cols - r;
}

}  // namespace equistrata
