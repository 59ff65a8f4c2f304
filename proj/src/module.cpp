#include "equistrata/module.hpp"

#include <algorithm>

namespace equistrata {

namespace {

/*
 * Single SU(n) factor built from lowering words F_{i0} F_{i1} ... v  (leftmost
 * letter applied last). Linear dependence is decided through the Shapovalov
 * form, evaluated by contracting raising operators across lowering words.
 */
class FactorBuilder {
public:
    using Word = std::vector<int>;

    FactorBuilder(const RootDatum& datum, const QVec& lambda)
        : datum_(datum), lambda_(lambda), weights_(weight_multiplicities(datum, lambda)) {
        for (int id : datum_.simple_roots()) simple_.push_back(datum_.positive_root(id));
        build_bases();
        build_matrices();
    }

    const WeightSystem& weights() const { return weights_; }
    std::vector<QVec> basis_weights;  // per basis index
    QMat gram;
    std::vector<QMat> lowering, raising;

private:
    const RootDatum& datum_;
    QVec lambda_;
    WeightSystem weights_;
    std::vector<QVec> simple_;
    std::vector<QVec> order_;                       // weights in construction order
    std::map<QVec, std::vector<Word>> basis_words_;
    std::map<QVec, QMat> gram_blocks_;
    std::map<QVec, size_t> offsets_;
    std::map<std::pair<Word, Word>, Rational> shap_memo_;

    QVec weight_of(const Word& w) const {
        QVec mu = lambda_;
        for (int i : w) mu = mu - simple_[i];
        return mu;
    }

    // <F_{a0} a' v, b v> via <a' v, E_{a0} b v>.
    Rational shap(const Word& a, const Word& b) {
        if (a.empty() && b.empty()) return 1;
        if (a.empty() || b.empty()) return 0;
        std::pair<Word, Word> key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = shap_memo_.find(key);
        if (it != shap_memo_.end()) return it->second;
        const Word& lhs = key.first;
        const Word& rhs = key.second;
        Word tail(lhs.begin() + 1, lhs.end());
        int i = lhs.front();
        Rational total = 0;
        // E_i F_{b0} ... = F_{b0} E_i ... + delta_{i,b0} H_i ...
        for (size_t j = 0; j < rhs.size(); ++j) {
            if (rhs[j] != i) continue;
            QVec below = lambda_;
            for (size_t l = j + 1; l < rhs.size(); ++l) below = below - simple_[rhs[l]];
            Rational h_eval = dot(below, simple_[i]);  // <mu, alpha_i^vee>, |alpha|^2 = 2
            if (h_eval == 0) continue;
            Word rest;
            rest.reserve(rhs.size() - 1);
            for (size_t l = 0; l < rhs.size(); ++l)
                if (l != j) rest.push_back(rhs[l]);
            total += h_eval * shap(tail, rest);
        }
        shap_memo_[key] = total;
        return total;
    }

    void build_bases() {
        std::vector<QVec> order(weights_.entries.size());
        size_t k = 0;
        for (const auto& [w, m] : weights_.entries) order[k++] = w;
        const QVec delta = datum_.half_sum_positive();
        std::sort(order.begin(), order.end(), [&](const QVec& a, const QVec& b) {
            Rational ha = dot(lambda_ - a, delta), hb = dot(lambda_ - b, delta);
            if (ha != hb) return ha < hb;
            return a < b;
        });
        order_ = order;

        for (const QVec& mu : order_) {
            int mult = weights_.entries.at(mu);
            std::vector<Word> candidates;
            if (mu == lambda_) {
                candidates.push_back({});
            } else {
                for (size_t i = 0; i < simple_.size(); ++i) {
                    QVec above = mu + simple_[i];
                    auto it = basis_words_.find(above);
                    if (it == basis_words_.end()) continue;
                    for (const Word& w : it->second) {
                        Word nw;
                        nw.reserve(w.size() + 1);
                        nw.push_back((int)i);
                        nw.insert(nw.end(), w.begin(), w.end());
                        candidates.push_back(std::move(nw));
                    }
                }
                std::sort(candidates.begin(), candidates.end());
            }
            std::vector<Word> accepted;
            QMat g(0, 0);
            for (const Word& c : candidates) {
                if ((int)accepted.size() == mult) break;
                size_t n = accepted.size();
                QMat ext(n + 1, n + 1);
                for (size_t r = 0; r < n; ++r)
                    for (size_t s = 0; s < n; ++s) ext(r, s) = g(r, s);
                for (size_t r = 0; r < n; ++r) {
                    Rational v = shap(accepted[r], c);
                    ext(r, n) = v;
                    ext(n, r) = v;
                }
                ext(n, n) = shap(c, c);
                if (rank(ext) == n + 1) {
                    accepted.push_back(c);
                    g = std::move(ext);
                }
            }
            if ((int)accepted.size() != mult)
                throw InternalCheckError("weight space at " + qvec_to_string(mu) +
                                         " not spanned by lowering words");
            basis_words_[mu] = std::move(accepted);
            gram_blocks_[mu] = std::move(g);
        }
    }

    void build_matrices() {
        size_t dim = 0;
        for (const QVec& mu : order_) {
            offsets_[mu] = dim;
            dim += basis_words_.at(mu).size();
            for (size_t j = 0; j < basis_words_.at(mu).size(); ++j) basis_weights.push_back(mu);
        }
        gram = QMat(dim, dim);
        for (const QVec& mu : order_) {
            const QMat& g = gram_blocks_.at(mu);
            size_t off = offsets_.at(mu);
            for (size_t r = 0; r < g.rows(); ++r)
                for (size_t s = 0; s < g.cols(); ++s) gram(off + r, off + s) = g(r, s);
        }

        lowering.assign(simple_.size(), QMat(dim, dim));
        raising.assign(simple_.size(), QMat(dim, dim));
        for (const QVec& mu : order_) {
            const auto& words = basis_words_.at(mu);
            for (size_t j = 0; j < words.size(); ++j) {
                size_t col = offsets_.at(mu) + j;
                for (size_t i = 0; i < simple_.size(); ++i) {
                    // F_i column
                    QVec down = mu - simple_[i];
                    if (basis_words_.count(down)) {
                        Word nw;
                        nw.push_back((int)i);
                        nw.insert(nw.end(), words[j].begin(), words[j].end());
                        write_column(lowering[i], col, down, {{nw, 1}});
                    }
                    // E_i column: sum over letters equal to i
                    QVec up = mu + simple_[i];
                    if (basis_words_.count(up)) {
                        std::vector<std::pair<Word, Rational>> expansion;
                        const Word& w = words[j];
                        for (size_t p = 0; p < w.size(); ++p) {
                            if (w[p] != (int)i) continue;
                            QVec below = lambda_;
                            for (size_t l = p + 1; l < w.size(); ++l)
                                below = below - simple_[w[l]];
                            Rational h_eval = dot(below, simple_[i]);
                            if (h_eval == 0) continue;
                            Word rest;
                            for (size_t l = 0; l < w.size(); ++l)
                                if (l != p) rest.push_back(w[l]);
                            expansion.emplace_back(std::move(rest), h_eval);
                        }
                        write_column(raising[i], col, up, expansion);
                    }
                }
            }
        }
    }

    void write_column(QMat& m, size_t col, const QVec& target,
                      const std::vector<std::pair<Word, Rational>>& expansion) {
        const auto& basis = basis_words_.at(target);
        const QMat& g = gram_blocks_.at(target);
        std::vector<Rational> rhs(basis.size(), 0);
        for (size_t k = 0; k < basis.size(); ++k)
            for (const auto& [w, c] : expansion) rhs[k] += c * shap(w, basis[k]);
        auto coeffs = solve(g, rhs);
        if (!coeffs) throw InternalCheckError("Gram solve failed in module construction");
        size_t off = offsets_.at(target);
        for (size_t k = 0; k < basis.size(); ++k) m(off + k, col) = (*coeffs)[k];
    }
};

QVec block_part(const Factor& f, const QVec& v) {
    return QVec(v.begin() + f.offset, v.begin() + f.offset + f.dim());
}

}  // namespace

ModuleRealization::ModuleRealization(const RootDatum& datum, const QVec& lambda, size_t dim_cap)
    : datum_(&datum), lambda_(lambda) {
    if (!datum.is_integral(lambda) || !datum.is_dominant(lambda))
        throw ConfigError("highest weight " + qvec_to_string(lambda) +
                          " is not dominant integral");
    Integer total_dim = weyl_dimension(datum, lambda);
    if (total_dim > (Integer)dim_cap)
        throw ResourceError("module dimension " + total_dim.str() + " exceeds cap " +
                            std::to_string(dim_cap));
    weights_ = weight_multiplicities(datum, lambda);

    // Factor modules; torus factors are a constant weight shift.
    struct FactorData {
        std::unique_ptr<RootDatum> datum;
        std::unique_ptr<FactorBuilder> builder;  // null for torus
        QVec torus_weight;                       // torus block of lambda
        size_t dim;
        int n_simple;
    };
    std::vector<FactorData> factor_data;
    for (const auto& f : datum.spec().factors) {
        FactorData fd;
        if (f.kind == Factor::SU) {
            GroupSpec gs;
            gs.factors.push_back(f);
            fd.datum = std::make_unique<RootDatum>(gs);
            fd.builder = std::make_unique<FactorBuilder>(*fd.datum, block_part(f, lambda));
            fd.dim = fd.builder->basis_weights.size();
            fd.n_simple = f.rank_param - 1;
        } else {
            fd.torus_weight = block_part(f, lambda);
            fd.dim = 1;
            fd.n_simple = 0;
        }
        factor_data.push_back(std::move(fd));
    }

    size_t dim = 1;
    for (const auto& fd : factor_data) dim *= fd.dim;

    // Kronecker assembly, first factor slowest.
    basis_weight_.resize(dim);
    basis_sub_index_.resize(dim);
    gram_ = QMat(dim, dim);
    size_t n_simple_total = datum.simple_roots().size();
    lowering_.assign(n_simple_total, QMat(dim, dim));
    raising_.assign(n_simple_total, QMat(dim, dim));

    std::vector<size_t> radix(factor_data.size());
    for (size_t k = 0; k < factor_data.size(); ++k) radix[k] = factor_data[k].dim;
    auto decode = [&](size_t idx) {
        std::vector<size_t> digits(radix.size());
        for (size_t k = radix.size(); k-- > 0;) {
            digits[k] = idx % radix[k];
            idx /= radix[k];
        }
        return digits;
    };

    for (size_t idx = 0; idx < dim; ++idx) {
        auto digits = decode(idx);
        QVec w(datum.ambient_dim(), 0);
        for (size_t k = 0; k < factor_data.size(); ++k) {
            const Factor& f = datum.spec().factors[k];
            QVec part = factor_data[k].builder
                            ? factor_data[k].builder->basis_weights[digits[k]]
                            : factor_data[k].torus_weight;
            for (int j = 0; j < f.dim(); ++j) w[f.offset + j] = part[j];
        }
        basis_weight_[idx] = w;
        blocks_[w].push_back(idx);
        basis_sub_index_[idx] = (int)blocks_[w].size() - 1;
    }

    for (size_t a = 0; a < dim; ++a) {
        auto da = decode(a);
        for (size_t b = 0; b < dim; ++b) {
            auto db = decode(b);
            Rational g = 1;
            for (size_t k = 0; k < factor_data.size() && g != 0; ++k) {
                if (factor_data[k].builder)
                    g *= factor_data[k].builder->gram(da[k], db[k]);
                else if (da[k] != db[k])
                    g = 0;
            }
            gram_(a, b) = g;
        }
    }

    size_t simple_base = 0;
    for (size_t k = 0; k < factor_data.size(); ++k) {
        if (!factor_data[k].builder) continue;
        for (int i = 0; i < factor_data[k].n_simple; ++i) {
            QMat& lo = lowering_[simple_base + i];
            QMat& ra = raising_[simple_base + i];
            const QMat& flo = factor_data[k].builder->lowering[i];
            const QMat& fra = factor_data[k].builder->raising[i];
            for (size_t a = 0; a < dim; ++a) {
                auto da = decode(a);
                for (size_t b = 0; b < dim; ++b) {
                    auto db = decode(b);
                    bool same = true;
                    for (size_t l = 0; l < factor_data.size(); ++l)
                        if (l != k && da[l] != db[l]) same = false;
                    if (!same) continue;
                    lo(a, b) = flo(da[k], db[k]);
                    ra(a, b) = fra(da[k], db[k]);
                }
            }
        }
        simple_base += factor_data[k].n_simple;
    }

    gram_inv_ = inverse(gram_);

    // Verify block dimensions against Freudenthal.
    for (const auto& [w, m] : weights_.entries)
        if (blocks_.count(w) == 0 || (int)blocks_.at(w).size() != m)
            throw InternalCheckError("realized multiplicity mismatch at " + qvec_to_string(w));

    // Precompute all positive root vectors via commutators.
    const auto& roots = datum.positive_roots();
    root_vectors_.assign(roots.size(), QMat());
    lowering_root_vectors_.assign(roots.size(), QMat());
    std::map<QVec, int> root_index;
    for (size_t r = 0; r < roots.size(); ++r) root_index[roots[r]] = (int)r;
    std::map<QVec, int> simple_index;
    for (size_t s = 0; s < datum.simple_roots().size(); ++s)
        simple_index[datum.positive_root(datum.simple_roots()[s])] = (int)s;

    std::vector<size_t> by_height(roots.size());
    for (size_t r = 0; r < roots.size(); ++r) by_height[r] = r;
    const QVec delta = datum.half_sum_positive();
    std::sort(by_height.begin(), by_height.end(), [&](size_t a, size_t b) {
        return dot(roots[a], delta) < dot(roots[b], delta);
    });
    for (size_t r : by_height) {
        auto s = simple_index.find(roots[r]);
        if (s != simple_index.end()) {
            root_vectors_[r] = raising_[s->second];
        } else {
            bool done = false;
            for (size_t si = 0; si < datum.simple_roots().size() && !done; ++si) {
                QVec rest = roots[r] - datum.positive_root(datum.simple_roots()[si]);
                auto it = root_index.find(rest);
                if (it == root_index.end() || root_vectors_[it->second].rows() == 0) continue;
                const QMat& xk = raising_[si];
                const QMat& xrest = root_vectors_[it->second];
                root_vectors_[r] = xk * xrest - xrest * xk;
                done = true;
            }
            if (!done) throw InternalCheckError("no commutator decomposition for a root");
        }
        lowering_root_vectors_[r] = gram_adjoint(root_vectors_[r]);
    }
}

const std::vector<size_t>& ModuleRealization::block_positions(const QVec& weight) const {
    auto it = blocks_.find(weight);
    if (it == blocks_.end()) throw ConfigError("not a weight of the module");
    return it->second;
}

const QMat& ModuleRealization::root_vector(int root_id) const {
    if (root_id < 0 || root_id >= (int)root_vectors_.size())
        throw ConfigError("not a root of the group");
    return root_vectors_[root_id];
}

const QMat& ModuleRealization::lowering_root_vector(int root_id) const {
    if (root_id < 0 || root_id >= (int)lowering_root_vectors_.size())
        throw ConfigError("not a root of the group");
    return lowering_root_vectors_[root_id];
}

QMat ambient_root_vector(const RootDatum& datum, int root_id) {
    const QVec& rho = datum.positive_root(root_id);
    QMat m(datum.ambient_dim(), datum.ambient_dim());
    int from = -1, to = -1;
    for (int i = 0; i < datum.ambient_dim(); ++i) {
        if (rho[i] == 1) to = i;
        if (rho[i] == -1) from = i;
    }
    m(to, from) = 1;  // E_{to,from} raises e_from to e_to
    return m;
}

QMat ambient_lowering_root_vector(const RootDatum& datum, int root_id) {
    return ambient_root_vector(datum, root_id).transpose();
}

QMat ambient_cartan_matrix(const RootDatum& datum, const QVec& h) {
    QMat m(datum.ambient_dim(), datum.ambient_dim());
    for (int i = 0; i < datum.ambient_dim(); ++i) m(i, i) = h[i];
    return m;
}

std::shared_ptr<const ModuleRealization> RealizationCache::get(const RootDatum& datum,
                                                               const QVec& lambda,
                                                               size_t dim_cap) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(datum.spec().to_string(), lambda);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto real = std::make_shared<const ModuleRealization>(datum, lambda, dim_cap);
    cache_[key] = real;
    return real;
}

}  // namespace equistrata
