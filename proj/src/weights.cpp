#include "equistrata/weights.hpp"

#include <algorithm>
#include <deque>

namespace equistrata {

namespace {

void check_dominant_integral(const RootDatum& datum, const QVec& lambda) {
    if ((int)lambda.size() != datum.ambient_dim())
        throw ConfigError("weight has wrong ambient dimension");
    if (!datum.is_integral(lambda))
        throw ConfigError("weight " + qvec_to_string(lambda) + " is not integral");
    if (!datum.is_dominant(lambda))
        throw ConfigError("weight " + qvec_to_string(lambda) + " is not dominant");
}

// mu in conv(W.lambda) iff the dominant representative of mu is majorized by
// lambda blockwise (A-type) and torus coordinates agree.
bool in_hull(const RootDatum& datum, const QVec& lambda, const QVec& mu) {
    QVec md = datum.dominant_representative(mu);
    for (const auto& f : datum.spec().factors) {
        if (f.kind == Factor::Torus) {
            for (int i = 0; i < f.rank_param; ++i)
                if (md[f.offset + i] != lambda[f.offset + i]) return false;
        } else {
            Rational pm = 0, pl = 0;
            for (int i = 0; i < f.rank_param; ++i) {
                pm += md[f.offset + i];
                pl += lambda[f.offset + i];
                if (pm > pl) return false;
            }
            if (pm != pl) return false;
        }
    }
    return true;
}

}  // namespace

std::set<QVec> weight_support(const RootDatum& datum, const QVec& lambda) {
    check_dominant_integral(datum, lambda);
    std::set<QVec> support{lambda};
    std::deque<QVec> queue{lambda};
    while (!queue.empty()) {
        QVec cur = queue.front();
        queue.pop_front();
        for (int id : datum.simple_roots()) {
            QVec next = cur - datum.positive_root(id);
            if (support.count(next) || !in_hull(datum, lambda, next)) continue;
            support.insert(next);
            queue.push_back(next);
        }
    }
    return support;
}

WeightSystem weight_multiplicities(const RootDatum& datum, const QVec& lambda) {
    std::set<QVec> support = weight_support(datum, lambda);
    const QVec delta = datum.half_sum_positive();
    const QVec lam_delta = lambda + delta;
    const Rational top_norm = dot(lam_delta, lam_delta);

    // Order by height so every mu + k*rho needed below is already done.
    std::vector<QVec> order(support.begin(), support.end());
    std::sort(order.begin(), order.end(), [&](const QVec& a, const QVec& b) {
        Rational ha = dot(lambda - a, delta), hb = dot(lambda - b, delta);
        if (ha != hb) return ha < hb;
        return a < b;
    });

    WeightSystem ws;
    for (const QVec& mu : order) {
        if (mu == lambda) {
            ws.entries[mu] = 1;
            continue;
        }
        QVec mu_delta = mu + delta;
        Rational denom = top_norm - dot(mu_delta, mu_delta);
        if (denom == 0) throw InternalCheckError("Freudenthal denominator vanished");
        Rational sum = 0;
        for (const QVec& rho : datum.positive_roots()) {
            QVec shifted = mu;
            for (int k = 1;; ++k) {
                shifted = shifted + rho;
                auto it = ws.entries.find(shifted);
                if (it == ws.entries.end()) {
                    if (!support.count(shifted)) break;
                    throw InternalCheckError("Freudenthal visited an unprocessed weight");
                }
                sum += Rational(it->second) * dot(shifted, rho);
            }
        }
        Rational m = 2 * sum / denom;
        if (denominator(m) != 1 || m <= 0)
            throw InternalCheckError("Freudenthal produced a non-positive-integer multiplicity");
        ws.entries[mu] = (int)numerator(m);
    }
    return ws;
}

Integer weyl_dimension(const RootDatum& datum, const QVec& lambda) {
    check_dominant_integral(datum, lambda);
    const QVec delta = datum.half_sum_positive();
    Rational dim = 1;
    for (const QVec& rho : datum.positive_roots())
        dim *= dot(lambda + delta, rho) / dot(delta, rho);
    if (denominator(dim) != 1)
        throw InternalCheckError("Weyl dimension is not an integer");
    return numerator(dim);
}

}  // namespace equistrata
