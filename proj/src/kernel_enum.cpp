#include "equistrata/kernel_enum.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>

namespace equistrata {

RepSpec make_rep_spec(const RootDatum& datum, std::vector<RepComponentSpec> components) {
    RepSpec rep;
    rep.components = std::move(components);
    for (size_t i = 0; i < rep.components.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if (rep.components[i].eigenvalue == rep.components[j].eigenvalue)
                throw ConfigError("components " + std::to_string(j) + " and " +
                                  std::to_string(i) +
                                  " share an eigenvalue; (GC) requires distinct eigenspaces");
        rep.weight_systems.push_back(
            weight_multiplicities(datum, rep.components[i].highest_weight));
    }
    return rep;
}

std::vector<std::pair<int, QVec>> KernelCandidate::flattened() const {
    std::vector<std::pair<int, QVec>> flat;
    for (const auto& [comp, ws] : parts)
        for (const auto& w : ws) flat.emplace_back(comp, w);
    return flat;
}

size_t KernelCandidate::size() const {
    size_t n = 0;
    for (const auto& [comp, ws] : parts) n += ws.size();
    return n;
}

std::vector<std::pair<int, std::vector<QVec>>> kernel_weights_for_generator(
    const RepSpec& rep, const RootDatum& datum, const QVec& xi) {
    std::vector<std::pair<int, std::vector<QVec>>> out;
    for (size_t i = 0; i < rep.components.size(); ++i) {
        std::vector<QVec> hit;
        for (const auto& [w, m] : rep.weight_systems[i].entries)
            if (datum.inner(w, xi) == rep.components[i].eigenvalue) hit.push_back(w);
        if (!hit.empty()) out.emplace_back((int)i, std::move(hit));
    }
    return out;
}

namespace {

QMat underlying_span(const RootDatum& datum,
                     const std::vector<std::pair<int, std::vector<QVec>>>& parts) {
    QMat w(0, datum.ambient_dim());
    for (const auto& [comp, ws] : parts)
        for (size_t k = 1; k < ws.size(); ++k) w.append_row(ws[k] - ws[0]);
    return row_space_basis(std::move(w));
}

// x in ann(W) within the Cartan subspace, as RREF row basis.
QMat annihilator_in_cartan(const RootDatum& datum, const QMat& w) {
    QMat sys = w;
    // add: orthogonality to SU-block all-ones vectors keeps x in the Cartan
    for (const auto& f : datum.spec().factors) {
        if (f.kind != Factor::SU) continue;
        QVec ones(datum.ambient_dim(), 0);
        for (int i = 0; i < f.rank_param; ++i) ones[f.offset + i] = 1;
        sys.append_row(ones);
    }
    if (sys.rows() == 0) return datum.cartan_subspace();
    return row_space_basis(nullspace(std::move(sys)));
}

bool affinely_independent(const std::vector<std::pair<int, QVec>>& flat) {
    if (flat.empty()) return true;
    QMat m(0, flat[0].second.size() + 1);
    for (const auto& [comp, w] : flat) {
        QVec hom = w;
        hom.push_back(1);
        m.append_row(hom);
    }
    return rank(m) == flat.size();
}

bool linearly_independent(const std::vector<std::pair<int, QVec>>& flat) {
    if (flat.empty()) return true;
    QMat m(0, flat[0].second.size());
    for (const auto& [comp, w] : flat) m.append_row(w);
    return rank(m) == flat.size();
}

}  // namespace

FullnessResult is_full(const RootDatum& datum,
                       const std::vector<std::pair<int, std::vector<QVec>>>& parts) {
    QMat w = underlying_span(datum, parts);
    QMat ann = annihilator_in_cartan(datum, w);
    // s: ann(W) -> R^n by the common projection point of each part
    QMat s((int)parts.size(), ann.rows());
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = 0; j < ann.rows(); ++j)
            s(i, j) = dot(parts[i].second.at(0), ann.row(j));
    size_t n = parts.size();
    return {rank(s) == n, (int)ann.rows() - (int)n};
}

bool has_weyl_reflection_pair(const RootDatum& datum, const std::vector<QVec>& part) {
    std::set<QVec> members(part.begin(), part.end());
    for (const QVec& rho : datum.positive_roots())
        for (const QVec& a : part) {
            QVec img = datum.reflect(a, rho);
            if (img != a && members.count(img)) return true;
        }
    return false;
}

std::vector<std::pair<int, std::vector<QVec>>> canonical_orbit_representative(
    const RootDatum& datum, std::vector<std::pair<int, std::vector<QVec>>> parts) {
    using Rep = std::vector<std::pair<int, std::vector<QVec>>>;
    // dominant-first presentation: weights descending within each part
    auto normalize = [](Rep r) {
        for (auto& [comp, ws] : r) std::sort(ws.begin(), ws.end(), std::greater<QVec>());
        std::sort(r.begin(), r.end());
        return r;
    };
    Rep start = normalize(std::move(parts));
    std::set<Rep> seen{start};
    std::deque<Rep> queue{start};
    while (!queue.empty()) {
        Rep cur = queue.front();
        queue.pop_front();
        for (int id : datum.simple_roots()) {
            Rep img = cur;
            for (auto& [comp, ws] : img)
                for (auto& w : ws) w = datum.reflect(w, datum.positive_root(id));
            img = normalize(std::move(img));
            if (seen.insert(img).second) queue.push_back(img);
        }
    }
    std::optional<Rep> best;
    for (const Rep& r : seen) {
        QVec sum(datum.ambient_dim(), 0);
        for (const auto& [comp, ws] : r)
            for (const auto& w : ws) sum = sum + w;
        if (!datum.is_dominant(sum)) continue;
        if (!best || r < *best) best = r;
    }
    if (!best) throw InternalCheckError("weight-set orbit without dominant-sum element");
    return *best;
}

namespace {

/*
 * Orbit machinery on pool indices: the Weyl group permutes the
 * multiplicity-one weights of every component, so candidates travel as small
 * index vectors and only the final representative touches exact vectors.
 */
struct OrbitContext {
    const RootDatum& datum;
    std::vector<std::pair<int, QVec>> pool;             // (component, weight), sorted
    std::vector<std::vector<uint16_t>> reflection_map;  // per simple root
    std::vector<bool> sum_dominant_cache;

    explicit OrbitContext(const RootDatum& datum_, const RepSpec& rep) : datum(datum_) {
        for (size_t i = 0; i < rep.weight_systems.size(); ++i)
            for (const QVec& w : rep.weight_systems[i].multiplicity_one_weights())
                pool.emplace_back((int)i, w);
        std::map<std::pair<int, QVec>, uint16_t> index;
        for (size_t k = 0; k < pool.size(); ++k) index[pool[k]] = (uint16_t)k;
        for (int id : datum.simple_roots()) {
            std::vector<uint16_t> table(pool.size());
            for (size_t k = 0; k < pool.size(); ++k) {
                QVec img = datum.reflect(pool[k].second, datum.positive_root(id));
                auto it = index.find({pool[k].first, img});
                if (it == index.end())
                    throw InternalCheckError("reflection left the multiplicity-one pool");
                table[k] = it->second;
            }
            reflection_map.push_back(std::move(table));
        }
    }

    using IdxSet = std::vector<uint16_t>;  // sorted pool indices

    std::vector<std::pair<int, std::vector<QVec>>> to_parts(const IdxSet& s) const {
        std::vector<std::pair<int, std::vector<QVec>>> parts;
        for (uint16_t k : s) {
            const auto& [comp, w] = pool[k];
            if (parts.empty() || parts.back().first != comp) parts.push_back({comp, {}});
            parts.back().second.push_back(w);
        }
        for (auto& [comp, ws] : parts) std::sort(ws.begin(), ws.end(), std::greater<QVec>());
        return parts;
    }

    // canonical representative under the Weyl action: among orbit elements
    // with dominant total weight sum, the minimal dominant-first presentation
    std::vector<std::pair<int, std::vector<QVec>>> canonical(const IdxSet& start) const {
        std::set<IdxSet> seen{start};
        std::deque<IdxSet> queue{start};
        while (!queue.empty()) {
            IdxSet cur = queue.front();
            queue.pop_front();
            for (const auto& table : reflection_map) {
                IdxSet img(cur.size());
                for (size_t j = 0; j < cur.size(); ++j) img[j] = table[cur[j]];
                std::sort(img.begin(), img.end());
                if (seen.insert(img).second) queue.push_back(img);
            }
        }
        std::optional<std::vector<std::pair<int, std::vector<QVec>>>> best;
        for (const IdxSet& s : seen) {
            QVec sum(datum.ambient_dim(), 0);
            for (uint16_t k : s) sum = sum + pool[k].second;
            if (!datum.is_dominant(sum)) continue;
            auto rep = to_parts(s);
            if (!best || rep < *best) best = std::move(rep);
        }
        if (!best) throw InternalCheckError("weight-set orbit without dominant-sum element");
        return *best;
    }
};

}  // namespace

std::vector<KernelCandidate> enumerate_kernel_candidates(const RepSpec& rep,
                                                         const RootDatum& datum,
                                                         size_t max_size) {
    if (max_size < 1) throw ConfigError("max_kernel_size must be at least 1");
    OrbitContext ctx(datum, rep);

    std::set<std::vector<std::pair<int, std::vector<QVec>>>> canon_seen;
    std::vector<KernelCandidate> out;

    std::vector<uint16_t> chosen;
    auto evaluate = [&]() {
        auto parts = ctx.to_parts(chosen);
        for (const auto& [comp, ws] : parts)
            if (has_weyl_reflection_pair(datum, ws)) return;

        QMat big_w = underlying_span(datum, parts);
        // slab maximality: no other weight of U_i lies in aff(S_i) + W = base + W
        for (const auto& [comp, ws] : parts) {
            std::set<QVec> in_part(ws.begin(), ws.end());
            for (const auto& [w, m] : rep.weight_systems[comp].entries) {
                if (in_part.count(w)) continue;
                if (in_row_space(big_w, w - ws[0])) return;
            }
        }

        FullnessResult fr = is_full(datum, parts);
        if (fr.x_dim < 0) return;

        auto canon = ctx.canonical(chosen);
        if (!canon_seen.insert(canon).second) return;

        KernelCandidate cand;
        cand.parts = std::move(canon);
        cand.span_w = underlying_span(datum, cand.parts);
        cand.x_dim = fr.x_dim;
        cand.full = fr.full;
        cand.linear_independent = linearly_independent(cand.flattened());
        out.push_back(std::move(cand));
    };

    std::vector<std::pair<int, QVec>> chosen_weights;
    std::function<void(size_t)> dfs = [&](size_t start) {
        if (!chosen.empty()) evaluate();
        if (chosen.size() == max_size) return;
        for (size_t k = start; k < ctx.pool.size(); ++k) {
            chosen.push_back((uint16_t)k);
            chosen_weights.push_back(ctx.pool[k]);
            if (affinely_independent(chosen_weights)) dfs(k + 1);
            chosen.pop_back();
            chosen_weights.pop_back();
        }
    };
    dfs(0);

    std::sort(out.begin(), out.end());
    return out;
}

std::optional<AffineSpan> generator_solution_set(const RepSpec& rep, const RootDatum& datum,
                                                 const KernelCandidate& cand) {
    // <alpha, xi> = c_comp for each alpha, xi constrained to the Cartan.
    const QMat& cs = datum.cartan_subspace();
    QMat sys(0, cs.rows());
    std::vector<Rational> rhs;
    for (const auto& [comp, ws] : cand.parts)
        for (const QVec& alpha : ws) {
            std::vector<Rational> row(cs.rows());
            for (size_t j = 0; j < cs.rows(); ++j) row[j] = dot(alpha, cs.row(j));
            sys.append_row(row);
            rhs.push_back(rep.components[comp].eigenvalue);
        }
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    QVec base(datum.ambient_dim(), 0);
    for (size_t j = 0; j < cs.rows(); ++j) base = base + (*sol)[j] * cs.row(j);
    QMat null = nullspace(sys);
    QMat dirs(0, datum.ambient_dim());
    for (size_t k = 0; k < null.rows(); ++k) {
        QVec d(datum.ambient_dim(), 0);
        for (size_t j = 0; j < cs.rows(); ++j) d = d + null(k, j) * cs.row(j);
        dirs.append_row(d);
    }
    return AffineSpan(base, dirs);
}

}  // namespace equistrata
