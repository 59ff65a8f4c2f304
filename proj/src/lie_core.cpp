#include "equistrata/lie_core.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <map>

namespace equistrata {

std::string GroupSpec::to_string() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "x";
        if (factors[i].kind == Factor::SU)
            s += "SU(" + std::to_string(factors[i].rank_param) + ")";
        else
            s += "T^" + std::to_string(factors[i].rank_param);
    }
    return s;
}

GroupSpec parse_group_factors(const std::vector<std::string>& names) {
    GroupSpec spec;
    if (names.empty()) throw ConfigError("group needs at least one factor");
    for (const auto& name : names) {
        Factor f{};
        if (name.rfind("SU(", 0) == 0 && name.back() == ')') {
            f.kind = Factor::SU;
            f.rank_param = std::stoi(name.substr(3, name.size() - 4));
            if (f.rank_param < 2) throw ConfigError("factor rank below 2: " + name);
        } else if (name.rfind("T^", 0) == 0) {
            f.kind = Factor::Torus;
            f.rank_param = std::stoi(name.substr(2));
            if (f.rank_param < 1) throw ConfigError("torus rank below 1: " + name);
        } else {
            throw ConfigError("unknown factor '" + name + "' (expected SU(n) or T^m)");
        }
        spec.factors.push_back(f);
    }
    return spec;
}

bool WallIntersection::operator<(const WallIntersection& o) const {
    if (subspace.rows() != o.subspace.rows()) return subspace.rows() < o.subspace.rows();
    for (size_t i = 0; i < subspace.rows(); ++i)
        for (size_t j = 0; j < subspace.cols(); ++j) {
            if (subspace(i, j) != o.subspace(i, j)) return subspace(i, j) < o.subspace(i, j);
        }
    return false;
}

RootDatum::RootDatum(GroupSpec spec) : spec_(std::move(spec)) {
    if (spec_.factors.empty()) throw ConfigError("group needs at least one factor");
    int off = 0;
    for (auto& f : spec_.factors) {
        if (f.kind == Factor::SU && f.rank_param < 2) throw ConfigError("factor rank below 2");
        if (f.kind == Factor::Torus && f.rank_param < 1) throw ConfigError("torus rank below 1");
        f.offset = off;
        off += f.dim();
        cartan_dim_ += f.cartan_dim();
    }
    ambient_dim_ = off;

    for (const auto& f : spec_.factors) {
        if (f.kind != Factor::SU) continue;
        for (int i = 0; i < f.rank_param; ++i)
            for (int j = i + 1; j < f.rank_param; ++j) {
                QVec r(ambient_dim_, 0);
                r[f.offset + i] = 1;
                r[f.offset + j] = -1;
                if (j == i + 1) simple_root_ids_.push_back((int)positive_roots_.size());
                positive_roots_.push_back(std::move(r));
            }
    }

    for (const auto& f : spec_.factors) {
        if (f.kind == Factor::SU) {
            for (int i = 0; i + 1 < f.rank_param; ++i) {
                QVec h(ambient_dim_, 0);
                h[f.offset + i] = 1;
                h[f.offset + i + 1] = -1;
                coweights_.push_back(std::move(h));
            }
        } else {
            for (int i = 0; i < f.rank_param; ++i) {
                QVec h(ambient_dim_, 0);
                h[f.offset + i] = 1;
                coweights_.push_back(std::move(h));
            }
        }
    }

    // Cartan subspace: per-SU-block coordinate sums vanish.
    QMat constraints(0, ambient_dim_);
    for (const auto& f : spec_.factors) {
        if (f.kind != Factor::SU) continue;
        QVec ones(ambient_dim_, 0);
        for (int i = 0; i < f.rank_param; ++i) ones[f.offset + i] = 1;
        constraints.append_row(ones);
    }
    cartan_subspace_ = row_space_basis(nullspace(constraints));

    delta_ = QVec(ambient_dim_, 0);
    for (const auto& r : positive_roots_) delta_ = delta_ + Rational(1, 2) * r;
}

bool RootDatum::in_cartan(const QVec& v) const {
    if ((int)v.size() != ambient_dim_) return false;
    for (const auto& f : spec_.factors) {
        if (f.kind != Factor::SU) continue;
        Rational s = 0;
        for (int i = 0; i < f.rank_param; ++i) s += v[f.offset + i];
        if (s != 0) return false;
    }
    return true;
}

bool RootDatum::is_integral(const QVec& w) const {
    if ((int)w.size() != ambient_dim_ || !in_cartan(w)) return false;
    for (const auto& f : spec_.factors) {
        if (f.kind == Factor::Torus) {
            for (int i = 0; i < f.rank_param; ++i)
                if (denominator(w[f.offset + i]) != 1) return false;
        } else {
            // n*w_i integers, all congruent mod n
            const int n = f.rank_param;
            Integer first_residue;
            for (int i = 0; i < n; ++i) {
                Rational x = Rational(n) * w[f.offset + i];
                if (denominator(x) != 1) return false;
                Integer m = numerator(x) % n;
                if (m < 0) m += n;
                if (i == 0)
                    first_residue = m;
                else if (m != first_residue)
                    return false;
            }
        }
    }
    return true;
}

bool RootDatum::is_dominant(const QVec& w) const {
    for (int id : simple_root_ids_)
        if (dot(w, positive_roots_[id]) < 0) return false;
    return true;
}

QVec RootDatum::reflect(const QVec& p, const QVec& root) const {
    Rational c = 2 * dot(p, root) / dot(root, root);
    return p - c * root;
}

QVec RootDatum::dominant_representative(const QVec& w) const {
    // A-type blocks: sort entries in non-increasing order.
    QVec v = w;
    for (const auto& f : spec_.factors) {
        if (f.kind != Factor::SU) continue;
        std::sort(v.begin() + f.offset, v.begin() + f.offset + f.rank_param,
                  [](const Rational& a, const Rational& b) { return a > b; });
    }
    return v;
}

std::set<QVec> RootDatum::weyl_orbit(const QVec& w) const {
    std::set<QVec> seen{w};
    std::deque<QVec> queue{w};
    while (!queue.empty()) {
        QVec cur = queue.front();
        queue.pop_front();
        for (int id : simple_root_ids_) {
            QVec img = reflect(cur, positive_roots_[id]);
            if (seen.insert(img).second) queue.push_back(img);
        }
    }
    return seen;
}

WallIntersection RootDatum::walls_containing(const QVec& p) const {
    std::vector<int> roots;
    for (size_t i = 0; i < positive_roots_.size(); ++i)
        if (dot(positive_roots_[i], p) == 0) roots.push_back((int)i);
    return wall_from_roots(roots);
}

WallIntersection RootDatum::wall_from_roots(const std::vector<int>& roots) const {
    QMat rows(0, ambient_dim_);
    for (const auto& f : spec_.factors) {
        if (f.kind != Factor::SU) continue;
        QVec ones(ambient_dim_, 0);
        for (int i = 0; i < f.rank_param; ++i) ones[f.offset + i] = 1;
        rows.append_row(ones);
    }
    for (int r : roots) rows.append_row(positive_roots_[r]);
    WallIntersection w;
    w.subspace = row_space_basis(nullspace(rows));
    // saturate
    for (size_t i = 0; i < positive_roots_.size(); ++i) {
        bool vanish = true;
        for (size_t k = 0; k < w.subspace.rows() && vanish; ++k)
            if (dot(positive_roots_[i], w.subspace.row(k)) != 0) vanish = false;
        if (vanish) w.vanishing_roots.push_back((int)i);
    }
    return w;
}

int RootDatum::centralizer_dim(const QVec& p) const {
    return cartan_dim_ + 2 * (int)walls_containing(p).vanishing_roots.size();
}

QMat RootDatum::kernel_in_cartan(const std::vector<QVec>& functionals) const {
    QMat rows(0, ambient_dim_);
    for (const auto& f : spec_.factors) {
        if (f.kind != Factor::SU) continue;
        QVec ones(ambient_dim_, 0);
        for (int i = 0; i < f.rank_param; ++i) ones[f.offset + i] = 1;
        rows.append_row(ones);
    }
    for (const auto& v : functionals) rows.append_row(v);
    return row_space_basis(nullspace(std::move(rows)));
}

const std::vector<WallIntersection>& RootDatum::wall_lattice() const {
    // one global guard: the lattice is built once and read-only afterwards
    static std::mutex lattice_mutex;
    std::lock_guard<std::mutex> lock(lattice_mutex);
    if (!lattice_.empty()) return lattice_;
    std::set<WallIntersection> seen;
    std::deque<WallIntersection> queue;
    WallIntersection top = wall_from_roots({});
    seen.insert(top);
    queue.push_back(top);
    while (!queue.empty()) {
        WallIntersection cur = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < positive_roots_.size(); ++i) {
            std::vector<int> roots = cur.vanishing_roots;
            roots.push_back((int)i);
            WallIntersection next = wall_from_roots(roots);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    lattice_.assign(seen.begin(), seen.end());
    return lattice_;
}

QMat RootDatum::root_lattice_basis() const {
    QMat rows(0, ambient_dim_);
    for (const auto& r : positive_roots_) rows.append_row(r);
    return row_space_basis(std::move(rows));
}

AffineSpan AffineSpan::of_points(const std::vector<QVec>& pts) {
    AffineSpan s;
    s.base = pts.at(0);
    QMat dirs(0, pts[0].size());
    for (size_t i = 1; i < pts.size(); ++i) dirs.append_row(pts[i] - pts[0]);
    s.direction = row_space_basis(std::move(dirs));
    return s;
}

namespace {

// Orthogonal projection of v onto the row space of basis (standard dot).
QVec project_onto(const QMat& basis, const QVec& v) {
    if (basis.rows() == 0) return QVec(v.size(), 0);
    QMat gram(basis.rows(), basis.rows());
    std::vector<Rational> rhs(basis.rows());
    for (size_t i = 0; i < basis.rows(); ++i) {
        for (size_t j = 0; j < basis.rows(); ++j) gram(i, j) = dot(basis.row(i), basis.row(j));
        rhs[i] = dot(basis.row(i), v);
    }
    auto coef = solve(gram, rhs);
    QVec p(v.size(), 0);
    for (size_t i = 0; i < basis.rows(); ++i) p = p + (*coef)[i] * basis.row(i);
    return p;
}

}  // namespace

bool subspaces_orthogonally_intersect(const QMat& a, const QMat& b) {
    QMat common = intersect_row_spaces(a, b);
    for (size_t i = 0; i < a.rows(); ++i) {
        QVec pa = a.row(i) - project_onto(common, a.row(i));
        for (size_t j = 0; j < b.rows(); ++j) {
            QVec pb = b.row(j) - project_onto(common, b.row(j));
            if (dot(pa, pb) != 0) return false;
        }
    }
    return true;
}

OrthoMeet orthogonal_intersection(const RootDatum&, const WallIntersection& wall,
                                  const AffineSpan& span) {
    OrthoMeet result;
    result.orthogonal = subspaces_orthogonally_intersect(wall.subspace, span.direction);
    if (!result.orthogonal) return result;

    // Solve base + direction^T t = subspace^T s.
    size_t n = span.base.size();
    size_t du = span.direction.rows(), dw = wall.subspace.rows();
    QMat sys(n, du + dw);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < du; ++j) sys(i, j) = span.direction(j, i);
        for (size_t j = 0; j < dw; ++j) sys(i, du + j) = -wall.subspace(j, i);
    }
    QVec rhs(n);
    for (size_t i = 0; i < n; ++i) rhs[i] = -span.base[i];
    auto sol = solve(sys, rhs);
    if (!sol) return result;
    result.meets = true;
    QMat common = intersect_row_spaces(wall.subspace, span.direction);
    if (common.rows() == 0) {
        QVec pt = span.base;
        for (size_t j = 0; j < du; ++j) pt = pt + (*sol)[j] * span.direction.row(j);
        result.point = pt;
    }
    return result;
}

WallIntersection minimal_orthogonal_wall_intersection(const RootDatum& datum,
                                                      const std::vector<AffineSpan>& spans) {
    std::vector<const WallIntersection*> qualifying;
    for (const auto& wall : datum.wall_lattice()) {
        bool ok = true;
        for (const auto& span : spans) {
            OrthoMeet m = orthogonal_intersection(datum, wall, span);
            if (!m.orthogonal || !m.meets) {
                ok = false;
                break;
            }
        }
        if (ok) qualifying.push_back(&wall);
    }
    // t* always qualifies, so the list is nonempty; closure under intersection
    // makes the dimension-minimal element unique and contained in all others.
    const WallIntersection* best = qualifying.front();
    for (const auto* w : qualifying)
        if (w->dim() < best->dim()) best = w;
    for (const auto* w : qualifying) {
        QMat meet = intersect_row_spaces(best->subspace, w->subspace);
        if (!(meet == best->subspace))
            throw InternalCheckError("orthogonal wall intersections not closed under meet");
    }
    return *best;
}

CoordFrame::CoordFrame(const RootDatum& datum, bool ambient, std::vector<QVec> coweights)
    : datum_(&datum), ambient_(ambient) {
    if (ambient_) return;
    coweights_ = coweights.empty() ? datum.coweight_basis() : std::move(coweights);
    if ((int)coweights_.size() != datum.cartan_dim())
        throw ConfigError("coweight basis must have " + std::to_string(datum.cartan_dim()) +
                          " vectors");
    coweight_mat_ = QMat(0, datum.ambient_dim());
    for (const auto& h : coweights_) {
        if (!datum.in_cartan(h)) throw ConfigError("coweight basis vector not in the Cartan");
        coweight_mat_.append_row(h);
    }
    if (rank(coweight_mat_) != coweights_.size())
        throw ConfigError("coweight basis vectors are linearly dependent");
}

QVec CoordFrame::weight_to_coords(const QVec& w) const {
    if (ambient_) return w;
    QVec d(coweights_.size());
    for (size_t i = 0; i < coweights_.size(); ++i) d[i] = dot(w, coweights_[i]);
    return d;
}

QVec CoordFrame::weight_from_coords(const QVec& coords) const {
    if (ambient_) {
        if (!datum_->in_cartan(coords))
            throw ConfigError("ambient weight " + qvec_to_string(coords) +
                              " has nonzero sum on an SU block");
        return coords;
    }
    if (coords.size() != coweights_.size())
        throw ConfigError("weight has " + std::to_string(coords.size()) + " coordinates, expected " +
                          std::to_string(coweights_.size()));
    // w in the Cartan subspace with <w, H_k> = coords_k
    const QMat& cs = datum_->cartan_subspace();
    QMat sys(coweights_.size(), cs.rows());
    for (size_t i = 0; i < coweights_.size(); ++i)
        for (size_t j = 0; j < cs.rows(); ++j) sys(i, j) = dot(coweights_[i], cs.row(j));
    auto sol = solve(sys, coords);
    if (!sol) throw ConfigError("weight coordinates are inconsistent");
    QVec w(datum_->ambient_dim(), 0);
    for (size_t j = 0; j < cs.rows(); ++j) w = w + (*sol)[j] * cs.row(j);
    return w;
}

QVec CoordFrame::torus_to_coords(const QVec& h) const {
    if (ambient_) return h;
    QMat sys = coweight_mat_.transpose();
    auto sol = solve(sys, h);
    if (!sol) throw InternalCheckError("torus element outside coweight span");
    return *sol;
}

QVec CoordFrame::torus_from_coords(const QVec& coords) const {
    if (ambient_) return coords;
    if (coords.size() != coweights_.size())
        throw ConfigError("torus element has wrong number of coordinates");
    QVec h(datum_->ambient_dim(), 0);
    for (size_t i = 0; i < coweights_.size(); ++i) h = h + coords[i] * coweights_[i];
    return h;
}

}  // namespace equistrata
