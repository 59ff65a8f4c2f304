#include "equistrata/classifier.hpp"

#include <algorithm>
#include <set>

namespace equistrata {

namespace {

// Ambient matrix of a solved root-part element, for exact bracket checks.
Mat<AlgebraicNumber> ambient_element(
    const RootDatum& datum,
    const std::map<int, std::pair<AlgebraicNumber, AlgebraicNumber>>& elem) {
    size_t d = datum.ambient_dim();
    Mat<AlgebraicNumber> m(d, d);
    const AlgebraicNumber i_unit = AlgebraicNumber::i_unit();
    for (const auto& [root_id, ab] : elem) {
        const auto& [a, b] = ab;
        QMat x = ambient_root_vector(datum, root_id);
        QMat y = ambient_lowering_root_vector(datum, root_id);
        // a (X - Y) + b i (X + Y) = (a + i b) X - (a - i b) Y
        AlgebraicNumber zx = a + i_unit * b;
        AlgebraicNumber zy = a - i_unit * b;
        for (size_t r = 0; r < d; ++r)
            for (size_t c = 0; c < d; ++c) {
                if (x(r, c) != 0) m(r, c) += zx * AlgebraicNumber(x(r, c));
                if (y(r, c) != 0) m(r, c) += AlgebraicNumber(-1) * zy * AlgebraicNumber(y(r, c));
            }
    }
    return m;
}

Mat<AlgebraicNumber> to_field(const QMat& m) {
    Mat<AlgebraicNumber> f(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) f(r, c) = AlgebraicNumber(m(r, c));
    return f;
}

}  // namespace

RestrictedRootSystem restricted_roots(const IsotropyAlgebra& algebra, const RootDatum& datum) {
    RestrictedRootSystem rrs;
    rrs.cartan_dim = (int)algebra.torus_part.rows();

    rrs.cartan_gram = QMat(rrs.cartan_dim, rrs.cartan_dim);
    for (int i = 0; i < rrs.cartan_dim; ++i)
        for (int j = 0; j < rrs.cartan_dim; ++j)
            rrs.cartan_gram(i, j) = dot(algebra.torus_part.row(i), algebra.torus_part.row(j));

    // Maximal-abelian check: no kernel element outside i*t commutes with all
    // of t_x. Brackets are taken in the ambient Lie algebra.
    std::vector<Mat<AlgebraicNumber>> tx_matrices;
    for (size_t i = 0; i < algebra.torus_part.rows(); ++i)
        tx_matrices.push_back(to_field(ambient_cartan_matrix(datum, algebra.torus_part.row(i))));
    for (const auto& cls : algebra.classes) {
        bool zero_restriction = is_zero(cls.restriction);
        for (const auto& elem : cls.elements) {
            Mat<AlgebraicNumber> z = ambient_element(datum, elem);
            bool commutes = true;
            for (const auto& h : tx_matrices)
                if (!(h * z - z * h).is_zero()) commutes = false;
            if (commutes != zero_restriction)
                throw InternalCheckError("bracket check disagrees with root restriction");
            if (commutes) {
                rrs.flagged = true;
                rrs.flag_reason = "kernel element outside i*t commutes with all of t_x";
            }
        }
    }

    for (const auto& cls : algebra.classes) {
        if (is_zero(cls.restriction)) continue;
        if (cls.kernel_dim % 2 != 0)
            throw InternalCheckError("odd kernel dimension on a nonzero restriction class");
        int mult = cls.kernel_dim / 2;
        rrs.roots.emplace_back(cls.restriction, mult);
        rrs.roots.emplace_back(Rational(-1) * cls.restriction, mult);
    }
    std::sort(rrs.roots.begin(), rrs.roots.end());

    QMat span(0, rrs.cartan_dim);
    for (const auto& [r, m] : rrs.roots) span.append_row(r);
    rrs.abelian_dim = rrs.cartan_dim - (int)rank(span);
    return rrs;
}

namespace {

struct ComponentType {
    std::string name;
    bool named;
    int dim;
    int rank;
};

// Identify one irreducible component given its full +- root list with
// multiplicities and the inner product on functionals.
ComponentType identify_component(const std::vector<std::pair<QVec, int>>& roots,
                                 const QMat& gram_inv) {
    auto ip = [&](const QVec& a, const QVec& b) {
        Rational s = 0;
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) s += a[i] * gram_inv(i, j) * b[j];
        return s;
    };
    QMat span(0, roots[0].first.size());
    for (const auto& [r, m] : roots) span.append_row(r);
    int comp_rank = (int)rank(span);
    int n_roots = 0;
    bool mult_one = true;
    for (const auto& [r, m] : roots) {
        n_roots += m;
        if (m != 1) mult_one = false;
    }
    int dim = n_roots + comp_rank;
    ComponentType unknown{"", false, dim, comp_rank};

    if (!mult_one) return unknown;
    if (roots.size() == 2 && comp_rank == 1) return {"su(2)", true, 3, 1};
    if (comp_rank != 2) return unknown;

    // positive system w.r.t. a generic functional, then the simple-root Cartan matrix
    QVec phi(roots[0].first.size(), 0);
    for (int attempt = 0; attempt < 50; ++attempt) {
        Rational p = 1;
        for (size_t i = 0; i < phi.size(); ++i) {
            phi[i] = p;
            p /= (2 + attempt);
        }
        bool ok = true;
        for (const auto& [r, m] : roots)
            if (ip(r, phi) == 0) ok = false;
        if (ok) break;
        if (attempt == 49) return unknown;
    }
    std::vector<QVec> pos;
    for (const auto& [r, m] : roots)
        if (ip(r, phi) > 0) pos.push_back(r);
    std::vector<QVec> simple;
    for (const QVec& p : pos) {
        bool sum = false;
        for (const QVec& q : pos)
            for (const QVec& s : pos)
                if (q + s == p) sum = true;
        if (!sum) simple.push_back(p);
    }
    if (simple.size() != 2) return unknown;
    Rational c01 = 2 * ip(simple[0], simple[1]) / ip(simple[1], simple[1]);
    Rational c10 = 2 * ip(simple[1], simple[0]) / ip(simple[0], simple[0]);
    if (c01 == -1 && c10 == -1 && pos.size() == 3) return {"su(3)", true, 8, 2};
    if (((c01 == -1 && c10 == -2) || (c01 == -2 && c10 == -1)) && pos.size() == 4)
        return {"so(5)", true, 10, 2};
    // G2 shape is recognized but outside the catalogue
    return unknown;
}

}  // namespace

Classification classify(const RestrictedRootSystem& rrs) {
    Classification result;
    result.dim = rrs.total_dim();
    result.rank = rrs.cartan_dim;

    std::string roots_desc;
    for (const auto& [r, m] : rrs.roots) {
        if (!roots_desc.empty()) roots_desc += " ";
        roots_desc += qvec_to_string(r);
        if (m > 1) roots_desc += "x" + std::to_string(m);
    }
    result.fingerprint = "dim " + std::to_string(result.dim) + ", rank " +
                         std::to_string(result.rank) +
                         (roots_desc.empty() ? "" : ", roots " + roots_desc);

    if (rrs.flagged) {
        result.name = "unclassified(" + result.fingerprint + "; " + rrs.flag_reason + ")";
        return result;
    }

    QMat gram_inv = rrs.cartan_dim ? inverse(rrs.cartan_gram) : QMat(0, 0);

    // non-reduced: a root together with its double
    std::set<QVec> root_set;
    for (const auto& [r, m] : rrs.roots) root_set.insert(r);
    for (const auto& [r, m] : rrs.roots)
        if (root_set.count(Rational(2) * r)) {
            result.name = "non-reduced(" + result.fingerprint + ")";
            return result;
        }

    // split positive representatives into connected components
    std::vector<std::pair<QVec, int>> plus;
    {
        std::set<QVec> taken;
        for (const auto& [r, m] : rrs.roots) {
            if (taken.count(Rational(-1) * r)) continue;
            taken.insert(r);
            plus.emplace_back(r, m);
        }
    }
    auto ip = [&](const QVec& a, const QVec& b) {
        Rational s = 0;
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) s += a[i] * gram_inv(i, j) * b[j];
        return s;
    };
    std::vector<int> comp_of(plus.size(), -1);
    int n_comp = 0;
    for (size_t i = 0; i < plus.size(); ++i) {
        if (comp_of[i] != -1) continue;
        comp_of[i] = n_comp;
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < plus.size(); ++j)
                if (comp_of[j] == -1 && ip(plus[cur].first, plus[j].first) != 0) {
                    comp_of[j] = n_comp;
                    stack.push_back(j);
                }
        }
        ++n_comp;
    }

    std::vector<std::string> names;
    int named_dim = 0, named_rank = 0;
    bool all_named = true;
    for (int c = 0; c < n_comp; ++c) {
        std::vector<std::pair<QVec, int>> comp_roots;
        for (size_t i = 0; i < plus.size(); ++i)
            if (comp_of[i] == c) {
                comp_roots.push_back(plus[i]);
                comp_roots.emplace_back(Rational(-1) * plus[i].first, plus[i].second);
            }
        ComponentType t = identify_component(comp_roots, gram_inv);
        if (!t.named) {
            all_named = false;
            break;
        }
        names.push_back(t.name);
        named_dim += t.dim;
        named_rank += t.rank;
    }

    if (!all_named) {
        result.name = "unclassified(" + result.fingerprint + ")";
        return result;
    }
    int abelian = rrs.abelian_dim;
    std::sort(names.begin(), names.end());
    std::string name;
    for (const auto& n : names) name += (name.empty() ? "" : "⊕") + n;
    if (abelian > 0) {
        std::string r = abelian == 1 ? "ℝ" : "ℝ^" + std::to_string(abelian);
        name += (name.empty() ? "" : "⊕") + r;
    }
    if (name.empty()) name = "0";

    // catalogue soundness: recompute dim and rank from the name parts
    if (named_dim + abelian != result.dim || named_rank + abelian != result.rank)
        throw InternalCheckError("classification fingerprint mismatch");
    result.name = name;
    result.named = true;
    return result;
}

}  // namespace equistrata
