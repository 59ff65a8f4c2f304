#ifndef EQUISTRATA_LIE_CORE_HPP
#define EQUISTRATA_LIE_CORE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equistrata/linalg.hpp"
#include "equistrata/rational.hpp"

namespace equistrata {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Factor {
    enum Kind { SU, Torus } kind;
    int rank_param;  // n for SU(n), m for T^m
    int offset;      // first ambient coordinate of this block
    int dim() const { return rank_param; }
    int cartan_dim() const { return kind == SU ? rank_param - 1 : rank_param; }
};

struct GroupSpec {
    std::vector<Factor> factors;  // offsets filled by build_root_datum
    std::string to_string() const;
};

GroupSpec parse_group_factors(const std::vector<std::string>& names);

/*
 * Intersection of Weyl walls inside t* (sum-zero ambient model).
 * vanishing_roots is always saturated: every positive root vanishing on the
 * subspace is listed. subspace rows are a reduced-row-echelon basis, so equal
 * subspaces compare equal.
 */
struct WallIntersection {
    std::vector<int> vanishing_roots;  // indices into RootDatum::positive_roots
    QMat subspace;

    bool operator==(const WallIntersection& o) const { return subspace == o.subspace; }
    bool operator<(const WallIntersection& o) const;
    size_t dim() const { return subspace.rows(); }
};

class RootDatum {
public:
    explicit RootDatum(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    int ambient_dim() const { return ambient_dim_; }
    int cartan_dim() const { return cartan_dim_; }
    int dim_g() const { return cartan_dim_ + 2 * (int)positive_roots_.size(); }

    const std::vector<QVec>& positive_roots() const { return positive_roots_; }
    const std::vector<int>& simple_roots() const { return simple_root_ids_; }
    const QVec& positive_root(int i) const { return positive_roots_[i]; }

    // Block-identity invariant inner product on ambient coordinates.
    Rational inner(const QVec& a, const QVec& b) const { return dot(a, b); }

    // Cartan subspace { per-SU-block sum zero } as RREF row basis.
    const QMat& cartan_subspace() const { return cartan_subspace_; }
    bool in_cartan(const QVec& v) const;

    // Default coweight basis: H_i = e_i - e_{i+1} per SU block, unit vectors
    // per torus block.
    const std::vector<QVec>& coweight_basis() const { return coweights_; }

    bool is_integral(const QVec& w) const;
    bool is_dominant(const QVec& w) const;
    QVec half_sum_positive() const { return delta_; }

    QVec reflect(const QVec& p, const QVec& root) const;
    QVec dominant_representative(const QVec& w) const;
    std::set<QVec> weyl_orbit(const QVec& w) const;

    WallIntersection walls_containing(const QVec& p) const;
    WallIntersection wall_from_roots(const std::vector<int>& roots) const;
    WallIntersection full_cartan_wall() const { return wall_from_roots({}); }
    int centralizer_dim(const QVec& p) const;

    // Common kernel of the given functionals inside the Cartan, RREF rows.
    QMat kernel_in_cartan(const std::vector<QVec>& functionals) const;

    // All intersections of Weyl walls, computed once and cached.
    const std::vector<WallIntersection>& wall_lattice() const;

    // Root lattice of the product, as RREF row basis (used by weight theory).
    QMat root_lattice_basis() const;

private:
    GroupSpec spec_;
    int ambient_dim_ = 0;
    int cartan_dim_ = 0;
    std::vector<QVec> positive_roots_;
    std::vector<int> simple_root_ids_;
    std::vector<QVec> coweights_;
    QMat cartan_subspace_;
    QVec delta_;
    mutable std::vector<WallIntersection> lattice_;  // built lazily
};

/*
 * Affine subspace base + span (span rows need not be independent; they are
 * reduced on construction).
 */
struct AffineSpan {
    QVec base;
    QMat direction;  // RREF row basis of the underlying subspace

    AffineSpan() = default;
    AffineSpan(QVec b, QMat dir_rows) : base(std::move(b)) {
        direction = row_space_basis(std::move(dir_rows));
    }
    static AffineSpan of_points(const std::vector<QVec>& pts);
};

struct OrthoMeet {
    bool orthogonal = false;
    bool meets = false;
    std::optional<QVec> point;  // set when the affine meet is a single point
};

// Orthogonal intersection: projections to the
// complement of the common subspace are orthogonal and the affine sets meet.
OrthoMeet orthogonal_intersection(const RootDatum& datum, const WallIntersection& wall,
                                  const AffineSpan& span);

bool subspaces_orthogonally_intersect(const QMat& a, const QMat& b);

WallIntersection minimal_orthogonal_wall_intersection(const RootDatum& datum,
                                                      const std::vector<AffineSpan>& spans);

// I/O coordinates. Weights contract against the coweight basis; elements of t
// expand in it. "ambient" passes vectors through unchanged.
class CoordFrame {
public:
    CoordFrame(const RootDatum& datum, bool ambient, std::vector<QVec> coweights = {});

    bool ambient() const { return ambient_; }
    QVec weight_to_coords(const QVec& w) const;
    QVec weight_from_coords(const QVec& coords) const;
    QVec torus_to_coords(const QVec& h) const;
    QVec torus_from_coords(const QVec& coords) const;

private:
    const RootDatum* datum_;
    bool ambient_;
    std::vector<QVec> coweights_;
    QMat coweight_mat_;  // rows = coweights
};

}  // namespace equistrata

#endif
