#ifndef EQUISTRATA_NUMBERFIELD_HPP
#define EQUISTRATA_NUMBERFIELD_HPP

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "equistrata/rational.hpp"

namespace equistrata {

struct GaussQ {
    Rational re = 0, im = 0;

    GaussQ() = default;
    GaussQ(Rational r) : re(std::move(r)) {}
    GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussQ conj() const { return {re, -im}; }
    GaussQ operator+(const GaussQ& o) const { return {re + o.re, im + o.im}; }
    GaussQ operator-(const GaussQ& o) const { return {re - o.re, im - o.im}; }
    GaussQ operator-() const { return {-re, -im}; }
    GaussQ operator*(const GaussQ& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussQ inverse() const {
        Rational n = re * re + im * im;
        if (n == 0) throw std::domain_error("division by zero");
        return {re / n, -im / n};
    }
    bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
};

// sqrt(r) = q * sqrt(d) with d a positive squarefree integer, q rational > 0.
struct SqrtDecomposition {
    Rational q;
    Integer d;
};
SqrtDecomposition sqrt_decompose(const Rational& r);

/*
 * Radical generators of a real multiquadratic extension: pairwise coprime
 * squarefree integers > 1. Every sqrt needed by a locus is a rational multiple
 * of sqrt of a product of a subset of the generators, encoded as a bitmask.
 */
class RadicalBasis {
public:
    // Refines the squarefree parts of the given rationals into a coprime base.
    static std::shared_ptr<const RadicalBasis> build(const std::vector<Rational>& radicands,
                                                     size_t max_generators = 8);

    size_t size() const { return gens_.size(); }
    const std::vector<Integer>& generators() const { return gens_; }

    // mask and rational factor with sqrt(r) = factor * sqrt(prod of mask gens)
    std::pair<unsigned, Rational> decompose_sqrt(const Rational& r) const;

    Integer product(unsigned mask) const;
    double sqrt_double(unsigned mask) const;

private:
    std::vector<Integer> gens_;
};

/*
 * Element of Q(i, sqrt(p_1), ..., sqrt(p_m)): Gaussian-rational coefficients
 * indexed by subsets of the radical generators. A null basis means the element
 * is a plain Gaussian rational, compatible with any basis.
 */
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    AlgebraicNumber(int n) { set_coeff(0, GaussQ(Rational(n))); }
    AlgebraicNumber(const Rational& r) { set_coeff(0, GaussQ(r)); }
    AlgebraicNumber(const GaussQ& g) { set_coeff(0, g); }
    AlgebraicNumber(std::shared_ptr<const RadicalBasis> basis, unsigned mask, GaussQ coeff)
        : basis_(std::move(basis)) {
        set_coeff(mask, std::move(coeff));
    }

    static AlgebraicNumber sqrt_of(const std::shared_ptr<const RadicalBasis>& basis,
                                   const Rational& r);
    static AlgebraicNumber i_unit() { return AlgebraicNumber(GaussQ(0, 1)); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const;
    Rational rational_value() const;

    AlgebraicNumber operator+(const AlgebraicNumber& o) const;
    AlgebraicNumber operator-(const AlgebraicNumber& o) const;
    AlgebraicNumber operator-() const;
    AlgebraicNumber operator*(const AlgebraicNumber& o) const;
    AlgebraicNumber operator/(const AlgebraicNumber& o) const;
    AlgebraicNumber& operator+=(const AlgebraicNumber& o) { return *this = *this + o; }
    AlgebraicNumber inverse() const;
    AlgebraicNumber conj() const;  // complex conjugation
    bool operator==(const AlgebraicNumber& o) const { return (*this - o).is_zero(); }
    bool operator==(int n) const { return *this == AlgebraicNumber(n); }

    std::complex<double> to_complex() const;
    std::string to_string() const;

    const std::map<unsigned, GaussQ>& coeffs() const { return coeffs_; }
    const std::shared_ptr<const RadicalBasis>& basis() const { return basis_; }

private:
    void set_coeff(unsigned mask, GaussQ c);
    const RadicalBasis* require_same_basis(const AlgebraicNumber& o) const;
    AlgebraicNumber inverse_in_subtower(unsigned allowed_mask) const;

    std::shared_ptr<const RadicalBasis> basis_;  // null for pure Gaussian rationals
    std::map<unsigned, GaussQ> coeffs_;          // zero coefficients are dropped
};

}  // namespace equistrata

#endif
