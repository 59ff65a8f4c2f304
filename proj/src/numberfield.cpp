#include "equistrata/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "equistrata/lie_core.hpp"

namespace equistrata {

namespace {

// Squarefree part by trial division: n = square * sf.
void squarefree_split(Integer n, Integer& square_root, Integer& sf) {
    square_root = 1;
    sf = 1;
    for (Integer p = 2; p * p <= n && p < 2000000; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) square_root *= p;
        if (e % 2) sf *= p;
    }
    if (n > 1) {
        Integer r = sqrt(n);
        if (r * r == n)
            square_root *= r;
        else if (n < Integer("1000000000000"))
            sf *= n;  // residual prime
        else
            throw ResourceError("cannot extract squarefree part of " + n.str());
    }
}

}  // namespace

SqrtDecomposition sqrt_decompose(const Rational& r) {
    if (r <= 0) throw std::domain_error("sqrt of non-positive rational");
    Integer num = numerator(r), den = denominator(r);
    // sqrt(a/b) = sqrt(a*b)/b
    Integer s, d;
    squarefree_split(num * den, s, d);
    return {Rational(s, den), d};
}

std::shared_ptr<const RadicalBasis> RadicalBasis::build(const std::vector<Rational>& radicands,
                                                        size_t max_generators) {
    std::vector<Integer> pool;
    for (const auto& r : radicands) {
        Integer d = sqrt_decompose(r).d;
        if (d > 1) pool.push_back(d);
    }
    // gcd refinement into a pairwise coprime base
    std::vector<Integer> base;
    for (Integer n : pool) {
        std::vector<Integer> next;
        for (Integer p : base) {
            Integer g = gcd(n, p);
            if (g == 1) {
                next.push_back(p);
            } else {
                if (g != p) next.push_back(p / g);
                next.push_back(g);
                n /= g;
            }
        }
        if (n > 1) next.push_back(n);
        base = std::move(next);
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    auto rb = std::make_shared<RadicalBasis>();
    rb->gens_ = std::move(base);
    if (rb->gens_.size() > max_generators)
        throw ResourceError("radical tower needs " + std::to_string(rb->gens_.size()) +
                            " generators, cap is " + std::to_string(max_generators));
    return rb;
}

std::pair<unsigned, Rational> RadicalBasis::decompose_sqrt(const Rational& r) const {
    SqrtDecomposition sd = sqrt_decompose(r);
    unsigned mask = 0;
    Integer d = sd.d;
    for (size_t j = 0; j < gens_.size(); ++j) {
        if (d % gens_[j] == 0) {
            mask |= 1u << j;
            d /= gens_[j];
        }
    }
    if (d != 1) throw InternalCheckError("radical " + sd.d.str() + " outside the basis");
    return {mask, sd.q};
}

Integer RadicalBasis::product(unsigned mask) const {
    Integer p = 1;
    for (size_t j = 0; j < gens_.size(); ++j)
        if (mask & (1u << j)) p *= gens_[j];
    return p;
}

double RadicalBasis::sqrt_double(unsigned mask) const {
    return std::sqrt(product(mask).convert_to<double>());
}

AlgebraicNumber AlgebraicNumber::sqrt_of(const std::shared_ptr<const RadicalBasis>& basis,
                                         const Rational& r) {
    auto [mask, q] = basis->decompose_sqrt(r);
    return AlgebraicNumber(basis, mask, GaussQ(q));
}

void AlgebraicNumber::set_coeff(unsigned mask, GaussQ c) {
    if (c.is_zero())
        coeffs_.erase(mask);
    else
        coeffs_[mask] = std::move(c);
}

const RadicalBasis* AlgebraicNumber::require_same_basis(const AlgebraicNumber& o) const {
    if (basis_ && o.basis_ && basis_ != o.basis_ &&
        basis_->generators() != o.basis_->generators())
        throw InternalCheckError("mixing incompatible radical bases");
    return basis_ ? basis_.get() : o.basis_.get();
}

bool AlgebraicNumber::is_rational() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
                               coeffs_.begin()->second.im == 0);
}

Rational AlgebraicNumber::rational_value() const {
    if (coeffs_.empty()) return 0;
    if (!is_rational()) throw std::domain_error("not a rational value");
    return coeffs_.begin()->second.re;
}

AlgebraicNumber AlgebraicNumber::operator+(const AlgebraicNumber& o) const {
    require_same_basis(o);
    AlgebraicNumber r = *this;
    if (!r.basis_) r.basis_ = o.basis_;
    for (const auto& [mask, c] : o.coeffs_) {
        auto it = r.coeffs_.find(mask);
        GaussQ sum = (it == r.coeffs_.end()) ? c : it->second + c;
        r.set_coeff(mask, sum);
    }
    return r;
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    AlgebraicNumber r = *this;
    for (auto& [mask, c] : r.coeffs_) c = -c;
    return r;
}

AlgebraicNumber AlgebraicNumber::operator-(const AlgebraicNumber& o) const {
    return *this + (-o);
}

AlgebraicNumber AlgebraicNumber::operator*(const AlgebraicNumber& o) const {
    const RadicalBasis* rb = require_same_basis(o);
    AlgebraicNumber r;
    r.basis_ = basis_ ? basis_ : o.basis_;
    for (const auto& [ma, ca] : coeffs_)
        for (const auto& [mb, cb] : o.coeffs_) {
            // sqrt(P_A) * sqrt(P_B) = P_{A&B} * sqrt(P_{A^B}) for coprime gens
            unsigned mask = ma ^ mb;
            GaussQ c = ca * cb;
            if (unsigned common = ma & mb; common != 0)
                c = c * GaussQ(Rational(rb->product(common)));
            auto it = r.coeffs_.find(mask);
            GaussQ sum = (it == r.coeffs_.end()) ? c : it->second + c;
            r.set_coeff(mask, sum);
        }
    return r;
}

AlgebraicNumber AlgebraicNumber::inverse_in_subtower(unsigned allowed_mask) const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (allowed_mask == 0 || coeffs_.size() == 1) {
        if (coeffs_.size() == 1 && coeffs_.begin()->first == 0) {
            AlgebraicNumber r;
            r.basis_ = basis_;
            r.set_coeff(0, coeffs_.begin()->second.inverse());
            return r;
        }
        if (coeffs_.size() == 1) {
            // c * sqrt(P): inverse = conj-free: 1 / (c sqrt(P)) = sqrt(P) / (c P)
            auto [mask, c] = *coeffs_.begin();
            AlgebraicNumber r;
            r.basis_ = basis_;
            r.set_coeff(mask, (c * GaussQ(Rational(basis_->product(mask)))).inverse());
            return r;
        }
        throw InternalCheckError("inverse recursion exhausted the tower");
    }
    // peel the highest allowed radical: z = a + b*sqrt(p), a,b below it
    unsigned bit = allowed_mask;
    bit |= bit >> 1;
    bit |= bit >> 2;
    bit |= bit >> 4;
    bit |= bit >> 8;
    bit |= bit >> 16;
    bit = (bit + 1) >> 1;  // highest set bit of allowed_mask
    AlgebraicNumber a, b;
    a.basis_ = b.basis_ = basis_;
    for (const auto& [mask, c] : coeffs_) {
        if (mask & bit)
            b.set_coeff(mask & ~bit, c);
        else
            a.set_coeff(mask, c);
    }
    unsigned lower = allowed_mask & ~bit;
    if (b.is_zero()) return a.inverse_in_subtower(lower);
    AlgebraicNumber sqrt_p(basis_, bit, GaussQ(Rational(1)));
    AlgebraicNumber p_rat(Rational(basis_->product(bit)));
    AlgebraicNumber denom = a * a - p_rat * b * b;
    AlgebraicNumber denom_inv = denom.inverse_in_subtower(lower);
    return (a - b * sqrt_p) * denom_inv;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    unsigned allowed = basis_ ? (1u << basis_->size()) - 1 : 0;
    return inverse_in_subtower(allowed);
}

AlgebraicNumber AlgebraicNumber::operator/(const AlgebraicNumber& o) const {
    return *this * o.inverse();
}

AlgebraicNumber AlgebraicNumber::conj() const {
    AlgebraicNumber r = *this;
    for (auto& [mask, c] : r.coeffs_) c = c.conj();
    return r;
}

std::complex<double> AlgebraicNumber::to_complex() const {
    std::complex<double> z = 0;
    for (const auto& [mask, c] : coeffs_) {
        double s = mask ? basis_->sqrt_double(mask) : 1.0;
        z += std::complex<double>(c.re.convert_to<double>(), c.im.convert_to<double>()) * s;
    }
    return z;
}

std::string AlgebraicNumber::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    auto term = [&](const Rational& coeff, unsigned mask, bool imag) {
        if (coeff == 0) return;
        Rational a = coeff < 0 ? -coeff : coeff;
        if (out.empty())
            out += (coeff < 0 ? "-" : "");
        else
            out += (coeff < 0 ? " - " : " + ");
        out += rat_to_string(a);
        if (mask) out += "·√" + basis_->product(mask).str();
        if (imag) out += "·i";
    };
    for (const auto& [mask, c] : coeffs_) {
        term(c.re, mask, false);
        term(c.im, mask, true);
    }
    return out;
}

}  // namespace equistrata
