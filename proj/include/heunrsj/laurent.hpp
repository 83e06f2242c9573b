#ifndef HEUNRSJ_LAURENT_HPP
#define HEUNRSJ_LAURENT_HPP

#include <map>
#include <utility>

#include "heunrsj/cover.hpp"
#include "heunrsj/params.hpp"
#include "heunrsj/types.hpp"

namespace heunrsj {

/// Finite sum of terms c * z^(m - s*ell) with integer m, s.  Storing the
/// exponent as the pair (m, s) keeps non-integer orders ell representable,
/// and evaluation goes through cover::power so fractional exponents stay
/// single-valued.  No zero coefficients are stored.
class LaurentPoly {
  public:
    using Key = std::pair<int, int>;  // (m, s): exponent m - s*ell

    explicit LaurentPoly(double ell = 0.0) : ell_(ell) {}

    static LaurentPoly monomial(double ell, Complex c, int m, int s = 0) {
        LaurentPoly p(ell);
        p.add_term(m, s, c);
        return p;
    }

    double ell() const { return ell_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Key, Complex>& terms() const { return terms_; }

    void add_term(int m, int s, Complex c) {
        if (c == Complex(0.0, 0.0)) return;
        auto [it, fresh] = terms_.try_emplace({m, s}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
        }
    }

    Complex coeff(int m, int s) const {
        auto it = terms_.find({m, s});
        return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
    }

    double exponent(const Key& k) const { return k.first - k.second * ell_; }

    Complex eval(CoverPoint p) const {
        Complex acc(0.0, 0.0);
        for (const auto& [k, c] : terms_) acc += c * power(p, exponent(k));
        return acc;
    }

    /// Formal derivative d/dz.
    LaurentPoly derivative() const {
        LaurentPoly d(ell_);
        for (const auto& [k, c] : terms_) {
            const double e = exponent(k);
            if (e == 0.0) continue;
            d.add_term(k.first - 1, k.second, e * c);
        }
        return d;
    }

    /// Multiplication by the monomial z^(dm - ds*ell).
    LaurentPoly shifted(int dm, int ds) const {
        LaurentPoly r(ell_);
        for (const auto& [k, c] : terms_) r.add_term(k.first + dm, k.second + ds, c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }

    friend LaurentPoly operator*(Complex c, const LaurentPoly& p) {
        LaurentPoly r(p.ell_);
        for (const auto& [k, v] : p.terms_) r.add_term(k.first, k.second, c * v);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r(a.ell_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }

  private:
    double ell_;
    std::map<Key, Complex> terms_;
};

/// Coefficient pair (a_k, b_k) of the k-th derivative representation
/// d^k E / dz^k = a_k E(z) + b_k E(1/z) valid on the eigen-branch of the
/// given sign, built by the recurrence
///   a_1 = mu,  b_1 = +-(2 omega)^{-1} z^{-ell-1},
///   a_{k+1} = mu a_k -+ (2 omega)^{-1} z^{ell-1} b_k + a_k',
///   b_{k+1} = +-(2 omega)^{-1} z^{-ell-1} a_k - mu z^{-2} b_k + b_k'.
std::pair<LaurentPoly, LaurentPoly> derivative_coeffs(const Params& params, int branch_sign,
                                                      int k);

/// Coefficient pair (p_k, q_k) with d^k E / dz^k = p_k E'(z) + q_k E(z) for
/// any solution, obtained by repeated differentiation of the equation itself
/// (E'' eliminated each round).  Independent of the eigen-branch; serves as
/// the oracle route for the representation above.
std::pair<LaurentPoly, LaurentPoly> ode_derivative_coeffs(const Params& params, int k);

}  // namespace heunrsj

#endif
