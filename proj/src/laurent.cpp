#include "heunrsj/laurent.hpp"

#include <stdexcept>

namespace heunrsj {

std::pair<LaurentPoly, LaurentPoly> derivative_coeffs(const Params& params, int branch_sign,
                                                      int k) {
    if (branch_sign != 1 && branch_sign != -1)
        throw std::invalid_argument("branch sign must be +1 or -1");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const double ell = params.ell;
    const double mu = params.mu;
    const Complex half_inv_omega(branch_sign / (2.0 * params.omega), 0.0);

    LaurentPoly a = LaurentPoly::monomial(ell, Complex(mu, 0.0), 0, 0);
    LaurentPoly b = LaurentPoly::monomial(ell, half_inv_omega, -1, 1);  // z^{-ell-1}
    for (int i = 1; i < k; ++i) {
        LaurentPoly a_next = Complex(mu, 0.0) * a;
        a_next += (-half_inv_omega) * b.shifted(-1, -1);  // -+ (2w)^-1 z^{ell-1} b
        a_next += a.derivative();
        LaurentPoly b_next = half_inv_omega * a.shifted(-1, 1);  // +- (2w)^-1 z^{-ell-1} a
        b_next += Complex(-mu, 0.0) * b.shifted(-2, 0);
        b_next += b.derivative();
        a = std::move(a_next);
        b = std::move(b_next);
    }
    return {a, b};
}

std::pair<LaurentPoly, LaurentPoly> ode_derivative_coeffs(const Params& params, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const double ell = params.ell;
    const double mu = params.mu;
    // E'' = c1 E' + c0 E with
    //   c1 = mu - (ell+1)/z - mu/z^2,  c0 = mu (ell+1)/z - lambda/z^2.
    LaurentPoly c1(ell);
    c1.add_term(0, 0, Complex(mu, 0.0));
    c1.add_term(-1, 0, Complex(-(ell + 1.0), 0.0));
    c1.add_term(-2, 0, Complex(-mu, 0.0));
    LaurentPoly c0(ell);
    c0.add_term(-1, 0, Complex(mu * (ell + 1.0), 0.0));
    c0.add_term(-2, 0, Complex(-params.lambda, 0.0));

    LaurentPoly p = LaurentPoly::monomial(ell, Complex(1.0, 0.0), 0, 0);
    LaurentPoly q(ell);
    for (int i = 1; i < k; ++i) {
        LaurentPoly p_next = p.derivative() + p * c1 + q;
        LaurentPoly q_next = q.derivative() + p * c0;
        p = std::move(p_next);
        q = std::move(q_next);
    }
    return {p, q};
}

}  // namespace heunrsj
