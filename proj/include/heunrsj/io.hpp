#ifndef HEUNRSJ_IO_HPP
#define HEUNRSJ_IO_HPP

#include <json.hpp>

#include "heunrsj/cover.hpp"
#include "heunrsj/eigenbasis.hpp"
#include "heunrsj/params.hpp"

namespace heunrsj {

using nlohmann::json;

inline void to_json(json& j, const Params& p) {
    j = json{{"ell", p.ell},       {"mu", p.mu},
             {"omega", p.omega},   {"lambda", p.lambda},
             {"bias_a", p.bias_a}, {"bias_b", p.bias_b},
             {"ell_integer", p.ell_integer}};
}

inline void to_json(json& j, const CoverPoint& p) {
    j = json{{"re_w", p.w.real()}, {"im_w", p.w.imag()}};
}

inline json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json matrix_json(const Mat2c& m) {
    return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                        json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

inline json report_json(const IdentityReport& r) {
    auto field = [](double v) { return std::isnan(v) ? json() : json(v); };
    return json{{"bilinear", field(r.bilinear)},
                {"wronskian", field(r.wronskian)},
                {"eigen_plus", field(r.eigen_plus)},
                {"eigen_minus", field(r.eigen_minus)},
                {"self_conj_plus", field(r.self_conj_plus)},
                {"self_conj_minus", field(r.self_conj_minus)},
                {"max", r.max_residual()}};
}

}  // namespace heunrsj

#endif
