#ifndef KNOT_SERIALIZE_HPP
#define KNOT_SERIALIZE_HPP

#include <complex>
#include <json.hpp>
#include <string>

#include "knot/laurent.hpp"
#include "knot/representation.hpp"

namespace knot {

using nlohmann::json;

/// Complex numbers serialize as [re, im] pairs everywhere.
inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw error("expected a complex number as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

/// {"min_degree": m, "coeffs": [int, ...]}
inline json to_json(const IntLaurent& p) {
    json coeffs = json::array();
    for (auto c : p.coeffs()) coeffs.push_back(c);
    return json{{"min_degree", p.min_degree()}, {"coeffs", coeffs}};
}

/// {"min_degree": m, "coeffs": [[re, im], ...]}
inline json to_json(const CxLaurent& p) {
    json coeffs = json::array();
    for (auto c : p.coeffs()) coeffs.push_back(to_json(c));
    return json{{"min_degree", p.min_degree()}, {"coeffs", coeffs}};
}

inline json to_json(const Representation& rep) {
    json images = json::array();
    for (const SL2Value& g : rep.images) {
        json rows = json::array();
        for (int r = 0; r < 2; ++r)
            rows.push_back(json::array({to_json(g(r, 0)), to_json(g(r, 1))}));
        images.push_back(rows);
    }
    return json{{"images", images}, {"residual", rep.residual}};
}

/// Loads a .rep.json representation against a known presentation; the
/// residual is recomputed, not trusted.
inline Representation representation_from_json(const json& j, const Presentation& p) {
    if (!j.contains("images") || !j["images"].is_array())
        throw error("representation JSON needs an \"images\" array");
    const json& images_json = j["images"];
    if (static_cast<int>(images_json.size()) != p.generator_count)
        throw error("representation has " + std::to_string(images_json.size()) +
                    " images for " + std::to_string(p.generator_count) + " generators");
    std::vector<SL2Value> images;
    for (const json& mj : images_json) {
        if (!mj.is_array() || mj.size() != 2 || !mj[0].is_array() || mj[0].size() != 2)
            throw error("representation image must be a 2x2 matrix of [re, im] pairs");
        SL2Value g;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) g(r, c) = complex_from_json(mj[r][c]);
        if (!is_unimodular(g, 1e-8))
            throw error("representation image determinant is not 1");
        images.push_back(g);
    }
    return make_representation(p, std::move(images));
}

} // namespace knot

#endif
