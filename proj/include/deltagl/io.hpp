#pragma once

// JSON serialization: scalars as base-10 digit strings of the canonical
// representative (bit-exact cross-implementation comparison), matrices as
// nested entry arrays, lift descriptors as tagged objects.  Key order is
// fixed (insertion order) so equal values serialize to equal bytes.

#include <json.hpp>

#include "lifts.hpp"

namespace deltagl {

using json = nlohmann::ordered_json;

inline json scalar_to_json(const Scalar& s) {
    json coeffs = json::array();
    for (int i = 0; i < s.ctx->f; ++i) coeffs.push_back(std::to_string(s.c[(size_t)i]));
    json j;
    j["coeffs"] = coeffs;
    j["prec"] = s.prec;
    return j;
}

inline Scalar json_to_scalar(const Context& cx, const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() ||
        (int)j["coeffs"].size() != cx.f)
        fail("DimensionMismatch", "scalar JSON must carry exactly f coefficient strings");
    std::vector<u64> c(cx.f);
    for (int i = 0; i < cx.f; ++i) c[(size_t)i] = std::stoull(j["coeffs"][(size_t)i].get<std::string>());
    int k = j.contains("prec") ? j["prec"].get<int>() : cx.N;
    if (k < 1 || k > cx.Nmax) fail("InsufficientPrecision", "scalar precision out of range");
    return Scalar(cx, k, c);
}

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.n; ++i) {
        json row = json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    json j;
    j["n"] = m.n;
    j["entries"] = rows;
    j["prec"] = m.prec();
    return j;
}

inline Mat json_to_mat(const Context& cx, const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        fail("DimensionMismatch", "matrix JSON must carry n and entries");
    int n = j["n"].get<int>();
    const json& rows = j["entries"];
    if (n < 1 || !rows.is_array() || (int)rows.size() != n)
        fail("DimensionMismatch", "matrix JSON has the wrong number of rows");
    Mat m(cx, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[(size_t)i].is_array() || (int)rows[(size_t)i].size() != n)
            fail("DimensionMismatch", "matrix JSON has a malformed row");
        for (int jj = 0; jj < n; ++jj) m.at(i, jj) = json_to_scalar(cx, rows[(size_t)i][(size_t)jj]);
    }
    return m;
}

inline json context_to_json(const Context& cx) {
    json j;
    j["p"] = cx.p;
    j["f"] = cx.f;
    j["N"] = cx.N;
    json mod = json::array();
    for (u64 c : cx.modulus) mod.push_back(std::to_string(c % cx.pk(cx.N)));
    j["modulus"] = mod;
    return j;
}

inline json lift_to_json(const FrobeniusLift& L) {
    json j;
    switch (L.kind) {
    case FrobeniusLift::Standard:
        j["kind"] = "standard";
        j["n"] = L.n;
        break;
    case FrobeniusLift::Chern:
        j["kind"] = "chern";
        j["n"] = L.n;
        j["sign"] = L.sign > 0 ? "+" : "-";
        j["q"] = mat_to_json(L.q);
        break;
    case FrobeniusLift::SpecialLinear:
        j["kind"] = "sl";
        j["n"] = L.n;
        break;
    case FrobeniusLift::Hermitian:
        j["kind"] = "hermitian";
        j["n"] = L.n;
        j["r"] = L.herm_r;
        break;
    case FrobeniusLift::Twist:
        j["kind"] = "twist";
        j["n"] = L.n;
        j["alpha"] = mat_to_json(L.alpha);
        j["base"] = lift_to_json(*L.base);
        break;
    case FrobeniusLift::InnerTwist:
        j["kind"] = "innertwist";
        j["n"] = L.n;
        j["alpha"] = mat_to_json(L.alpha);
        j["base"] = lift_to_json(*L.base);
        break;
    case FrobeniusLift::Conjugation:
        j["kind"] = "conjugation";
        j["n"] = L.n;
        break;
    case FrobeniusLift::CharPoly:
        j["kind"] = "charpoly";
        j["n"] = L.n;
        break;
    }
    return j;
}

inline FrobeniusLift json_to_lift(const Context& cx, const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        fail("DimensionMismatch", "lift descriptor must carry a kind");
    std::string kind = j["kind"].get<std::string>();
    int n = j.contains("n") ? j["n"].get<int>() : 0;
    if (kind == "standard") return FrobeniusLift::standard(n);
    if (kind == "chern") {
        int sign = (j.contains("sign") && j["sign"].get<std::string>() == "-") ? -1 : +1;
        return FrobeniusLift::chern(json_to_mat(cx, j.at("q")), sign);
    }
    if (kind == "sl") return FrobeniusLift::special_linear(cx, n);
    if (kind == "hermitian") return FrobeniusLift::hermitian(j.at("r").get<int>());
    if (kind == "twist")
        return FrobeniusLift::twist(json_to_mat(cx, j.at("alpha")), json_to_lift(cx, j.at("base")));
    if (kind == "innertwist")
        return FrobeniusLift::inner_twist(json_to_mat(cx, j.at("alpha")),
                                          json_to_lift(cx, j.at("base")));
    if (kind == "conjugation") return FrobeniusLift::conjugation(n);
    if (kind == "charpoly") return FrobeniusLift::charpoly_lift(n);
    fail("BadArgument", "unknown lift kind: " + kind);
}

} // namespace deltagl
