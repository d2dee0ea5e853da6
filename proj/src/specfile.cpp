#include "cubei/specfile.hpp"

#include <fstream>

#include "cubei/report.hpp"

namespace cubei {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw spec_parse_error("spec error at " + path + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path, std::string("missing field '") + key + "'");
    return j.at(key);
}

int parse_n(const json& j, const std::string& path) {
    const json& jn = need(j, "n", path);
    if (!jn.is_number_integer()) fail(path + ".n", "expected an integer");
    const long n = jn.get<long>();
    if (n < 1 || n > kMaxGroundSet) fail(path + ".n", "n must lie in [1,63]");
    return static_cast<int>(n);
}

Rational parse_rat(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) {
        Rational r(j.get<double>());  // binary fractions convert exactly
        r.canonicalize();
        return r;
    }
    if (!j.is_string()) fail(path, "expected a rational string like \"1/3\"");
    const auto r = rat_parse(j.get<std::string>());
    if (!r) fail(path, "malformed rational '" + j.get<std::string>() + "'");
    return *r;
}

SubsetMask parse_subset(const json& j, int n, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of 1-based indices");
    std::vector<int> players;
    int prev = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ipath = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_number_integer()) fail(ipath, "expected an integer index");
        const long v = j[i].get<long>();
        if (v < 1 || v > n) fail(ipath, "index out of range 1.." + std::to_string(n));
        if (v <= prev) fail(ipath, "indices must be strictly increasing");
        prev = static_cast<int>(v);
        players.push_back(prev);
    }
    return SubsetMask::from_players(n, players);
}

MultilinearPoly<Rational> parse_terms(const json& j, int n, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of {subset, coeff} terms");
    MultilinearPoly<Rational> poly(n);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ipath = path + "[" + std::to_string(i) + "]";
        const SubsetMask s = parse_subset(need(j[i], "subset", ipath), n, ipath + ".subset");
        poly.add_term(s, parse_rat(need(j[i], "coeff", ipath), ipath + ".coeff"));
    }
    return poly;
}

UnaryTransform parse_transform(const json& j, const std::string& path) {
    const json& jk = need(j, "kind", path);
    if (!jk.is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = jk.get<std::string>();
    try {
        if (kind == "identity") return Identity{};
        if (kind == "power") {
            UnaryTransform t = Power{parse_rat(need(j, "exponent", path), path + ".exponent")};
            validate_unary(t);
            return t;
        }
        if (kind == "affine")
            return Affine{parse_rat(need(j, "slope", path), path + ".slope"),
                          parse_rat(need(j, "intercept", path), path + ".intercept")};
        if (kind == "tabulated") {
            const json& jknots = need(j, "knots", path);
            if (!jknots.is_array()) fail(path + ".knots", "expected an array of [t, value] pairs");
            Tabulated t;
            for (std::size_t i = 0; i < jknots.size(); ++i) {
                const std::string ipath = path + ".knots[" + std::to_string(i) + "]";
                if (!jknots[i].is_array() || jknots[i].size() != 2) fail(ipath, "expected a [t, value] pair");
                t.knots.emplace_back(parse_rat(jknots[i][0], ipath + "[0]"), parse_rat(jknots[i][1], ipath + "[1]"));
            }
            validate_unary(t);
            return t;
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown transform kind '" + kind + "'");
}

std::vector<UnaryTransform> parse_transforms(const json& j, int n, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail(path, "expected exactly n=" + std::to_string(n) + " transforms");
    std::vector<UnaryTransform> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_transform(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

FunctionSpec parse_spec_json(const json& doc) {
    const std::string root = "$";
    const int n = parse_n(doc, root);
    const json& fn = need(doc, "function", root);
    const json& jk = need(fn, "kind", root + ".function");
    if (!jk.is_string()) fail(root + ".function.kind", "expected a string");
    const std::string kind = jk.get<std::string>();
    const std::string fpath = root + ".function";
    try {
        if (kind == "multilinear") return FunctionSpec::multilinear(parse_terms(need(fn, "terms", fpath), n, fpath + ".terms"));
        if (kind == "choquet") {
            if (n > kMaxDenseGroundSet) fail(fpath, "choquet specs require n <= 24 (dense coefficient table)");
            SetFunction<Rational> coeffs(n);
            const json& jt = need(fn, "terms", fpath);
            if (!jt.is_array()) fail(fpath + ".terms", "expected an array of {subset, coeff} terms");
            for (std::size_t i = 0; i < jt.size(); ++i) {
                const std::string ipath = fpath + ".terms[" + std::to_string(i) + "]";
                const SubsetMask s = parse_subset(need(jt[i], "subset", ipath), n, ipath + ".subset");
                coeffs[s] += parse_rat(need(jt[i], "coeff", ipath), ipath + ".coeff");
            }
            return FunctionSpec::choquet(std::move(coeffs));
        }
        if (kind == "pseudo_multilinear")
            return FunctionSpec::pseudo_multilinear(parse_terms(need(fn, "terms", fpath), n, fpath + ".terms"),
                                                    parse_transforms(need(fn, "transforms", fpath), n, fpath + ".transforms"));
        if (kind == "multiplicative")
            return FunctionSpec::multiplicative(n, parse_transforms(need(fn, "transforms", fpath), n, fpath + ".transforms"));
        if (kind == "geometric_mean") {
            const json& jw = need(fn, "weights", fpath);
            if (!jw.is_array() || static_cast<int>(jw.size()) != n)
                fail(fpath + ".weights", "expected exactly n=" + std::to_string(n) + " weights");
            std::vector<Rational> w;
            for (std::size_t i = 0; i < jw.size(); ++i)
                w.push_back(parse_rat(jw[i], fpath + ".weights[" + std::to_string(i) + "]"));
            return FunctionSpec::geometric_mean(std::move(w));
        }
        if (kind == "expression") {
            const json& je = need(fn, "expr", fpath);
            if (!je.is_string()) fail(fpath + ".expr", "expected a string");
            bool smooth = false;
            if (fn.contains("smooth")) {
                if (!fn.at("smooth").is_boolean()) fail(fpath + ".smooth", "expected a boolean");
                smooth = fn.at("smooth").get<bool>();
            }
            return parse_expression(je.get<std::string>(), n, smooth);
        }
    } catch (const std::invalid_argument& e) {
        fail(fpath, e.what());
    }
    fail(fpath + ".kind", "unknown function kind '" + kind + "'");
}

FunctionSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spec_parse_error("spec error at " + path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw spec_parse_error("spec error at " + path + ": " + e.what());
    }
    return parse_spec_json(doc);
}

namespace {

template <class T, class Fmt>
json poly_spec_json_impl(const MultilinearPoly<T>& poly, Fmt&& fmt) {
    json terms = json::array();
    for (const auto& [bits, c] : poly.terms()) {
        json t;
        t["subset"] = SubsetMask(bits, poly.n()).players();
        t["coeff"] = fmt(c);
        terms.push_back(std::move(t));
    }
    json doc;
    doc["n"] = poly.n();
    doc["function"] = {{"kind", "multilinear"}, {"terms", std::move(terms)}};
    return doc;
}

}  // namespace

json poly_spec_json(const MultilinearPoly<Rational>& poly) {
    return poly_spec_json_impl(poly, [](const Rational& c) { return rat_str(c); });
}

json poly_spec_json(const MultilinearPoly<double>& poly) {
    return poly_spec_json_impl(poly, [](double c) { return c; });
}

}  // namespace cubei
