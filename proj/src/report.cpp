#include "cubei/report.hpp"

#include <algorithm>
#include <cstdio>

namespace cubei {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* method_name(ValueMethod m) {
    switch (m) {
        case ValueMethod::ClosedForm: return "closed_form";
        case ValueMethod::Quadrature: return "quadrature";
        case ValueMethod::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

namespace {

std::vector<SubsetMask> sorted_masks(const InteractionTable& table) {
    std::vector<SubsetMask> masks;
    masks.reserve(table.entries.size());
    for (const auto& [bits, v] : table.entries) masks.emplace_back(bits, table.n);
    std::sort(masks.begin(), masks.end(), order_subset_less);
    return masks;
}

}  // namespace

nlohmann::json table_to_json(const InteractionTable& table) {
    nlohmann::json entries = nlohmann::json::array();
    for (const SubsetMask& s : sorted_masks(table)) {
        const IndexValue& v = table.entries.at(s.bits());
        nlohmann::json e;
        e["subset"] = s.players();
        e["order"] = s.size();
        e["value"] = v.value;
        e["method"] = method_name(v.method);
        if (v.exact)
            e["exact"] = rat_str(*v.exact);
        if (v.stderr_est)
            e["stderr"] = *v.stderr_est;
        else
            e["stderr"] = nullptr;
        entries.push_back(std::move(e));
    }
    nlohmann::json doc;
    doc["n"] = table.n;
    doc["entries"] = std::move(entries);
    return doc;
}

std::string table_to_csv(const InteractionTable& table) {
    std::string out = "subset,order,value,method,stderr\n";
    for (const SubsetMask& s : sorted_masks(table)) {
        const IndexValue& v = table.entries.at(s.bits());
        out += "\"" + s.to_string() + "\"," + std::to_string(s.size()) + "," + format_double(v.value) + "," +
               method_name(v.method) + ",";
        if (v.stderr_est) out += format_double(*v.stderr_est);
        out += "\n";
    }
    return out;
}

nlohmann::json fit_report_to_json(const FitReport& report, int n) {
    nlohmann::json doc;
    doc["mean"] = report.mean;
    doc["sigma"] = report.sigma;
    nlohmann::json rt = nlohmann::json::array();
    std::vector<SubsetMask> masks;
    for (const auto& [bits, r] : report.r_table) masks.emplace_back(bits, n);
    std::sort(masks.begin(), masks.end(), order_subset_less);
    for (const SubsetMask& s : masks) {
        nlohmann::json e;
        e["subset"] = s.players();
        e["order"] = s.size();
        e["r"] = report.r_table.at(s.bits());
        rt.push_back(std::move(e));
    }
    doc["r"] = std::move(rt);
    doc["r2"] = report.r2;
    doc["r2_check"] = report.r2_check;
    return doc;
}

std::string fit_report_to_csv(const FitReport& report, int n) {
    std::string out = "stat,subset,value\n";
    out += "mean,,"+ format_double(report.mean) + "\n";
    out += "sigma,," + format_double(report.sigma) + "\n";
    std::vector<SubsetMask> masks;
    for (const auto& [bits, r] : report.r_table) masks.emplace_back(bits, n);
    std::sort(masks.begin(), masks.end(), order_subset_less);
    for (const SubsetMask& s : masks) out += "r,\"" + s.to_string() + "\"," + format_double(report.r_table.at(s.bits())) + "\n";
    for (std::size_t j = 0; j < report.r2.size(); ++j)
        out += "r2_" + std::to_string(j + 1) + ",," + format_double(report.r2[j]) + "\n";
    out += "r2_check,," + format_double(report.r2_check) + "\n";
    return out;
}

}  // namespace cubei
