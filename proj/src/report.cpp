#include "spiegel/report.hpp"

#include <sstream>

namespace spiegel {

namespace {

// display order for the dimension table
const char* const kDimOrder[] = {"omega_quotient", "ker_one_minus_cd", "units",      "pic_p",
                                 "hom_operational", "ker_alpha",       "coker_alpha"};

const char* dim_title(const std::string& key) {
    if (key == "omega_quotient") return "Omega_R / q^{q^d}";
    if (key == "ker_one_minus_cd") return "ker(1 - c^d)";
    if (key == "units") return "A/P (x) R^x";
    if (key == "pic_p") return "A/P (x) Pic(R)[p]";
    if (key == "hom_operational") return "Hom_A(H(R), Lambda) (operational)";
    if (key == "ker_alpha") return "ker alpha";
    if (key == "coker_alpha") return "coker alpha";
    return "";
}

}  // namespace

nlohmann::ordered_json to_json(const SpiegelReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["q"] = r.q;
    j["p_poly"] = r.p_poly;
    j["d"] = r.d;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["status"] = r.status;
    if (r.passed()) {
        j["failure"] = nullptr;
    } else {
        nlohmann::ordered_json f{{"kind", r.failure_kind}, {"message", r.failure_message}};
        f["character"] = r.failure_character ? nlohmann::ordered_json(*r.failure_character) : nlohmann::ordered_json(nullptr);
        j["failure"] = f;
    }
    auto dims = nlohmann::ordered_json::object();
    for (const char* key : kDimOrder)
        if (auto it = r.dims.find(key); it != r.dims.end()) dims[key] = it->second;
    j["dims"] = dims;
    auto verdicts = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.verdicts) verdicts[k] = v;
    j["verdicts"] = verdicts;
    auto chars = nlohmann::ordered_json::array();
    for (const auto& o : r.remark)
        chars.push_back({{"character", o.character},
                         {"examined", o.examined},
                         {"hom_dim", o.hom_dim},
                         {"pic_dim", o.pic_dim},
                         {"ok", o.ok}});
    j["remark"] = {{"vacuous", r.remark_vacuous}, {"characters", chars}};
    j["oracles"] = r.oracles;
    auto t = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    j["timings"] = t;
    j["notes"] = r.notes;
    return j;
}

std::string render_json(const SpiegelReport& r) { return to_json(r).dump(2) + "\n"; }

std::string render_markdown(const SpiegelReport& r) {
    std::ostringstream os;
    os << "# q = " << r.q << ", P = " << r.p_poly << "\n\n";
    os << "d = " << r.d << ", |Delta| = " << r.n << ", seed = " << r.seed << ", status **" << r.status << "**\n\n";
    if (!r.passed()) {
        os << "Failure: " << r.failure_kind << ": " << r.failure_message;
        if (r.failure_character) os << " (character omega^" << *r.failure_character << ")";
        os << "\n\n";
    }
    if (!r.dims.empty()) {
        os << "| module |";
        for (unsigned j = 0; j < r.n; ++j) os << " " << j << " |";
        os << "\n|---|";
        for (unsigned j = 0; j < r.n; ++j) os << "---|";
        os << "\n";
        for (const char* key : kDimOrder) {
            auto it = r.dims.find(key);
            if (it == r.dims.end()) continue;
            os << "| " << dim_title(key) << " |";
            for (unsigned v : it->second) os << " " << v << " |";
            os << "\n";
        }
        os << "\nColumns are exponents j of omega.\n\n";
    }
    os << "| verdict | result |\n|---|---|\n";
    for (const auto& [k, v] : r.verdicts) os << "| " << k << " | " << (v ? "pass" : "FAIL") << " |\n";
    os << "\n";
    if (r.remark_vacuous) {
        os << "Remark check: vacuous (every character is trivial on k^x).\n\n";
    } else if (!r.remark.empty()) {
        os << "| character | examined | hom | pic | ok |\n|---|---|---|---|---|\n";
        for (const auto& o : r.remark)
            os << "| " << o.character << " | " << (o.examined ? "yes" : "skipped") << " | " << o.hom_dim << " | "
               << o.pic_dim << " | " << (o.ok ? "yes" : "NO") << " |\n";
        os << "\n";
    }
    if (r.oracles.contains("class_group")) {
        const auto& c = r.oracles["class_group"];
        os << "Cl0(L) order " << c["cl0_order"].get<std::string>() << ", Pic(R) order " << c["pic_order"].get<std::string>()
           << ", norm bound " << c["norm_bound"] << "\n\n";
    }
    for (const auto& n : r.notes) os << "- " << n << "\n";
    return os.str();
}

}  // namespace spiegel
