#include "hilbchow/emit.hpp"

#include <json.hpp>
#include <sstream>

#include "hilbchow/errors.hpp"

namespace hilbchow {

std::string emit_text(const ResultDocument& doc) {
    std::ostringstream os;
    os << "stage: " << doc.stage << "\n";
    os << "input: " << doc.input_name << " (dim " << doc.dimension << ")\n";
    os << "config: rel3_constant=" << doc.rel3_constant << " eqcz_sign=" << doc.eqcz_sign
       << "\n";
    os << "ranks: " << ranks_str(doc.ranks) << "\n";
    if (!doc.generators.empty()) {
        os << "generators:\n";
        size_t w = 0;
        for (const auto& g : doc.generators) w = std::max(w, g.name.size());
        for (const auto& g : doc.generators) {
            os << "  " << g.name << std::string(w - g.name.size(), ' ') << "  deg "
               << g.degree;
            if (!g.expr.empty() && g.expr != g.name) os << "  = " << g.expr;
            os << "\n";
        }
    }
    if (!doc.relations.empty()) {
        os << "relations:\n";
        for (const auto& r : doc.relations) os << "  " << r << "\n";
    }
    if (!doc.checks.empty()) {
        os << "checks:\n";
        for (const auto& c : doc.checks) {
            os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
            if (!c.detail.empty()) os << ": " << c.detail;
            os << "\n";
        }
    }
    return os.str();
}

std::string emit_json(const ResultDocument& doc) {
    nlohmann::ordered_json j;
    j["stage"] = doc.stage;
    j["input_name"] = doc.input_name;
    j["dimension"] = doc.dimension;
    j["ranks"] = doc.ranks;
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : doc.generators)
        gens.push_back({{"name", g.name}, {"degree", g.degree}, {"expr", g.expr}});
    j["generators"] = gens;
    j["relations"] = doc.relations;
    j["config"] = {{"rel3_constant", doc.rel3_constant}, {"eqcz_sign", doc.eqcz_sign}};
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : doc.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}});
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string emit(const ResultDocument& doc, const std::string& format) {
    if (format == "text") return emit_text(doc);
    if (format == "json") return emit_json(doc);
    throw StructureError("unknown format '" + format + "' (expected text or json)");
}

}  // namespace hilbchow
