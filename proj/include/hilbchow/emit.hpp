#pragma once

#include <string>
#include <vector>

#include "hilbchow/ring.hpp"

namespace hilbchow {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GeneratorEntry {
    std::string name;
    int degree = 0;
    std::string expr;
};

// Deterministic result container: identical inputs and configuration give
// byte-identical emitted output.
struct ResultDocument {
    std::string stage;
    std::string input_name;
    int dimension = 0;
    RankTable ranks;
    std::vector<GeneratorEntry> generators;
    std::vector<std::string> relations;
    std::string rel3_constant = "1";  // "1" or "1/2"
    std::string eqcz_sign = "+";
    std::vector<CheckResult> checks;
};

std::string emit_text(const ResultDocument& doc);
std::string emit_json(const ResultDocument& doc);
std::string emit(const ResultDocument& doc, const std::string& format);

}  // namespace hilbchow
