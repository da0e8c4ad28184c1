#pragma once

#include <string>
#include <vector>

#include "hilbchow/constructions.hpp"

namespace hilbchow {

// Parsed form of a .ring input document.
struct RingFile {
    std::string name;
    int dim = 0;
    RingPtr ring;                 // declared generators (slotless)
    std::vector<Poly> relations;  // homogeneous, over `ring`
    Poly chern_total;             // 1 + c_1 + ... + c_dim
    RingPtr square_ring;          // two slot copies, slots 0 and 1
    Poly diagonal;                // over `square_ring`
    Poly point_class;             // over `ring`

    bool operator==(const RingFile& o) const;
};

// Grammar:
//   document     = header section*
//   header       = 'variety' name 'dim' int
//   sections     = 'generators:' (name ':' int)*
//                  'relations:'  one expression per line
//                  'chern_tangent:' expression
//                  'diagonal:' tensor-expression
//                  'point:' expression
//   expression   = ['-'] term (('+'|'-') term)*
//   term         = rational | [rational '*'] factor ('*' factor)*
//   factor       = generator ['^' int]
//   rational     = int ['/' int]
//   tensor terms = term '(x)' term
// Whitespace-insensitive inside expressions; '#' starts a line comment.
RingFile parse_ring_file(const std::string& text);

std::string serialize(const RingFile& rf);

// Parse a standalone expression over an existing ring (CLI --element).
Poly parse_expression(const std::string& text, const RingPtr& ring);

// Build the full variety data (models, validation) from a parsed file.
VarietyData to_variety(const RingFile& rf);

}  // namespace hilbchow
