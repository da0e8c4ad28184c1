#include "hilbchow/ringfile.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hilbchow/errors.hpp"

namespace hilbchow {

namespace {

enum class Tok { Ident, Int, Plus, Minus, Star, Caret, Slash, Colon, Tensor, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 0;
    int col = 0;
};

struct Lexer {
    std::vector<Token> toks;
    size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    const Token& next() { return toks[std::min(pos++, toks.size() - 1)]; }
    bool at_end() const { return toks[pos].kind == Tok::End; }
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
}

void lex_line(std::vector<Token>& out, const std::string& s, int line_no) {
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        if (s.compare(i, 3, "(x)") == 0) {
            out.push_back({Tok::Tensor, "(x)", line_no, col});
            i += 3;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), line_no, col});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), line_no, col});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '/': k = Tok::Slash; break;
            case ':': k = Tok::Colon; break;
            default:
                throw ParseError(line_no, col, std::string("unexpected character '") + c +
                                                   "'; expected an expression token");
        }
        out.push_back({k, std::string(1, c), line_no, col});
        ++i;
    }
}

Lexer lex(const std::vector<std::pair<int, std::string>>& lines) {
    Lexer lx;
    for (const auto& [no, text] : lines) lex_line(lx.toks, text, no);
    int last_line = lines.empty() ? 1 : lines.back().first;
    lx.toks.push_back({Tok::End, "", last_line, 1});
    return lx;
}

long to_int(const Token& t) { return std::stol(t.text); }

// expression parser over a fixed ring
struct ExprParser {
    Lexer& lx;
    const RingPtr& ring;

    Rational rational() {
        const Token& t = lx.next();
        if (t.kind != Tok::Int) fail(t, "expected an integer");
        long num = to_int(t);
        if (lx.peek().kind == Tok::Slash) {
            lx.next();
            const Token& d = lx.next();
            if (d.kind != Tok::Int) fail(d, "expected a denominator integer after '/'");
            long den = to_int(d);
            if (den == 0) fail(d, "zero denominator");
            return rat(num, den);
        }
        return rat(num);
    }

    Poly factor() {
        const Token& t = lx.next();
        if (t.kind != Tok::Ident) fail(t, "expected a generator name");
        int idx = ring->index_of(t.text);
        if (idx < 0) fail(t, "unknown generator '" + t.text + "'");
        int power = 1;
        if (lx.peek().kind == Tok::Caret) {
            lx.next();
            const Token& p = lx.next();
            if (p.kind != Tok::Int) fail(p, "expected an integer exponent after '^'");
            power = static_cast<int>(to_int(p));
            if (power < 0) fail(p, "negative exponent");
        }
        return Poly::generator(ring, idx, power);
    }

    // term := rational ['*' factor ('*' factor)*] | factor ('*' factor)*
    Poly term() {
        Poly p(ring, 1);
        if (lx.peek().kind == Tok::Int) {
            p = Poly(ring, rational());
            if (lx.peek().kind != Tok::Star) return p;
            lx.next();
        }
        p = p * factor();
        while (lx.peek().kind == Tok::Star) {
            lx.next();
            p = p * factor();
        }
        return p;
    }

    Poly expression() {
        Poly p(ring);
        bool neg = false;
        if (lx.peek().kind == Tok::Minus) {
            lx.next();
            neg = true;
        }
        Poly t = term();
        p = neg ? -t : t;
        while (lx.peek().kind == Tok::Plus || lx.peek().kind == Tok::Minus) {
            bool minus = lx.next().kind == Tok::Minus;
            Poly u = term();
            p = minus ? p - u : p + u;
        }
        return p;
    }
};

const std::vector<std::string>& section_names() {
    static const std::vector<std::string> names{"generators", "relations",
                                                "chern_tangent", "diagonal", "point"};
    return names;
}

bool is_section_header(const std::string& line, std::string& name) {
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    for (const auto& s : section_names()) {
        if (line.compare(i, s.size(), s) == 0) {
            size_t j = i + s.size();
            while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j < line.size() && line[j] == ':') {
                name = s;
                return true;
            }
        }
    }
    return false;
}

std::string strip_comment(const std::string& s) {
    size_t h = s.find('#');
    return h == std::string::npos ? s : s.substr(0, h);
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

bool RingFile::operator==(const RingFile& o) const {
    if (name != o.name || dim != o.dim) return false;
    if (ring->size() != o.ring->size()) return false;
    for (int i = 0; i < ring->size(); ++i)
        if (!(ring->gens[i] == o.ring->gens[i])) return false;
    auto same = [](const Poly& a, const Poly& b) {
        if (a.terms().size() != b.terms().size()) return false;
        auto it = b.terms().begin();
        for (auto& [m, c] : a.terms()) {
            if (m != it->first || c != it->second) return false;
            ++it;
        }
        return true;
    };
    if (relations.size() != o.relations.size()) return false;
    for (size_t i = 0; i < relations.size(); ++i)
        if (!same(relations[i], o.relations[i])) return false;
    return same(chern_total, o.chern_total) && same(diagonal, o.diagonal) &&
           same(point_class, o.point_class);
}

RingFile parse_ring_file(const std::string& text) {
    // split into numbered lines, strip comments
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream is(text);
        std::string line;
        int no = 0;
        while (std::getline(is, line)) lines.emplace_back(++no, strip_comment(line));
    }
    size_t li = 0;
    while (li < lines.size() && blank(lines[li].second)) ++li;
    if (li == lines.size()) throw ParseError(1, 1, "empty document; expected 'variety'");

    RingFile rf;
    {
        std::vector<std::pair<int, std::string>> hdr{lines[li]};
        Lexer lx = lex(hdr);
        const Token& kw = lx.next();
        if (kw.kind != Tok::Ident || kw.text != "variety")
            fail(kw, "expected 'variety <name> dim <int>'");
        const Token& nm = lx.next();
        if (nm.kind != Tok::Ident) fail(nm, "expected a variety name");
        rf.name = nm.text;
        const Token& dk = lx.next();
        if (dk.kind != Tok::Ident || dk.text != "dim") fail(dk, "expected 'dim'");
        const Token& dv = lx.next();
        if (dv.kind != Tok::Int) fail(dv, "expected the dimension integer");
        rf.dim = static_cast<int>(to_int(dv));
        if (!lx.at_end()) fail(lx.peek(), "unexpected trailing tokens after the header");
        ++li;
    }

    // carve sections
    std::map<std::string, std::vector<std::pair<int, std::string>>> sections;
    std::string current;
    for (; li < lines.size(); ++li) {
        std::string sec;
        if (is_section_header(lines[li].second, sec)) {
            if (sections.count(sec))
                throw ParseError(lines[li].first, 1, "duplicate section '" + sec + "'");
            sections[sec];
            current = sec;
            std::string rest = lines[li].second;
            rest = rest.substr(rest.find(':') + 1);
            if (!blank(rest)) sections[sec].emplace_back(lines[li].first, rest);
            continue;
        }
        if (blank(lines[li].second)) continue;
        if (current.empty())
            throw ParseError(lines[li].first, 1,
                             "expected a section header (generators:, relations:, "
                             "chern_tangent:, diagonal:, point:)");
        sections[current].push_back(lines[li]);
    }
    for (const auto& s : section_names())
        if (!sections.count(s))
            throw ParseError(lines.empty() ? 1 : lines.back().first, 1,
                             "missing section '" + s + ":'");

    // generators
    std::vector<GenSym> gens;
    {
        Lexer lx = lex(sections["generators"]);
        while (!lx.at_end()) {
            const Token& nm = lx.next();
            if (nm.kind != Tok::Ident) fail(nm, "expected a generator name");
            for (const auto& s : section_names())
                if (nm.text == s) fail(nm, "'" + nm.text + "' is a reserved word");
            if (nm.text == "e" || nm.text == "f")
                fail(nm, "'e' and 'f' are reserved for the exceptional classes");
            if (std::isdigit(static_cast<unsigned char>(nm.text.back())))
                fail(nm, "generator names must not end in a digit "
                         "(digits are used for slot labels)");
            const Token& co = lx.next();
            if (co.kind != Tok::Colon) fail(co, "expected ':' after the generator name");
            const Token& dg = lx.next();
            if (dg.kind != Tok::Int) fail(dg, "expected the generator degree");
            int deg = static_cast<int>(to_int(dg));
            if (deg < 1) fail(dg, "generator degree must be >= 1");
            for (const auto& g : gens)
                if (g.name == nm.text) fail(nm, "duplicate generator '" + nm.text + "'");
            gens.push_back(GenSym{nm.text, std::nullopt, deg});
        }
    }
    rf.ring = make_ring(gens);

    // square ring, slots 0 and 1
    {
        std::vector<GenSym> sg;
        for (int s = 0; s <= 1; ++s)
            for (auto g : gens) {
                g.slot = s;
                sg.push_back(g);
            }
        rf.square_ring = make_ring(sg);
    }

    // relations: one expression per line
    for (const auto& [no, text2] : sections["relations"]) {
        if (blank(text2)) continue;
        std::vector<std::pair<int, std::string>> one{{no, text2}};
        Lexer lx = lex(one);
        ExprParser ep{lx, rf.ring};
        Poly p = ep.expression();
        if (!lx.at_end()) fail(lx.peek(), "unexpected token after the relation");
        if (!p.is_homogeneous()) {
            auto comps = p.homogeneous_components();
            std::string degs;
            for (auto& [d, q] : comps) degs += (degs.empty() ? "" : ", ") + std::to_string(d);
            throw ParseError(no, 1, "inhomogeneous relation at line " + std::to_string(no) +
                                        " (term degrees " + degs + ")");
        }
        rf.relations.push_back(p);
    }

    // chern_tangent, point: single expressions
    {
        Lexer lx = lex(sections["chern_tangent"]);
        ExprParser ep{lx, rf.ring};
        rf.chern_total = ep.expression();
        if (!lx.at_end()) fail(lx.peek(), "unexpected token in chern_tangent");
    }
    {
        Lexer lx = lex(sections["point"]);
        ExprParser ep{lx, rf.ring};
        rf.point_class = ep.expression();
        if (!lx.at_end()) fail(lx.peek(), "unexpected token in point");
    }

    // diagonal: sum of term (x) term
    {
        Lexer lx = lex(sections["diagonal"]);
        ExprParser ep{lx, rf.ring};
        Poly diag(rf.square_ring);
        bool first = true;
        while (true) {
            bool neg = false;
            if (first) {
                if (lx.peek().kind == Tok::Minus) {
                    lx.next();
                    neg = true;
                }
            } else {
                if (lx.at_end()) break;
                const Token& op = lx.next();
                if (op.kind == Tok::Plus) neg = false;
                else if (op.kind == Tok::Minus) neg = true;
                else fail(op, "expected '+', '-' or end of the diagonal expression");
            }
            Poly lhs = ep.term();
            const Token& tens = lx.next();
            if (tens.kind != Tok::Tensor) fail(tens, "expected the tensor token '(x)'");
            Poly rhs = ep.term();
            Poly prod = place_in_slot(lhs, 0, rf.square_ring) *
                        place_in_slot(rhs, 1, rf.square_ring);
            diag += neg ? -prod : prod;
            first = false;
        }
        rf.diagonal = diag;
    }
    return rf;
}

namespace {

std::string poly_str_or_zero(const Poly& p) { return p.is_zero() ? "0" : p.str(); }

// print a two-slot class as a tensor expression
std::string diagonal_str(const Poly& diag, const RingPtr& square, const RingPtr& base) {
    if (diag.is_zero()) return "0 (x) 1";
    std::vector<const Monomial*> order;
    for (auto& [m, c] : diag.terms()) order.push_back(&m);
    std::sort(order.begin(), order.end(), [&](const Monomial* a, const Monomial* b) {
        return mono_cmp(*square, *a, *b) > 0;
    });
    std::ostringstream os;
    bool first = true;
    for (const Monomial* mp : order) {
        Rational c = diag.terms().at(*mp);
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        // split the monomial into slot parts
        Monomial m0(base->size(), 0), m1(base->size(), 0);
        for (int i = 0; i < square->size(); ++i) {
            if ((*mp)[i] == 0) continue;
            const GenSym& g = square->gens[i];
            int bi = base->index_of(g.name);
            (*g.slot == 0 ? m0 : m1)[bi] += (*mp)[i];
        }
        Poly lhs = Poly::monomial(base, m0, a);
        Poly rhs = Poly::monomial(base, m1, 1);
        os << lhs.str() << " (x) " << rhs.str();
    }
    return os.str();
}

}  // namespace

std::string serialize(const RingFile& rf) {
    std::ostringstream os;
    os << "variety " << rf.name << " dim " << rf.dim << "\n";
    os << "generators:";
    for (const auto& g : rf.ring->gens) os << " " << g.name << ":" << g.degree;
    os << "\n";
    os << "relations:\n";
    for (const auto& r : rf.relations) os << "  " << r.str() << "\n";
    os << "chern_tangent: " << poly_str_or_zero(rf.chern_total) << "\n";
    os << "diagonal: " << diagonal_str(rf.diagonal, rf.square_ring, rf.ring) << "\n";
    os << "point: " << poly_str_or_zero(rf.point_class) << "\n";
    return os.str();
}

Poly parse_expression(const std::string& text, const RingPtr& ring) {
    std::vector<std::pair<int, std::string>> one{{1, text}};
    Lexer lx = lex(one);
    ExprParser ep{lx, ring};
    Poly p = ep.expression();
    if (!lx.at_end()) fail(lx.peek(), "unexpected token after the expression");
    return p;
}

VarietyData to_variety(const RingFile& rf) {
    VarietyData v;
    v.name = rf.name;
    v.dim = rf.dim;
    RingPresentation pres{rf.ring, rf.relations, rf.dim, rf.name};
    v.model = make_model(pres);
    for (int j = 0; j <= rf.dim; ++j) v.chern.push_back(rf.chern_total.component(j));
    if (!(rf.chern_total == [&] {
            Poly s(rf.ring);
            for (auto& c : v.chern) s += c;
            return s;
        }()))
        throw StructureError(rf.name + ": chern_tangent has terms above the dimension");
    v.square = make_model(kunneth_product(pres, pres));
    v.diagonal = rf.diagonal.transport(v.square->ring());
    v.point_class = rf.point_class;
    validate_variety(v);
    return v;
}

}  // namespace hilbchow
