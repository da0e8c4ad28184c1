#include "hilbchow/poly.hpp"

#include <algorithm>
#include <sstream>

namespace hilbchow {

PolyRing::PolyRing(std::vector<GenSym> g) : gens(std::move(g)) {
    for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
        if (gens[i].degree < 1)
            throw StructureError("generator " + gens[i].display() + " has degree < 1");
        auto [it, fresh] = by_display_.emplace(gens[i].display(), i);
        (void)it;
        if (!fresh)
            throw StructureError("duplicate generator " + gens[i].display());
    }
}

int PolyRing::index_of(const std::string& display) const {
    auto it = by_display_.find(display);
    return it == by_display_.end() ? -1 : it->second;
}

RingPtr make_ring(std::vector<GenSym> gens) {
    return std::make_shared<const PolyRing>(std::move(gens));
}

int mono_degree(const PolyRing& r, const Monomial& m) {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * r.gens[i].degree;
    return d;
}

int mono_cmp(const PolyRing& r, const Monomial& a, const Monomial& b) {
    int da = mono_degree(r, a), db = mono_degree(r, b);
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

Poly::Poly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
    if (c != 0) terms_.emplace(Monomial(ring_->size(), 0), c);
}

Poly Poly::generator(const RingPtr& ring, int index, int power) {
    Monomial m(ring->size(), 0);
    m[index] = power;
    return monomial(ring, std::move(m), 1);
}

Poly Poly::monomial(const RingPtr& ring, Monomial m, const Rational& c) {
    Poly p(ring);
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
}

void Poly::check_same_ring(const Poly& o) const {
    if (ring_ != o.ring_)
        throw StructureError("polynomials over different generator lists");
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (!ring_) { *this = o; return *this; }
    if (o.is_zero()) return *this;
    check_same_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly& Poly::operator-=(const Poly& o) {
    *this += -o;
    return *this;
}

Poly Poly::operator-() const {
    Poly r(ring_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_ring(o);
    Poly r(ring_);
    for (auto& [ma, ca] : terms_) {
        for (auto& [mb, cb] : o.terms_) {
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(ring_);
    if (c == 0) return r;
    for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (is_zero() && o.is_zero()) return true;
    return ring_ == o.ring_ && terms_ == o.terms_;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw StructureError("negative power");
    Poly r(ring_, 1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

bool Poly::is_homogeneous() const {
    int d = -1;
    for (auto& [m, c] : terms_) {
        int dm = mono_degree(*ring_, m);
        if (d == -1) d = dm;
        else if (d != dm) return false;
    }
    return true;
}

int Poly::degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, mono_degree(*ring_, m));
    return d;
}

std::vector<std::pair<int, Poly>> Poly::homogeneous_components() const {
    std::map<int, Poly> pieces;
    for (auto& [m, c] : terms_) {
        int d = mono_degree(*ring_, m);
        auto it = pieces.find(d);
        if (it == pieces.end()) it = pieces.emplace(d, Poly(ring_)).first;
        it->second.add_term(m, c);
    }
    std::vector<std::pair<int, Poly>> out;
    for (auto& [d, p] : pieces) out.emplace_back(d, std::move(p));
    return out;
}

Poly Poly::component(int degree) const {
    Poly out(ring_);
    for (auto& [m, c] : terms_)
        if (mono_degree(*ring_, m) == degree) out.add_term(m, c);
    return out;
}

Poly Poly::substitute(const RingPtr& target, const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != ring_->size())
        throw StructureError("substitute: wrong image count");
    Poly out(target);
    for (auto& [m, c] : terms_) {
        Poly t(target, c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t = t * images[i].pow(m[i]);
        out += t;
    }
    return out;
}

Poly Poly::permute(const std::vector<int>& perm) const {
    Poly out(ring_);
    for (auto& [m, c] : terms_) {
        Monomial pm(m.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) pm[perm[i]] += m[i];
        out.add_term(pm, c);
    }
    return out;
}

Poly Poly::transport(const RingPtr& target) const {
    std::vector<int> idx(ring_->size());
    for (int i = 0; i < ring_->size(); ++i) {
        idx[i] = target->index_of(ring_->gens[i].display());
        if (idx[i] < 0)
            throw StructureError("transport: target ring lacks generator " +
                                 ring_->gens[i].display());
    }
    Poly out(target);
    for (auto& [m, c] : terms_) {
        Monomial tm(target->size(), 0);
        for (size_t i = 0; i < m.size(); ++i) tm[idx[i]] += m[i];
        out.add_term(tm, c);
    }
    return out;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::vector<const Monomial*> order;
    for (auto& [m, c] : terms_) order.push_back(&m);
    std::sort(order.begin(), order.end(), [&](const Monomial* a, const Monomial* b) {
        return mono_cmp(*ring_, *a, *b) > 0;  // descending: base classes first
    });
    std::ostringstream os;
    bool first = true;
    for (const Monomial* mp : order) {
        Rational c = terms_.at(*mp);
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit_mono = std::all_of(mp->begin(), mp->end(), [](int e) { return e == 0; });
        if (a != 1 || unit_mono) {
            os << rat_str(a);
            if (!unit_mono) os << "*";
        }
        bool firstf = true;
        for (size_t i = 0; i < mp->size(); ++i) {
            if ((*mp)[i] == 0) continue;
            if (!firstf) os << "*";
            firstf = false;
            os << ring_->gens[i].display();
            if ((*mp)[i] > 1) os << "^" << (*mp)[i];
        }
    }
    return os.str();
}

}  // namespace hilbchow
