#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hilbchow/errors.hpp"
#include "hilbchow/rational.hpp"

namespace hilbchow {

// A graded generator. `slot` is the tensor-factor label (0,1,2) for
// generators that live in one factor of a product ring; plain ring
// generators have no slot. Display names append the slot digit: a generator
// "h" in slot 2 prints as "h2".
struct GenSym {
    std::string name;
    std::optional<int> slot;
    int degree = 1;

    std::string display() const {
        return slot ? name + std::to_string(*slot) : name;
    }
    bool operator==(const GenSym& o) const {
        return name == o.name && slot == o.slot && degree == o.degree;
    }
};

// Fixed, ordered generator list shared by all polynomials of one ring.
struct PolyRing {
    std::vector<GenSym> gens;

    explicit PolyRing(std::vector<GenSym> g);

    int size() const { return static_cast<int>(gens.size()); }
    // Index by display name; -1 if absent.
    int index_of(const std::string& display) const;

  private:
    std::map<std::string, int> by_display_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<GenSym> gens);

// Dense exponent vector over the ring's generator list.
using Monomial = std::vector<int>;

int mono_degree(const PolyRing& r, const Monomial& m);

// Canonical order: by total (weighted) degree, then lexicographic on the
// exponent vector read from the first generator. Smaller = earlier; the
// echelon pivots on the earliest monomial of a row. With e, f listed last
// this reduces exceptional-divisor powers into base classes.
int mono_cmp(const PolyRing& r, const Monomial& a, const Monomial& b);

// Multivariate polynomial over Rational with a fixed generator list.
// Zero coefficients are never stored.
class Poly {
  public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, const Rational& c);  // constant

    static Poly generator(const RingPtr& ring, int index, int power = 1);
    static Poly monomial(const RingPtr& ring, Monomial m, const Rational& c);

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const;

    Poly pow(int n) const;

    // True if every term has the same total degree; degree() then returns it
    // (degree of 0 is -1 by convention).
    bool is_homogeneous() const;
    int degree() const;

    // Split into homogeneous pieces, ascending degree; pieces sum to *this.
    std::vector<std::pair<int, Poly>> homogeneous_components() const;
    Poly component(int degree) const;

    // Map generator i of this ring to images[i] in the target ring.
    Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const;

    // Reindex generators: exponent of generator i moves to perm[i].
    // Degrees must match; used for slot permutations.
    Poly permute(const std::vector<int>& perm) const;

    // Carry this polynomial into another ring by matching display names.
    // Unknown generators raise StructureError.
    Poly transport(const RingPtr& target) const;

    // Canonical expression string, terms in descending monomial order
    // ("3*e*f", "h0^2 - 1/2*h1*e"). Zero prints "0".
    std::string str() const;

    void add_term(const Monomial& m, const Rational& c);

  private:
    void check_same_ring(const Poly& o) const;
    RingPtr ring_;
    std::map<Monomial, Rational> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

}  // namespace hilbchow
