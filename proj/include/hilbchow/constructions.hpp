#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hilbchow/ring.hpp"

namespace hilbchow {

// Total Chern class data: c[0] = 1, deg(c[j]) = j, entries in one ring.
struct ChernVector {
    std::vector<Poly> c;
    int rank() const { return static_cast<int>(c.size()) - 1; }
    void validate() const;
};

// A smooth projective variety with the Kunneth property, as finite data:
// the Chow ring presentation, tangent Chern class, diagonal (in the 2-slot
// square ring, slots 0 and 1), and the point class.
struct VarietyData {
    std::string name;
    int dim = 0;
    ModelPtr model;            // A*(X)
    std::vector<Poly> chern;   // c_0..c_dim of T_X, in model's ring
    ModelPtr square;           // A*(X) (x) A*(X), slots 0,1
    Poly diagonal;             // degree-dim class in square
    Poly point_class;          // degree-dim class in model
};

// Place a polynomial of X's ring into the given slot of a target ring whose
// generators carry (name, slot) labels.
Poly place_in_slot(const Poly& p, int slot, const RingPtr& target);

// Place a two-slot polynomial (slots 0,1) into slots (i,j) of the target.
Poly place_pair(const Poly& p, int slot_i, int slot_j, const RingPtr& target);

// Tensor product of presentations: disjoint slot-relabeled generators, both
// relation sets, top degrees added. Slotless generators of a receive slot
// base_slot, of b the next slot(s); pre-slotted generators keep their slots
// (collisions are an error).
RingPresentation kunneth_product(const RingPresentation& a,
                                 const RingPresentation& b);
// n-fold power of X's presentation with slots 0..n-1.
RingPresentation kunneth_power(const VarietyData& x, int n);

// Checks (g(x)1)*diag == (1(x)g)*diag for every generator and the point
// normalization (the (dim,0)-bicomponent of diag is point (x) 1).
// Throws MathError naming the generator / residual on failure.
void validate_diagonal(const VarietyData& x);

// Full VarietyData validation (chern shape, diagonal degree, top-degree
// rank 1, diagonal identity).
void validate_variety(const VarietyData& x);

struct BundleModel {
    ModelPtr total;       // A*(Y)[h]/(h^r + c1 h^{r-1} + ... + cr)
    int h_index = -1;     // index of h in total ring
    GradedLinearMap p_star;  // shift -(r-1), extracts the h^{r-1} coefficient
};

// Projective bundle P(N) -> Y for a rank-r Chern vector over Y.
BundleModel projective_bundle(const ModelPtr& y, const ChernVector& n,
                              const std::string& h_name = "h");

struct BlowupModel {
    ModelPtr total;          // A*(Bl_Y X); equals base when codim == 1
    bool e_is_generator = false;
    int e_index = -1;        // valid when e_is_generator
    Poly e_class;            // class of the exceptional divisor in total
    GradedLinearMap pi_star; // A*(Bl) -> A*(X), projection onto the pullback summand
    GradedLinearMap pi_pull; // A*(X) -> A*(Bl)
    ModelPtr base;           // A*(X)
    ModelPtr center;         // A*(Y)
};

// Blowup of X along the center described by iota_pullback: A*(X) ->> A*(Y)
// (surjective per degree, checked), normal-bundle Chern classes in A*(Y)
// (rank = codimension), and the class of Y in A*(X).
BlowupModel blowup(const ModelPtr& x, const GradedLinearMap& iota_pullback,
                   const ChernVector& normal, const Poly& class_y,
                   const std::string& e_name = "e");

struct SymmetricQuotient {
    ModelPtr tensor;        // A*(X)^{(x)n}
    GradedSubspace invariants;
    RankTable ranks;
};

// Invariants of the symmetric group permuting the slots of A*(X)^{(x)n};
// models A*(Sym^n X) with rational coefficients. n in {2,3}.
SymmetricQuotient symmetric_quotient(const VarietyData& x, int n);

// Slot-permutation on a product ring: generator in slot s goes to slot
// perm[s]; generators without slots stay fixed.
std::vector<int> slot_permutation(const RingPtr& ring, const std::vector<int>& perm);

}  // namespace hilbchow
