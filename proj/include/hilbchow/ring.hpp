#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hilbchow/linalg.hpp"
#include "hilbchow/poly.hpp"

namespace hilbchow {

// Finite presentation of a graded commutative ring with a top degree:
// classes above top_degree are zero.
struct RingPresentation {
    RingPtr ring;
    std::vector<Poly> relations;  // homogeneous, degree >= 1
    int top_degree = 0;
    std::string name;

    void validate() const;
};

using RankTable = std::vector<int>;

// Degree-k piece of the quotient: all degree-k monomials, a reduced echelon
// of the Macaulay rows (relation x complementary monomial), and the
// surviving basis monomials.
struct DegreeBasis {
    int degree = 0;
    std::vector<Monomial> monomials;  // ascending canonical order
    std::map<Monomial, int> col;      // monomial -> column index
    Echelon reduction;                // rows over `monomials`
    std::vector<int> basis;           // indices of non-pivot monomials
    std::map<Monomial, int> basis_pos;
};

// A frozen graded model: presentation plus all degree bases 0..top.
class GradedModel {
  public:
    explicit GradedModel(RingPresentation pres);

    const RingPresentation& pres() const { return pres_; }
    const RingPtr& ring() const { return pres_.ring; }
    int top() const { return pres_.top_degree; }

    const DegreeBasis& basis(int k) const;
    int rank(int k) const;
    RankTable rank_table() const;

    // Unique representative over the surviving basis monomials. Components
    // above top degree truncate to zero.
    Poly normal_form(const Poly& p) const;

    // Coordinates of a homogeneous degree-k class over basis(k).
    QVec coords(const Poly& p, int k) const;
    Poly from_coords(int k, const QVec& v) const;
    Poly basis_poly(int k, int i) const;

    Poly mul_nf(const Poly& a, const Poly& b) const;

    // All monomials of the given degree, ascending canonical order.
    std::vector<Monomial> monomials_of_degree(int k) const;

  private:
    void build(int k);
    RingPresentation pres_;
    std::vector<DegreeBasis> bases_;
};

using ModelPtr = std::shared_ptr<const GradedModel>;

ModelPtr make_model(RingPresentation pres);

// Family of exact matrices, one per source degree k:
// mats[k] : coords_src(k) -> coords_tgt(k + shift).
struct GradedLinearMap {
    ModelPtr source;
    ModelPtr target;
    int shift = 0;
    std::vector<QMat> mats;  // index k = 0..source->top()

    Poly apply(const Poly& p) const;
    const QMat& mat(int k) const { return mats.at(k); }
};

// Ring homomorphism from generator images. Every source relation must map
// to zero in the target; otherwise MathError names the offending relation.
GradedLinearMap induced_map(const ModelPtr& source, const ModelPtr& target,
                            const std::vector<Poly>& gen_images);

// Graded subspace of a model, one echelonized span per degree.
class GradedSubspace {
  public:
    GradedSubspace() = default;
    explicit GradedSubspace(ModelPtr ambient);

    const ModelPtr& ambient() const { return ambient_; }
    int rank(int k) const { return spans_.at(k).rank(); }
    RankTable rank_table() const;
    const Echelon& span(int k) const { return spans_.at(k); }

    bool insert(int k, const QVec& v);
    bool insert(const Poly& p);  // homogeneous normal-form class
    bool contains(int k, const QVec& v) const;
    bool contains(const Poly& p) const;  // every homogeneous component
    std::vector<Poly> basis_polys(int k) const;

    bool operator==(const GradedSubspace& o) const;

  private:
    ModelPtr ambient_;
    std::vector<Echelon> spans_;
};

// Column space and null space of the map, degree by degree.
struct ImageKernel {
    GradedSubspace image;   // subspace of target
    GradedSubspace kernel;  // subspace of source
};
ImageKernel image_kernel(const GradedLinearMap& m);

// Finite group of ring self-maps given by generator permutations.
class PermutationAction {
  public:
    // Each action generator maps ring generator i to generator perm[i]
    // (degree-preserving bijections). The group closure is computed and
    // bounded; each element must be a valid self-map of the model.
    PermutationAction(ModelPtr model, std::vector<std::vector<int>> action_gens,
                      int max_order = 720);

    const std::vector<std::vector<int>>& elements() const { return elements_; }
    int order() const { return static_cast<int>(elements_.size()); }

    Poly symmetrize(const Poly& p) const;  // average over the group
    GradedSubspace invariant_subspace() const;
    QMat projector_matrix(int k) const;  // symmetrize as a matrix on degree k
    GradedLinearMap projector_map() const;

  private:
    ModelPtr model_;
    std::vector<std::vector<int>> elements_;
};

// Smallest graded subspace containing 1 and the generators, closed under
// multiplication by the generators (hence a subalgebra).
GradedSubspace subalgebra_closure(const ModelPtr& model,
                                  const std::vector<Poly>& generators);

std::string ranks_str(const RankTable& t);

}  // namespace hilbchow
