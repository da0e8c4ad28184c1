#pragma once

#include <string>
#include <vector>

#include "hilbchow/constructions.hpp"

namespace hilbchow {

struct PipelineConfig {
    // Alternative normalization: halve the constant term of the f-relation.
    // The default factor 1 is the one the curve coherence check validates.
    bool rel3_half = false;
    // Sign of e inside the normal-bundle expansion c(T)(1-2e)/(1-e).
    int eqcz_sign = +1;
};

struct Hilb2Model {
    VarietyData x;
    BlowupModel bl;             // Bl_Delta(X x X)
    GradedSubspace invariants;  // S2-invariant part: the model of A*(Hilb^2 X)
    RankTable ranks;
};

Hilb2Model hilb2_model(const VarietyData& x);

// Components c_0..c_dim of c(T_X)(1-2e)/(1-e) expanded in e's ring, with the
// tangent class placed in slot 0. sign flips e -> -e.
std::vector<Poly> z2_normal_chern(const VarietyData& x, const Poly& e, int sign);

enum class MonoType { SYM, E_ONLY, F_ONLY, MIXED };

// Ambient presentation T/J for A*(Hilb^{[2,3]} X) in Kunneth form: three slot
// copies of A*(X) plus the exceptional classes e, f, together with the
// faithful graded subspace W and the push-pull operator data.
struct NestedModel {
    VarietyData x;
    PipelineConfig cfg;
    int dim = 0;

    ModelPtr cube;     // A*(X)^{(x)3}, slots 0,1,2
    ModelPtr bmodel;   // slots + e (the e-stage scaffold)
    ModelPtr rmodel;   // A*(Z_2) on slots 1,2 (+ its exceptional class)
    bool r_e_is_gen = false;
    Poly r_e_class;            // exceptional class of rmodel
    GradedLinearMap restrict_z2;  // bmodel -> rmodel

    ModelPtr ambient;  // T/J
    int e_index = -1, f_index = -1;
    Poly e_class, f_class;     // normal forms in ambient
    std::vector<Poly> chernN;  // c_0..c_dim of N_{Z_2}, ambient polys
    Poly rel2, rel3;           // stored for reporting/self-checks

    GradedSubspace w;          // the model of A*(Hilb^{[2,3]} X)
    std::vector<Poly> w_generators;

    std::vector<std::vector<MonoType>> tags;  // per degree, per basis monomial
    std::vector<QMat> pi_mats;                // Pi on ambient coords, per degree
};

NestedModel nested_model(const VarietyData& x, const PipelineConfig& cfg = {});

// Pi = pi_3^* pi_3_* applied to a class of W (membership checked exactly).
Poly pushpull(const NestedModel& nm, const Poly& c);

// Pi evaluated on a single basis monomial by the type rules, before any
// membership filtering; used by the coherence checks.
Poly pushpull_raw(const NestedModel& nm, const Monomial& mono);

// theta^* theta_* route: orbit sum over the three S_3/S_2 coset
// representatives, defined for e,f-free classes.
Poly sym_orbit_route(const NestedModel& nm, const Poly& slot_class);

// Pi restricted to W in W-span coordinates; throws if Pi(W) leaves W.
QMat pi_on_w(const NestedModel& nm, int k);

struct CurveCoherence {
    Poly sym_route;
    Poly rule_route;
    bool agree = false;
};
// d = 1 only: compares the SYM-route and the rule-(iii)-route values of Pi(e).
CurveCoherence curve_coherence(const NestedModel& nm);

struct Hilb3Model {
    GradedSubspace sub;  // image of Pi == subalgebra closure
    RankTable ranks;
    std::vector<Poly> generators;  // the generating set used for the closure
};

// Image of Pi per degree, checked equal to the closure of the generator set;
// a mismatch is a mathematical inconsistency and throws MathError.
Hilb3Model hilb3_model(const NestedModel& nm);

// Generators-and-relations form of the Hilb^3 subring: free graded algebra on
// the chosen generators, with per-degree relation spanning sets up to 3*dim.
RingPresentation extract_presentation(const NestedModel& nm, const Hilb3Model& h3,
                                      const std::vector<std::pair<std::string, Poly>>& chosen);

// Greedily pruned generator list (name, class) for extract_presentation.
std::vector<std::pair<std::string, Poly>> default_presentation_generators(
    const NestedModel& nm, const Hilb3Model& h3);

}  // namespace hilbchow
