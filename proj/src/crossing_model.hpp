#pragma once

// Crossing maps with coefficients that are affine forms in solver unknowns. Numeric maps are
// the special case of constant forms.

#include "swf/crossing.hpp"

namespace swf::detail {

struct Affine {
    Rational constant = 0;
    std::map<std::size_t, Rational> terms;

    Affine() = default;
    Affine(const Rational& c) : constant(c) {}
    static Affine variable(std::size_t v)
    {
        Affine a;
        a.terms[v] = 1;
        return a;
    }

    bool is_constant() const { return terms.empty(); }
    bool is_zero() const { return constant == 0 && terms.empty(); }

    Affine& operator+=(const Affine& o)
    {
        constant += o.constant;
        for (const auto& [v, c] : o.terms) {
            Rational& t = terms[v];
            t += c;
            if (t == 0) terms.erase(v);
        }
        return *this;
    }
};

Affine operator*(const Affine& a, const Affine& b);

using FormVector = std::map<EquivariantGenerator, Affine>;

void add_form(FormVector& x, const EquivariantGenerator& g, const Affine& c);
FormVector constant_vector(const GenVector& v);
GenVector evaluate(const FormVector& x);  // all forms must be constant

struct Model0 {
    const FloerData* src = nullptr;
    const FloerData* tgt = nullptr;
    int shift = 0;
    std::map<OrbitPair, Affine> n, m;
    std::map<std::string, Affine> r, s, theta_eta, one_theta;
    Affine theta_theta;
};

struct ModelH {
    const FloerData* side = nullptr;
    std::map<OrbitPair, Affine> n, m;
    std::map<std::string, Affine> eta_theta, theta_one, theta_eta;
};

Model0 constant_model(const DegreeZeroFamilies& f, const FloerData& src, const FloerData& tgt, int shift);
ModelH constant_model(const HomotopyFamilies& f, const FloerData& side);

FormVector image(const Model0& f, const EquivariantGenerator& g);
FormVector image(const ModelH& f, const EquivariantGenerator& g);
FormVector image(const Model0& f, const FormVector& x);
FormVector image(const ModelH& f, const FormVector& x);
FormVector boundary(const FloerData& side, const FormVector& x);
FormVector subtract(FormVector a, const FormVector& b);

// Residual vectors for a generator g (of side0 for ID-DI and the homotopy, of side1 for JD-DJ).
FormVector residual_ID_DI(const Model0& I, const EquivariantGenerator& g);
FormVector residual_JD_DJ(const Model0& J, const EquivariantGenerator& g);
FormVector residual_homotopy(const Model0& I, const Model0& J, const ModelH& H, const EquivariantGenerator& g);

struct IdentityForm {
    std::string name;  // "C1", "C2", "C3"
    std::string witness;
    Affine form;       // vanishes when the identity holds
};

// Only for sf_c = -1; empty otherwise.
std::vector<IdentityForm> identity_forms(const FloerData& side0, const FloerData& side1, int sf_c, const Model0& I,
                                         const Model0& J);

}  // namespace swf::detail
