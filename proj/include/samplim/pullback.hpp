#pragma once

#include "samplim/event.hpp"
#include "samplim/forcing.hpp"

namespace samplim {

// An event of the pulled-back probability structure: an event of omega-space
// represented by its preimage over R^Theta (or dually an event of
// theta-space by its preimage over R^Omega). Its measure is by definition
// the product measure of the source; membership of a concrete forced id is
// decidable whenever the store defines the relevant section on the source's
// support.
class PulledEvent {
  public:
    explicit PulledEvent(AlgebraEvent source) : source_(std::move(source)) {}

    const AlgebraEvent& source() const { return source_; }
    Side pulled_side() const { return opposite(source_.side()); }

  private:
    AlgebraEvent source_;
};

Rational pulled_measure(const PulledEvent& ev, const ValueSpace& vs);

enum class Membership { yes, no, insufficiently_forced };

const char* to_string(Membership m);

// Evaluates the id's section of the store against the source's constraints.
// Partiality is surfaced: if the constrained coordinates are not all defined
// and no piece already decides, the verdict is insufficiently_forced.
Membership member(const PulledEvent& ev, CoordinateId id, const ForcingStore& store);

// For semantically distinct events X, Y with X\Y nonempty: forces a fresh row
// realizing a point of X\Y over the union of both supports and returns its
// omega id, which is a member of pull(X) and not of pull(Y).
CoordinateId separation_witness(const AlgebraEvent& x, const AlgebraEvent& y,
                                const ValueSpace& vs, ForcingStore& store);

struct NullCover {
    std::size_t exponent;                 // minimal n with mu(X)^n < x
    std::vector<std::uint64_t> thetas;    // the forced level-set coordinates
    PulledEvent event;
    Rational measure;                     // == mu(X)^n, exactly
};

// Builds an event of omega-space containing `omega` with measure < x, by
// pinning n fresh level-set coordinates of omega's row to X (requires
// mu(X) < 1 and r in X).
NullCover null_cover(ForcingStore& store, std::uint64_t omega, const Rational& x, LabelSet x_set,
                     Label r, const ValueSpace& vs);

struct HomogeneityTriple {
    Rational alpha_measure;
    Rational beta_measure;   // == mu(B)
    Rational gamma_measure;
    bool structural_ok;      // alpha# ∩ beta# == gamma# as constraint maps
    bool identity_ok;        // gamma == alpha * beta, exactly
};

// The exact product identity behind homogeneity: pin a coordinate omega*
// outside the cylinder's constrained set to B and compare measures.
HomogeneityTriple homogeneity_exact(const CylinderSpec& alpha, LabelSet b_set,
                                    std::uint64_t omega_star, const ValueSpace& vs);

// Additive extension over the pieces of a disjoint union.
HomogeneityTriple homogeneity_exact_event(const AlgebraEvent& a, LabelSet b_set,
                                          std::uint64_t omega_star, const ValueSpace& vs);

}  // namespace samplim
