#include "samplim/pullback.hpp"

#include "samplim/errors.hpp"

namespace samplim {

Rational pulled_measure(const PulledEvent& ev, const ValueSpace& vs) {
    return ev.source().measure(vs);
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::yes:
            return "yes";
        case Membership::no:
            return "no";
        case Membership::insufficiently_forced:
            return "insufficiently-forced";
    }
    return "?";
}

namespace {

// The section value phi(id, coord) for a theta-side source is read from the
// row of `id`; for an omega-side source from the column of `id`.
std::optional<Label> section_value(const ForcingStore& store, Side source_side,
                                   std::uint64_t id, std::uint64_t coord) {
    return source_side == Side::theta ? store.eval_raw(id, coord) : store.eval_raw(coord, id);
}

}  // namespace

Membership member(const PulledEvent& ev, CoordinateId id, const ForcingStore& store) {
    if (id.side != ev.pulled_side()) {
        throw DomainError("pullback: id belongs to the wrong space for this event");
    }
    bool undetermined = false;
    for (const auto& piece : ev.source().pieces()) {
        bool possible = true;   // no constraint rejected yet
        bool complete = true;   // all constraints evaluated
        for (const auto& [coord, set] : piece.constraints()) {
            const auto value = section_value(store, ev.source().side(), id.index, coord);
            if (!value) {
                complete = false;
                continue;
            }
            if (!set.contains(*value)) {
                possible = false;
                break;
            }
        }
        if (possible && complete) return Membership::yes;
        if (possible) undetermined = true;  // not rejected, but not fully defined
    }
    return undetermined ? Membership::insufficiently_forced : Membership::no;
}

CoordinateId separation_witness(const AlgebraEvent& x, const AlgebraEvent& y,
                                const ValueSpace& vs, ForcingStore& store) {
    if (x.side() != Side::theta || y.side() != Side::theta) {
        throw DomainError("pullback: separation witnesses are rows over theta-side events");
    }
    const auto r = refine(x, y, vs);
    if (r.a_minus_b.is_empty()) {
        if (r.b_minus_a.is_empty()) {
            throw NoWitnessError("pullback: events are semantically equal");
        }
        throw NoWitnessError("pullback: X\\Y is empty (X is strictly inside Y); swap arguments");
    }

    // A concrete point of X\Y, spread over the union of both supports.
    const auto& piece = r.a_minus_b.pieces().front();
    std::set<std::uint64_t> coords = x.support();
    const auto sy = y.support();
    coords.insert(sy.begin(), sy.end());
    const auto point = piece.some_point(coords);

    std::vector<std::uint64_t> f;
    std::vector<Label> h;
    for (const auto& [coord, label] : point) {
        f.push_back(coord);
        h.push_back(label);
    }
    const auto res =
        store.force(Feature::row(ValueSequence::explicit_list(std::move(h)), std::move(f)),
                    point.size());

    const auto witness = *res.allocated;
    if (member(PulledEvent(x), witness, store) != Membership::yes ||
        member(PulledEvent(y), witness, store) != Membership::no) {
        throw InternalConsistencyError("pullback: forced witness fails the membership check");
    }
    return witness;
}

NullCover null_cover(ForcingStore& store, std::uint64_t omega, const Rational& x, LabelSet x_set,
                     Label r, const ValueSpace& vs) {
    if (x.sign() <= 0) throw DomainError("pullback: threshold must be positive");
    const Rational p = vs.measure(x_set);
    if (p >= Rational(1)) {
        throw CannotShrinkError("pullback: mu(X) = " + p.to_string() +
                                "; powers cannot fall below the threshold");
    }
    if (!x_set.contains(r)) throw DomainError("pullback: r must lie in X");

    std::size_t n = 0;
    Rational power(1);
    while (power >= x) {
        power *= p;
        ++n;
        if (n > 100000) {
            throw DomainError("pullback: null cover would need more than 1e5 coordinates");
        }
    }

    const auto thetas = store.level_set_extend(omega, r, n);
    std::map<std::uint64_t, LabelSet> constraints;
    for (const auto theta : thetas) constraints.emplace(theta, x_set);
    AlgebraEvent source(Side::theta,
                        {CylinderSpec(Side::theta, std::move(constraints), vs)});
    PulledEvent ev(std::move(source));

    const Rational measure = pulled_measure(ev, vs);
    if (measure != p.pow(n) || measure >= x) {
        throw InternalConsistencyError("pullback: null cover measure check failed");
    }
    if (member(ev, CoordinateId::omega(omega), store) != Membership::yes) {
        throw InternalConsistencyError("pullback: omega is not a member of its null cover");
    }
    return NullCover{n, thetas, std::move(ev), measure};
}

HomogeneityTriple homogeneity_exact(const CylinderSpec& alpha, LabelSet b_set,
                                    std::uint64_t omega_star, const ValueSpace& vs) {
    if (alpha.side() != Side::omega) {
        throw DomainError("pullback: homogeneity cylinders live over omega-space");
    }
    if (alpha.support().contains(omega_star)) {
        throw ExcludedCoordinateError("pullback: omega* = " + std::to_string(omega_star) +
                                      " is constrained by the cylinder");
    }

    const Rational alpha_m = alpha.measure(vs);
    const Rational beta_m = vs.measure(b_set);

    if (b_set.empty()) {
        // beta# and gamma# are the empty event; the identity degenerates to
        // 0 = alpha_m * 0.
        return HomogeneityTriple{alpha_m, beta_m, Rational(0), true, true};
    }

    const CylinderSpec beta(Side::omega, {{omega_star, b_set}}, vs);
    const auto gamma = alpha.intersect(beta, vs);
    if (!gamma) {
        throw InternalConsistencyError("pullback: alpha and beta cannot be disjoint");
    }

    // Structural check: gamma's constraints are exactly alpha's plus the
    // omega* pin (which normalization drops when B is the full set).
    std::map<std::uint64_t, LabelSet> expected = alpha.constraints();
    if (!b_set.is_full(vs.size())) expected.emplace(omega_star, b_set);
    const bool structural = gamma->constraints() == expected;

    const Rational gamma_m = gamma->measure(vs);
    return HomogeneityTriple{alpha_m, beta_m, gamma_m, structural,
                             gamma_m == alpha_m * beta_m};
}

HomogeneityTriple homogeneity_exact_event(const AlgebraEvent& a, LabelSet b_set,
                                          std::uint64_t omega_star, const ValueSpace& vs) {
    if (a.side() != Side::omega) {
        throw DomainError("pullback: homogeneity events live over omega-space");
    }
    if (a.support().contains(omega_star)) {
        throw ExcludedCoordinateError("pullback: omega* = " + std::to_string(omega_star) +
                                      " is constrained by the event");
    }
    Rational nu_a(0);
    Rational nu_cut(0);
    bool structural = true;
    for (const auto& piece : a.pieces()) {
        const auto t = homogeneity_exact(piece, b_set, omega_star, vs);
        nu_a += t.alpha_measure;
        nu_cut += t.gamma_measure;
        structural = structural && t.structural_ok;
    }
    const Rational mu_b = vs.measure(b_set);
    return HomogeneityTriple{nu_a, mu_b, nu_cut, structural, nu_cut == nu_a * mu_b};
}

}  // namespace samplim
