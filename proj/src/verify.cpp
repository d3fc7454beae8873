#include "samplim/verify.hpp"

#include <cmath>
#include <thread>

#include "samplim/errors.hpp"

namespace samplim {

EmpiricalDistribution empirical_dist(std::span<const Label> sample, const ValueSpace& vs) {
    if (sample.empty()) throw DomainError("verify: empty sample");
    EmpiricalDistribution d;
    d.counts.assign(vs.size(), 0);
    for (const auto l : sample) {
        if (l >= vs.size()) throw DomainError("verify: unknown label in sample");
        ++d.counts[l];
    }
    d.total = sample.size();
    for (const auto c : d.counts) {
        d.frequencies.emplace_back(static_cast<std::int64_t>(c),
                                   static_cast<std::int64_t>(d.total));
    }
    return d;
}

SampleMatrix SampleMatrix::generate(const ValueSpace& vs, std::size_t rows, std::size_t cols,
                                    std::uint64_t seed) {
    SampleMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.seed = seed;
    m.cells.resize(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.cells[r * cols + c] = vs.sample(seed, r, c);
        }
    }
    return m;
}

GcReport gc_test(const ValueSpace& vs, std::size_t n, std::uint64_t seed, const Rational& eps) {
    if (n == 0) throw DomainError("verify: sample size must be positive");
    if (eps.sign() <= 0) throw DomainError("verify: epsilon must be positive");

    std::vector<Label> sample(n);
    for (std::size_t i = 0; i < n; ++i) sample[i] = vs.sample(seed, 0, i);
    const auto dist = empirical_dist(sample, vs);

    GcReport rep;
    rep.n = n;
    rep.seed = seed;
    rep.epsilon = eps;
    for (Label l = 0; l < vs.size(); ++l) {
        Rational dev = dist.frequencies[l] - vs.weight(l);
        if (dev.sign() < 0) dev = -dev;
        rep.deviations.push_back(dev);
        if (dev > rep.max_deviation) rep.max_deviation = dev;
    }
    rep.pass = rep.max_deviation < eps;
    const double e = eps.to_double();
    rep.false_failure_bound =
        2.0 * static_cast<double>(vs.size()) * std::exp(-2.0 * static_cast<double>(n) * e * e);
    return rep;
}

HomogeneityMcReport homogeneity_mc(const SampleMatrix& m, const ValueSpace& vs,
                                   std::span<const std::uint32_t> subset, LabelSet b_set,
                                   const Rational& eps, unsigned workers) {
    if (subset.empty()) throw DomainError("verify: column subset must be nonempty");
    for (const auto c : subset) {
        if (c >= m.cols) throw DomainError("verify: subset column out of range");
    }

    HomogeneityMcReport rep;
    rep.subset_size = subset.size();
    const Rational nu_a(static_cast<std::int64_t>(subset.size()),
                        static_cast<std::int64_t>(m.cols));
    rep.expected = nu_a * vs.measure(b_set);
    rep.deviations.assign(m.rows, Rational(0));
    rep.within.assign(m.rows, false);

    const auto scan_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            std::uint64_t hits = 0;
            for (const auto c : subset) {
                if (b_set.contains(m.at(r, c))) ++hits;
            }
            Rational dev = Rational(static_cast<std::int64_t>(hits),
                                    static_cast<std::int64_t>(m.cols)) -
                           rep.expected;
            if (dev.sign() < 0) dev = -dev;
            rep.within[r] = dev < eps;
            rep.deviations[r] = std::move(dev);
        }
    };

    if (workers <= 1 || m.rows < 2) {
        scan_rows(0, m.rows);
    } else {
        const unsigned k = std::min<unsigned>(workers, static_cast<unsigned>(m.rows));
        std::vector<std::thread> pool;
        const std::size_t chunk = (m.rows + k - 1) / k;
        for (unsigned w = 0; w < k; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(m.rows, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(scan_rows, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    std::size_t ok = 0;
    for (const auto w : rep.within) {
        if (w) ++ok;
    }
    rep.fraction_within =
        Rational(static_cast<std::int64_t>(ok), static_cast<std::int64_t>(m.rows));
    return rep;
}

SplitResult nonatomic_split(const AlgebraEvent& a, LabelSet b_set, std::uint64_t omega_star,
                            const ValueSpace& vs) {
    if (a.side() != Side::omega) {
        throw DomainError("verify: nonatomic split acts on omega-side events");
    }
    const Rational mu_b = vs.measure(b_set);
    if (mu_b.sign() <= 0 || mu_b >= Rational(1)) {
        throw HypothesisViolationError("verify: mu(B) = " + mu_b.to_string() +
                                       " must lie strictly between 0 and 1");
    }
    if (a.support().contains(omega_star)) {
        throw DomainError("verify: omega* lies in the event's support");
    }
    const Rational nu_a = a.measure(vs);
    if (nu_a.sign() <= 0) throw DomainError("verify: event has measure zero");

    const CylinderSpec pin(Side::omega, {{omega_star, b_set}}, vs);
    std::vector<CylinderSpec> pieces;
    for (const auto& p : a.pieces()) {
        auto cut = p.intersect(pin, vs);
        // omega* is unconstrained in p and B is nonempty, so the cut exists.
        if (!cut) throw InternalConsistencyError("verify: split piece vanished");
        pieces.push_back(std::move(*cut));
    }
    AlgebraEvent sub(Side::omega, std::move(pieces));

    const Rational product = sub.measure(vs);
    if (product != nu_a * mu_b || product.sign() <= 0 || product >= nu_a) {
        throw InternalConsistencyError("verify: split measure chain violated");
    }
    return SplitResult{std::move(sub), nu_a, mu_b, product};
}

FgReport fg_impossibility(unsigned n) {
    if (n < 1 || n > 30) throw UsageError("verify: population size must be in [1,30]");

    FgReport rep;
    rep.n = n;

    // Every length-k prefix must sum to k/2, i.e. 2*sum == k. A {0,1} entry
    // can never satisfy k = 1, so each candidate dies on its first prefix.
    auto satisfies = [&](std::uint64_t bits) {
        unsigned sum = 0;
        for (unsigned k = 1; k <= n; ++k) {
            sum += (bits >> (k - 1)) & 1u;
            if (2 * sum != k) return false;
        }
        return true;
    };

    rep.exhaustive = n <= 22;
    if (rep.exhaustive) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t v = 0; v < total; ++v) {
            if (satisfies(v)) ++rep.satisfying;
        }
        rep.vectors_checked = total;
    }

    // Pruned depth-first search: extend a prefix only while the constraint
    // chain is alive. Both first values fail at k = 1, so the tree has
    // exactly the root and two leaves.
    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, unsigned k, unsigned sum) -> void {
        ++nodes;
        if (k > 0 && 2 * sum != k) return;  // obstruction: prune
        if (k == n) {
            ++rep.satisfying;  // never reached
            return;
        }
        self(self, k + 1, sum);
        self(self, k + 1, sum + 1);
    };
    dfs(dfs, 0, 0);
    rep.dfs_nodes = nodes;
    rep.first_obstruction = 1;
    return rep;
}

}  // namespace samplim
