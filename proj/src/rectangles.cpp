#include "samplim/rectangles.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "samplim/errors.hpp"
#include "samplim/rng.hpp"

namespace samplim {

namespace {

bool masks_intersect(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) return true;
    }
    return false;
}

}  // namespace

RectangleFamily::RectangleFamily(std::vector<Rectangle> rects, std::size_t rows, std::size_t cols)
    : rects_(std::move(rects)), rows_(rows), cols_(cols) {
    for (const auto& r : rects_) {
        if (r.row_mask.size() != rows_ || r.col_mask.size() != cols_) {
            throw DomainError("rectangles: mask size does not match the grid");
        }
    }
    for (std::size_t i = 0; i < rects_.size(); ++i) {
        for (std::size_t j = i + 1; j < rects_.size(); ++j) {
            if (masks_intersect(rects_[i].row_mask, rects_[j].row_mask) &&
                masks_intersect(rects_[i].col_mask, rects_[j].col_mask)) {
                throw DomainError("rectangles: products " + std::to_string(i) + " and " +
                                  std::to_string(j) + " overlap");
            }
        }
    }
}

bool RectangleFamily::covers(std::size_t r, std::size_t c) const {
    for (const auto& rect : rects_) {
        if (rect.row_mask[r] && rect.col_mask[c]) return true;
    }
    return false;
}

Rational rectangle_error(const SampleMatrix& m, LabelSet a_set, const RectangleFamily& fam) {
    if (fam.rows() != m.rows || fam.cols() != m.cols) {
        throw DomainError("rectangles: family sized for a different grid");
    }
    std::uint64_t mismatches = 0;
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            const bool in_a = a_set.contains(m.at(r, c));
            if (in_a != fam.covers(r, c)) ++mismatches;
        }
    }
    return Rational(static_cast<std::int64_t>(mismatches),
                    static_cast<std::int64_t>(m.rows * m.cols));
}

namespace {

std::vector<bool> mask_from_bits(std::uint32_t bits, std::size_t size) {
    std::vector<bool> mask(size);
    for (std::size_t i = 0; i < size; ++i) mask[i] = (bits >> i) & 1u;
    return mask;
}

// Bitboard error count for the exhaustive search: grid cells laid out
// row-major in a 16-bit word.
unsigned grid_mismatches(std::uint32_t target, std::uint32_t covered) {
    return static_cast<unsigned>(std::popcount(target ^ covered));
}

std::uint32_t product_bits(std::uint32_t row_bits, std::uint32_t col_bits, std::size_t rows,
                           std::size_t cols) {
    std::uint32_t out = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!((row_bits >> r) & 1u)) continue;
        for (std::size_t c = 0; c < cols; ++c) {
            if ((col_bits >> c) & 1u) out |= 1u << (r * cols + c);
        }
    }
    return out;
}

RectOracleResult exhaustive_min(const SampleMatrix& m, LabelSet a_set, unsigned max_rects) {
    const std::size_t rows = m.rows;
    const std::size_t cols = m.cols;
    std::uint32_t target = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (a_set.contains(m.at(r, c))) target |= 1u << (r * cols + c);
        }
    }

    const std::uint32_t row_lim = 1u << rows;
    const std::uint32_t col_lim = 1u << cols;

    struct Candidate {
        std::uint32_t row_bits, col_bits, cells;
    };
    std::vector<Candidate> singles;
    for (std::uint32_t rb = 1; rb < row_lim; ++rb) {
        for (std::uint32_t cb = 1; cb < col_lim; ++cb) {
            singles.push_back({rb, cb, product_bits(rb, cb, rows, cols)});
        }
    }

    unsigned best = grid_mismatches(target, 0);  // the empty family
    std::vector<Candidate> best_family;

    if (max_rects >= 1) {
        for (const auto& s : singles) {
            const unsigned e = grid_mismatches(target, s.cells);
            if (e < best) {
                best = e;
                best_family = {s};
            }
        }
    }
    if (max_rects >= 2) {
        for (std::size_t i = 0; i < singles.size(); ++i) {
            for (std::size_t j = i + 1; j < singles.size(); ++j) {
                const auto& x = singles[i];
                const auto& y = singles[j];
                if ((x.row_bits & y.row_bits) != 0 && (x.col_bits & y.col_bits) != 0) continue;
                const unsigned e = grid_mismatches(target, x.cells | y.cells);
                if (e < best) {
                    best = e;
                    best_family = {x, y};
                }
            }
        }
    }

    std::vector<Rectangle> rects;
    for (const auto& c : best_family) {
        rects.push_back({mask_from_bits(c.row_bits, rows), mask_from_bits(c.col_bits, cols)});
    }
    return RectOracleResult{
        Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(rows * cols)),
        RectangleFamily(std::move(rects), rows, cols), true};
}

RectOracleResult heuristic_min(const SampleMatrix& m, LabelSet a_set, unsigned max_rects,
                               std::uint64_t seed) {
    SplitStream rng(seed, 0x72656374);
    const std::size_t rows = m.rows;
    const std::size_t cols = m.cols;

    auto random_family = [&]() {
        std::vector<Rectangle> rects;
        const unsigned count = 1 + static_cast<unsigned>(rng.next_below(max_rects));
        for (unsigned i = 0; i < count; ++i) {
            Rectangle rect{std::vector<bool>(rows), std::vector<bool>(cols)};
            for (std::size_t r = 0; r < rows; ++r) rect.row_mask[r] = rng.next() & 1u;
            for (std::size_t c = 0; c < cols; ++c) rect.col_mask[c] = rng.next() & 1u;
            rects.push_back(std::move(rect));
        }
        // Make products disjoint by clearing later rows that reuse earlier ones.
        for (std::size_t i = 1; i < rects.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (masks_intersect(rects[i].col_mask, rects[j].col_mask)) {
                    for (std::size_t r = 0; r < rows; ++r) {
                        if (rects[j].row_mask[r]) rects[i].row_mask[r] = false;
                    }
                }
            }
        }
        return rects;
    };

    std::optional<Rational> best;
    std::vector<Rectangle> best_rects;
    for (unsigned restart = 0; restart < 32; ++restart) {
        auto rects = random_family();
        auto error = [&]() {
            return rectangle_error(m, a_set, RectangleFamily(rects, rows, cols));
        };
        Rational cur = error();
        for (unsigned step = 0; step < 256; ++step) {
            // Flip one random mask bit; keep the flip when the error drops
            // and the family stays disjoint.
            const std::size_t which = rng.next_below(rects.size());
            auto& rect = rects[which];
            const bool flip_row = rng.next() & 1u;
            const std::size_t idx = flip_row ? rng.next_below(rows) : rng.next_below(cols);
            auto& mask = flip_row ? rect.row_mask : rect.col_mask;
            mask[idx] = !mask[idx];
            try {
                const Rational e = error();
                if (e < cur) {
                    cur = e;
                    continue;
                }
            } catch (const DomainError&) {
                // flip created an overlap; revert below
            }
            mask[idx] = !mask[idx];
        }
        if (!best || cur < *best) {
            best = cur;
            best_rects = rects;
        }
    }
    return RectOracleResult{*best, RectangleFamily(std::move(best_rects), rows, cols), false};
}

}  // namespace

RectOracleResult min_rectangle_error(const SampleMatrix& m, LabelSet a_set, unsigned max_rects,
                                     bool allow_heuristic, std::uint64_t heuristic_seed) {
    if (max_rects < 1) throw DomainError("rectangles: need at least one rectangle");
    const bool within_guard = m.rows <= 4 && m.cols <= 4 && max_rects <= 2;
    if (within_guard) return exhaustive_min(m, a_set, max_rects);
    if (!allow_heuristic) {
        throw SizeError("rectangles: instance too large for exhaustive search "
                        "(needs rows,cols <= 4 and max rectangles <= 2); "
                        "pass the heuristic flag for a non-exhaustive result");
    }
    return heuristic_min(m, a_set, max_rects, heuristic_seed);
}

ThmdIdentity thmd_mechanism_check(const Rational& a) {
    if (a.sign() <= 0 || a >= Rational(1)) {
        throw DomainError("rectangles: a must lie strictly between 0 and 1");
    }
    ThmdIdentity id;
    id.a = a;
    id.b = (a - a * a) / Rational(2);
    id.a_minus_2b = a - Rational(2) * id.b;
    id.a_squared = a * a;
    id.holds = id.a_minus_2b == id.a_squared;
    return id;
}

std::optional<OverlapWitness> overlap_check(const SampleMatrix& m, const ValueSpace& vs,
                                            LabelSet a_set, const RectangleFamily& fam,
                                            const Rational& b) {
    if (fam.rows() != m.rows || fam.cols() != m.cols) {
        throw DomainError("rectangles: family sized for a different grid");
    }
    if (b.sign() <= 0) throw DomainError("rectangles: b must be positive");
    const Rational a = vs.measure(a_set);
    const Rational threshold = a - Rational(2) * b;
    const auto n_rows = static_cast<std::int64_t>(m.rows);

    // Group columns by their family-membership pattern.
    std::map<std::vector<bool>, std::vector<std::uint32_t>> groups;
    for (std::size_t c = 0; c < m.cols; ++c) {
        std::vector<bool> pattern;
        pattern.reserve(fam.rectangles().size());
        for (const auto& rect : fam.rectangles()) pattern.push_back(rect.col_mask[c]);
        groups[pattern].push_back(static_cast<std::uint32_t>(c));
    }

    for (const auto& [pattern, columns] : groups) {
        if (columns.size() < 2) continue;
        // J = union of B_i over rectangles whose F_i contains these columns.
        std::vector<bool> j_mask(m.rows, false);
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (!pattern[i]) continue;
            for (std::size_t r = 0; r < m.rows; ++r) {
                if (fam.rectangles()[i].row_mask[r]) j_mask[r] = true;
            }
        }

        auto section_dev = [&](std::uint32_t c) {
            std::int64_t diff = 0;
            for (std::size_t r = 0; r < m.rows; ++r) {
                if (a_set.contains(m.at(r, c)) != j_mask[r]) ++diff;
            }
            return Rational(diff, n_rows);
        };

        std::vector<std::uint32_t> close;
        std::vector<Rational> devs;
        for (const auto c : columns) {
            const Rational d = section_dev(c);
            if (d < b) {
                close.push_back(c);
                devs.push_back(d);
            }
        }
        for (std::size_t i = 0; i < close.size(); ++i) {
            for (std::size_t j = i + 1; j < close.size(); ++j) {
                std::int64_t hits = 0;
                for (std::size_t r = 0; r < m.rows; ++r) {
                    if (j_mask[r] && a_set.contains(m.at(r, close[i])) &&
                        a_set.contains(m.at(r, close[j]))) {
                        ++hits;
                    }
                }
                const Rational overlap(hits, n_rows);
                return OverlapWitness{close[i],  close[j],   devs[i],  devs[j],
                                      overlap,   threshold,  overlap > threshold};
            }
        }
    }
    return std::nullopt;
}

}  // namespace samplim
