#pragma once

// Seeded sampling of forms and fields with small integer coefficients.

#include "cohiggs/form_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cohiggs {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi], independent of the standard library's distribution code.
inline long random_int(Rng& rng, long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng() % span);
}

/// Form of degree d with coefficients in [lo, hi]; the zero form when d < 0.
inline BinForm random_form(int d, Rng& rng, long lo = -5, long hi = 5) {
    if (d < 0) return BinForm::zero(d);
    std::vector<Rat> c;
    for (int i = 0; i <= d; ++i) c.emplace_back(random_int(rng, lo, hi));
    return BinForm::from_coeffs(c);
}

/// Random map with the given ledger; every admissible entry is sampled.
inline FormMatrix random_map(const std::vector<int>& row_degrees, const std::vector<int>& col_degrees, Rng& rng,
                             long lo = -5, long hi = 5) {
    FormMatrix m = FormMatrix::zero(row_degrees, col_degrees);
    for (std::size_t j = 0; j < m.rows(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) m.set(j, i, random_form(m.expected_degree(j, i), rng, lo, hi));
    return m;
}

}  // namespace cohiggs
