#pragma once

#include <cstddef>
#include <cstdint>

#include "algkex/group.hpp"
#include "algkex/random.hpp"

namespace algkex {

/// Uniform entries in [-bound, bound], redrawn until det != 0.
IntMatrix random_matrix(Rng& rng, std::size_t dim, std::int64_t bound);
IntVector random_vector(Rng& rng, std::size_t dim, std::int64_t bound);
IntVector random_nonzero_vector(Rng& rng, std::size_t dim, std::int64_t bound);
/// britton_reduce of a random triple with p, q <= max_exp.
GroupElement random_element(const GroupParams& params, Rng& rng, std::uint64_t max_exp,
                            std::int64_t bound);
/// Random word of length in [0, max_len] over the full alphabet.
GroupWord random_word(const GroupParams& params, Rng& rng, std::size_t max_len);

}  // namespace algkex
