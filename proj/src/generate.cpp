#include "algkex/generate.hpp"

namespace algkex {

IntMatrix random_matrix(Rng& rng, std::size_t dim, std::int64_t bound) {
    while (true) {
        IntMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) m(i, j) = static_cast<long>(rng.range(-bound, bound));
        if (sgn(m.determinant()) != 0) return m;
    }
}

IntVector random_vector(Rng& rng, std::size_t dim, std::int64_t bound) {
    IntVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = static_cast<long>(rng.range(-bound, bound));
    return v;
}

IntVector random_nonzero_vector(Rng& rng, std::size_t dim, std::int64_t bound) {
    while (true) {
        IntVector v = random_vector(rng, dim, bound);
        if (!v.is_zero()) return v;
    }
}

GroupElement random_element(const GroupParams& params, Rng& rng, std::uint64_t max_exp,
                            std::int64_t bound) {
    const auto p = rng.index(max_exp + 1);
    const auto q = rng.index(max_exp + 1);
    return britton_reduce(params, p, random_vector(rng, params.dim(), bound), q);
}

GroupWord random_word(const GroupParams& params, Rng& rng, std::size_t max_len) {
    const std::size_t len = rng.index(max_len + 1);
    const auto codes = static_cast<std::uint32_t>(2 * params.dim() + 2);
    GroupWord w;
    w.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        w.push_back(Token::from_code(static_cast<std::uint32_t>(rng.index(codes))));
    return w;
}

}  // namespace algkex
