#include "sivib/fock.hpp"
#include "sivib/errors.hpp"

namespace sivib {

FockBasis::FockBasis(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");
    states_.reserve(static_cast<std::size_t>(n_max + 1) * (n_max + 2) / 2);
    for (int n = 0; n <= n_max; ++n)
        for (int nx = n; nx >= 0; --nx) states_.emplace_back(nx, n - nx);
    parity_y_.reserve(states_.size());
    for (const auto& [nx, ny] : states_) parity_y_.push_back(ny % 2 ? -1.0 : 1.0);
}

int FockBasis::index(int n_x, int n_y) const {
    if (n_x < 0 || n_y < 0 || n_x + n_y > n_max_) return -1;
    int n = n_x + n_y;
    // shell offset n(n+1)/2, then n_x descending
    return n * (n + 1) / 2 + (n - n_x);
}

} // namespace sivib
