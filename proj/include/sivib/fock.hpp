#ifndef SIVIB_FOCK_HPP
#define SIVIB_FOCK_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace sivib {

// Truncated two-mode boson basis: all (n_x, n_y) with n_x + n_y <= n_max,
// ordered by total quanta and, within a shell, by n_x descending. The
// ordering is what makes assembled matrices reproducible.
class FockBasis {
public:
    explicit FockBasis(int n_max);

    int n_max() const { return n_max_; }
    int dim() const { return static_cast<int>(states_.size()); }

    std::pair<int, int> state(int index) const { return states_[index]; }

    // Dense index of (n_x, n_y), or -1 when outside the truncation.
    int index(int n_x, int n_y) const;

    // (-1)^{n_y} of each state; the boson factor of the vibronic reflection.
    const std::vector<double>& parity_y() const { return parity_y_; }

private:
    int n_max_;
    std::vector<std::pair<int, int>> states_;
    std::vector<double> parity_y_;
};

} // namespace sivib

#endif
