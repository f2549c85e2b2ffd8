#include "sivib/sparse.hpp"
#include "sivib/csvio.hpp"
#include "sivib/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace sivib {

SparseOperator SparseOperator::from_triplets(
    int dim, std::vector<std::pair<std::pair<int, int>, Complex>> t) {
    std::sort(t.begin(), t.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseOperator m;
    m.dim_ = dim;
    m.row_ptr_.assign(dim + 1, 0);
    std::size_t i = 0;
    while (i < t.size()) {
        auto key = t[i].first;
        Complex sum = 0.0;
        while (i < t.size() && t[i].first == key) sum += t[i++].second;
        if (std::abs(sum) <= 1e-15) continue;
        if (key.first < 0 || key.first >= dim || key.second < 0 || key.second >= dim)
            throw ValidationError("triplet index out of range");
        m.col_.push_back(key.second);
        m.val_.push_back(sum);
        ++m.row_ptr_[key.first + 1];
        if (sum.imag() != 0.0) m.is_real_ = false;
    }
    for (int r = 0; r < dim; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

double SparseOperator::hermiticity_violation() const {
    // columns are sorted within each row, so a transposed lookup is a binary search
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r) {
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            int c = col_[k];
            Complex other = 0.0;
            int lo = row_ptr_[c], hi = row_ptr_[c + 1];
            auto it = std::lower_bound(col_.begin() + lo, col_.begin() + hi, r);
            if (it != col_.begin() + hi && *it == r) other = val_[it - col_.begin()];
            worst = std::max(worst, std::abs(val_[k] - std::conj(other)));
        }
    }
    return worst;
}

double SparseOperator::norm_bound() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(val_[k]);
        worst = std::max(worst, s);
    }
    return worst;
}

void SparseOperator::apply(const Complex* x, Complex* y) const {
    for (int r = 0; r < dim_; ++r) {
        Complex s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k] * x[col_[k]];
        y[r] = s;
    }
}

void SparseOperator::apply_real(const double* x, double* y) const {
    for (int r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k].real() * x[col_[k]];
        y[r] = s;
    }
}

void SparseOperator::write_coordinate(std::ostream& os) const {
    for (int r = 0; r < dim_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            os << r << ' ' << col_[k] << ' ' << csvio::format_double(val_[k].real()) << ' '
               << csvio::format_double(val_[k].imag()) << '\n';
}

} // namespace sivib
