#ifndef SIVIB_SPARSE_HPP
#define SIVIB_SPARSE_HPP

#include <complex>
#include <iosfwd>
#include <vector>

namespace sivib {

// Compressed-sparse-row Hermitian operator. Both triangles are stored.
class SparseOperator {
public:
    using Complex = std::complex<double>;

    SparseOperator() = default;

    // Builds from unordered (row, col, value) triplets; duplicates are summed
    // and entries below 1e-15 in magnitude dropped.
    static SparseOperator from_triplets(int dim,
                                        std::vector<std::pair<std::pair<int, int>, Complex>> t);

    int dim() const { return dim_; }
    std::size_t nonzeros() const { return val_.size(); }
    bool hermitian_flag() const { return hermitian_; }
    bool coupling_truncated() const { return coupling_truncated_; }
    void set_coupling_truncated(bool v) { coupling_truncated_ = v; }

    bool is_real() const { return is_real_; }

    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_violation() const;

    // Upper bound on the spectral norm (max absolute row sum).
    double norm_bound() const;

    void apply(const Complex* x, Complex* y) const;
    void apply_real(const double* x, double* y) const; // requires is_real()

    // Plain-text coordinate dump: "row col re im" per line, 0-based.
    void write_coordinate(std::ostream& os) const;

private:
    int dim_ = 0;
    bool hermitian_ = true;
    bool is_real_ = true;
    bool coupling_truncated_ = false;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<Complex> val_;
};

} // namespace sivib

#endif
