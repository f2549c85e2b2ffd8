#ifndef SIVIB_SPECTRUM_HPP
#define SIVIB_SPECTRUM_HPP

#include "sivib/fock.hpp"
#include "sivib/solver.hpp"

#include <string>
#include <vector>

namespace sivib {

enum class Symmetry { A1, A2, E, Unresolved };

const char* to_string(Symmetry s);

struct Level {
    double energy_mev = 0.0;
    int degeneracy = 1;
    Symmetry sym = Symmetry::Unresolved;
    int first = 0; // index of the first member in the raw eigenpair ordering
};

struct LabeledSpectrum {
    std::vector<Level> levels;
    Eigen::VectorXd energies;  // raw ascending eigenvalues
    Eigen::MatrixXcd vectors;  // matching eigenvectors
    int n_max = 0;
    int iterations = 0;
    double max_residual = 0.0;
    bool converged = false;
    std::vector<std::string> diagnostics;

    // Lowest level with the given label, nullptr when absent.
    const Level* lowest(Symmetry s) const;
    // Lowest nondegenerate A-type level (A1 or A2), nullptr when absent.
    const Level* lowest_singlet() const;
};

// Expectation of the vibronic reflection (sigma_z x sigma_z) x (-1)^{n_y};
// +1 and -1 on the two A-type manifolds, traceless on E doublets.
double reflection_expectation(const Eigen::VectorXcd& v, const FockBasis& basis);

// Clusters eigenvalues within deg_tol and assigns symmetry labels: doublets
// are E; singlets are labeled by the reflection expectation. The
// reflection-even singlets are the A2 manifold here (the strong-coupling dark
// vibronic ground state is even and the nomenclature follows the A2
// assignment of that state), the odd ones A1. Clusters larger than 2 are
// reported unresolved with a diagnostic.
LabeledSpectrum classify_states(const Eigenpairs& pairs, const FockBasis& basis,
                                double deg_tol_mev = 1e-6);

} // namespace sivib

#endif
