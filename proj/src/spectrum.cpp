#include "sivib/spectrum.hpp"
#include "sivib/errors.hpp"
#include "sivib/hamiltonian.hpp"

namespace sivib {

const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::A1: return "A1";
        case Symmetry::A2: return "A2";
        case Symmetry::E: return "E";
        default: return "unresolved";
    }
}

const Level* LabeledSpectrum::lowest(Symmetry s) const {
    for (const auto& l : levels)
        if (l.sym == s) return &l;
    return nullptr;
}

const Level* LabeledSpectrum::lowest_singlet() const {
    for (const auto& l : levels)
        if (l.sym == Symmetry::A1 || l.sym == Symmetry::A2) return &l;
    return nullptr;
}

double reflection_expectation(const Eigen::VectorXcd& v, const FockBasis& basis) {
    if (v.size() != 4 * basis.dim())
        throw ValidationError("eigenvector length does not match 4 x basis dimension");
    const Eigen::Vector4d el = electronic::reflection_diagonal();
    const auto& py = basis.parity_y();
    double s = 0.0;
    for (int j = 0; j < basis.dim(); ++j)
        for (int a = 0; a < 4; ++a) s += std::norm(v(4 * j + a)) * el(a) * py[j];
    return s;
}

LabeledSpectrum classify_states(const Eigenpairs& pairs, const FockBasis& basis,
                                double deg_tol_mev) {
    if (!(deg_tol_mev > 0.0)) throw ValidationError("deg_tol must be positive");
    LabeledSpectrum spec;
    spec.energies = pairs.values;
    spec.vectors = pairs.vectors;
    spec.n_max = basis.n_max();
    spec.iterations = pairs.iterations;
    spec.max_residual = pairs.max_residual;
    spec.converged = pairs.converged;

    const int n = static_cast<int>(pairs.values.size());
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && pairs.values(j + 1) - pairs.values(i) < deg_tol_mev) ++j;
        Level lvl;
        lvl.first = i;
        lvl.degeneracy = j - i + 1;
        lvl.energy_mev = pairs.values.segment(i, lvl.degeneracy).mean();
        if (lvl.degeneracy == 1) {
            double s = reflection_expectation(pairs.vectors.col(i), basis);
            lvl.sym = s > 0.9 ? Symmetry::A2 : (s < -0.9 ? Symmetry::A1 : Symmetry::Unresolved);
            if (lvl.sym == Symmetry::Unresolved)
                spec.diagnostics.push_back("level at " + std::to_string(lvl.energy_mev) +
                                           " meV: reflection expectation " + std::to_string(s) +
                                           " is not close to +-1");
        } else if (lvl.degeneracy == 2) {
            lvl.sym = Symmetry::E;
        } else {
            lvl.sym = Symmetry::Unresolved;
            spec.diagnostics.push_back("level at " + std::to_string(lvl.energy_mev) +
                                       " meV: accidental degeneracy of size " +
                                       std::to_string(lvl.degeneracy));
        }
        spec.levels.push_back(lvl);
        i = j + 1;
    }
    return spec;
}

} // namespace sivib
