#ifndef STARREL_RNG_HPP
#define STARREL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "starrel/matrep.hpp"

namespace starrel {

// Deterministic stream RNG: mt19937_64 keyed by (seed, stream). Normal
// deviates come from Box-Muller on 53-bit uniforms, so sequences do not
// depend on the standard library's distribution internals.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}

    double uniform() { return (eng_() >> 11) * (1.0 / 9007199254740992.0); } // [0, 1)

    std::uint64_t bits() { return eng_(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline CMatrix random_matrix(Eigen::Index n, Rng& rng, double scale = 1.0) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(scale * rng.normal(), scale * rng.normal());
    return m;
}

/// Deterministic Haar-ish unitary: QR of a random Gaussian matrix with the
/// R diagonal phase absorbed.
inline CMatrix random_unitary(Eigen::Index n, Rng& rng) {
    if (n == 0) return CMatrix(0, 0);
    CMatrix g = random_matrix(n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex d = r(i, i);
        q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

} // namespace starrel

#endif
