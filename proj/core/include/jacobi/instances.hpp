#ifndef JACOBI_INSTANCES_HPP
#define JACOBI_INSTANCES_HPP

#include <cstdint>
#include <random>

#include "jacobi/algebroid.hpp"
#include "jacobi/tensor_map.hpp"

namespace jacobi {

/// R^{2n+1} with coordinates x1..xn, y1..yn, z.
Patch contact_patch(std::size_t n);
/// -sum y_i dx_i + dz on the tangent algebroid of contact_patch(n).
Form canonical_contact_form(const AlgebroidPatch& tangent, std::size_t n);
/// (d beta, beta) on (TM + R, (0,1)), beta a 1-form on the tangent algebroid.
Form contact_two_form(const JacobiAlgebroidData& J, const AlgebroidPatch& tangent, const Form& beta);

/// The Reeb field E = d/dz and Lambda = sum_i (d/dx_i + y_i d/dz) ^ d/dy_i
/// of the canonical contact form, and pi = (Lambda, E) on TM + R.
struct ContactJacobi {
    MultiVector Lambda;
    MultiVector E;
    MultiVector pi;
};
ContactJacobi canonical_contact_jacobi(const JacobiAlgebroidData& J, const AlgebroidPatch& tangent, std::size_t n);

/// The hyperbolic, elliptic and parabolic contact forms on T*R^2 x R and the
/// objects built from them.
struct MongeAmpereData {
    AlgebroidPatch tangent;
    JacobiAlgebroidData J;
    Form beta, beta_h, beta_e, beta_p;
    Form Omega, omega_h, omega_e, omega_p;
    /// Pi# = (Omega_flat)^{-1}.
    MultiVector Pi;
    /// N_x = (Omega_flat)^{-1} o omega_x_flat.
    TensorMap N_h, N_e, N_p;
};
MongeAmpereData monge_ampere_data();

/// Seeded generators for randomized property tests.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi);
    Rational rational(int bound = 3);
    /// Sum of a few monomials of total degree <= degree in the coordinates
    /// (and t when with_t), each with a weight drawn from `weights`.
    ExpPoly poly(std::size_t nvars, unsigned degree, bool with_t = false, std::vector<int> weights = {0});
    MultiVector multivector(const AlgebroidPatch& A, std::size_t degree, unsigned poly_degree, bool with_t = false,
                            std::vector<int> weights = {0});
    Form form(const AlgebroidPatch& A, std::size_t degree, unsigned poly_degree, bool with_t = false,
              std::vector<int> weights = {0});

    /// A valid Lie algebroid of rank r over x1..xn: the tangent directions of
    /// the first m coordinates plus a constant Lie algebra, seen through a
    /// random unipotent change of frame with polynomial entries.
    AlgebroidPatch lie_algebroid(std::size_t n, std::size_t r);
    /// Either (B + R, (0,1) + d f) for a random B of rank r-1, or (A, d f).
    JacobiAlgebroidData jacobi_algebroid(std::size_t n, std::size_t r);
    /// A pair of independently random Jacobi algebroids on A and A*; no
    /// compatibility between the two sides is implied.
    JacobiBialgebroidData loose_pair(std::size_t n, std::size_t r);
    /// A unipotent map with entries of degree <= 1.
    TensorMap unipotent(Side side, std::size_t r, std::size_t nvars);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace jacobi

#endif  // JACOBI_INSTANCES_HPP
