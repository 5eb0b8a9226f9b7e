#ifndef JACOBI_DIRAC_HPP
#define JACOBI_DIRAC_HPP

#include <optional>
#include <vector>

#include "jacobi/algebroid.hpp"
#include "jacobi/check.hpp"
#include "jacobi/tensor_map.hpp"

namespace jacobi {

/// T_N(X,Y) = [NX,NY] - N[NX,Y] - N[X,NY] + N^2[X,Y] with the bracket of A.
MultiVector torsion_tensor(const AlgebroidPatch& A, const TensorMap& N, const MultiVector& X, const MultiVector& Y);
/// T_N on all frame pairs; complete because T_N is tensorial.
CheckResult torsion_tensor_check(const AlgebroidPatch& A, const TensorMap& N);
/// omega_flat(T_N(e_i, e_j)) = 0 on all frame pairs.
CheckResult flattened_torsion_check(const AlgebroidPatch& A, const TensorMap& N, const Form& omega);

/// A point (xi, xi', xi'') of the torsion domain of the relation
/// {(pi2# s, pi1# s)}: pi2# xi' = pi1# xi and pi2# xi'' = pi1# xi'.
struct CosectionTriple {
    Form xi;
    Form xi1;
    Form xi2;
};

bool in_torsion_domain(const MultiVector& pi1, const MultiVector& pi2, const CosectionTriple& c);

/// [pi1,pi1]_phi0(a,b,xi) + [pi2,pi2]_phi0(a,b,xi'') - 2 [pi1,pi2]_phi0(a,b,xi').
ExpPoly torsion_triple(const JacobiAlgebroidData& J, const MultiVector& pi1, const MultiVector& pi2, const Form& a,
                       const Form& b, const CosectionTriple& c);
/// The torsion of {(pi2# s, pi1# s)} evaluated from the bracket of A on the
/// elements (pi2# a, pi1# a), (pi2# b, pi1# b).
ExpPoly torsion_triple_raw(const AlgebroidPatch& A, const MultiVector& pi1, const MultiVector& pi2, const Form& a,
                           const Form& b, const CosectionTriple& c);

/// A Dirac structure given as a graph: `sharp` is the inverse graph
/// {(pi# xi, xi)} of pi#, `flat` is the graph {(X, omega_flat X)}.  Both sit
/// in A + A*.
struct GraphRelation {
    enum class Kind { sharp, flat };
    Kind kind = Kind::sharp;
    MultiVector pi;
    Form omega;

    static GraphRelation sharp(MultiVector p);
    static GraphRelation flat(Form w);

    /// The relation as {(P s, Q s)} with P: S -> A and Q: S -> A*.
    TensorMap param_A() const;
    TensorMap param_Astar() const;
};

enum class PairStrategy { automatic, compatibility, invertible, witness };
const char* strategy_name(PairStrategy s);

/// The relation N_{L,L'} written as {(U s, W s)} with s ranging over a whole
/// bundle, when such a parametrization exists over the coefficient ring.
struct ParametrizedRelation {
    TensorMap U;
    TensorMap W;
};

/// Eliminates the middle variable of (overline L) * L' when one of the
/// A*-parts is invertible; empty otherwise.
std::optional<ParametrizedRelation> compose_relation(const GraphRelation& L, const GraphRelation& L2);

/// Raw torsion of a relation R in A x A on (X1,Y1), (X2,Y2) in R and
/// (alpha, beta, gamma) in R* <> R*:
/// <alpha,[Y1,Y2]> - <beta,[Y1,X2] + [X1,Y2]> + <gamma,[X1,X2]>.
ExpPoly relation_torsion(const AlgebroidPatch& A, const MultiVector& X1, const MultiVector& Y1,
                         const MultiVector& X2, const MultiVector& Y2, const Form& alpha, const Form& beta,
                         const Form& gamma);

/// Dirac-pair verdict for two graph Dirac structures.  Both members are first
/// checked against the Maurer-Cartan equation.  Then, depending on strategy:
///   invertible: reduce N_{L,L'} to the graph of a tensor and test T_N;
///   compatibility: two sharp members with [pi_i,pi_j]_phi0 = 0 for all i,j;
///   witness: evaluate the torsion on domain triples from `triples` (or the
///     frame family); any nonzero value fails, otherwise the result is
///     inconclusive;
///   automatic: invertible, then compatibility, then witness.
CheckResult dirac_pair_check(const JacobiBialgebroidData& B, const GraphRelation& L, const GraphRelation& L2,
                             PairStrategy strategy = PairStrategy::automatic,
                             const std::vector<CosectionTriple>& triples = {});

/// omega_N with omega_N_flat = omega_flat o N.
Form omega_n(const Form& omega, const TensorMap& N);

CheckResult jomega_check(const JacobiAlgebroidData& J, const MultiVector& pi, const Form& omega);
CheckResult omegan_check(const JacobiAlgebroidData& J, const Form& omega, const TensorMap& N, bool weak);

CheckResult jacobi_pair_check(const JacobiAlgebroidData& J, const MultiVector& pi1, const MultiVector& pi2,
                              PairStrategy strategy = PairStrategy::automatic);
CheckResult presymplectic_pair_check(const JacobiAlgebroidData& J, const Form& w1, const Form& w2,
                                     PairStrategy strategy = PairStrategy::automatic);
CheckResult symplectic_pair_check(const JacobiAlgebroidData& J, const Form& w1, const Form& w2,
                                  PairStrategy strategy = PairStrategy::automatic);
/// Sufficient test: both Jacobi and compatible.
CheckResult hamiltonian_pair_check(const JacobiAlgebroidData& J, const MultiVector& pi1, const MultiVector& pi2);
/// A* = (pi1#)^{-1}(Im pi2#) cap (pi2#)^{-1}(Im pi1#).  Decided only when both
/// maps have unit determinant (holds) or one does and the other has
/// identically zero determinant (fails).
CheckResult image_condition_check(const MultiVector& pi1, const MultiVector& pi2, const AlgebroidPatch& A);

}  // namespace jacobi

#endif  // JACOBI_DIRAC_HPP
