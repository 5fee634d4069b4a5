#pragma once

// Change of coordinates for surjectivity problems, and the eight-case table
// reducing the problem for <bbabA> < <b, abA> to eight simpler ones.

#include <vector>

#include "fgr/solver.hpp"

namespace fgr {

/// p = xbar . ubar vbar . xbar^-1 and w p w^-1 = ybar . vbar ubar . ybar^-1,
/// with ubar != 1 and ubar vbar, vbar ubar cyclically reduced.
struct ConjugacyDecomposition {
  Word xbar, ybar, ubar, vbar;
};

/// Uses the least rotation offset j >= 1 of the cyclic cores.
ConjugacyDecomposition conjugacy_decompose(const Word& p, const Word& w);

struct CoordinateCase {
  FgrObject target;  // (U_i, N_i)
  Images psi;        // from (V, N_V)
  Images sigma;      // from (Y, N_Y)
};

struct ChangeOfCoordinates {
  FgrObject source;  // (V, N_V)
  FgrObject domain;  // (Y, N_Y)
  Images sigma;      // plain homomorphism F_V -> F_Y
  std::vector<CoordinateCase> cases;
};

/// Checks that every psi_i and sigma_i is an FGR morphism, that
/// sigma_i after sigma equals psi_i, and that each word of delta_generators
/// lies in the image of sigma. Throws on failure.
void check_coordinates(const ChangeOfCoordinates& c, const std::vector<Word>& delta_generators);

/// V = {alpha, beta}, sigma(alpha) = b, sigma(beta) = abA, and the eight rows.
/// Checked on first use.
const ChangeOfCoordinates& eight_case_table();

struct CaseSelection {
  int index = 0;  // 1-based row
  Images residual;
  ConjugacyDecomposition decomposition;
  Word conjugator;  // g with g (phi after sigma) g^-1 = phi' after psi_i
};

/// Row and residual phi' with phi after sigma = phi' after psi_i exactly.
/// Throws when no row fits, which happens when the conjugators xbar and
/// ybar end in the same letter.
CaseSelection case_select(const Word& phi_a, const Word& phi_b);

/// As case_select, but when no row fits exactly, first conjugates phi by
/// xbar^-1 (which leaves the surjectivity problem unchanged up to
/// conjugation); the decomposition then refers to the conjugated phi.
CaseSelection case_select_conjugated(const Word& phi_a, const Word& phi_b);

/// The counterexample words and generators.
Word counterexample_h();
std::vector<Word> counterexample_k();

/// Problem i (1-based): Gamma(sigma_i(H)) -> Gamma(sigma_i(K)) over (U_i, N_i).
std::vector<SurjectivityProblem> counterexample_roots();

/// Order in which the roots are solved, so containment targets come first.
const std::vector<int>& counterexample_root_order();

/// Solves all eight roots in one registry.
CaseTree verify_counterexample(SolveOptions opts);

}  // namespace fgr
