// SPDX-License-Identifier: Apache-2.0
//
// Shipped example models, actions and presentations.
//
// Concrete realizations use cyclic clock and shift matrices, which are exactly
// unitary, so the twisting parameter is the rational theta = 1/5.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "qiso/isometry.hpp"
#include "qiso/presentation.hpp"
#include "qiso/spectral_triple.hpp"

namespace qiso::models {

/// lambda = exp(2 pi i theta) with theta = 1/5.
Phase torus_phase();

SpectralModel circle(int truncation);
SpectralModel torus(int truncation);
/// Two disjoint circles: L has a two-dimensional kernel.
SpectralModel disconnected(int truncation);

/// Cyclic shift e_j -> e_{j+1 mod n}.
Eigen::MatrixXcd shift(int n);
/// diag(omega^j), omega = exp(2 pi i num/den).
Eigen::MatrixXcd clock(int n, std::int64_t num, std::int64_t den);
Eigen::MatrixXcd block_diagonal(const std::vector<Eigen::MatrixXcd>& blocks);

/// alpha(U) = U (x) A_1 + U^{-1} (x) A_-1 with A_1 = VP, A_-1 = V(1-P).
ConcreteAction circle_action();
/// Relations of the circle action together with Delta(A_1) = A_1 (x) A_1 + A_-1^* (x) A_-1
/// and Delta(A_-1) = A_-1 (x) A_1 + A_1^* (x) A_-1.
Presentation circle_isometry_presentation();
/// Function algebra of the semidirect product of T by Z_2: V unitary, P projection,
/// VP = PV, A_1 = VP, A_-1 = V(1-P). A_1 and A_-1 are eliminated first.
Presentation semidirect_presentation();

/// alpha(U) = U (x) A0 + V (x) B0, alpha(V) = U (x) C0 + V (x) D0.
ActionAnsatz double_torus_ansatz();
/// A0, D0 commuting unitaries on one summand; B0, C0 with B0 C0 = lambda^2 C0 B0 on the other.
ConcreteAction double_torus_action();
/// Relations derived from the action, with the matrix coproduct of u = [[A0, C0], [B0, D0]].
Presentation double_torus_presentation();

/// Full isometry action on the twisted torus, built on eight summands.
/// `literal_parity` places the twisted pairs on the even summands instead of
/// the pairs the homomorphism condition requires.
ConcreteAction full_torus_action(bool literal_parity = false);
/// Eight summands with support projections P1..P8 summing to 1; generators of
/// different summands multiply to zero.
Presentation full_torus_presentation();

}  // namespace qiso::models
