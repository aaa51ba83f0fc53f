#pragma once

#include <string>
#include <vector>

#include "sckey/types.hpp"

namespace sckey {

/// A unit-norm complex amplitude vector over the computational basis.
class StateVector {
 public:
  explicit StateVector(CVector amplitudes);

  Index dim() const { return amps_.size(); }
  const CVector& amplitudes() const { return amps_; }

 private:
  CVector amps_;
};

/// An ordered set of n unit vectors in C^d, stored as the columns of a
/// d x n matrix. Column k is the outcome/signal label used everywhere
/// downstream.
class Frame {
 public:
  Frame(CMatrix columns, std::string label);
  Frame(Index dim, const std::vector<StateVector>& states, std::string label);

  Index dim() const { return cols_.rows(); }
  Index size() const { return cols_.cols(); }
  const CMatrix& columns() const { return cols_; }
  CVector state(Index k) const { return cols_.col(k); }
  const std::string& label() const { return label_; }

 private:
  CMatrix cols_;
  std::string label_;
};

/// Hermitian matrix of pairwise inner products G_jk = <phi_j|phi_k>.
class GramMatrix {
 public:
  explicit GramMatrix(CMatrix entries);

  Index size() const { return g_.rows(); }
  const CMatrix& entries() const { return g_; }
  RVector eigenvalues() const;

 private:
  CMatrix g_;
};

/// Positive operators summing to the identity; outcome probabilities
/// come from the Born rule tr(E_k rho).
class Povm {
 public:
  Povm(Index dim, std::vector<CMatrix> elements);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(elements_.size()); }
  const CMatrix& element(Index k) const { return elements_[static_cast<std::size_t>(k)]; }
  const std::vector<CMatrix>& elements() const { return elements_; }

  /// Born-rule outcome probability for a pure input state.
  double outcome_probability(Index k, const CVector& state) const;

 private:
  Index dim_;
  std::vector<CMatrix> elements_;
};

/// Pure state of a two-part system, amplitudes in lexicographic (a,b) order.
class BipartiteState {
 public:
  BipartiteState(Index dim_a, Index dim_b, CVector amplitudes);

  Index dim_a() const { return da_; }
  Index dim_b() const { return db_; }
  const CVector& amplitudes() const { return amps_; }

  CMatrix reduced_a() const;
  CMatrix reduced_b() const;

 private:
  Index da_, db_;
  CVector amps_;
};

/// The three equally-spaced qubit states, global phases included:
/// |phi_j> = (w^j/sqrt2)(|0> + w^j|1>) with w = exp(2 pi i/3).
Frame make_trine();

/// The four-state qubit ensemble |0>, |1>, |+>, |-> in that order.
Frame make_bb84();

/// For each qubit state, the state orthogonal to it, with the first
/// nonzero amplitude made real and positive. Qubits only: in higher
/// dimensions the orthogonal complement is not a pure state.
Frame dual_frame(const Frame& frame);

/// d+1 real unit vectors in dimension d with pairwise squared overlap
/// 1/d^2: the standard basis vectors of R^{d+1}, centered on their mean,
/// normalized, and expressed in an orthonormal basis of the subspace
/// they span.
Frame make_simplex(int d);

GramMatrix gram(const Frame& frame);

/// Max abs entry of sum_k |phi_k><phi_k| - (n/d) I; zero exactly when the
/// frame minimizes V_1 and hence yields a POVM.
double identity_resolution_residual(const Frame& frame);

/// V_t = sum over all ordered pairs (j,k), diagonal included, of
/// |<phi_j|phi_k>|^{2t}.
double frame_potential(const Frame& frame, int t);

struct EquiangularCheck {
  bool equiangular;      // all off-diagonal squared overlaps equal and at the
                         // Welch value (n-d)/(d(n-1)), within tol
  double mean_overlap_sq;
};

EquiangularCheck is_equiangular(const Frame& frame, double tol);

/// Subnormalized projectors (d/n)|phi_k><phi_k|. Requires the frame to
/// resolve the identity: sum_k |phi_k><phi_k| = (n/d) I within 1e-9.
Povm povm_from_frame(const Frame& frame);

/// Average fidelity of the measure-and-reprepare channel through the
/// frame's own measurement; equals d V_2 / n^2.
double classical_fidelity(const Frame& frame);

/// The maximally entangled realization (sqrt(d)/n) sum_k |phi_k>|phi_k^*>.
BipartiteState entangled_realization(const Frame& frame);

}  // namespace sckey
