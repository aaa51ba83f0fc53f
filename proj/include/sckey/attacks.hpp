#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sckey/frames.hpp"
#include "sckey/info.hpp"
#include "sckey/types.hpp"

namespace sckey {

/// Eve's cloning interaction on signal (x) probe, basis order signal
/// first. Unitary within 1e-10 entrywise.
class CloneUnitary {
 public:
  explicit CloneUnitary(CMatrix entries);

  Index dim() const { return u_.rows(); }
  const CMatrix& matrix() const { return u_; }

 private:
  CMatrix u_;
};

enum class Attack { InterceptResend, Clone };

/// One eavesdropping scenario: the attack kind, the fraction q of signals
/// Eve touches, and (for the clone attack) her interaction unitary.
struct AttackSpec {
  Attack kind = Attack::InterceptResend;
  double q = 1.0;  // in [0, 1]
  std::optional<CloneUnitary> cloner;  // required when kind == Clone
};

struct AnnealConfig {
  std::uint64_t seed = 42;
  int steps = 400000;
  int restarts = 8;
  // Proposals scale with the temperature, so the schedule starts inside
  // the basin-selection window (objective barriers are ~1e-2) and cools
  // three and a half decades from there; wider schedules stall on this
  // landscape.
  double temp_initial = 0.05;
  double cooling = 0.99998;  // geometric, per step
  double step_scale = 15.0;
  double penalty_weight = 100.0;
};

struct CloneOptResult {
  CloneUnitary unitary;
  double fidelity;   // average squared clone overlap at the optimum
  double penalty;    // variance of the per-state overlaps
  bool symmetric;    // penalty < 1e-6
};

/// Joint distribution for the intercept-resend attack at interception
/// fraction q. Eve measures the POVM built from her frame and resends
/// the measured state; with probability 1-q the signal passes untouched
/// and Eve's variable takes a distinguished extra symbol (present
/// whenever q < 1).
JointDistribution intercept_resend_joint(const Frame& signal, const Frame& bob,
                                         const Frame& eve, double q);

/// Joint distribution for the cloning attack: with probability q Eve
/// applies U to signal (x) |0>, with probability 1-q the identity; Bob
/// measures his POVM on the signal half, Eve hers on the probe half.
JointDistribution clone_joint(const Frame& signal, const Frame& bob,
                              const Frame& eve, const CloneUnitary& cloner,
                              double q);

/// Dispatch on the attack kind.
JointDistribution attack_joint(const Frame& signal, const Frame& bob,
                               const Frame& eve, const AttackSpec& spec);

/// The closed-form optimal symmetric trine cloner,
/// (1/sqrt2) [[0,0,0,sqrt2],[1,1,0,0],[1,-1,0,0],[0,0,sqrt2,0]].
CloneUnitary reference_trine_cloner();

/// (1/n) sum_j |<phi_j,phi_j|U|phi_j,0>|^2.
double average_clone_fidelity(const CloneUnitary& cloner, const Frame& signal);

/// Population variance of the per-state squared clone overlaps; zero for
/// a cloner that treats every signal state alike.
double clone_symmetry_penalty(const CloneUnitary& cloner, const Frame& signal);

/// Average fidelity of one clone alone: mean over signals of
/// <phi_j| tr_probe(U|phi_j,0><phi_j,0|U^dag) |phi_j>.
double single_clone_fidelity(const CloneUnitary& cloner, const Frame& signal);

/// Maximize average_clone_fidelity - penalty_weight * symmetry penalty
/// by simulated annealing over U(4), parameterized as the exponential of
/// an anti-Hermitian generator (16 real parameters). Deterministic given
/// the seed; best over all restarts is returned.
CloneOptResult optimize_cloner(const Frame& signal, const AnnealConfig& config);

/// Fixture list for cross-checking Bb84 cloners: the two closed-form
/// clones of the z eigenstates plus their normalized sum and difference.
std::vector<StateVector> bb84_reference_clone_states();

}  // namespace sckey
